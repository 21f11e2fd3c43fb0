#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace cyberlang {

// 1-based line and byte column into the original source text. Length is in
// bytes; multi-byte UTF-8 sequences count each byte, which keeps spans
// cheap and still unambiguous for editors.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 0;

    bool operator==(const SourceSpan&) const = default;
};

enum class DiagnosticCode {
    // lexical
    UnexpectedCharacter,
    UnterminatedString,
    BadEscape,
    MalformedNumber,
    UnknownUnitSuffix,
    MalformedReference,
    // structural
    EmptyStatement,
    ExpectedBlockStart,
    ExpectedDimension,
    ExpectedColon,
    ExpectedKey,
    ExpectedEquals,
    ExpectedValue,
    ExpectedCommaOrClose,
    EmptyBlock,
    DuplicateDimensionBlock,
    DuplicateKey,
    DuplicateOmega,
    MalformedDirective,
    // integration-operator semantics
    OmegaAbsentDimension,
    SelfDirective,
    ContradictoryDirectives,
    CyclicPrecedence,
    DuplicateBlendDimension,
    NegativeBlendWeight,
    BlendMassExceeded,
};

constexpr std::string_view diagnostic_code_name(DiagnosticCode code) noexcept {
    switch (code) {
    case DiagnosticCode::UnexpectedCharacter: return "unexpected-character";
    case DiagnosticCode::UnterminatedString: return "unterminated-string";
    case DiagnosticCode::BadEscape: return "bad-escape";
    case DiagnosticCode::MalformedNumber: return "malformed-number";
    case DiagnosticCode::UnknownUnitSuffix: return "unknown-unit-suffix";
    case DiagnosticCode::MalformedReference: return "malformed-reference";
    case DiagnosticCode::EmptyStatement: return "empty-statement";
    case DiagnosticCode::ExpectedBlockStart: return "expected-block-start";
    case DiagnosticCode::ExpectedDimension: return "expected-dimension";
    case DiagnosticCode::ExpectedColon: return "expected-colon";
    case DiagnosticCode::ExpectedKey: return "expected-key";
    case DiagnosticCode::ExpectedEquals: return "expected-equals";
    case DiagnosticCode::ExpectedValue: return "expected-value";
    case DiagnosticCode::ExpectedCommaOrClose: return "expected-comma-or-close";
    case DiagnosticCode::EmptyBlock: return "empty-block";
    case DiagnosticCode::DuplicateDimensionBlock:
        return "duplicate-dimension-block";
    case DiagnosticCode::DuplicateKey: return "duplicate-key";
    case DiagnosticCode::DuplicateOmega: return "duplicate-omega";
    case DiagnosticCode::MalformedDirective: return "malformed-directive";
    case DiagnosticCode::OmegaAbsentDimension: return "omega-absent-dimension";
    case DiagnosticCode::SelfDirective: return "self-directive";
    case DiagnosticCode::ContradictoryDirectives:
        return "contradictory-directives";
    case DiagnosticCode::CyclicPrecedence: return "cyclic-precedence";
    case DiagnosticCode::DuplicateBlendDimension:
        return "duplicate-blend-dimension";
    case DiagnosticCode::NegativeBlendWeight: return "negative-blend-weight";
    case DiagnosticCode::BlendMassExceeded: return "blend-mass-exceeded";
    }
    return "unknown";
}

enum class Severity { Warning, Error };

struct ParseDiagnostic {
    Severity severity = Severity::Error;
    DiagnosticCode code;
    std::string message;
    SourceSpan span;
};

} // namespace cyberlang
