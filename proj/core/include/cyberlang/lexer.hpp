#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cyberlang/diagnostics.hpp"
#include "cyberlang/dimension.hpp"

namespace cyberlang {

enum class TokenKind : std::uint8_t {
    LBracket,
    RBracket,
    Colon,
    Comma,
    Equals,
    Tilde,
    Succ,       // '>' or the curly precedence glyph
    Par,        // '||' or the parallel glyph
    OmegaIntro, // '+O' or the circled-plus Omega pair
    Dim,        // single uppercase P/S/T/C
    Word,       // identifier-shaped run (keys and identifier values)
    Number,     // bare numeric literal
    Quantity,   // numeric literal with a glued unit suffix
    String,     // double-quoted text, already unescaped
    Reference,  // dimension-namespaced path (p:hazard/obstacle)
    End,
};

std::string_view token_kind_name(TokenKind kind) noexcept;

struct Token {
    TokenKind kind = TokenKind::End;
    // For String this is the decoded payload; for everything else the
    // ASCII-normalised lexeme (Unicode aliases already folded).
    std::string text;
    SourceSpan span;
    Dimension dim = Dimension::Physical; // meaningful for Dim tokens only
};

struct LexResult {
    std::vector<Token> tokens; // always terminated by an End token
    std::vector<ParseDiagnostic> diagnostics;
};

// Tokenises one statement (or document fragment). Never throws: problems
// become diagnostics and lexing continues after the offending bytes, so a
// single bad character does not hide later errors.
//
// Unicode input is accepted only as the alias glyphs for the integration
// operator and as standalone lowercase Greek letters, which normalise to
// their spelled-out names ("alpha", ...). Anything else non-ASCII outside
// a string is rejected with its codepoint named.
//
// `first_line` offsets reported line numbers, for callers that lex one
// paragraph of a larger document at a time.
LexResult lex(std::string_view source, std::size_t first_line = 1);

} // namespace cyberlang
