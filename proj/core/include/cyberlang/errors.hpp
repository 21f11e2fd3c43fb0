#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cyberlang/dimension.hpp"

namespace cyberlang {

// Machine-readable failure categories. Every throwing API in the library
// raises Error (or a subclass) carrying one of these codes, so callers can
// branch without string-matching messages.
enum class ErrorCode {
    InvalidValue,        // malformed SemanticValue construction or parse
    UnknownUnit,         // unit suffix outside the closed unit set
    DuplicateSign,       // registry already holds an identical sign digest
    UnknownSign,         // lookup for a lambda with no registered senses
    NotBijective,        // mapping table violates one-to-one requirements
    UnmappedReference,   // mapping application hit a reference with no row
    IncoherentSign,      // cross-dimensional fusion check failed
    InconsistentDirectives, // integration directives admit no weight vector
    DialectViolation,    // statement uses slots a dialect does not allow
    NoApplicableTemplate,   // no natural-language template matched
    EmptyCompilation,    // target produced no output for the statement
    SchemaViolation,     // persisted JSON missing/extra/duplicate fields
    UnknownStatement,    // statement id does not match the session/meaning
    ProtocolViolation,   // negotiation message illegal in current state
    DigestMismatch,      // acceptance named a digest nobody proposed
    SessionClosed,       // message arrived after Converged/Failed
    BadMagic,            // wire frame does not start with the magic bytes
    UnsupportedVersion,  // wire frame version byte unknown
    OversizePayload,     // wire frame payload length above the cap
    UnknownPublisher,    // broker publish from an unregistered agent id
    UnknownAgent,        // agent id referenced but never registered
    ScriptError,         // scenario script invalid (bad event, bad order)
    IoError,             // file could not be read or written
    InvalidArgument,     // catch-all for misuse of an API contract
};

constexpr std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidValue: return "invalid-value";
    case ErrorCode::UnknownUnit: return "unknown-unit";
    case ErrorCode::DuplicateSign: return "duplicate-sign";
    case ErrorCode::UnknownSign: return "unknown-sign";
    case ErrorCode::NotBijective: return "not-bijective";
    case ErrorCode::UnmappedReference: return "unmapped-reference";
    case ErrorCode::IncoherentSign: return "incoherent-sign";
    case ErrorCode::InconsistentDirectives: return "inconsistent-directives";
    case ErrorCode::DialectViolation: return "dialect-violation";
    case ErrorCode::NoApplicableTemplate: return "no-applicable-template";
    case ErrorCode::EmptyCompilation: return "empty-compilation";
    case ErrorCode::SchemaViolation: return "schema-violation";
    case ErrorCode::UnknownStatement: return "unknown-statement";
    case ErrorCode::ProtocolViolation: return "protocol-violation";
    case ErrorCode::DigestMismatch: return "digest-mismatch";
    case ErrorCode::SessionClosed: return "session-closed";
    case ErrorCode::BadMagic: return "bad-magic";
    case ErrorCode::UnsupportedVersion: return "unsupported-version";
    case ErrorCode::OversizePayload: return "oversize-payload";
    case ErrorCode::UnknownPublisher: return "unknown-publisher";
    case ErrorCode::UnknownAgent: return "unknown-agent";
    case ErrorCode::ScriptError: return "script-error";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// A mapping application failed partway through a composed chain; `hop`
// says which leg (e.g. "cp" or "cs-inverse") had no row for `reference`.
class UnmappedReferenceError : public Error {
public:
    UnmappedReferenceError(std::string reference, std::string hop)
        : Error(ErrorCode::UnmappedReference,
                "no mapping row for '" + reference + "' in " + hop),
          reference_(std::move(reference)),
          hop_(std::move(hop)) {}

    const std::string& reference() const noexcept { return reference_; }
    const std::string& hop() const noexcept { return hop_; }

private:
    std::string reference_;
    std::string hop_;
};

// Scenario scripts are validated before and during execution; the index
// pins the offending entry of the events array (npos for file-level
// problems such as a dangling agent reference).
class ScriptError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    ScriptError(std::size_t event_index, const std::string& message)
        : Error(ErrorCode::ScriptError,
                event_index == npos
                    ? message
                    : "event " + std::to_string(event_index) + ": " + message),
          event_index_(event_index) {}

    std::size_t event_index() const noexcept { return event_index_; }

private:
    std::size_t event_index_;
};

} // namespace cyberlang
