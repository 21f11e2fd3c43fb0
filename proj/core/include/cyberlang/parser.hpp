#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cyberlang/diagnostics.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/statement.hpp"

namespace cyberlang {

struct ParseResult {
    // Present exactly when no error-severity diagnostic was produced.
    std::optional<Cyberstatement> statement;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const noexcept { return statement.has_value(); }
};

// Parses a single statement. The parser recovers after errors so one bad
// slot does not mask problems further right; all findings come back in
// `diagnostics` ordered by source position of discovery. `first_line`
// offsets spans for callers feeding one paragraph of a larger file.
ParseResult parse_statement(std::string_view source, IdGenerator& ids,
                            std::size_t first_line = 1);

struct DocumentParse {
    std::vector<Cyberstatement> statements;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const noexcept { return diagnostics.empty(); }
};

// Parses a .cyl document: statements separated by blank lines, '#' line
// comments anywhere. Paragraphs that contain only comments are skipped.
// Diagnostics from all paragraphs are merged, with file-level line numbers.
DocumentParse parse_document(std::string_view source, IdGenerator& ids);

} // namespace cyberlang
