#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cyberlang/dialect.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/statement.hpp"

namespace cyberlang {

// The four surface forms a statement compiles to, one per consumer class.
enum class Target {
    HumanNl,    // one prose sentence
    MachineJson,// canonical JSON document, loss-free
    RobotCmd,   // ordered command list
    TwinUpdate, // state-path patches
};

std::string_view target_name(Target target) noexcept;
std::optional<Target> target_from_name(std::string_view name) noexcept;

struct TargetProfile {
    Target target;
    Dialect dialect;
};

// Result of one compilation. `text` is the rendered surface form;
// machine-json, robot-cmd and twin-update additionally expose their
// structured payload.
struct CompiledForm {
    Target target;
    std::string text;
    nlohmann::ordered_json payload; // null for human-nl

    bool operator==(const CompiledForm&) const = default;
};

// Validates the statement against the profile's dialect, then renders:
//
//   human-nl     first template whose required slots are all present
//   machine-json top-level keys sorted, slot order preserved per block
//   robot-cmd    applicable rules sorted by their dimension's derived
//                weight (descending, stable); dimensions tied by '||'
//                share a concurrent_group
//   twin-update  one {path, value, ts:null} patch per mapped slot, in
//                statement order
//
// Throws Error(DialectViolation), Error(NoApplicableTemplate) or
// Error(EmptyCompilation).
CompiledForm compile(const Cyberstatement& statement,
                     const TargetProfile& profile);

// Reads a machine-json document back into a statement (fresh id). The
// inverse of compile-to-machine-json: slot order and directive order are
// preserved exactly. Rejects unknown keys, duplicate keys and malformed
// directives with Error(SchemaViolation).
Cyberstatement decompile_machine_json(const std::string& json_text,
                                      IdGenerator& ids);

} // namespace cyberlang
