#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyberlang/dimension.hpp"
#include "cyberlang/statement.hpp"
#include "cyberlang/value.hpp"

namespace cyberlang {

// "P.sector": one slot of one dimension, as dialects and templates name
// them.
struct SlotRef {
    Dimension dimension;
    std::string key;

    std::string text() const {
        return std::string(1, dimension_letter(dimension)) + "." + key;
    }

    bool operator==(const SlotRef&) const = default;
    auto operator<=>(const SlotRef&) const = default;
};

SlotRef parse_slot_ref(const std::string& text, const std::string& what);

// What a dialect allows in one slot: a value kind, plus the exact unit
// when the kind is Quantity.
struct SlotRule {
    ValueKind type = ValueKind::Identifier;
    std::optional<UnitCode> unit;
};

// One natural-language surface form. Applicable when every required slot
// is present; {D.key} placeholders (all of which must be required) are
// replaced by the slot's canonical value text.
struct NlTemplate {
    std::string text;
    std::vector<SlotRef> required;
};

// One robot command production. The rule's dimension (used for ordering
// and grouping) is the dimension of its first required slot.
struct RobotRule {
    std::string command;
    std::vector<std::string> args; // literals or {D.key} placeholders
    std::vector<SlotRef> required;
};

// A named vocabulary restriction plus the per-target surface rules.
struct Dialect {
    std::string name;
    std::array<std::map<std::string, SlotRule>, 4> allowed_slots;
    std::vector<NlTemplate> nl_templates;
    std::vector<RobotRule> robot_rules;
    std::map<std::string, std::string> twin_paths; // "P.sector" -> "/path"

    const SlotRule* rule(Dimension d, const std::string& key) const {
        const auto& map = allowed_slots[dimension_index(d)];
        const auto it = map.find(key);
        return it == map.end() ? nullptr : &it->second;
    }

    static Dialect from_json(const nlohmann::json& doc);
};

enum class SlotProblem { UnknownKey, WrongType, WrongUnit };

std::string_view slot_problem_name(SlotProblem problem) noexcept;

struct DialectViolationDetail {
    SlotProblem problem;
    Dimension dimension;
    std::string key;
    std::string message;
};

// Checks every statement slot against the dialect's allowed table.
// Returns all violations; empty means the statement fits the dialect.
std::vector<DialectViolationDetail> validate_against_dialect(
    const Cyberstatement& statement, const Dialect& dialect);

// Same check, thrown as Error(DialectViolation) listing each problem.
void require_dialect(const Cyberstatement& statement, const Dialect& dialect);

Dialect load_dialect(const std::string& path);

} // namespace cyberlang
