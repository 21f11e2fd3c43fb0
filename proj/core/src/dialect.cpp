#include "cyberlang/dialect.hpp"

#include <algorithm>
#include <set>

#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"

namespace cyberlang {

namespace {

std::optional<ValueKind> value_kind_from_name(const std::string& name) {
    for (ValueKind kind :
         {ValueKind::Identifier, ValueKind::Number, ValueKind::Quantity,
          ValueKind::Probability, ValueKind::Text, ValueKind::Reference}) {
        if (name == value_kind_name(kind)) return kind;
    }
    return std::nullopt;
}

// Extracts every {D.key} placeholder from a template or argument string.
// Stray braces are an error: templates must be total once applicable.
std::vector<SlotRef> scan_placeholders(const std::string& text,
                                       const std::string& what) {
    std::vector<SlotRef> refs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '}')
            throw Error(ErrorCode::SchemaViolation,
                        what + ": unmatched '}' in \"" + text + "\"");
        if (c != '{') {
            ++pos;
            continue;
        }
        const std::size_t close = text.find('}', pos + 1);
        if (close == std::string::npos)
            throw Error(ErrorCode::SchemaViolation,
                        what + ": unmatched '{' in \"" + text + "\"");
        refs.push_back(
            parse_slot_ref(text.substr(pos + 1, close - pos - 1), what));
        pos = close + 1;
    }
    return refs;
}

std::vector<SlotRef> parse_required(const nlohmann::json& doc,
                                    const std::string& what) {
    const auto& field = require_field(doc, "requires", what);
    if (!field.is_array())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": 'requires' must be an array of slot names");
    std::vector<SlotRef> refs;
    for (const auto& entry : field) {
        if (!entry.is_string())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": required slots are strings like \"P.sector\"");
        refs.push_back(parse_slot_ref(entry.get<std::string>(), what));
    }
    return refs;
}

void require_placeholders_covered(const std::vector<SlotRef>& placeholders,
                                  const std::vector<SlotRef>& required,
                                  const std::string& what) {
    for (const auto& ref : placeholders) {
        if (std::find(required.begin(), required.end(), ref) == required.end())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": placeholder {" + ref.text() +
                            "} is not listed in 'requires'");
    }
}

void require_allowed(const Dialect& dialect, const SlotRef& ref,
                     const std::string& what) {
    if (dialect.rule(ref.dimension, ref.key) == nullptr)
        throw Error(ErrorCode::SchemaViolation,
                    what + ": slot " + ref.text() +
                        " is not in the dialect's allowed table");
}

} // namespace

SlotRef parse_slot_ref(const std::string& text, const std::string& what) {
    if (text.size() < 3 || text[1] != '.')
        throw Error(ErrorCode::SchemaViolation,
                    what + ": bad slot name '" + text +
                        "' (expected \"D.key\")");
    const auto dim = dimension_from_letter(text[0]);
    const std::string key = text.substr(2);
    if (!dim || !is_valid_slot_key(key))
        throw Error(ErrorCode::SchemaViolation,
                    what + ": bad slot name '" + text + "'");
    return SlotRef{*dim, key};
}

std::string_view slot_problem_name(SlotProblem problem) noexcept {
    switch (problem) {
    case SlotProblem::UnknownKey: return "unknown-key";
    case SlotProblem::WrongType: return "wrong-type";
    case SlotProblem::WrongUnit: return "wrong-unit";
    }
    return "?";
}

Dialect Dialect::from_json(const nlohmann::json& doc) {
    const std::string what = "dialect";
    require_only_keys(
        doc, {"name", "allowed_slots", "nl_templates", "robot_rules", "twin_paths"},
        what);

    Dialect dialect;
    dialect.name = require_string(doc, "name", what);

    const auto& allowed = require_field(doc, "allowed_slots", what);
    require_only_keys(allowed, {"P", "S", "T", "C"}, what + " allowed_slots");
    for (Dimension d : kAllDimensions) {
        const std::string letter(1, dimension_letter(d));
        const auto it = allowed.find(letter);
        if (it == allowed.end()) continue;
        require_object(*it, what + " allowed_slots " + letter);
        for (const auto& item : it->items()) {
            const std::string where =
                what + " slot " + letter + "." + item.key();
            if (!is_valid_slot_key(item.key()))
                throw Error(ErrorCode::SchemaViolation,
                            where + ": bad slot key");
            require_only_keys(item.value(), {"type", "unit"}, where);
            SlotRule rule;
            const auto kind =
                value_kind_from_name(require_string(item.value(), "type", where));
            if (!kind)
                throw Error(ErrorCode::SchemaViolation,
                            where + ": unknown slot type");
            rule.type = *kind;
            if (const auto unit_it = item.value().find("unit");
                unit_it != item.value().end()) {
                if (rule.type != ValueKind::Quantity)
                    throw Error(ErrorCode::SchemaViolation,
                                where + ": only quantity slots take a unit");
                if (!unit_it->is_string())
                    throw Error(ErrorCode::SchemaViolation,
                                where + ": 'unit' must be a string");
                const auto unit = unit_from_suffix(unit_it->get<std::string>());
                if (!unit)
                    throw Error(ErrorCode::UnknownUnit,
                                where + ": unknown unit '" +
                                    unit_it->get<std::string>() + "'");
                rule.unit = unit;
            }
            dialect.allowed_slots[dimension_index(d)].emplace(item.key(), rule);
        }
    }

    if (const auto it = doc.find("nl_templates"); it != doc.end()) {
        if (!it->is_array())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": 'nl_templates' must be an array");
        for (const auto& entry : *it) {
            const std::string where = what + " nl template";
            require_only_keys(entry, {"text", "requires"}, where);
            NlTemplate tpl;
            tpl.text = require_string(entry, "text", where);
            tpl.required = parse_required(entry, where);
            for (const auto& ref : tpl.required)
                require_allowed(dialect, ref, where);
            require_placeholders_covered(scan_placeholders(tpl.text, where),
                                         tpl.required, where);
            dialect.nl_templates.push_back(std::move(tpl));
        }
    }

    if (const auto it = doc.find("robot_rules"); it != doc.end()) {
        if (!it->is_array())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": 'robot_rules' must be an array");
        for (const auto& entry : *it) {
            const std::string where = what + " robot rule";
            require_only_keys(entry, {"cmd", "args", "requires"}, where);
            RobotRule rule;
            rule.command = require_string(entry, "cmd", where);
            if (const auto args_it = entry.find("args"); args_it != entry.end()) {
                if (!args_it->is_array())
                    throw Error(ErrorCode::SchemaViolation,
                                where + ": 'args' must be an array");
                for (const auto& arg : *args_it) {
                    if (!arg.is_string())
                        throw Error(ErrorCode::SchemaViolation,
                                    where + ": arguments are strings");
                    rule.args.push_back(arg.get<std::string>());
                }
            }
            rule.required = parse_required(entry, where);
            if (rule.required.empty())
                throw Error(ErrorCode::SchemaViolation,
                            where + ": a robot rule needs at least one "
                                    "required slot");
            for (const auto& ref : rule.required)
                require_allowed(dialect, ref, where);
            std::vector<SlotRef> placeholders;
            for (const auto& arg : rule.args) {
                // An argument that is exactly one placeholder, or a literal.
                for (const auto& ref : scan_placeholders(arg, where))
                    placeholders.push_back(ref);
            }
            require_placeholders_covered(placeholders, rule.required, where);
            dialect.robot_rules.push_back(std::move(rule));
        }
    }

    if (const auto it = doc.find("twin_paths"); it != doc.end()) {
        require_object(*it, what + " twin_paths");
        for (const auto& item : it->items()) {
            const std::string where = what + " twin path " + item.key();
            const SlotRef ref = parse_slot_ref(item.key(), where);
            require_allowed(dialect, ref, where);
            if (!item.value().is_string() ||
                item.value().get<std::string>().empty() ||
                item.value().get<std::string>().front() != '/')
                throw Error(ErrorCode::SchemaViolation,
                            where + ": paths are non-empty and start with '/'");
            dialect.twin_paths.emplace(item.key(),
                                       item.value().get<std::string>());
        }
    }

    return dialect;
}

std::vector<DialectViolationDetail> validate_against_dialect(
    const Cyberstatement& statement, const Dialect& dialect) {
    std::vector<DialectViolationDetail> out;
    for (const auto& block : statement.blocks) {
        for (const auto& slot : block.slots) {
            const SlotRef ref{block.dimension, slot.key};
            const auto* rule = dialect.rule(block.dimension, slot.key);
            if (rule == nullptr) {
                out.push_back({SlotProblem::UnknownKey, block.dimension,
                               slot.key,
                               "slot " + ref.text() + " is not allowed by "
                                   "dialect '" + dialect.name + "'"});
                continue;
            }
            if (slot.value.kind() != rule->type) {
                out.push_back(
                    {SlotProblem::WrongType, block.dimension, slot.key,
                     "slot " + ref.text() + " must be a " +
                         std::string(value_kind_name(rule->type)) + ", got " +
                         std::string(value_kind_name(slot.value.kind()))});
                continue;
            }
            if (rule->type == ValueKind::Quantity && rule->unit &&
                slot.value.as_quantity().unit != *rule->unit) {
                out.push_back({SlotProblem::WrongUnit, block.dimension,
                               slot.key,
                               "slot " + ref.text() + " must be in " +
                                   std::string(unit_suffix(*rule->unit))});
            }
        }
    }
    return out;
}

void require_dialect(const Cyberstatement& statement, const Dialect& dialect) {
    const auto violations = validate_against_dialect(statement, dialect);
    if (violations.empty()) return;
    std::string message = "statement violates dialect '" + dialect.name + "':";
    for (const auto& v : violations) {
        message += "\n  [";
        message += slot_problem_name(v.problem);
        message += "] ";
        message += v.message;
    }
    throw Error(ErrorCode::DialectViolation, message);
}

Dialect load_dialect(const std::string& path) {
    return Dialect::from_json(read_json_file(path, "dialect"));
}

} // namespace cyberlang
