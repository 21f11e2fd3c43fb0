#include "cyberlang/compile.hpp"

#include <algorithm>
#include <array>

#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"
#include "cyberlang/weights.hpp"

namespace cyberlang {

namespace {

bool slot_present(const Cyberstatement& statement, const SlotRef& ref) {
    const auto* block = statement.block(ref.dimension);
    return block != nullptr && block->find(ref.key) != nullptr;
}

bool all_present(const Cyberstatement& statement,
                 const std::vector<SlotRef>& required) {
    return std::all_of(required.begin(), required.end(), [&](const SlotRef& r) {
        return slot_present(statement, r);
    });
}

std::string slot_text(const Cyberstatement& statement, const SlotRef& ref) {
    return statement.block(ref.dimension)->find(ref.key)->canonical_text();
}

// Replaces {D.key} with the slot's canonical value text. Placeholders are
// validated at dialect load time, so every lookup here must succeed.
std::string substitute(const std::string& text,
                       const Cyberstatement& statement) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c != '{') {
            out.push_back(c);
            ++pos;
            continue;
        }
        const std::size_t close = text.find('}', pos + 1);
        const SlotRef ref =
            parse_slot_ref(text.substr(pos + 1, close - pos - 1), "template");
        out += slot_text(statement, ref);
        pos = close + 1;
    }
    return out;
}

CompiledForm compile_human(const Cyberstatement& statement,
                           const Dialect& dialect) {
    for (const auto& tpl : dialect.nl_templates) {
        if (!all_present(statement, tpl.required)) continue;
        return CompiledForm{Target::HumanNl, substitute(tpl.text, statement),
                            nlohmann::ordered_json(nullptr)};
    }
    throw Error(ErrorCode::NoApplicableTemplate,
                "no template of dialect '" + dialect.name +
                    "' matches the statement's slots");
}

nlohmann::ordered_json omega_to_json(const IntegrationOperator& omega) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& directive : omega.directives) {
        if (const auto* p = std::get_if<PrecedenceDirective>(&directive)) {
            out.push_back({"prec", std::string(1, dimension_letter(p->higher)),
                           std::string(1, dimension_letter(p->lower))});
        } else if (const auto* q = std::get_if<ParallelDirective>(&directive)) {
            out.push_back({"par", std::string(1, dimension_letter(q->left)),
                           std::string(1, dimension_letter(q->right))});
        } else {
            nlohmann::ordered_json entries = nlohmann::ordered_json::object();
            for (const auto& e : std::get<BlendDirective>(directive).entries) {
                entries[std::string(1, dimension_letter(e.dimension))] = e.weight;
            }
            out.push_back(nlohmann::ordered_json::array(
                {"blend", std::move(entries)}));
        }
    }
    return out;
}

CompiledForm compile_machine(const Cyberstatement& statement) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    // Insert top-level keys already sorted (C < P < S < T < omega) so the
    // serialised document is canonical while slot order stays untouched.
    std::array<const ComponentBlock*, 4> by_letter{
        statement.block(Dimension::Cyber), statement.block(Dimension::Physical),
        statement.block(Dimension::Social), statement.block(Dimension::Thinking)};
    for (const ComponentBlock* block : by_letter) {
        if (block == nullptr) continue;
        nlohmann::ordered_json slots = nlohmann::ordered_json::object();
        for (const auto& slot : block->slots) {
            slots[slot.key] = slot.value.canonical_text();
        }
        doc[std::string(1, dimension_letter(block->dimension))] = std::move(slots);
    }
    if (!statement.omega.empty()) doc["omega"] = omega_to_json(statement.omega);
    return CompiledForm{Target::MachineJson, doc.dump(), std::move(doc)};
}

CompiledForm compile_robot(const Cyberstatement& statement,
                           const Dialect& dialect) {
    const auto present = statement.present_dimensions();
    const DimensionWeights weights = derive_weights(statement.omega, present);

    // Dimensions tied by '||' run concurrently; the group id is the
    // smallest member's index so ids are stable across statements.
    std::array<std::size_t, 4> group{0, 1, 2, 3};
    for (const auto& directive : statement.omega.directives) {
        if (const auto* q = std::get_if<ParallelDirective>(&directive)) {
            const auto a = dimension_index(q->left);
            const auto b = dimension_index(q->right);
            const auto low = std::min(group[a], group[b]);
            for (auto& g : group) {
                if (g == group[a] || g == group[b]) g = low;
            }
        }
    }

    struct Command {
        const RobotRule* rule;
        Dimension dimension;
        double weight;
        std::size_t order; // original rule position, for the stable sort
    };
    std::vector<Command> commands;
    for (std::size_t i = 0; i < dialect.robot_rules.size(); ++i) {
        const auto& rule = dialect.robot_rules[i];
        if (!all_present(statement, rule.required)) continue;
        const Dimension dim = rule.required.front().dimension;
        commands.push_back(Command{&rule, dim, weights.at(dim), i});
    }
    if (commands.empty())
        throw Error(ErrorCode::EmptyCompilation,
                    "no robot rule of dialect '" + dialect.name +
                        "' applies to the statement");

    std::stable_sort(commands.begin(), commands.end(),
                     [](const Command& a, const Command& b) {
                         if (a.weight != b.weight) return a.weight > b.weight;
                         return false;
                     });

    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& cmd : commands) {
        nlohmann::ordered_json args = nlohmann::ordered_json::array();
        for (const auto& arg : cmd.rule->args) {
            args.push_back(substitute(arg, statement));
        }
        nlohmann::ordered_json entry = nlohmann::ordered_json::object();
        entry["cmd"] = cmd.rule->command;
        entry["args"] = std::move(args);
        entry["dimension"] = std::string(1, dimension_letter(cmd.dimension));
        entry["concurrent_group"] = group[dimension_index(cmd.dimension)];
        doc.push_back(std::move(entry));
    }
    return CompiledForm{Target::RobotCmd, doc.dump(), std::move(doc)};
}

CompiledForm compile_twin(const Cyberstatement& statement,
                          const Dialect& dialect) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& block : statement.blocks) {
        for (const auto& slot : block.slots) {
            const SlotRef ref{block.dimension, slot.key};
            const auto it = dialect.twin_paths.find(ref.text());
            if (it == dialect.twin_paths.end()) continue;
            nlohmann::ordered_json patch = nlohmann::ordered_json::object();
            patch["path"] = it->second;
            patch["value"] = slot.value.canonical_text();
            patch["ts"] = nullptr;
            doc.push_back(std::move(patch));
        }
    }
    if (doc.empty())
        throw Error(ErrorCode::EmptyCompilation,
                    "no slot of the statement maps to a twin path in "
                    "dialect '" + dialect.name + "'");
    return CompiledForm{Target::TwinUpdate, doc.dump(), std::move(doc)};
}

} // namespace

std::string_view target_name(Target target) noexcept {
    switch (target) {
    case Target::HumanNl: return "human-nl";
    case Target::MachineJson: return "machine-json";
    case Target::RobotCmd: return "robot-cmd";
    case Target::TwinUpdate: return "twin-update";
    }
    return "?";
}

std::optional<Target> target_from_name(std::string_view name) noexcept {
    for (Target t : {Target::HumanNl, Target::MachineJson, Target::RobotCmd,
                     Target::TwinUpdate}) {
        if (name == target_name(t)) return t;
    }
    return std::nullopt;
}

CompiledForm compile(const Cyberstatement& statement,
                     const TargetProfile& profile) {
    require_dialect(statement, profile.dialect);
    switch (profile.target) {
    case Target::HumanNl: return compile_human(statement, profile.dialect);
    case Target::MachineJson: return compile_machine(statement);
    case Target::RobotCmd: return compile_robot(statement, profile.dialect);
    case Target::TwinUpdate: return compile_twin(statement, profile.dialect);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown target");
}

Cyberstatement decompile_machine_json(const std::string& json_text,
                                      IdGenerator& ids) {
    const std::string what = "machine-json document";
    const auto doc = parse_ordered_json_strict(json_text, what);
    if (!doc.is_object())
        throw Error(ErrorCode::SchemaViolation, what + ": expected an object");
    for (const auto& item : doc.items()) {
        const std::string& key = item.key();
        const bool known = key == "omega" ||
                           (key.size() == 1 && dimension_from_letter(key[0]));
        if (!known)
            throw Error(ErrorCode::SchemaViolation,
                        what + ": unexpected key '" + key + "'");
    }

    Cyberstatement statement;
    statement.id = ids.next();
    for (Dimension d : kAllDimensions) {
        const auto it = doc.find(std::string(1, dimension_letter(d)));
        if (it == doc.end()) continue;
        if (!it->is_object())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": dimension blocks are objects");
        ComponentBlock block{d, {}};
        for (const auto& item : it->items()) {
            if (!is_valid_slot_key(item.key()))
                throw Error(ErrorCode::SchemaViolation,
                            what + ": bad slot key '" + item.key() + "'");
            if (!item.value().is_string())
                throw Error(ErrorCode::SchemaViolation,
                            what + ": slot values are canonical value strings");
            block.slots.push_back(
                Slot{item.key(),
                     SemanticValue::parse(item.value().get<std::string>())});
        }
        if (block.slots.empty())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": dimension block '" +
                            std::string(1, dimension_letter(d)) + "' is empty");
        statement.blocks.push_back(std::move(block));
    }
    if (statement.blocks.empty())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": no dimension blocks");

    const auto omega_it = doc.find("omega");
    if (omega_it != doc.end()) {
        if (!omega_it->is_array())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": 'omega' must be an array");
        auto parse_dim = [&](const nlohmann::ordered_json& v) {
            if (v.is_string() && v.get<std::string>().size() == 1) {
                if (const auto d = dimension_from_letter(v.get<std::string>()[0]))
                    return *d;
            }
            throw Error(ErrorCode::SchemaViolation,
                        what + ": bad dimension in directive");
        };
        for (const auto& entry : *omega_it) {
            if (!entry.is_array() || entry.empty() || !entry[0].is_string())
                throw Error(ErrorCode::SchemaViolation,
                            what + ": directives are tagged arrays");
            const std::string tag = entry[0].get<std::string>();
            if (tag == "prec" || tag == "par") {
                if (entry.size() != 3)
                    throw Error(ErrorCode::SchemaViolation,
                                what + ": '" + tag +
                                    "' takes exactly two dimensions");
                const Dimension a = parse_dim(entry[1]);
                const Dimension b = parse_dim(entry[2]);
                if (tag == "prec")
                    statement.omega.directives.push_back(
                        PrecedenceDirective{a, b});
                else
                    statement.omega.directives.push_back(ParallelDirective{a, b});
            } else if (tag == "blend") {
                if (entry.size() != 2 || !entry[1].is_object())
                    throw Error(ErrorCode::SchemaViolation,
                                what + ": 'blend' takes a weight object");
                BlendDirective blend;
                for (const auto& item : entry[1].items()) {
                    if (item.key().size() != 1 ||
                        !dimension_from_letter(item.key()[0]))
                        throw Error(ErrorCode::SchemaViolation,
                                    what + ": bad blend dimension '" +
                                        item.key() + "'");
                    if (!item.value().is_number())
                        throw Error(ErrorCode::SchemaViolation,
                                    what + ": blend weights are numbers");
                    blend.entries.push_back(
                        BlendEntry{*dimension_from_letter(item.key()[0]),
                                   item.value().get<double>()});
                }
                statement.omega.directives.push_back(std::move(blend));
            } else {
                throw Error(ErrorCode::SchemaViolation,
                            what + ": unknown directive tag '" + tag + "'");
            }
        }
    }

    const auto problems =
        check_directives(statement.omega, statement.present_dimensions());
    if (!problems.empty())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": " + problems.front().message);
    return statement;
}

} // namespace cyberlang
