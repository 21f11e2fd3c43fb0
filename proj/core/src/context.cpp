#include "cyberlang/context.hpp"

#include <cmath>

#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"

namespace cyberlang {

nlohmann::json ContextSnapshot::to_json() const {
    nlohmann::json doc;
    doc["timestamp"] = timestamp;
    for (Dimension d : kAllDimensions) {
        nlohmann::json block = nlohmann::json::object();
        for (const auto& [key, entry] : state(d)) {
            block[key] = {{"value", entry.value.canonical_text()},
                          {"authoritative", entry.authoritative}};
        }
        doc[std::string(1, dimension_letter(d))] = std::move(block);
    }
    return doc;
}

ContextSnapshot ContextSnapshot::from_json(const nlohmann::json& doc) {
    const std::string what = "context snapshot";
    require_only_keys(doc, {"timestamp", "P", "S", "T", "C"}, what);

    ContextSnapshot ctx;
    const auto& ts = require_field(doc, "timestamp", what);
    if (!ts.is_number_integer() && !ts.is_number_unsigned())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": 'timestamp' must be an integer");
    ctx.timestamp = ts.get<std::int64_t>();

    for (Dimension d : kAllDimensions) {
        const std::string letter(1, dimension_letter(d));
        const auto it = doc.find(letter);
        if (it == doc.end()) continue; // dimension may be omitted entirely
        require_object(*it, what + " " + letter);
        for (const auto& item : it->items()) {
            if (!is_valid_slot_key(item.key()))
                throw Error(ErrorCode::SchemaViolation,
                            what + ": bad slot key '" + item.key() + "'");
            const auto& entry = item.value();
            if (entry.is_string()) {
                // Shorthand: a plain string is a non-authoritative value.
                ctx.set(d, item.key(),
                        SemanticValue::parse(entry.get<std::string>()));
                continue;
            }
            require_only_keys(entry, {"value", "authoritative"},
                              what + " entry '" + item.key() + "'");
            auto value = SemanticValue::parse(require_string(
                entry, "value", what + " entry '" + item.key() + "'"));
            bool authoritative = false;
            if (const auto flag = entry.find("authoritative");
                flag != entry.end()) {
                if (!flag->is_boolean())
                    throw Error(ErrorCode::SchemaViolation,
                                what + ": 'authoritative' must be a boolean");
                authoritative = flag->get<bool>();
            }
            ctx.set(d, item.key(), std::move(value), authoritative);
        }
    }
    return ctx;
}

ContextSnapshot load_context(const std::string& path) {
    return ContextSnapshot::from_json(read_json_file(path, "context snapshot"));
}

void save_context(const ContextSnapshot& context, const std::string& path) {
    write_text_file(path, context.to_json().dump(2) + "\n");
}

} // namespace cyberlang
