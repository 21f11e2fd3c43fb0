#include "cyberlang/mapping.hpp"

#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"
#include "cyberlang/value.hpp"

namespace cyberlang {

namespace {

Dimension reference_dimension_of(const std::string& text,
                                 const std::string& where) {
    if (!is_valid_reference(text))
        throw Error(ErrorCode::InvalidValue,
                    where + ": '" + text + "' is not a reference");
    return SemanticValue::reference(text).reference_dimension();
}

} // namespace

void MappingTable::add_row(const std::string& from, const std::string& to) {
    const std::string where = "mapping table " + name_;
    if (reference_dimension_of(from, where) != from_)
        throw Error(ErrorCode::InvalidValue,
                    where + ": source '" + from + "' is outside dimension " +
                        std::string(1, dimension_letter(from_)));
    if (reference_dimension_of(to, where) != Dimension::Cyber)
        throw Error(ErrorCode::InvalidValue,
                    where + ": target '" + to + "' is not a cyber reference");
    if (forward_.count(from))
        throw Error(ErrorCode::NotBijective,
                    where + ": source '" + from + "' is mapped twice");
    if (inverse_.count(to))
        throw Error(ErrorCode::NotBijective,
                    where + ": target '" + to + "' is mapped twice");
    forward_.emplace(from, to);
    inverse_.emplace(to, from);
}

std::string MappingTable::apply(const std::string& reference) const {
    const auto it = forward_.find(reference);
    if (it == forward_.end()) throw UnmappedReferenceError(reference, name_);
    return it->second;
}

std::string MappingTable::apply_inverse(const std::string& cyber_reference) const {
    const auto it = inverse_.find(cyber_reference);
    if (it == inverse_.end())
        throw UnmappedReferenceError(cyber_reference, name_ + "-inverse");
    return it->second;
}

MappingRegistry::MappingRegistry()
    : tables{MappingTable(Dimension::Physical, "cp"),
             MappingTable(Dimension::Social, "cs"),
             MappingTable(Dimension::Thinking, "ct")} {}

MappingTable& MappingRegistry::table_for(Dimension non_cyber) {
    if (non_cyber == Dimension::Cyber)
        throw Error(ErrorCode::InvalidArgument,
                    "cyber is the hub; there is no cyber-to-cyber table");
    return tables[dimension_index(non_cyber)];
}

const MappingTable& MappingRegistry::table_for(Dimension non_cyber) const {
    return const_cast<MappingRegistry*>(this)->table_for(non_cyber);
}

nlohmann::json MappingRegistry::to_json() const {
    nlohmann::json doc;
    for (const auto& table : tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [from, to] : table.rows()) {
            rows.push_back(nlohmann::json::array({from, to}));
        }
        doc[table.name()] = std::move(rows);
    }
    return doc;
}

MappingRegistry MappingRegistry::from_json(const nlohmann::json& doc) {
    const std::string what = "mapping registry";
    require_only_keys(doc, {"cp", "cs", "ct"}, what);
    MappingRegistry registry;
    for (auto& table : registry.tables) {
        const auto it = doc.find(table.name());
        if (it == doc.end()) continue; // an absent table is just empty
        if (!it->is_array())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": '" + table.name() + "' must be an array");
        for (const auto& row : *it) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_string() ||
                !row[1].is_string())
                throw Error(ErrorCode::SchemaViolation,
                            what + ": rows of '" + table.name() +
                                "' must be [source, target] string pairs");
            table.add_row(row[0].get<std::string>(), row[1].get<std::string>());
        }
    }
    return registry;
}

std::string map_forward(const MappingRegistry& registry,
                        const std::string& reference) {
    const Dimension d = reference_dimension_of(reference, "map_forward");
    if (d == Dimension::Cyber)
        throw Error(ErrorCode::InvalidArgument,
                    "map_forward expects a non-cyber reference");
    return registry.table_for(d).apply(reference);
}

std::string map_inverse(const MappingRegistry& registry,
                        const std::string& cyber_reference, Dimension target) {
    if (reference_dimension_of(cyber_reference, "map_inverse") !=
        Dimension::Cyber)
        throw Error(ErrorCode::InvalidArgument,
                    "map_inverse expects a cyber reference");
    return registry.table_for(target).apply_inverse(cyber_reference);
}

std::string map_derived(const MappingRegistry& registry,
                        const std::string& reference, Dimension target) {
    const std::string via = map_forward(registry, reference);
    return map_inverse(registry, via, target);
}

FusionReport check_fusion(const MappingRegistry& registry,
                          const Cybersign& sign) {
    FusionReport report;
    report.expected_cyber =
        sign.dyad(Dimension::Cyber).signified.as_reference();
    report.coherent = true;
    for (Dimension d :
         {Dimension::Physical, Dimension::Social, Dimension::Thinking}) {
        const auto& signified = sign.dyad(d).signified.as_reference();
        const std::string reached = registry.table_for(d).apply(signified);
        report.mapped[dimension_index(d)] = reached;
        if (reached != report.expected_cyber) {
            report.coherent = false;
            report.mismatched.push_back(d);
        }
    }
    return report;
}

MappingRegistry load_mapping_registry(const std::string& path) {
    return MappingRegistry::from_json(read_json_file(path, "mapping registry"));
}

void save_mapping_registry(const MappingRegistry& registry,
                           const std::string& path) {
    write_text_file(path, registry.to_json().dump(2) + "\n");
}

} // namespace cyberlang
