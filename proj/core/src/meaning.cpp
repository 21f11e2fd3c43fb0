#include "cyberlang/meaning.hpp"

#include <algorithm>

#include "cyberlang/digest.hpp"
#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"

namespace cyberlang {

std::string_view origin_name(Origin origin) noexcept {
    return origin == Origin::Statement ? "statement" : "context";
}

nlohmann::json ResolvedMeaning::to_json() const {
    nlohmann::json doc;
    doc["statement_id"] = statement_id;

    nlohmann::json weight_doc = nlohmann::json::object();
    for (const auto& [dim, weight] : weights) {
        weight_doc[std::string(1, dimension_letter(dim))] = weight;
    }
    doc["weights"] = std::move(weight_doc);

    nlohmann::json resolved_doc = nlohmann::json::object();
    for (Dimension d : kAllDimensions) {
        nlohmann::json block = nlohmann::json::object();
        for (const auto& [key, slot] : slots(d)) {
            block[key] = {{"value", slot.value.canonical_text()},
                          {"origin", std::string(origin_name(slot.origin))}};
        }
        resolved_doc[std::string(1, dimension_letter(d))] = std::move(block);
    }
    doc["resolved"] = std::move(resolved_doc);

    nlohmann::json conflict_doc = nlohmann::json::array();
    for (const auto& c : conflicts) {
        conflict_doc.push_back(
            {{"dimension", std::string(1, dimension_letter(c.dimension))},
             {"key", c.key},
             {"statement_value", c.statement_value.canonical_text()},
             {"context_value", c.context_value.canonical_text()},
             {"winner", std::string(origin_name(c.winner))}});
    }
    doc["conflicts"] = std::move(conflict_doc);

    nlohmann::json binding_doc = nlohmann::json::object();
    for (const auto& [lambda, sign] : sign_bindings) {
        binding_doc[lambda] = sign.digest();
    }
    doc["sign_bindings"] = std::move(binding_doc);
    return doc;
}

std::string ResolvedMeaning::digest() const { return sha256_hex(to_json().dump()); }

nlohmann::json Ambiguity::to_json() const {
    nlohmann::json candidate_doc = nlohmann::json::array();
    for (const auto& sign : candidates) candidate_doc.push_back(sign.digest());
    return {{"statement_id", statement_id},
            {"dimension", std::string(1, dimension_letter(dimension))},
            {"key", key},
            {"lambda", lambda},
            {"candidates", std::move(candidate_doc)}};
}

DisambiguationResult disambiguate(const std::vector<Cybersign>& candidates,
                                  const ContextSnapshot& context,
                                  const DimensionWeights& weights,
                                  const std::map<std::string, double>& boosts) {
    if (candidates.empty())
        throw Error(ErrorCode::InvalidArgument,
                    "disambiguate needs at least one candidate");

    DisambiguationResult result;
    result.scores.reserve(candidates.size());

    for (const auto& candidate : candidates) {
        double score = 0.0;
        for (Dimension d : kAllDimensions) {
            const auto weight_it = weights.find(d);
            if (weight_it == weights.end()) continue;
            const auto& signified = candidate.dyad(d).signified;
            const auto& state = context.state(d);
            const bool matched = std::any_of(
                state.begin(), state.end(),
                [&](const auto& kv) { return kv.second.value == signified; });
            if (matched) score += weight_it->second;
        }
        if (const auto it = boosts.find(candidate.digest()); it != boosts.end())
            score += it->second;
        result.scores.push_back(score);
    }

    const auto best =
        std::max_element(result.scores.begin(), result.scores.end());
    const auto winners = std::count(result.scores.begin(), result.scores.end(), *best);
    if (winners == 1) {
        result.chosen =
            candidates[static_cast<std::size_t>(best - result.scores.begin())];
    }
    return result;
}

MeaningOutcome evaluate_meaning(const Cyberstatement& statement,
                                const ContextSnapshot& context,
                                const SignRegistry& signs,
                                const std::map<std::string, double>& prior_boosts) {
    ResolvedMeaning meaning;
    meaning.statement_id = statement.id;
    meaning.weights = derive_weights(statement.omega, statement.present_dimensions());

    // The context can only beat a statement slot when it is authoritative
    // and the slot's dimension is not outweighed by any other.
    double top_weight = 0.0;
    for (const auto& [dim, weight] : meaning.weights)
        top_weight = std::max(top_weight, weight);

    for (const auto& block : statement.blocks) {
        auto& resolved = meaning.resolved[dimension_index(block.dimension)];
        const double block_weight = meaning.weights.at(block.dimension);
        for (const auto& slot : block.slots) {
            const auto* entry = context.find(block.dimension, slot.key);
            if (entry == nullptr) {
                resolved.insert_or_assign(
                    slot.key, ResolvedSlot{slot.value, Origin::Statement});
                continue;
            }
            const bool context_wins =
                entry->authoritative && block_weight >= top_weight;
            meaning.conflicts.push_back(MeaningConflict{
                block.dimension, slot.key, slot.value, entry->value,
                context_wins ? Origin::Context : Origin::Statement});
            resolved.insert_or_assign(
                slot.key,
                context_wins ? ResolvedSlot{entry->value, Origin::Context}
                             : ResolvedSlot{slot.value, Origin::Statement});
        }
    }

    // Context entries under keys the statement left open.
    for (Dimension d : kAllDimensions) {
        auto& resolved = meaning.resolved[dimension_index(d)];
        for (const auto& [key, entry] : context.state(d)) {
            if (!resolved.count(key))
                resolved.insert_or_assign(key,
                                          ResolvedSlot{entry.value, Origin::Context});
        }
    }

    // Bind every identifier that names a registered sign.
    for (const auto& block : statement.blocks) {
        for (const auto& slot : block.slots) {
            if (slot.value.kind() != ValueKind::Identifier) continue;
            const std::string& lambda = slot.value.as_identifier();
            if (meaning.sign_bindings.count(lambda)) continue;
            const auto candidates = signs.lookup_signs(lambda);
            if (candidates.empty()) continue;
            if (candidates.size() == 1) {
                meaning.sign_bindings.emplace(lambda, candidates.front());
                continue;
            }
            auto picked =
                disambiguate(candidates, context, meaning.weights, prior_boosts);
            if (!picked.chosen) {
                return Ambiguity{statement.id, block.dimension, slot.key,
                                 lambda, candidates};
            }
            meaning.sign_bindings.emplace(lambda, std::move(*picked.chosen));
        }
    }
    return meaning;
}

nlohmann::json MetaMarker::to_json() const {
    nlohmann::json overrides_doc = nlohmann::json::array();
    for (const auto& slot : overrides) {
        overrides_doc.push_back(nlohmann::json::array(
            {slot.key, slot.value.canonical_text()}));
    }
    return {{"statement_id", statement_id},
            {"dimension", std::string(1, dimension_letter(dimension))},
            {"overrides", std::move(overrides_doc)}};
}

MetaMarker MetaMarker::from_json(const nlohmann::json& doc) {
    const std::string what = "meta marker";
    require_only_keys(doc, {"statement_id", "dimension", "overrides"}, what);
    MetaMarker marker;
    marker.statement_id = require_string(doc, "statement_id", what);
    const std::string dim = require_string(doc, "dimension", what);
    const auto parsed = dim.size() == 1 ? dimension_from_letter(dim[0])
                                        : std::nullopt;
    if (!parsed)
        throw Error(ErrorCode::SchemaViolation,
                    what + ": bad dimension '" + dim + "'");
    marker.dimension = *parsed;
    const auto& overrides = require_field(doc, "overrides", what);
    if (!overrides.is_array())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": 'overrides' must be an array");
    for (const auto& row : overrides) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_string() ||
            !row[1].is_string())
            throw Error(ErrorCode::SchemaViolation,
                        what + ": overrides are [key, value] string pairs");
        const std::string key = row[0].get<std::string>();
        if (!is_valid_slot_key(key))
            throw Error(ErrorCode::SchemaViolation,
                        what + ": bad slot key '" + key + "'");
        marker.overrides.push_back(
            Slot{key, SemanticValue::parse(row[1].get<std::string>())});
    }
    return marker;
}

ResolvedMeaning apply_meta_marker(ResolvedMeaning meaning,
                                  const MetaMarker& marker) {
    if (meaning.statement_id != marker.statement_id)
        throw Error(ErrorCode::UnknownStatement,
                    "meta marker targets statement " + marker.statement_id +
                        " but the meaning is for " + meaning.statement_id);
    auto& resolved = meaning.resolved[dimension_index(marker.dimension)];
    for (const auto& slot : marker.overrides) {
        const auto it = resolved.find(slot.key);
        if (it != resolved.end()) {
            meaning.conflicts.push_back(MeaningConflict{
                marker.dimension, slot.key, it->second.value, slot.value,
                Origin::Context});
        }
        resolved.insert_or_assign(slot.key,
                                  ResolvedSlot{slot.value, Origin::Context});
    }
    return meaning;
}

} // namespace cyberlang
