#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyberlang/context.hpp"
#include "cyberlang/sign.hpp"
#include "cyberlang/statement.hpp"
#include "cyberlang/weights.hpp"

namespace cyberlang {

enum class Origin { Statement, Context };

std::string_view origin_name(Origin origin) noexcept;

struct ResolvedSlot {
    SemanticValue value;
    Origin origin = Origin::Statement;

    bool operator==(const ResolvedSlot&) const = default;
};

// A slot key claimed by both the statement and the context. Recorded even
// when the two values agree, so downstream agents can see every overlap.
struct MeaningConflict {
    Dimension dimension;
    std::string key;
    SemanticValue statement_value;
    SemanticValue context_value;
    Origin winner = Origin::Statement;

    bool operator==(const MeaningConflict&) const = default;
};

// The evaluated interpretation of one statement in one context. Two
// agents computed the same meaning exactly when these compare equal;
// digest() is the canonical hash negotiation exchanges as shorthand.
struct ResolvedMeaning {
    std::string statement_id;
    DimensionWeights weights;
    std::array<std::map<std::string, ResolvedSlot>, 4> resolved;
    std::vector<MeaningConflict> conflicts;
    std::map<std::string, Cybersign> sign_bindings; // lambda -> chosen sense

    const std::map<std::string, ResolvedSlot>& slots(Dimension d) const {
        return resolved[dimension_index(d)];
    }

    nlohmann::json to_json() const;
    std::string digest() const;

    bool operator==(const ResolvedMeaning&) const = default;
};

// A lexeme with several senses that the context and priors could not
// separate. Returned as a value, not thrown: an undecidable slot is an
// expected outcome that negotiation exists to fix.
struct Ambiguity {
    std::string statement_id;
    Dimension dimension;
    std::string key;
    std::string lambda;
    std::vector<Cybersign> candidates; // registry order

    bool operator==(const Ambiguity&) const = default;

    nlohmann::json to_json() const;
};

using MeaningOutcome = std::variant<ResolvedMeaning, Ambiguity>;

// Context-similarity scores for each candidate sense. `chosen` is empty
// when the top score is shared, in which case the caller reports an
// Ambiguity instead of picking arbitrarily.
struct DisambiguationResult {
    std::optional<Cybersign> chosen;
    std::vector<double> scores; // aligned with the candidates argument
};

// Score of a candidate: the sum over dimensions of that dimension's
// derived weight when the candidate's signified for the dimension appears
// verbatim among the context values there, plus the caller-supplied prior
// boost keyed by sign digest.
DisambiguationResult disambiguate(const std::vector<Cybersign>& candidates,
                                  const ContextSnapshot& context,
                                  const DimensionWeights& weights,
                                  const std::map<std::string, double>& boosts);

// Folds a statement against the context:
//   - weights come from the statement's integration operator;
//   - statement slots land with origin=statement; a context entry under
//     the same key is recorded as a conflict, and wins only when it is
//     authoritative and its dimension's weight is not exceeded by any
//     other present dimension;
//   - remaining context entries fill in with origin=context (this can add
//     whole dimensions the statement never mentioned);
//   - every identifier that names at least one registered sign is bound
//     to a sense, consulting `prior_boosts` (sign digest -> boost) when
//     several senses compete; an unresolvable tie yields Ambiguity.
MeaningOutcome evaluate_meaning(const Cyberstatement& statement,
                                const ContextSnapshot& context,
                                const SignRegistry& signs,
                                const std::map<std::string, double>& prior_boosts = {});

// A negotiation-time correction: overrides for one dimension, applied
// with context origin. Displaced values are appended to the conflict
// list; the dimension is created when absent. A marker for a different
// statement id raises UnknownStatement.
struct MetaMarker {
    std::string statement_id;
    Dimension dimension;
    std::vector<Slot> overrides;

    bool operator==(const MetaMarker&) const = default;

    nlohmann::json to_json() const;
    static MetaMarker from_json(const nlohmann::json& doc);
};

ResolvedMeaning apply_meta_marker(ResolvedMeaning meaning,
                                  const MetaMarker& marker);

} // namespace cyberlang
