#pragma once

#include <map>
#include <string>
#include <vector>

#include "cyberlang/context.hpp"
#include "cyberlang/sign.hpp"

namespace cyberlang {

// Memory of past negotiation outcomes, keyed by the shape of the context
// they were settled in. Two contexts count as the same situation when
// they expose the same dimension/key pairs; values are deliberately
// ignored so the prior generalises.
//
// A recorded outcome nudges future disambiguation through a bounded
// boost: 0.5 * wins / (1 + total). The bound keeps learned priors weaker
// than any single context match, so fresh evidence always dominates.
class InterpretationLedger {
public:
    static std::string context_signature(const ContextSnapshot& context);

    void record_outcome(const ContextSnapshot& context,
                        const std::string& lambda, const Cybersign& chosen);

    // Boost for one candidate sign under this context shape.
    double prior_boost(const ContextSnapshot& context, const std::string& lambda,
                       const Cybersign& candidate) const;

    // All boosts for a lambda, keyed by sign digest; the shape
    // evaluate_meaning consumes.
    std::map<std::string, double> prior_boosts(const ContextSnapshot& context,
                                               const std::string& lambda) const;

    std::size_t size() const noexcept { return events_.size(); }

    // JSONL persistence: one event object per line, append-only in spirit
    // (save rewrites the full history; counts are rebuilt on load).
    std::string to_jsonl() const;
    static InterpretationLedger from_jsonl(const std::string& text);

    void save(const std::string& path) const;
    static InterpretationLedger load(const std::string& path);

private:
    struct Event {
        std::string signature;
        std::string lambda;
        std::string chosen; // sign digest
    };

    // (signature, lambda) -> digest -> wins
    std::map<std::pair<std::string, std::string>, std::map<std::string, int>>
        counts_;
    std::vector<Event> events_;
};

} // namespace cyberlang
