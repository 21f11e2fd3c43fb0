#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cyberlang/dimension.hpp"
#include "cyberlang/statement.hpp"

namespace cyberlang {

// Normalised influence of each present dimension. Keys are exactly the
// present dimensions; values are non-negative and sum to 1.
using DimensionWeights = std::map<Dimension, double>;

enum class OmegaProblemKind {
    AbsentDimension,        // directive names a dimension with no block
    SelfDirective,          // directive relates a dimension to itself
    Contradiction,          // directly opposed directive pair
    Cycle,                  // precedence cycles once parallels are merged
    DuplicateBlendDimension,
    NegativeBlendWeight,
    BlendMassExceeded,      // listed blend weights sum above 1
};

struct OmegaProblem {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    OmegaProblemKind kind;
    std::string message;
    // Index into omega.directives of the offending directive, or npos for
    // whole-operator problems such as cycles.
    std::size_t directive_index = npos;
};

// Structural validation of an integration operator against the dimensions
// actually present. The parser turns these into diagnostics with spans;
// derive_weights refuses to run while any remain.
std::vector<OmegaProblem> check_directives(const IntegrationOperator& omega,
                                           const std::vector<Dimension>& present);

// Turns the integration operator into one weight per present dimension.
//
// Without a blend, dimensions tied by '||' form groups, precedence edges
// are lifted onto those groups, and each group scores
//
//     |present| + (groups it dominates) - (groups dominating it)
//
// transitively. Scores are positive, give strictly more weight to the
// dominating side of every precedence edge, and normalise to 1 over the
// present dimensions.
//
// With a blend, the listed weights are taken as-is, leftover mass spreads
// evenly over the unlisted dimensions, and every precedence or parallel
// directive is then checked against the resulting vector.
//
// Throws Error(InconsistentDirectives) when no valid vector exists, and
// Error(InvalidArgument) when `present` is empty or has duplicates.
DimensionWeights derive_weights(const IntegrationOperator& omega,
                                const std::vector<Dimension>& present);

} // namespace cyberlang
