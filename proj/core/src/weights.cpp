#include "cyberlang/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "cyberlang/errors.hpp"
#include "cyberlang/value.hpp"

namespace cyberlang {

namespace {

constexpr double kMassTolerance = 1e-9;

std::string dim_str(Dimension d) { return std::string(1, dimension_letter(d)); }

// Tiny fixed-size union-find over the four dimensions.
struct Groups {
    std::array<std::size_t, 4> parent{0, 1, 2, 3};

    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Analysis {
    Groups groups;
    // Adjacency over group leaders, from dominating to dominated.
    std::array<std::array<bool, 4>, 4> edge{};
    const BlendDirective* blend = nullptr;
};

bool contains(const std::vector<Dimension>& dims, Dimension d) {
    return std::find(dims.begin(), dims.end(), d) != dims.end();
}

// Collects structural problems and, when clean enough, the quotient graph.
Analysis analyse(const IntegrationOperator& omega,
                 const std::vector<Dimension>& present,
                 std::vector<OmegaProblem>* problems) {
    Analysis out;

    auto note = [&](OmegaProblemKind kind, std::string message,
                    std::size_t index) {
        problems->push_back(OmegaProblem{kind, std::move(message), index});
    };
    auto check_operand = [&](Dimension d, std::size_t index) {
        if (contains(present, d)) return true;
        note(OmegaProblemKind::AbsentDimension,
             "directive names dimension " + dim_str(d) +
                 " which has no block in the statement",
             index);
        return false;
    };

    struct Pair {
        Dimension a, b;
        std::size_t index;
    };
    std::vector<Pair> precedences;
    std::vector<Pair> parallels;
    bool blend_seen = false;

    for (std::size_t i = 0; i < omega.directives.size(); ++i) {
        const auto& directive = omega.directives[i];
        if (const auto* p = std::get_if<PrecedenceDirective>(&directive)) {
            const bool ok =
                check_operand(p->higher, i) & check_operand(p->lower, i);
            if (!ok) continue;
            if (p->higher == p->lower) {
                note(OmegaProblemKind::SelfDirective,
                     dim_str(p->higher) + " cannot take precedence over itself",
                     i);
                continue;
            }
            precedences.push_back({p->higher, p->lower, i});
        } else if (const auto* q = std::get_if<ParallelDirective>(&directive)) {
            const bool ok = check_operand(q->left, i) & check_operand(q->right, i);
            if (!ok) continue;
            if (q->left == q->right) {
                note(OmegaProblemKind::SelfDirective,
                     dim_str(q->left) + " cannot be parallel with itself", i);
                continue;
            }
            parallels.push_back({q->left, q->right, i});
        } else {
            const auto& blend = std::get<BlendDirective>(directive);
            if (blend_seen) {
                note(OmegaProblemKind::DuplicateBlendDimension,
                     "only one blend directive is allowed", i);
                continue;
            }
            blend_seen = true;
            out.blend = &blend;

            std::set<Dimension> seen;
            double mass = 0.0;
            for (const auto& entry : blend.entries) {
                if (!check_operand(entry.dimension, i)) continue;
                if (!seen.insert(entry.dimension).second) {
                    note(OmegaProblemKind::DuplicateBlendDimension,
                         "dimension " + dim_str(entry.dimension) +
                             " is blended twice",
                         i);
                    continue;
                }
                if (entry.weight < 0.0 || !std::isfinite(entry.weight)) {
                    note(OmegaProblemKind::NegativeBlendWeight,
                         "blend weight for " + dim_str(entry.dimension) +
                             " must be a finite non-negative number",
                         i);
                    continue;
                }
                mass += entry.weight;
            }
            if (mass > 1.0 + kMassTolerance) {
                note(OmegaProblemKind::BlendMassExceeded,
                     "blend weights sum to " + format_double(mass) +
                         ", above 1",
                     i);
            }
        }
    }

    // Directly opposed pairs are reported as contradictions rather than
    // falling through to the cycle detector, so the message names the pair.
    for (const auto& p : precedences) {
        for (const auto& q : precedences) {
            if (p.a == q.b && p.b == q.a && p.index < q.index) {
                note(OmegaProblemKind::Contradiction,
                     dim_str(p.a) + ">" + dim_str(p.b) + " contradicts " +
                         dim_str(q.a) + ">" + dim_str(q.b),
                     q.index);
            }
        }
        for (const auto& q : parallels) {
            const bool same_pair = (p.a == q.a && p.b == q.b) ||
                                   (p.a == q.b && p.b == q.a);
            if (same_pair) {
                note(OmegaProblemKind::Contradiction,
                     dim_str(p.a) + ">" + dim_str(p.b) + " contradicts " +
                         dim_str(q.a) + "||" + dim_str(q.b),
                     std::max(p.index, q.index));
            }
        }
    }

    for (const auto& q : parallels) {
        out.groups.unite(dimension_index(q.a), dimension_index(q.b));
    }
    for (const auto& p : precedences) {
        const auto from = out.groups.find(dimension_index(p.a));
        const auto to = out.groups.find(dimension_index(p.b));
        out.edge[from][to] = true;
    }

    // Warshall closure, then any self-reachable leader means a cycle
    // (including precedence inside a parallel group).
    auto reach = out.edge;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;

    bool cyclic = false;
    for (std::size_t i = 0; i < 4; ++i) {
        if (out.edge[i][i] || reach[i][i]) cyclic = true;
    }
    if (cyclic) {
        note(OmegaProblemKind::Cycle,
             "precedence directives form a cycle once parallel dimensions "
             "are merged",
             OmegaProblem::npos);
    }
    out.edge = reach;
    return out;
}

} // namespace

std::vector<OmegaProblem> check_directives(const IntegrationOperator& omega,
                                           const std::vector<Dimension>& present) {
    std::vector<OmegaProblem> problems;
    analyse(omega, present, &problems);
    return problems;
}

DimensionWeights derive_weights(const IntegrationOperator& omega,
                                const std::vector<Dimension>& present) {
    if (present.empty())
        throw Error(ErrorCode::InvalidArgument,
                    "cannot derive weights for zero dimensions");
    {
        std::set<Dimension> unique(present.begin(), present.end());
        if (unique.size() != present.size())
            throw Error(ErrorCode::InvalidArgument,
                        "present dimensions contain duplicates");
    }

    std::vector<OmegaProblem> problems;
    Analysis analysis = analyse(omega, present, &problems);
    if (!problems.empty())
        throw Error(ErrorCode::InconsistentDirectives, problems.front().message);

    DimensionWeights weights;

    if (analysis.blend != nullptr) {
        double mass = 0.0;
        for (const auto& entry : analysis.blend->entries) {
            weights[entry.dimension] = entry.weight;
            mass += entry.weight;
        }
        std::vector<Dimension> unlisted;
        for (Dimension d : present) {
            if (!weights.count(d)) unlisted.push_back(d);
        }
        if (unlisted.empty()) {
            if (std::abs(mass - 1.0) > kMassTolerance)
                throw Error(ErrorCode::InconsistentDirectives,
                            "blend covers every dimension but sums to " +
                                format_double(mass));
        } else {
            const double share =
                std::max(0.0, (1.0 - mass) / static_cast<double>(unlisted.size()));
            for (Dimension d : unlisted) weights[d] = share;
        }

        // The explicit vector must still satisfy the other directives.
        for (const auto& directive : omega.directives) {
            if (const auto* p = std::get_if<PrecedenceDirective>(&directive)) {
                if (!(weights[p->higher] > weights[p->lower]))
                    throw Error(ErrorCode::InconsistentDirectives,
                                "blend gives " + dim_str(p->higher) +
                                    " no more weight than " + dim_str(p->lower) +
                                    " despite " + dim_str(p->higher) + ">" +
                                    dim_str(p->lower));
            } else if (const auto* q = std::get_if<ParallelDirective>(&directive)) {
                if (std::abs(weights[q->left] - weights[q->right]) >
                    kMassTolerance)
                    throw Error(ErrorCode::InconsistentDirectives,
                                "blend weights differ across " +
                                    dim_str(q->left) + "||" + dim_str(q->right));
            }
        }
        return weights;
    }

    // Score groups on the quotient order.
    const double n = static_cast<double>(present.size());
    std::array<double, 4> score{};
    double total = 0.0;
    for (Dimension d : present) {
        const auto leader = analysis.groups.find(dimension_index(d));
        double dominated = 0.0;
        double dominating = 0.0;
        std::set<std::size_t> counted;
        for (Dimension other : present) {
            const auto other_leader = analysis.groups.find(dimension_index(other));
            if (other_leader == leader || !counted.insert(other_leader).second)
                continue;
            if (analysis.edge[leader][other_leader]) dominated += 1.0;
            if (analysis.edge[other_leader][leader]) dominating += 1.0;
        }
        score[dimension_index(d)] = n + dominated - dominating;
        total += score[dimension_index(d)];
    }
    for (Dimension d : present) {
        weights[d] = score[dimension_index(d)] / total;
    }
    return weights;
}

} // namespace cyberlang
