#include "cyberlang/statement.hpp"

#include <algorithm>

#include "cyberlang/errors.hpp"

namespace cyberlang {

namespace {

bool keeps(const std::vector<Dimension>& kept, Dimension d) {
    return std::find(kept.begin(), kept.end(), d) != kept.end();
}

bool directive_survives(const IntegrationDirective& directive,
                        const std::vector<Dimension>& kept) {
    return std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PrecedenceDirective>) {
                return keeps(kept, d.higher) && keeps(kept, d.lower);
            } else if constexpr (std::is_same_v<T, ParallelDirective>) {
                return keeps(kept, d.left) && keeps(kept, d.right);
            } else {
                return std::all_of(
                    d.entries.begin(), d.entries.end(),
                    [&](const BlendEntry& e) { return keeps(kept, e.dimension); });
            }
        },
        directive);
}

} // namespace

Cyberstatement project(const Cyberstatement& statement,
                       const std::vector<Dimension>& dims) {
    Cyberstatement out;
    out.id = statement.id;
    for (const auto& block : statement.blocks) {
        if (keeps(dims, block.dimension)) out.blocks.push_back(block);
    }
    if (out.blocks.empty())
        throw Error(ErrorCode::InvalidArgument,
                    "projection keeps no dimension of the statement");

    const auto kept = out.present_dimensions();
    for (const auto& directive : statement.omega.directives) {
        if (directive_survives(directive, kept))
            out.omega.directives.push_back(directive);
    }
    return out;
}

} // namespace cyberlang
