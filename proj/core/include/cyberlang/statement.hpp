#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyberlang/dimension.hpp"
#include "cyberlang/value.hpp"

namespace cyberlang {

// One key=value entry of a component block. Key syntax is the lowercase
// slot-key grammar; values are any SemanticValue.
struct Slot {
    std::string key;
    SemanticValue value;

    bool operator==(const Slot&) const = default;
};

// The [D: ...] bracket of one dimension. Slots keep their source order,
// which is preserved end to end (canonical print, machine-json, back).
struct ComponentBlock {
    Dimension dimension;
    std::vector<Slot> slots;

    const SemanticValue* find(std::string_view key) const {
        for (const auto& slot : slots) {
            if (slot.key == key) return &slot.value;
        }
        return nullptr;
    }

    bool operator==(const ComponentBlock&) const = default;
};

// P>S: the higher dimension dominates the lower when meanings merge.
struct PrecedenceDirective {
    Dimension higher;
    Dimension lower;

    bool operator==(const PrecedenceDirective&) const = default;
};

// T||C: both dimensions carry equal weight.
struct ParallelDirective {
    Dimension left;
    Dimension right;

    bool operator==(const ParallelDirective&) const = default;
};

// P~0.7, S~0.3: explicit weights for the listed dimensions. All tilde
// entries of a statement fold into a single Blend directive, anchored at
// the position of the first entry.
struct BlendEntry {
    Dimension dimension;
    double weight;

    bool operator==(const BlendEntry&) const = default;
};

struct BlendDirective {
    std::vector<BlendEntry> entries;

    bool operator==(const BlendDirective&) const = default;
};

using IntegrationDirective =
    std::variant<PrecedenceDirective, ParallelDirective, BlendDirective>;

// The full 'Omega' annotation. An empty directive list is the default
// integration (every present dimension weighted equally).
struct IntegrationOperator {
    std::vector<IntegrationDirective> directives;

    bool empty() const noexcept { return directives.empty(); }

    bool operator==(const IntegrationOperator&) const = default;
};

// A parsed four-dimensional statement. Blocks are held in canonical
// dimension order (P, S, T, C) no matter how the source ordered them;
// block order is presentation, not meaning. The id is assigned at parse
// time and deliberately excluded from canonical printing and equivalence.
struct Cyberstatement {
    std::string id;
    std::vector<ComponentBlock> blocks;
    IntegrationOperator omega;

    const ComponentBlock* block(Dimension d) const {
        for (const auto& b : blocks) {
            if (b.dimension == d) return &b;
        }
        return nullptr;
    }

    std::vector<Dimension> present_dimensions() const {
        std::vector<Dimension> out;
        out.reserve(blocks.size());
        for (const auto& b : blocks) out.push_back(b.dimension);
        return out;
    }

    // Structural equality, id ignored.
    bool equivalent(const Cyberstatement& other) const {
        return blocks == other.blocks && omega == other.omega;
    }
};

// Restriction of a statement to the given dimensions. Keeps the blocks of
// dimensions that are both requested and present, and only the directives
// whose operands all survive (a blend survives only when every listed
// dimension does). The id carries over: a projection is a partial view of
// the same utterance. Throws InvalidArgument when nothing remains.
Cyberstatement project(const Cyberstatement& statement,
                       const std::vector<Dimension>& dims);

} // namespace cyberlang
