#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "cyberlang/dialect.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/statement.hpp"
#include "cyberlang/value.hpp"

namespace cyberlang::testing {

// Random well-formed statements for the round-trip and determinism
// properties. Everything produced here parses cleanly, passes the
// directive checks, and fits permissive_dialect(), so a failure in a
// property test points at the code under test rather than the fixture.
class StatementGenerator {
public:
    explicit StatementGenerator(std::uint64_t seed) : rng_(seed) {}

    struct KeySpec {
        const char* key;
        ValueKind kind;
        UnitCode unit; // meaningful for Quantity only
    };

    static const std::vector<KeySpec>& key_specs() {
        static const std::vector<KeySpec> specs = {
            {"mode", ValueKind::Identifier, UnitCode::None},
            {"zone", ValueKind::Identifier, UnitCode::None},
            {"count", ValueKind::Number, UnitCode::None},
            {"offset", ValueKind::Number, UnitCode::None},
            {"span", ValueKind::Quantity, UnitCode::Metre},
            {"window", ValueKind::Quantity, UnitCode::Second},
            {"confidence", ValueKind::Probability, UnitCode::None},
            {"risk", ValueKind::Probability, UnitCode::None},
            {"note", ValueKind::Text, UnitCode::None},
            {"label", ValueKind::Text, UnitCode::None},
            {"anchor", ValueKind::Reference, UnitCode::None},
            {"origin", ValueKind::Reference, UnitCode::None},
        };
        return specs;
    }

    // Admits every slot the generator can emit, in any dimension. The
    // single template and the per-dimension rules keep human-nl and
    // robot-cmd compilable for most statements without constraining the
    // shapes the generator may produce.
    static Dialect permissive_dialect() {
        Dialect dialect;
        dialect.name = "generated";
        for (Dimension d : kAllDimensions) {
            auto& slots = dialect.allowed_slots[dimension_index(d)];
            for (const auto& spec : key_specs()) {
                SlotRule rule;
                rule.type = spec.kind;
                if (spec.kind == ValueKind::Quantity) rule.unit = spec.unit;
                slots[spec.key] = rule;
            }
        }
        dialect.nl_templates.push_back(
            NlTemplate{"Mode {P.mode} engaged.",
                       {SlotRef{Dimension::Physical, "mode"}}});
        dialect.nl_templates.push_back(NlTemplate{"Statement received.", {}});
        for (Dimension d : kAllDimensions) {
            const std::string letter(1, dimension_letter(d));
            dialect.robot_rules.push_back(
                RobotRule{"apply-" + letter,
                          {"{" + letter + ".mode}"},
                          {SlotRef{d, "mode"}}});
            for (const auto& spec : key_specs()) {
                const SlotRef ref{d, spec.key};
                dialect.twin_paths[ref.text()] =
                    "/gen/" + letter + "/" + spec.key;
            }
        }
        return dialect;
    }

    Cyberstatement next(IdGenerator& ids) {
        Cyberstatement statement;
        statement.id = ids.next();

        std::vector<Dimension> present;
        while (present.empty()) {
            for (Dimension d : kAllDimensions) {
                if (chance(0.6)) present.push_back(d);
            }
        }
        for (Dimension d : present) {
            statement.blocks.push_back(random_block(d));
        }
        statement.omega = random_omega(present);
        return statement;
    }

    SemanticValue random_value(ValueKind kind, UnitCode unit) {
        switch (kind) {
        case ValueKind::Identifier: return SemanticValue::identifier(random_identifier());
        case ValueKind::Number: return SemanticValue::number(random_number());
        case ValueKind::Quantity:
            return SemanticValue::quantity(uniform(-50.0, 50.0), unit);
        case ValueKind::Probability:
            return SemanticValue::probability(random_probability());
        case ValueKind::Text: return SemanticValue::text(random_text());
        case ValueKind::Reference:
            return SemanticValue::reference(random_reference());
        }
        return SemanticValue::identifier("x");
    }

    std::mt19937_64& rng() noexcept { return rng_; }

private:
    bool chance(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
    }
    std::size_t pick(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    std::string random_identifier() {
        static const char* first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
        static const char* tail =
            "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-";
        std::string out(1, first[pick(52)]);
        const std::size_t len = pick(9);
        for (std::size_t i = 0; i < len; ++i) out.push_back(tail[pick(64)]);
        return out;
    }

    double random_number() {
        switch (pick(4)) {
        case 0: return static_cast<double>(
            std::uniform_int_distribution<int>(-1000, 1000)(rng_));
        case 1: {
            double v = uniform(-100.0, 100.0);
            if (v > 0.0 && v < 1.0) v += 1.0; // the open interval is Probability's
            return v;
        }
        case 2: return uniform(1.0, 10.0) * 1e6;
        default: return -uniform(0.0, 1.0) * 1e-3;
        }
    }

    double random_probability() {
        switch (pick(5)) {
        case 0: return 0.0;
        case 1: return 1.0;
        case 2: return static_cast<double>(pick(101)) / 100.0;
        default: return uniform(0.0, 1.0);
        }
    }

    std::string random_text() {
        static const std::string alphabet =
            "abcdefghijklmnopqrstuvwxyz ABCXYZ0123456789"
            ".,;:!?'\"\\()[]{}=~>|#+-/\n\t";
        std::string out;
        const std::size_t len = pick(13);
        for (std::size_t i = 0; i < len; ++i)
            out.push_back(alphabet[pick(alphabet.size())]);
        return out;
    }

    std::string random_reference() {
        static const char* ns = "pstc";
        static const char* seg_first = "abcdefghijklmnopqrstuvwxyz0123456789";
        static const char* seg_tail = "abcdefghijklmnopqrstuvwxyz0123456789-";
        std::string out(1, ns[pick(4)]);
        out.push_back(':');
        const std::size_t segments = 1 + pick(3);
        for (std::size_t s = 0; s < segments; ++s) {
            if (s > 0) out.push_back('/');
            out.push_back(seg_first[pick(36)]);
            const std::size_t len = pick(7);
            for (std::size_t i = 0; i < len; ++i)
                out.push_back(seg_tail[pick(37)]);
        }
        return out;
    }

    ComponentBlock random_block(Dimension d) {
        ComponentBlock block{d, {}};
        auto specs = key_specs();
        std::shuffle(specs.begin(), specs.end(), rng_);
        const std::size_t slots = 1 + pick(5);
        for (std::size_t i = 0; i < slots && i < specs.size(); ++i) {
            block.slots.push_back(Slot{
                specs[i].key, random_value(specs[i].kind, specs[i].unit)});
        }
        return block;
    }

    IntegrationOperator random_omega(const std::vector<Dimension>& present) {
        IntegrationOperator omega;
        const double roll = uniform(0.0, 1.0);
        if (roll < 0.4) return omega;
        if (roll < 0.65) {
            omega.directives.push_back(random_blend(present));
            return omega;
        }

        // A random partition of the present dimensions into parallel
        // groups, then precedence edges that only point from an earlier
        // group to a later one: acyclic and contradiction-free by
        // construction.
        std::vector<Dimension> shuffled = present;
        std::shuffle(shuffled.begin(), shuffled.end(), rng_);
        std::vector<std::vector<Dimension>> groups;
        for (Dimension d : shuffled) {
            if (groups.empty() || chance(0.5)) groups.emplace_back();
            groups.back().push_back(d);
        }
        for (const auto& group : groups) {
            for (std::size_t i = 1; i < group.size(); ++i) {
                omega.directives.push_back(
                    ParallelDirective{group[i - 1], group[i]});
            }
        }
        for (std::size_t i = 0; i < groups.size(); ++i) {
            for (std::size_t j = i + 1; j < groups.size(); ++j) {
                if (!chance(0.5)) continue;
                omega.directives.push_back(PrecedenceDirective{
                    groups[i][pick(groups[i].size())],
                    groups[j][pick(groups[j].size())]});
            }
        }
        std::shuffle(omega.directives.begin(), omega.directives.end(), rng_);
        return omega;
    }

    BlendDirective random_blend(const std::vector<Dimension>& present) {
        std::vector<Dimension> listed = present;
        std::shuffle(listed.begin(), listed.end(), rng_);
        const std::size_t count = 1 + pick(listed.size());
        listed.resize(count);

        // Integer percentages keep the mass constraint exact: a blend
        // listing every present dimension must sum to 1, a partial blend
        // must stay at or below it.
        const bool covers_all = count == present.size();
        int total = covers_all ? 100 : static_cast<int>(pick(101));
        BlendDirective blend;
        for (std::size_t i = 0; i < count; ++i) {
            const bool last = i + 1 == count;
            int part = covers_all && last
                           ? total
                           : static_cast<int>(pick(static_cast<std::size_t>(total) + 1));
            total -= part;
            blend.entries.push_back(
                BlendEntry{listed[i], static_cast<double>(part) / 100.0});
        }
        return blend;
    }

    std::mt19937_64 rng_;
};

} // namespace cyberlang::testing
