#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyberlang/dimension.hpp"
#include "cyberlang/value.hpp"

namespace cyberlang {

// One dimension's half of a sign: a surface label plus the reference it
// stands for. The signified must point into the dyad's own dimension
// (a Physical dyad carries a p: reference, and so on).
struct DimensionalDyad {
    std::string signifier;
    SemanticValue signified;

    bool operator==(const DimensionalDyad&) const = default;
};

// A lexeme bound to four dimensional dyads at once. Identity is the
// SHA-256 of the canonical JSON form, so two signs are "the same sense"
// exactly when every field matches.
struct Cybersign {
    std::string lambda;
    std::array<DimensionalDyad, 4> dyads; // indexed by dimension_index()

    const DimensionalDyad& dyad(Dimension d) const {
        return dyads[dimension_index(d)];
    }

    nlohmann::json to_json() const;
    static Cybersign from_json(const nlohmann::json& doc);

    std::string digest() const;

    bool operator==(const Cybersign&) const = default;
};

// Throws InvalidValue unless lambda is identifier-shaped, every signifier
// is identifier-shaped, and every signified is a Reference into the
// matching dimension.
void validate_sign(const Cybersign& sign);

// Lambda-keyed store of senses. Lookup order is registration order, which
// downstream code treats as the deterministic tie-break of last resort.
// Not internally synchronised; share between threads behind your own lock.
class SignRegistry {
public:
    // Validates the sign; rejects an exact duplicate (same digest) of an
    // already registered sense with DuplicateSign.
    void register_sign(Cybersign sign);

    // All senses for a lambda in registration order; empty when unknown.
    std::vector<Cybersign> lookup_signs(const std::string& lambda) const;

    bool has_lambda(const std::string& lambda) const;
    std::size_t size() const noexcept { return count_; }

    // Lambdas in first-registration order.
    const std::vector<std::string>& lambdas() const noexcept { return order_; }

    nlohmann::json to_json() const;
    static SignRegistry from_json(const nlohmann::json& doc);

private:
    std::map<std::string, std::vector<Cybersign>> senses_;
    std::vector<std::string> order_;
    std::size_t count_ = 0;
};

SignRegistry load_sign_registry(const std::string& path);
void save_sign_registry(const SignRegistry& registry, const std::string& path);

} // namespace cyberlang
