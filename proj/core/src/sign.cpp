#include "cyberlang/sign.hpp"

#include <algorithm>

#include "cyberlang/digest.hpp"
#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"

namespace cyberlang {

nlohmann::json Cybersign::to_json() const {
    nlohmann::json dyad_doc = nlohmann::json::object();
    for (Dimension d : kAllDimensions) {
        const auto& dy = dyad(d);
        dyad_doc[std::string(1, dimension_letter(d))] = {
            {"signifier", dy.signifier},
            {"signified", dy.signified.canonical_text()},
        };
    }
    return {{"lambda", lambda}, {"dyads", std::move(dyad_doc)}};
}

Cybersign Cybersign::from_json(const nlohmann::json& doc) {
    const std::string what = "cybersign";
    require_only_keys(doc, {"lambda", "dyads"}, what);
    Cybersign sign;
    sign.lambda = require_string(doc, "lambda", what);

    const auto& dyads = require_field(doc, "dyads", what);
    require_only_keys(dyads, {"P", "S", "T", "C"}, what + " dyads");
    for (Dimension d : kAllDimensions) {
        const std::string key(1, dimension_letter(d));
        const auto& entry = require_field(dyads, key.c_str(), what + " dyads");
        require_only_keys(entry, {"signifier", "signified"},
                          what + " dyad " + key);
        DimensionalDyad dy{
            require_string(entry, "signifier", what + " dyad " + key),
            SemanticValue::parse(
                require_string(entry, "signified", what + " dyad " + key)),
        };
        sign.dyads[dimension_index(d)] = std::move(dy);
    }
    validate_sign(sign);
    return sign;
}

std::string Cybersign::digest() const { return sha256_hex(to_json().dump()); }

void validate_sign(const Cybersign& sign) {
    if (!is_valid_identifier(sign.lambda))
        throw Error(ErrorCode::InvalidValue,
                    "sign lambda '" + sign.lambda + "' is not identifier-shaped");
    for (Dimension d : kAllDimensions) {
        const auto& dy = sign.dyad(d);
        const std::string where =
            "sign '" + sign.lambda + "' dyad " + std::string(1, dimension_letter(d));
        if (!is_valid_identifier(dy.signifier))
            throw Error(ErrorCode::InvalidValue,
                        where + ": signifier is not identifier-shaped");
        if (dy.signified.kind() != ValueKind::Reference)
            throw Error(ErrorCode::InvalidValue,
                        where + ": signified must be a reference");
        if (dy.signified.reference_dimension() != d)
            throw Error(ErrorCode::InvalidValue,
                        where + ": signified points into the wrong dimension");
    }
}

void SignRegistry::register_sign(Cybersign sign) {
    validate_sign(sign);
    const std::string digest = sign.digest();
    auto& senses = senses_[sign.lambda];
    const bool duplicate =
        std::any_of(senses.begin(), senses.end(), [&](const Cybersign& s) {
            return s.digest() == digest;
        });
    if (duplicate)
        throw Error(ErrorCode::DuplicateSign,
                    "sense already registered for '" + sign.lambda + "'");
    if (senses.empty()) order_.push_back(sign.lambda);
    senses.push_back(std::move(sign));
    ++count_;
}

std::vector<Cybersign> SignRegistry::lookup_signs(const std::string& lambda) const {
    const auto it = senses_.find(lambda);
    if (it == senses_.end()) return {};
    return it->second;
}

bool SignRegistry::has_lambda(const std::string& lambda) const {
    return senses_.count(lambda) != 0;
}

nlohmann::json SignRegistry::to_json() const {
    nlohmann::json signs = nlohmann::json::array();
    for (const auto& lambda : order_) {
        for (const auto& sign : senses_.at(lambda)) {
            signs.push_back(sign.to_json());
        }
    }
    return {{"signs", std::move(signs)}};
}

SignRegistry SignRegistry::from_json(const nlohmann::json& doc) {
    const std::string what = "sign registry";
    require_only_keys(doc, {"signs"}, what);
    const auto& signs = require_field(doc, "signs", what);
    if (!signs.is_array())
        throw Error(ErrorCode::SchemaViolation, what + ": 'signs' must be an array");
    SignRegistry registry;
    for (const auto& entry : signs) {
        registry.register_sign(Cybersign::from_json(entry));
    }
    return registry;
}

SignRegistry load_sign_registry(const std::string& path) {
    return SignRegistry::from_json(read_json_file(path, "sign registry"));
}

void save_sign_registry(const SignRegistry& registry, const std::string& path) {
    write_text_file(path, registry.to_json().dump(2) + "\n");
}

} // namespace cyberlang
