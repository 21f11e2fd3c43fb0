#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cyberlang/dimension.hpp"
#include "cyberlang/errors.hpp"

namespace cyberlang {

// Closed unit vocabulary for quantities. `None` exists only as the unit of
// dimensionless numbers; a Quantity carrying `None` is rejected because a
// bare Number already covers that case.
enum class UnitCode : std::uint8_t {
    None,
    Metre,     // m
    Second,    // s
    Kilogram,  // kg
    Hertz,     // Hz
    Degree,    // deg
    Percent,   // pct
};

std::string_view unit_suffix(UnitCode unit) noexcept;
std::optional<UnitCode> unit_from_suffix(std::string_view suffix) noexcept;

enum class ValueKind : std::uint8_t {
    Identifier,
    Number,
    Quantity,
    Probability,
    Text,
    Reference,
};

std::string_view value_kind_name(ValueKind kind) noexcept;

// One slot value. The six kinds partition the surface syntax so that
// canonical_text() followed by parse() is the identity:
//
//   Identifier   sector=A7            [A-Za-z][A-Za-z0-9_-]*
//   Number       duration=42          any double outside the open (0,1)
//   Quantity     altitude=50m         double with a glued unit suffix
//   Probability  confidence=0.92      double within [0,1]
//   Text         note="hold position" double-quoted, backslash escapes
//   Reference    target=p:hazard/obstacle   dimension-namespaced path
//
// A bare literal in (0,1) always reads back as Probability, so Number
// refuses that interval; 0 and 1 belong to Probability exactly when the
// literal carries a decimal point ("0.0"/"1.0" vs "0"/"1").
class SemanticValue {
public:
    struct QuantityPayload {
        double magnitude;
        UnitCode unit;
        bool operator==(const QuantityPayload&) const = default;
    };

    // Default is the empty Text value: a legal placeholder for fields
    // that are filled in before use.
    SemanticValue() : kind_(ValueKind::Text), payload_(std::string()) {}

    static SemanticValue identifier(std::string name);
    static SemanticValue number(double value);
    static SemanticValue quantity(double magnitude, UnitCode unit);
    static SemanticValue probability(double value);
    static SemanticValue text(std::string utf8);
    static SemanticValue reference(std::string path);

    // Parses exactly one canonical value; trailing input is an error.
    static SemanticValue parse(std::string_view text);

    ValueKind kind() const noexcept;

    const std::string& as_identifier() const;
    double as_number() const;
    const QuantityPayload& as_quantity() const;
    double as_probability() const;
    const std::string& as_text() const;
    const std::string& as_reference() const;

    // Dimension a Reference points into (p:/s:/t:/c: namespace).
    Dimension reference_dimension() const;

    std::string canonical_text() const;

    bool operator==(const SemanticValue&) const = default;

private:
    using Payload = std::variant<std::string, double, QuantityPayload>;

    SemanticValue(ValueKind kind, Payload payload)
        : kind_(kind), payload_(std::move(payload)) {}

    ValueKind kind_;
    Payload payload_;
};

inline std::string canonical_print_value(const SemanticValue& value) {
    return value.canonical_text();
}

// Shortest decimal that round-trips through a double, in the fixed or
// scientific form std::to_chars picks. "-0" is never produced because all
// constructors normalise the negative zero.
std::string format_double(double value);

bool is_valid_identifier(std::string_view text) noexcept;
bool is_valid_slot_key(std::string_view text) noexcept;
bool is_valid_reference(std::string_view text) noexcept;

} // namespace cyberlang
