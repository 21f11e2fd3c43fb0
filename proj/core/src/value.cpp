#include "cyberlang/value.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cyberlang {

namespace {

struct UnitRow {
    UnitCode code;
    std::string_view suffix;
};

// Order matters for longest-match lexing elsewhere; keep multi-letter
// suffixes before their single-letter prefixes if any are ever added.
constexpr std::array<UnitRow, 6> kUnits = {{
    {UnitCode::Metre, "m"},
    {UnitCode::Second, "s"},
    {UnitCode::Kilogram, "kg"},
    {UnitCode::Hertz, "Hz"},
    {UnitCode::Degree, "deg"},
    {UnitCode::Percent, "pct"},
}};

double normalise(double value) {
    // -0.0 and 0.0 print differently but compare equal; collapse to +0.
    return value == 0.0 ? 0.0 : value;
}

[[noreturn]] void bad_value(const std::string& message) {
    throw Error(ErrorCode::InvalidValue, message);
}

bool is_ascii_letter(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool is_identifier_tail(char c) noexcept {
    return is_ascii_letter(c) || is_ascii_digit(c) || c == '_' || c == '-';
}

std::string escape_text(const std::string& raw) {
    std::string out;
    out.reserve(raw.size() + 2);
    out.push_back('"');
    for (char c : raw) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

} // namespace

std::string_view unit_suffix(UnitCode unit) noexcept {
    for (const auto& row : kUnits) {
        if (row.code == unit) return row.suffix;
    }
    return {};
}

std::optional<UnitCode> unit_from_suffix(std::string_view suffix) noexcept {
    for (const auto& row : kUnits) {
        if (row.suffix == suffix) return row.code;
    }
    return std::nullopt;
}

std::string_view value_kind_name(ValueKind kind) noexcept {
    switch (kind) {
    case ValueKind::Identifier: return "identifier";
    case ValueKind::Number: return "number";
    case ValueKind::Quantity: return "quantity";
    case ValueKind::Probability: return "probability";
    case ValueKind::Text: return "text";
    case ValueKind::Reference: return "reference";
    }
    return "?";
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) bad_value("double not representable");
    return std::string(buf, ptr);
}

bool is_valid_identifier(std::string_view text) noexcept {
    if (text.empty() || !is_ascii_letter(text.front())) return false;
    for (char c : text) {
        if (!is_identifier_tail(c)) return false;
    }
    return true;
}

bool is_valid_slot_key(std::string_view text) noexcept {
    if (text.empty() || text.front() < 'a' || text.front() > 'z') return false;
    for (char c : text) {
        const bool ok = (c >= 'a' && c <= 'z') || is_ascii_digit(c) || c == '-';
        if (!ok) return false;
    }
    return true;
}

bool is_valid_reference(std::string_view text) noexcept {
    if (text.size() < 3) return false;
    const char ns = text[0];
    if (ns != 'p' && ns != 's' && ns != 't' && ns != 'c') return false;
    if (text[1] != ':') return false;
    bool at_segment_start = true;
    for (std::size_t i = 2; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '/') {
            if (at_segment_start) return false; // empty segment
            at_segment_start = true;
            continue;
        }
        if (at_segment_start) {
            if (!is_ascii_letter(c) && !is_ascii_digit(c)) return false;
            at_segment_start = false;
        } else if (!is_identifier_tail(c)) {
            return false;
        }
    }
    return !at_segment_start;
}

SemanticValue SemanticValue::identifier(std::string name) {
    if (!is_valid_identifier(name)) bad_value("bad identifier '" + name + "'");
    return SemanticValue(ValueKind::Identifier, std::move(name));
}

SemanticValue SemanticValue::number(double value) {
    if (!std::isfinite(value)) bad_value("number must be finite");
    if (value > 0.0 && value < 1.0)
        bad_value("bare numbers inside (0,1) are probabilities");
    return SemanticValue(ValueKind::Number, normalise(value));
}

SemanticValue SemanticValue::quantity(double magnitude, UnitCode unit) {
    if (!std::isfinite(magnitude)) bad_value("quantity must be finite");
    if (unit == UnitCode::None)
        bad_value("dimensionless quantity; use a number instead");
    return SemanticValue(ValueKind::Quantity,
                         QuantityPayload{normalise(magnitude), unit});
}

SemanticValue SemanticValue::probability(double value) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0)
        bad_value("probability outside [0,1]");
    return SemanticValue(ValueKind::Probability, normalise(value));
}

SemanticValue SemanticValue::text(std::string utf8) {
    for (char c : utf8) {
        const auto byte = static_cast<unsigned char>(c);
        if (byte < 0x20 && c != '\n' && c != '\t')
            bad_value("text contains an unsupported control character");
    }
    return SemanticValue(ValueKind::Text, std::move(utf8));
}

SemanticValue SemanticValue::reference(std::string path) {
    if (!is_valid_reference(path)) bad_value("bad reference '" + path + "'");
    return SemanticValue(ValueKind::Reference, std::move(path));
}

SemanticValue SemanticValue::parse(std::string_view text) {
    if (text.empty()) bad_value("empty value");

    if (text.front() == '"') {
        std::string decoded;
        std::size_t i = 1;
        for (; i < text.size(); ++i) {
            const char c = text[i];
            if (c == '"') break;
            if (c == '\\') {
                if (++i == text.size()) bad_value("dangling escape");
                switch (text[i]) {
                case '"': decoded.push_back('"'); break;
                case '\\': decoded.push_back('\\'); break;
                case 'n': decoded.push_back('\n'); break;
                case 't': decoded.push_back('\t'); break;
                default: bad_value("unknown escape in text value");
                }
            } else {
                decoded.push_back(c);
            }
        }
        if (i >= text.size()) bad_value("unterminated text value");
        if (i + 1 != text.size()) bad_value("trailing input after text value");
        return SemanticValue::text(std::move(decoded));
    }

    if (text.size() >= 2 && text[1] == ':')
        return SemanticValue::reference(std::string(text));

    if (is_ascii_letter(text.front()))
        return SemanticValue::identifier(std::string(text));

    if (text.front() != '-' && !is_ascii_digit(text.front()))
        bad_value("unrecognised value '" + std::string(text) + "'");

    double parsed = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [rest, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc{} || rest == begin)
        bad_value("bad numeric literal '" + std::string(text) + "'");

    const std::string_view numeral(begin, static_cast<std::size_t>(rest - begin));
    const std::string_view tail(rest, static_cast<std::size_t>(end - rest));

    if (!tail.empty()) {
        const auto unit = unit_from_suffix(tail);
        if (!unit)
            throw Error(ErrorCode::UnknownUnit,
                        "unknown unit suffix '" + std::string(tail) + "'");
        return SemanticValue::quantity(parsed, *unit);
    }

    if (parsed > 0.0 && parsed < 1.0) return SemanticValue::probability(parsed);
    if ((parsed == 0.0 || parsed == 1.0) &&
        numeral.find('.') != std::string_view::npos)
        return SemanticValue::probability(parsed);
    return SemanticValue::number(parsed);
}

ValueKind SemanticValue::kind() const noexcept { return kind_; }

const std::string& SemanticValue::as_identifier() const {
    if (kind_ != ValueKind::Identifier)
        throw Error(ErrorCode::InvalidArgument, "value is not an identifier");
    return std::get<std::string>(payload_);
}

double SemanticValue::as_number() const {
    if (kind_ != ValueKind::Number)
        throw Error(ErrorCode::InvalidArgument, "value is not a number");
    return std::get<double>(payload_);
}

const SemanticValue::QuantityPayload& SemanticValue::as_quantity() const {
    if (kind_ != ValueKind::Quantity)
        throw Error(ErrorCode::InvalidArgument, "value is not a quantity");
    return std::get<QuantityPayload>(payload_);
}

double SemanticValue::as_probability() const {
    if (kind_ != ValueKind::Probability)
        throw Error(ErrorCode::InvalidArgument, "value is not a probability");
    return std::get<double>(payload_);
}

const std::string& SemanticValue::as_text() const {
    if (kind_ != ValueKind::Text)
        throw Error(ErrorCode::InvalidArgument, "value is not text");
    return std::get<std::string>(payload_);
}

const std::string& SemanticValue::as_reference() const {
    if (kind_ != ValueKind::Reference)
        throw Error(ErrorCode::InvalidArgument, "value is not a reference");
    return std::get<std::string>(payload_);
}

Dimension SemanticValue::reference_dimension() const {
    const auto& path = as_reference();
    const char upper = static_cast<char>(path.front() - 'a' + 'A');
    return *dimension_from_letter(upper);
}

std::string SemanticValue::canonical_text() const {
    switch (kind_) {
    case ValueKind::Identifier:
    case ValueKind::Reference:
        return std::get<std::string>(payload_);
    case ValueKind::Number:
        return format_double(std::get<double>(payload_));
    case ValueKind::Quantity: {
        const auto& q = std::get<QuantityPayload>(payload_);
        return format_double(q.magnitude) + std::string(unit_suffix(q.unit));
    }
    case ValueKind::Probability: {
        const double p = std::get<double>(payload_);
        if (p == 0.0) return "0.0";
        if (p == 1.0) return "1.0";
        return format_double(p);
    }
    case ValueKind::Text:
        return escape_text(std::get<std::string>(payload_));
    }
    bad_value("corrupt value kind");
}

} // namespace cyberlang
