#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cyberlang {

// The four CPST dimensions. Enumerator order is the canonical print order
// used everywhere a dimension sequence has to be deterministic.
enum class Dimension : std::uint8_t {
    Physical = 0,
    Social = 1,
    Thinking = 2,
    Cyber = 3,
};

inline constexpr std::array<Dimension, 4> kAllDimensions = {
    Dimension::Physical,
    Dimension::Social,
    Dimension::Thinking,
    Dimension::Cyber,
};

constexpr char dimension_letter(Dimension d) noexcept {
    switch (d) {
    case Dimension::Physical: return 'P';
    case Dimension::Social: return 'S';
    case Dimension::Thinking: return 'T';
    case Dimension::Cyber: return 'C';
    }
    return '?';
}

constexpr std::string_view dimension_name(Dimension d) noexcept {
    switch (d) {
    case Dimension::Physical: return "Physical";
    case Dimension::Social: return "Social";
    case Dimension::Thinking: return "Thinking";
    case Dimension::Cyber: return "Cyber";
    }
    return "?";
}

constexpr std::optional<Dimension> dimension_from_letter(char c) noexcept {
    switch (c) {
    case 'P': return Dimension::Physical;
    case 'S': return Dimension::Social;
    case 'T': return Dimension::Thinking;
    case 'C': return Dimension::Cyber;
    default: return std::nullopt;
    }
}

constexpr std::size_t dimension_index(Dimension d) noexcept {
    return static_cast<std::size_t>(d);
}

} // namespace cyberlang
