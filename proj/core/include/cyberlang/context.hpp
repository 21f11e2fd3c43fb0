#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "cyberlang/dimension.hpp"
#include "cyberlang/value.hpp"

namespace cyberlang {

// Shared situational state the evaluator folds statements against: one
// key→value map per dimension plus a timestamp (milliseconds). Entries
// marked authoritative can beat statement slots during overlay; plain
// entries only fill gaps and flag conflicts.
struct ContextSnapshot {
    struct Entry {
        SemanticValue value;
        bool authoritative = false;

        bool operator==(const Entry&) const = default;
    };

    using State = std::map<std::string, Entry>;

    std::int64_t timestamp = 0;
    std::array<State, 4> states;

    State& state(Dimension d) { return states[dimension_index(d)]; }
    const State& state(Dimension d) const { return states[dimension_index(d)]; }

    void set(Dimension d, const std::string& key, SemanticValue value,
             bool authoritative = false) {
        state(d).insert_or_assign(key, Entry{std::move(value), authoritative});
    }

    const Entry* find(Dimension d, const std::string& key) const {
        const auto& map = state(d);
        const auto it = map.find(key);
        return it == map.end() ? nullptr : &it->second;
    }

    bool operator==(const ContextSnapshot&) const = default;

    nlohmann::json to_json() const;
    static ContextSnapshot from_json(const nlohmann::json& doc);
};

ContextSnapshot load_context(const std::string& path);
void save_context(const ContextSnapshot& context, const std::string& path);

} // namespace cyberlang
