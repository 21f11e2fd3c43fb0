#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace cyberlang {

// Deterministic source of UUID-shaped identifiers for statements and
// negotiation sessions. Two generators with the same seed emit the same
// sequence, which is what keeps scenario runs byte-for-byte reproducible.
class IdGenerator {
public:
    explicit IdGenerator(std::uint64_t seed) : rng_(seed) {}

    // 8-4-4-4-12 lowercase hex, version/variant nibbles pinned so the ids
    // read as v4 UUIDs in logs.
    std::string next();

private:
    std::mt19937_64 rng_;
};

} // namespace cyberlang
