#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyberlang/dimension.hpp"
#include "cyberlang/sign.hpp"

namespace cyberlang {

// Bijective reference table between one non-cyber dimension and Cyber.
// Rows are added pairwise; a repeated source or target is rejected with
// NotBijective, so forward and inverse lookups are always well defined.
class MappingTable {
public:
    MappingTable() = default;
    MappingTable(Dimension from, std::string name)
        : from_(from), name_(std::move(name)) {}

    Dimension from_dimension() const noexcept { return from_; }
    const std::string& name() const noexcept { return name_; }

    // Both arguments are full reference texts; `from` must live in the
    // table's dimension and `to` in Cyber.
    void add_row(const std::string& from, const std::string& to);

    // Throws UnmappedReferenceError naming the table when absent.
    std::string apply(const std::string& reference) const;
    std::string apply_inverse(const std::string& cyber_reference) const;

    bool has(const std::string& reference) const {
        return forward_.count(reference) != 0;
    }
    bool has_inverse(const std::string& cyber_reference) const {
        return inverse_.count(cyber_reference) != 0;
    }

    std::size_t size() const noexcept { return forward_.size(); }
    const std::map<std::string, std::string>& rows() const noexcept {
        return forward_;
    }

private:
    Dimension from_ = Dimension::Physical;
    std::string name_ = "cp";
    std::map<std::string, std::string> forward_;
    std::map<std::string, std::string> inverse_;
};

// The three tables with Cyber as the shared hub. Every cross-dimensional
// walk (P to S, say) is a forward step into Cyber followed by an inverse
// step out, which is what keeps the composed maps bijective by
// construction.
struct MappingRegistry {
    MappingRegistry();

    MappingTable& table_for(Dimension non_cyber);
    const MappingTable& table_for(Dimension non_cyber) const;

    nlohmann::json to_json() const;
    static MappingRegistry from_json(const nlohmann::json& doc);

    std::array<MappingTable, 3> tables; // P, S, T in dimension order
};

// Non-cyber reference to its cyber counterpart.
std::string map_forward(const MappingRegistry& registry,
                        const std::string& reference);

// Cyber reference back into `target`.
std::string map_inverse(const MappingRegistry& registry,
                        const std::string& cyber_reference, Dimension target);

// Composition through the hub: forward out of the reference's dimension,
// inverse into `target`. With target equal to the source dimension this
// is the identity on the table's domain.
std::string map_derived(const MappingRegistry& registry,
                        const std::string& reference, Dimension target);

// Fusion coherence of one sign: its P, S and T signifieds must all map
// forward to its own cyber signified.
struct FusionReport {
    bool coherent = false;
    std::string expected_cyber;            // the sign's Sigma_C signified
    std::array<std::string, 3> mapped;     // cyber ref reached from P, S, T
    std::vector<Dimension> mismatched;     // dimensions that disagree
};

// Throws UnmappedReferenceError if a signified has no row at all;
// a present-but-different row is a mismatch, not an error.
FusionReport check_fusion(const MappingRegistry& registry,
                          const Cybersign& sign);

MappingRegistry load_mapping_registry(const std::string& path);
void save_mapping_registry(const MappingRegistry& registry,
                           const std::string& path);

} // namespace cyberlang
