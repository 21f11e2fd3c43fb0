#include "cyberlang/mapping.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "cyberlang/errors.hpp"
#include "support/fixtures.hpp"

namespace cyberlang {
namespace {

TEST(MappingTable, ForwardAndInverseAgree) {
    MappingTable table(Dimension::Physical, "cp");
    table.add_row("p:flight/survey", "c:task/scan");
    table.add_row("p:hazard/obstacle", "c:anomaly/algorithmic");

    EXPECT_EQ(table.apply("p:flight/survey"), "c:task/scan");
    EXPECT_EQ(table.apply_inverse("c:anomaly/algorithmic"),
              "p:hazard/obstacle");
    EXPECT_TRUE(table.has("p:flight/survey"));
    EXPECT_FALSE(table.has("p:flight/landing"));
    EXPECT_EQ(table.size(), 2u);
}

TEST(MappingTable, RejectsAnythingThatBreaksBijectivity) {
    MappingTable table(Dimension::Physical, "cp");
    table.add_row("p:flight/survey", "c:task/scan");

    const auto expect_code = [](auto&& fn, ErrorCode code) {
        try {
            fn();
            FAIL() << "expected throw";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), code);
        }
    };

    expect_code([&] { table.add_row("p:flight/survey", "c:task/other"); },
                ErrorCode::NotBijective);
    expect_code([&] { table.add_row("p:flight/other", "c:task/scan"); },
                ErrorCode::NotBijective);
    // Wrong dimension on either side.
    expect_code([&] { table.add_row("s:order/x", "c:task/x"); },
                ErrorCode::InvalidValue);
    expect_code([&] { table.add_row("p:flight/x", "p:task/x"); },
                ErrorCode::InvalidValue);
    // Not a reference at all.
    EXPECT_THROW(table.add_row("flight", "c:task/x"), Error);
    EXPECT_EQ(table.size(), 1u);
}

TEST(MappingTable, MissingRowsNameTheTableAndReference) {
    MappingTable table(Dimension::Social, "cs");
    try {
        table.apply("s:order/unknown");
        FAIL() << "expected UnmappedReferenceError";
    } catch (const UnmappedReferenceError& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnmappedReference);
        EXPECT_EQ(e.reference(), "s:order/unknown");
        EXPECT_EQ(e.hop(), "cs");
    }
    EXPECT_THROW(table.apply_inverse("c:unknown/x"), UnmappedReferenceError);
}

MappingRegistry micro_registry() {
    MappingRegistry registry;
    registry.table_for(Dimension::Physical)
        .add_row("p:hazard/obstacle", "c:risk/0");
    registry.table_for(Dimension::Social)
        .add_row("s:risk/evacuation", "c:risk/0");
    return registry;
}

TEST(MappingRegistry, DerivedMapWalksThroughTheHub) {
    const MappingRegistry registry = micro_registry();

    EXPECT_EQ(map_forward(registry, "p:hazard/obstacle"), "c:risk/0");
    EXPECT_EQ(map_inverse(registry, "c:risk/0", Dimension::Social),
              "s:risk/evacuation");
    // The physical hazard and the social evacuation share a hub entry, so
    // each derives the other.
    EXPECT_EQ(map_derived(registry, "p:hazard/obstacle", Dimension::Social),
              "s:risk/evacuation");
    EXPECT_EQ(map_derived(registry, "s:risk/evacuation", Dimension::Physical),
              "p:hazard/obstacle");
    // Derivation into the source dimension is the identity on its domain.
    EXPECT_EQ(map_derived(registry, "p:hazard/obstacle", Dimension::Physical),
              "p:hazard/obstacle");
}

TEST(MappingRegistry, DerivedMapReportsTheFailingHop) {
    const MappingRegistry registry = micro_registry();
    try {
        map_derived(registry, "p:hazard/obstacle", Dimension::Thinking);
        FAIL() << "expected UnmappedReferenceError";
    } catch (const UnmappedReferenceError& e) {
        EXPECT_EQ(e.reference(), "c:risk/0");
        EXPECT_EQ(e.hop(), "ct-inverse");
    }
    try {
        map_forward(registry, "t:plan/unknown");
        FAIL() << "expected UnmappedReferenceError";
    } catch (const UnmappedReferenceError& e) {
        EXPECT_EQ(e.reference(), "t:plan/unknown");
        EXPECT_EQ(e.hop(), "ct");
    }
    // Cyber references have no forward direction.
    EXPECT_THROW(map_forward(registry, "c:risk/0"), Error);
    // Inverse into Cyber is likewise refused.
    EXPECT_THROW(map_inverse(registry, "c:risk/0", Dimension::Cyber), Error);
}

TEST(MappingRegistry, FusionChecksEverySignified) {
    const MappingRegistry registry = testing::worked_mappings();

    const FusionReport good = check_fusion(registry, testing::recon_sign());
    EXPECT_TRUE(good.coherent);
    EXPECT_EQ(good.expected_cyber, "c:task/scan");
    EXPECT_TRUE(good.mismatched.empty());
    for (const auto& reached : good.mapped) {
        EXPECT_EQ(reached, "c:task/scan");
    }

    // Repoint the social dyad at a reference that maps to a different hub
    // entry: still mapped, no longer coherent.
    Cybersign skewed = testing::recon_sign();
    skewed.dyads[dimension_index(Dimension::Social)].signified =
        SemanticValue::reference("s:risk/public-opinion");
    const FusionReport bad = check_fusion(registry, skewed);
    EXPECT_FALSE(bad.coherent);
    ASSERT_EQ(bad.mismatched.size(), 1u);
    EXPECT_EQ(bad.mismatched[0], Dimension::Social);
    EXPECT_EQ(bad.mapped[1], "c:anomaly/algorithmic");

    // A signified with no row at all is an error, not a mismatch.
    Cybersign unmapped = testing::recon_sign();
    unmapped.dyads[dimension_index(Dimension::Thinking)].signified =
        SemanticValue::reference("t:plan/retreat");
    EXPECT_THROW(check_fusion(registry, unmapped), UnmappedReferenceError);
}

TEST(MappingRegistry, JsonRoundTripPreservesEveryRow) {
    const MappingRegistry registry = testing::worked_mappings();
    const MappingRegistry reloaded =
        MappingRegistry::from_json(registry.to_json());
    for (Dimension d :
         {Dimension::Physical, Dimension::Social, Dimension::Thinking}) {
        EXPECT_EQ(reloaded.table_for(d).rows(), registry.table_for(d).rows());
    }
}

TEST(MappingRegistry, LoadsTheShippedTables) {
    const MappingRegistry registry =
        load_mapping_registry(testing::data_path("mappings.json"));
    EXPECT_EQ(registry.table_for(Dimension::Physical).size(), 4u);
    EXPECT_EQ(registry.table_for(Dimension::Social).size(), 3u);
    EXPECT_EQ(registry.table_for(Dimension::Thinking).size(), 3u);
    EXPECT_EQ(map_forward(registry, "p:sector/A7"), "c:zone/a7");

    // Every shipped sign fuses coherently through the shipped tables.
    const SignRegistry signs =
        load_sign_registry(testing::data_path("signs-homonym.json"));
    for (const auto& lambda : signs.lambdas()) {
        for (const auto& sign : signs.lookup_signs(lambda)) {
            EXPECT_TRUE(check_fusion(registry, sign).coherent) << sign.lambda;
        }
    }
}

TEST(MappingRegistry, SaveAndLoadAreInverse) {
    const auto path = std::filesystem::temp_directory_path() /
                      "cyberlang-mapping-roundtrip.json";
    save_mapping_registry(testing::worked_mappings(), path.string());
    const MappingRegistry reloaded = load_mapping_registry(path.string());
    EXPECT_EQ(reloaded.table_for(Dimension::Physical).rows(),
              testing::worked_mappings().table_for(Dimension::Physical).rows());
    std::filesystem::remove(path);
}

TEST(MappingRegistry, RejectsMalformedDocuments) {
    EXPECT_THROW(MappingRegistry::from_json(nlohmann::json::array()), Error);
    EXPECT_THROW(
        MappingRegistry::from_json({{"cp", {{"p:a/b", 7}}}}), Error);
    EXPECT_THROW(
        MappingRegistry::from_json(
            {{"cp", nlohmann::json::array({{"p:a/b"}})}}),
        Error);
}

// Randomised bijectivity: permutation tables guarantee every composed
// walk is total, so the two-hop oracle can be checked everywhere.
TEST(MappingRegistry, ComposedWalksMatchTheTwoHopOracle) {
    std::mt19937_64 rng(2026);
    const int n = 128;

    std::vector<int> sigma_p(n), sigma_s(n), sigma_t(n);
    for (int i = 0; i < n; ++i) sigma_p[i] = sigma_s[i] = sigma_t[i] = i;
    std::shuffle(sigma_p.begin(), sigma_p.end(), rng);
    std::shuffle(sigma_s.begin(), sigma_s.end(), rng);
    std::shuffle(sigma_t.begin(), sigma_t.end(), rng);

    MappingRegistry registry;
    for (int i = 0; i < n; ++i) {
        registry.table_for(Dimension::Physical)
            .add_row("p:site/k" + std::to_string(i),
                     "c:hub/k" + std::to_string(sigma_p[i]));
        registry.table_for(Dimension::Social)
            .add_row("s:role/k" + std::to_string(i),
                     "c:hub/k" + std::to_string(sigma_s[i]));
        registry.table_for(Dimension::Thinking)
            .add_row("t:idea/k" + std::to_string(i),
                     "c:hub/k" + std::to_string(sigma_t[i]));
    }

    for (int i = 0; i < n; ++i) {
        const std::string p = "p:site/k" + std::to_string(i);
        // map_derived must equal explicit forward-then-inverse.
        const std::string hub = map_forward(registry, p);
        EXPECT_EQ(map_derived(registry, p, Dimension::Social),
                  map_inverse(registry, hub, Dimension::Social));
        EXPECT_EQ(map_derived(registry, p, Dimension::Thinking),
                  map_inverse(registry, hub, Dimension::Thinking));
        // And the oracle: sigma_s^{-1}(sigma_p(i)) computed directly.
        int j = 0;
        while (sigma_s[j] != sigma_p[i]) ++j;
        EXPECT_EQ(map_derived(registry, p, Dimension::Social),
                  "s:role/k" + std::to_string(j));
        // Forward then inverse within the same dimension is the identity.
        EXPECT_EQ(map_inverse(registry, hub, Dimension::Physical), p);
    }
}

} // namespace
} // namespace cyberlang
