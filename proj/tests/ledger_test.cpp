#include "cyberlang/ledger.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include "cyberlang/digest.hpp"
#include "cyberlang/errors.hpp"
#include "cyberlang/meaning.hpp"
#include "cyberlang/parser.hpp"
#include "support/fixtures.hpp"

namespace cyberlang {
namespace {

ContextSnapshot sample_context() {
    ContextSnapshot context;
    context.timestamp = 1754006400000;
    context.set(Dimension::Physical, "weather",
                SemanticValue::identifier("clear"));
    context.set(Dimension::Physical, "detected",
                SemanticValue::reference("p:hazard/obstacle"));
    context.set(Dimension::Social, "oncall",
                SemanticValue::identifier("unit-7"));
    return context;
}

TEST(Ledger, SignatureHashesTheSortedShape) {
    const ContextSnapshot context = sample_context();
    // The signature is the hash of the dimension/key shape, one line per
    // entry, sorted: values and timestamp play no part.
    const std::string expected =
        sha256_hex("P/detected\nP/weather\nS/oncall\n");
    EXPECT_EQ(InterpretationLedger::context_signature(context), expected);
}

TEST(Ledger, SignatureIgnoresValuesAndTimestamps) {
    ContextSnapshot a = sample_context();
    ContextSnapshot b = sample_context();
    b.timestamp = 1;
    b.set(Dimension::Physical, "weather", SemanticValue::identifier("storm"));
    b.set(Dimension::Physical, "detected",
          SemanticValue::reference("p:crowd/panic-surge"));
    EXPECT_EQ(InterpretationLedger::context_signature(a),
              InterpretationLedger::context_signature(b));

    ContextSnapshot c = sample_context();
    c.set(Dimension::Cyber, "uplink", SemanticValue::identifier("sat-2"));
    EXPECT_NE(InterpretationLedger::context_signature(a),
              InterpretationLedger::context_signature(c));

    EXPECT_EQ(InterpretationLedger::context_signature(ContextSnapshot{}),
              sha256_hex(""));
}

TEST(Ledger, BoostsFollowTheBoundedWinRatio) {
    InterpretationLedger ledger;
    const ContextSnapshot context = sample_context();
    const Cybersign hazard = testing::danger_hazard_sign();
    const Cybersign crowd = testing::danger_crowd_sign();

    EXPECT_EQ(ledger.prior_boost(context, "danger", hazard), 0.0);

    ledger.record_outcome(context, "danger", hazard);
    // One win out of one event: 0.5 * 1 / (1 + 1).
    EXPECT_DOUBLE_EQ(ledger.prior_boost(context, "danger", hazard), 0.25);
    EXPECT_DOUBLE_EQ(ledger.prior_boost(context, "danger", crowd), 0.0);

    ledger.record_outcome(context, "danger", hazard);
    ledger.record_outcome(context, "danger", crowd);
    // Three events for the pair: hazard 2 wins, crowd 1.
    EXPECT_DOUBLE_EQ(ledger.prior_boost(context, "danger", hazard),
                     0.5 * 2 / 4);
    EXPECT_DOUBLE_EQ(ledger.prior_boost(context, "danger", crowd),
                     0.5 * 1 / 4);

    const auto boosts = ledger.prior_boosts(context, "danger");
    ASSERT_EQ(boosts.size(), 2u);
    EXPECT_DOUBLE_EQ(boosts.at(hazard.digest()), 0.25);
    EXPECT_DOUBLE_EQ(boosts.at(crowd.digest()), 0.125);

    // The boost never reaches 0.5, so a real context match always beats
    // a learned prior whose dimension weight is at least 0.5.
    for (int i = 0; i < 100; ++i) ledger.record_outcome(context, "danger", hazard);
    EXPECT_LT(ledger.prior_boost(context, "danger", hazard), 0.5);
}

TEST(Ledger, OutcomesDoNotLeakAcrossShapesOrLambdas) {
    InterpretationLedger ledger;
    const ContextSnapshot context = sample_context();
    const Cybersign hazard = testing::danger_hazard_sign();
    ledger.record_outcome(context, "danger", hazard);

    ContextSnapshot other_shape;
    other_shape.set(Dimension::Thinking, "pattern",
                    SemanticValue::identifier("x"));
    EXPECT_EQ(ledger.prior_boost(other_shape, "danger", hazard), 0.0);
    EXPECT_EQ(ledger.prior_boost(context, "alarm", hazard), 0.0);
    EXPECT_TRUE(ledger.prior_boosts(context, "alarm").empty());

    // Same shape, different values: the prior carries over by design.
    ContextSnapshot same_shape = sample_context();
    same_shape.set(Dimension::Physical, "weather",
                   SemanticValue::identifier("storm"));
    EXPECT_DOUBLE_EQ(ledger.prior_boost(same_shape, "danger", hazard), 0.25);
}

TEST(Ledger, JsonlRoundTripRebuildsTheCounts) {
    InterpretationLedger ledger;
    const ContextSnapshot context = sample_context();
    ledger.record_outcome(context, "danger", testing::danger_hazard_sign());
    ledger.record_outcome(context, "danger", testing::danger_crowd_sign());
    ledger.record_outcome(ContextSnapshot{}, "reconnaissance",
                          testing::recon_sign());
    ASSERT_EQ(ledger.size(), 3u);

    const std::string text = ledger.to_jsonl();
    // One event per line, newline-terminated.
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);

    const InterpretationLedger reloaded =
        InterpretationLedger::from_jsonl(text);
    EXPECT_EQ(reloaded.size(), 3u);
    EXPECT_EQ(reloaded.to_jsonl(), text);
    EXPECT_DOUBLE_EQ(
        reloaded.prior_boost(context, "danger", testing::danger_hazard_sign()),
        0.5 * 1 / 3);

    EXPECT_THROW(InterpretationLedger::from_jsonl("not json\n"), Error);
    EXPECT_THROW(InterpretationLedger::from_jsonl("{\"signature\":\"x\"}\n"),
                 Error);
}

TEST(Ledger, SaveAndLoadPersistEvents) {
    const auto path = std::filesystem::temp_directory_path() /
                      "cyberlang-ledger-roundtrip.jsonl";
    InterpretationLedger ledger;
    ledger.record_outcome(sample_context(), "danger",
                          testing::danger_crowd_sign());
    ledger.save(path.string());
    const InterpretationLedger reloaded =
        InterpretationLedger::load(path.string());
    EXPECT_EQ(reloaded.size(), 1u);
    EXPECT_EQ(reloaded.to_jsonl(), ledger.to_jsonl());
    std::filesystem::remove(path);

    EXPECT_THROW(InterpretationLedger::load("/nonexistent/ledger.jsonl"),
                 Error);
}

TEST(Ledger, LearnedPriorsResolveTheDangerTie) {
    IdGenerator ids(21);
    const Cyberstatement statement = testing::parse_or_throw(
        "[P: threat=danger, sector=A7] [T: urgency=high] [+O: P>T]", ids);
    const SignRegistry signs = testing::homonym_registry();
    const ContextSnapshot context = sample_context();

    // Without the detected entry the context gives no evidence; strip it
    // so only the learned prior separates the senses.
    ContextSnapshot blind;
    blind.timestamp = context.timestamp;
    blind.set(Dimension::Social, "oncall", SemanticValue::identifier("unit-7"));

    const MeaningOutcome before =
        evaluate_meaning(statement, blind, signs);
    EXPECT_TRUE(std::holds_alternative<Ambiguity>(before));

    InterpretationLedger ledger;
    ledger.record_outcome(blind, "danger", testing::danger_crowd_sign());
    const MeaningOutcome after = evaluate_meaning(
        statement, blind, signs, ledger.prior_boosts(blind, "danger"));
    const auto* meaning = std::get_if<ResolvedMeaning>(&after);
    ASSERT_NE(meaning, nullptr);
    EXPECT_EQ(meaning->sign_bindings.at("danger"),
              testing::danger_crowd_sign());
}

} // namespace
} // namespace cyberlang
