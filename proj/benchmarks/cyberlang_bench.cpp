// Microbenchmarks for the hot paths: lexing/parsing, canonical printing,
// weight derivation, meaning evaluation and the wire codec. Fixtures are
// built in code so the binary has no file dependencies.

#include <benchmark/benchmark.h>

#include <string>

#include "cyberlang/context.hpp"
#include "cyberlang/frame.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/meaning.hpp"
#include "cyberlang/parser.hpp"
#include "cyberlang/printer.hpp"
#include "cyberlang/sign.hpp"
#include "cyberlang/weights.hpp"

namespace {

using namespace cyberlang;

const std::string kSource =
    "[P: sector=A7, altitude=50m, duration=1800s] "
    "[S: authorisation=alpha, mission-id=SAR-2026-047] "
    "[T: intent=reconnaissance, confidence=0.92, urgency=high] "
    "[C: algorithm=path-optimize-v3, datasource=live-weather-api] "
    "[+O: P>S, T||C]";

Cyberstatement fixture_statement() {
    IdGenerator ids(1);
    ParseResult result = parse_statement(kSource, ids);
    return *result.statement;
}

SignRegistry fixture_signs() {
    SignRegistry registry;
    Cybersign sign;
    sign.lambda = "reconnaissance";
    sign.dyads[0] = {"recon-flight", SemanticValue::reference("p:flight/survey")};
    sign.dyads[1] = {"mission-order", SemanticValue::reference("s:order/standing")};
    sign.dyads[2] = {"area-scan", SemanticValue::reference("t:plan/scan")};
    sign.dyads[3] = {"scan-task", SemanticValue::reference("c:task/scan")};
    registry.register_sign(sign);
    return registry;
}

ContextSnapshot fixture_context() {
    ContextSnapshot context;
    context.timestamp = 1700000000000;
    context.set(Dimension::Physical, "sector", SemanticValue::identifier("A7"),
                true);
    context.set(Dimension::Social, "urgency",
                SemanticValue::identifier("high"));
    context.set(Dimension::Cyber, "stream",
                SemanticValue::identifier("live-weather-api"));
    return context;
}

void BM_ParseStatement(benchmark::State& state) {
    for (auto _ : state) {
        IdGenerator ids(1);
        ParseResult result = parse_statement(kSource, ids);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ParseStatement);

void BM_PrintCanonical(benchmark::State& state) {
    Cyberstatement statement = fixture_statement();
    for (auto _ : state) {
        std::string text = print_canonical(statement);
        benchmark::DoNotOptimize(text);
    }
}
BENCHMARK(BM_PrintCanonical);

void BM_DeriveWeights(benchmark::State& state) {
    Cyberstatement statement = fixture_statement();
    auto present = statement.present_dimensions();
    for (auto _ : state) {
        DimensionWeights weights = derive_weights(statement.omega, present);
        benchmark::DoNotOptimize(weights);
    }
}
BENCHMARK(BM_DeriveWeights);

void BM_EvaluateMeaning(benchmark::State& state) {
    Cyberstatement statement = fixture_statement();
    SignRegistry signs = fixture_signs();
    ContextSnapshot context = fixture_context();
    for (auto _ : state) {
        MeaningOutcome outcome = evaluate_meaning(statement, context, signs);
        benchmark::DoNotOptimize(outcome);
    }
}
BENCHMARK(BM_EvaluateMeaning);

void BM_FrameRoundTrip(benchmark::State& state) {
    std::string payload(static_cast<std::size_t>(state.range(0)), 'x');
    for (auto _ : state) {
        std::string bytes = encode_frame(Frame{MsgType::Statement, payload});
        auto decoded = decode_frame(bytes);
        benchmark::DoNotOptimize(decoded);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            state.range(0));
}
BENCHMARK(BM_FrameRoundTrip)->Arg(64)->Arg(4096)->Arg(1 << 20);

} // namespace

BENCHMARK_MAIN();
