#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <nlohmann/json.hpp>

#include "cyberlang/json_io.hpp"
#include "support/fixtures.hpp"

namespace cyberlang {
namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the installed binary through the shell with the CYL_* environment
// scrubbed, so only the flags (or the extra env assignments) configure it.
RunResult run_cyl(const std::string& args, const std::string& extra_env = "") {
    static int counter = 0;
    const std::string base = ::testing::TempDir() + "cyl-run-" +
                             std::to_string(::getpid()) + "-" +
                             std::to_string(counter++);
    const std::string out_path = base + ".out";
    const std::string err_path = base + ".err";

    std::string command = "env -u CYL_REGISTRY -u CYL_MAPPINGS -u CYL_DIALECT "
                          "-u CYL_CONTEXT ";
    if (!extra_env.empty()) {
        command += extra_env + " ";
    }
    command += std::string(CYL_BINARY) + " " + args + " >" + out_path + " 2>" +
               err_path;

    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_text_file(out_path);
    result.err = read_text_file(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = ::testing::TempDir() + "cyl-" +
                             std::to_string(::getpid()) + "-" + name;
    write_text_file(path, content);
    return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

const std::string kExample = testing::data_path("example.cyl");
const std::string kRegistryArgs =
    " --registry " + testing::data_path("signs.json") + " --mappings " +
    testing::data_path("mappings.json") + " --dialect " +
    testing::data_path("emergency-response.dialect.json");

TEST(CliParse, EchoesTheCanonicalForm) {
    const RunResult run = run_cyl("parse " + kExample);
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_EQ(run.out, testing::kWorkedCanonical + "\n");
    EXPECT_TRUE(run.err.empty()) << run.err;
}

TEST(CliParse, ReportsDiagnosticsWithLocationsAndFailsSemantically) {
    const std::string file = write_temp("broken.cyl", "[P: sector=]\n");
    const RunResult run = run_cyl("parse " + file);
    EXPECT_EQ(run.exit_code, 1);
    EXPECT_TRUE(contains(run.err, file + ":1:")) << run.err;
    EXPECT_TRUE(contains(run.err, "error:")) << run.err;
    EXPECT_TRUE(contains(run.err, "[expected-value]")) << run.err;
}

TEST(CliParse, MissingInputIsAnEnvironmentFailure) {
    const RunResult run = run_cyl("parse /definitely-absent/input.cyl");
    EXPECT_EQ(run.exit_code, 2);
    EXPECT_TRUE(contains(run.err, "cyl:")) << run.err;
}

TEST(CliCheck, ReportsDialectAndFusionHealth) {
    const RunResult run = run_cyl(kRegistryArgs + " check " + kExample);
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_TRUE(contains(run.out, "statement 1: dialect ok")) << run.out;
    EXPECT_TRUE(contains(run.out,
                         "sign 'reconnaissance' sense 1: coherent"))
        << run.out;
    EXPECT_TRUE(contains(run.out, "check: OK")) << run.out;
}

TEST(CliCheck, FlagsDialectViolations) {
    const std::string file = write_temp("offslot.cyl", "[P: speed=99]\n");
    const RunResult run = run_cyl(kRegistryArgs + " check " + file);
    EXPECT_EQ(run.exit_code, 1);
    EXPECT_TRUE(contains(run.out, "dialect violation")) << run.out;
    EXPECT_TRUE(contains(run.out, "check: FAILED")) << run.out;
}

TEST(CliCheck, RefusesToRunWithoutItsInputs) {
    const RunResult run = run_cyl("check " + kExample);
    EXPECT_EQ(run.exit_code, 2);
    EXPECT_TRUE(contains(run.err, "--registry")) << run.err;
}

TEST(CliCompile, RendersTheGoldenSentence) {
    const RunResult run =
        run_cyl("--dialect " +
                testing::data_path("emergency-response.dialect.json") +
                " compile --target human-nl " + kExample);
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_EQ(run.out, testing::kWorkedSentence + "\n");
}

TEST(CliCompile, TheDialectCanComeFromTheEnvironment) {
    const RunResult run = run_cyl(
        "compile --target human-nl " + kExample,
        "CYL_DIALECT=" + testing::data_path("emergency-response.dialect.json"));
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_EQ(run.out, testing::kWorkedSentence + "\n");
}

TEST(CliCompile, EmitsMachineJsonAsOneCompactLine) {
    const RunResult run =
        run_cyl("--dialect " +
                testing::data_path("emergency-response.dialect.json") +
                " compile --target machine-json " + kExample);
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_EQ(run.out,
              "{\"C\":{\"algorithm\":\"path-optimize-v3\","
              "\"datasource\":\"live-weather-api\"},"
              "\"P\":{\"sector\":\"A7\",\"altitude\":\"50m\","
              "\"duration\":\"1800s\"},"
              "\"S\":{\"authorisation\":\"alpha\","
              "\"mission-id\":\"SAR-2026-047\"},"
              "\"T\":{\"intent\":\"reconnaissance\",\"confidence\":\"0.92\","
              "\"urgency\":\"high\"},"
              "\"omega\":[[\"prec\",\"P\",\"S\"],[\"par\",\"T\",\"C\"]]}\n");
}

TEST(CliCompile, AllTargetsAreLabelledPerStatement) {
    const RunResult run =
        run_cyl("--dialect " +
                testing::data_path("emergency-response.dialect.json") +
                " compile --target all " + kExample);
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_TRUE(contains(run.out, "== statement 1 human-nl ==")) << run.out;
    EXPECT_TRUE(contains(run.out, "== statement 1 twin-update ==")) << run.out;
}

TEST(CliCompile, RejectsUnknownTargetsAndMissingDialect) {
    const RunResult bad_target =
        run_cyl("--dialect " +
                testing::data_path("emergency-response.dialect.json") +
                " compile --target brainwave " + kExample);
    EXPECT_EQ(bad_target.exit_code, 2);
    EXPECT_TRUE(contains(bad_target.err, "unknown target"));

    const RunResult no_dialect = run_cyl("compile " + kExample);
    EXPECT_EQ(no_dialect.exit_code, 2);
    EXPECT_TRUE(contains(no_dialect.err, "--dialect"));
}

TEST(CliCompile, TargetWithNoApplicableFormFailsSemantically) {
    const std::string file = write_temp("note.cyl", "[S: note=\"hi\"]\n");
    const RunResult run =
        run_cyl("--dialect " +
                testing::data_path("emergency-response.dialect.json") +
                " compile --target human-nl " + file);
    EXPECT_EQ(run.exit_code, 1);
    EXPECT_TRUE(contains(run.err, "no template")) << run.err;
}

TEST(CliResolve, EmitsTheResolvedMeaningAsJson) {
    const RunResult run =
        run_cyl("--registry " + testing::data_path("signs.json") +
                " --context " + testing::data_path("context.json") +
                " resolve " + kExample);
    ASSERT_EQ(run.exit_code, 0) << run.err;

    const nlohmann::json doc = nlohmann::json::parse(run.out);
    EXPECT_EQ(doc["weights"]["P"].get<double>(), 0.3125);
    EXPECT_EQ(doc["resolved"]["P"]["sector"]["origin"], "statement");
    EXPECT_EQ(doc["resolved"]["P"]["weather"]["origin"], "context");
    EXPECT_EQ(doc["sign_bindings"]["reconnaissance"],
              testing::recon_sign().digest());
}

TEST(CliResolve, StatementIdsFollowTheSeed) {
    const auto id_with_seed = [&](const std::string& seed) {
        const RunResult run =
            run_cyl("--seed " + seed + " resolve " + kExample);
        EXPECT_EQ(run.exit_code, 0);
        return nlohmann::json::parse(run.out)["statement_id"]
            .get<std::string>();
    };
    EXPECT_EQ(id_with_seed("9"), id_with_seed("9"));
    EXPECT_NE(id_with_seed("9"), id_with_seed("10"));
}

TEST(CliResolve, AmbiguityExitsWithItsOwnCode) {
    const std::string file = write_temp(
        "danger.cyl",
        "[P: threat=danger, sector=A7] [T: urgency=high] [+O: P>T]\n");
    const RunResult run =
        run_cyl("--registry " + testing::data_path("signs-homonym.json") +
                " resolve " + file);
    EXPECT_EQ(run.exit_code, 3);
    EXPECT_TRUE(contains(run.err, "'danger'")) << run.err;
    EXPECT_TRUE(contains(run.err, "2 candidates")) << run.err;

    const nlohmann::json doc = nlohmann::json::parse(run.out);
    EXPECT_EQ(doc["lambda"], "danger");
    EXPECT_EQ(doc["candidates"].size(), 2u);
}

TEST(CliSimulate, WritesTheGoldenCorpus) {
    const std::string out_path =
        ::testing::TempDir() + "cyl-" + std::to_string(::getpid()) +
        "-emergency.jsonl";
    const RunResult run = run_cyl(
        "simulate " +
        testing::data_path("scenarios/emergency-response.scenario.json") +
        " --out " + out_path);
    EXPECT_EQ(run.exit_code, 0) << run.err;
    EXPECT_TRUE(contains(run.err, "PASS")) << run.err;
    EXPECT_FALSE(contains(run.err, "FAIL")) << run.err;
    EXPECT_EQ(read_text_file(out_path),
              read_text_file(testing::data_path(
                  "golden/emergency-response.cybercorpus.jsonl")));
    std::remove(out_path.c_str());
}

TEST(CliSimulate, StdoutIsTheDefaultSink) {
    const RunResult run = run_cyl(
        "simulate " +
        testing::data_path("scenarios/danger-negotiation.scenario.json"));
    EXPECT_EQ(run.exit_code, 0) << run.err;
    EXPECT_EQ(run.out, read_text_file(testing::data_path(
                           "golden/danger-negotiation.cybercorpus.jsonl")));
}

TEST(CliSimulate, FailedExpectationsExitSemantically) {
    nlohmann::json doc = nlohmann::json::parse(R"({
        "name": "letdown",
        "seed": 1,
        "context": {"timestamp": 0},
        "agents": [
            {"id": "commander", "kind": "human"},
            {"id": "analyst", "kind": "ai"}
        ],
        "events": [
            {"at": 1, "kind": "publish", "publisher": "commander",
             "source": "[P: sector=A7]"}
        ],
        "expectations": [
            {"event": 0, "assert": "deliveries=5"}
        ]
    })");
    doc["signs"] = testing::data_path("signs.json");
    doc["mappings"] = testing::data_path("mappings.json");
    doc["dialect"] = testing::data_path("emergency-response.dialect.json");
    const std::string file = write_temp("letdown.scenario.json", doc.dump());

    const RunResult run = run_cyl("simulate " + file);
    EXPECT_EQ(run.exit_code, 1);
    EXPECT_TRUE(contains(run.err, "FAIL 'deliveries=5'")) << run.err;
}

TEST(CliSimulate, BrokenScriptsNameTheEvent) {
    nlohmann::json doc = nlohmann::json::parse(R"({
        "name": "broken",
        "seed": 1,
        "context": {"timestamp": 0},
        "agents": [{"id": "commander", "kind": "human"}],
        "events": [
            {"at": 1, "kind": "publish", "publisher": "nobody",
             "source": "[P: sector=A7]"}
        ],
        "expectations": []
    })");
    doc["signs"] = testing::data_path("signs.json");
    doc["mappings"] = testing::data_path("mappings.json");
    doc["dialect"] = testing::data_path("emergency-response.dialect.json");
    const std::string file = write_temp("broken.scenario.json", doc.dump());

    const RunResult run = run_cyl("simulate " + file);
    EXPECT_EQ(run.exit_code, 1);
    EXPECT_TRUE(contains(run.err, "event 0")) << run.err;
}

TEST(CliCorpus, ValidatesTheGoldenLogs) {
    const RunResult run = run_cyl(
        "corpus validate " +
        testing::data_path("golden/emergency-response.cybercorpus.jsonl"));
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_EQ(run.out, "validated 1 record(s), 0 problem(s)\n");

    const RunResult danger = run_cyl(
        "corpus validate " +
        testing::data_path("golden/danger-negotiation.cybercorpus.jsonl"));
    EXPECT_EQ(danger.exit_code, 0);
    EXPECT_EQ(danger.out, "validated 2 record(s), 0 problem(s)\n");
}

TEST(CliCorpus, RejectsTamperedLogs) {
    const std::string golden = read_text_file(testing::data_path(
        "golden/emergency-response.cybercorpus.jsonl"));
    nlohmann::json record =
        nlohmann::json::parse(golden.substr(0, golden.find('\n')));
    record["deliveries"][0]["content"] = "forged";
    const std::string file =
        write_temp("tampered.jsonl", record.dump() + "\n");

    const RunResult run = run_cyl("corpus validate " + file);
    EXPECT_EQ(run.exit_code, 1);
    EXPECT_TRUE(contains(run.out, "1 problem(s)")) << run.out;
    EXPECT_TRUE(contains(run.err, file)) << run.err;
}

} // namespace
} // namespace cyberlang
