#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyberlang/broker.hpp"
#include "cyberlang/context.hpp"
#include "cyberlang/dialect.hpp"
#include "cyberlang/mapping.hpp"
#include "cyberlang/sign.hpp"

namespace cyberlang {

// One timed action in a scenario script. Ticks are strictly increasing.
struct ScenarioEvent {
    struct Publish {
        std::string publisher;
        std::string source; // statement text, parsed when the event fires
    };
    struct ContextUpdate {
        ContextSnapshot context;
    };
    struct InjectSign {
        Cybersign sign; // registered mid-run, typically to create homonymy
    };

    std::size_t at = 0;
    std::variant<Publish, ContextUpdate, InjectSign> action;
};

// A post-run check against the corpus record of one publish event.
// Assertions use a tiny fixed grammar:
//   deliveries=<n>            exactly n successful deliveries
//   outcome=resolved          evaluation produced a unique interpretation
//   outcome=ambiguous         evaluation escalated to negotiation
//   negotiation=<state>       converged | failed | none
//   delivered:<agent>=<target>  that agent received that surface form
struct ScenarioExpectation {
    std::size_t event_index = 0;
    std::string assertion;
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 0;
    SignRegistry signs;
    MappingRegistry mappings;
    Dialect dialect;
    ContextSnapshot initial_context;
    std::vector<AgentProfile> agents;
    std::vector<ScenarioEvent> events;
    std::vector<ScenarioExpectation> expectations;
};

// Loads and validates a script. The signs/mappings/dialect/context fields
// may be inline JSON or a string path resolved against the script's own
// directory. Structural problems raise ScriptError carrying the index of
// the offending event (or npos for script-level problems).
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& doc,
                            const std::string& base_dir);

struct ExpectationResult {
    std::size_t event_index = 0;
    std::string assertion;
    bool passed = false;
    std::string detail; // what was actually observed
};

struct ScenarioRun {
    std::vector<CorpusRecord> corpus;
    std::string corpus_jsonl;
    std::vector<ExpectationResult> expectations;

    bool expectations_passed() const noexcept;
};

// Replays the events through a fresh bus seeded from the script, then
// evaluates every expectation. Event-time failures (bad statement, bad
// publisher, dialect violation) surface as ScriptError with the event
// index; expectation mismatches are reported, not thrown.
ScenarioRun run_scenario(const Scenario& scenario);

} // namespace cyberlang
