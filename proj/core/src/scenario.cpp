#include "cyberlang/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>

#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"

namespace cyberlang {

namespace {

std::string directory_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    if (slash == std::string::npos) {
        return ".";
    }
    if (slash == 0) {
        return "/";
    }
    return path.substr(0, slash);
}

// Script fields that point at other files hold a string path; everything
// else is inline JSON and passes through untouched.
nlohmann::json resolve_field(const nlohmann::json& value,
                             const std::string& base_dir,
                             const std::string& what) {
    if (!value.is_string()) {
        return value;
    }
    std::string path = value.get<std::string>();
    if (path.empty()) {
        throw Error(ErrorCode::SchemaViolation, what + ": file reference is empty");
    }
    if (path.front() != '/') {
        path = base_dir + "/" + path;
    }
    return read_json_file(path, what);
}

struct Assertion {
    enum class Kind { Deliveries, Outcome, Negotiation, Delivered };

    Kind kind = Kind::Deliveries;
    std::size_t count = 0;                      // Deliveries
    bool ambiguous = false;                     // Outcome
    std::optional<NegotiationState> state;      // Negotiation; nullopt = none
    std::string agent;                          // Delivered
    Target target = Target::HumanNl;            // Delivered
};

std::optional<Assertion> parse_assertion(const std::string& text) {
    Assertion assertion;
    if (text.rfind("deliveries=", 0) == 0) {
        std::string_view digits = std::string_view(text).substr(11);
        std::size_t value = 0;
        auto [end, ec] = std::from_chars(
            digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || end != digits.data() + digits.size() ||
            digits.empty()) {
            return std::nullopt;
        }
        assertion.kind = Assertion::Kind::Deliveries;
        assertion.count = value;
        return assertion;
    }
    if (text == "outcome=resolved" || text == "outcome=ambiguous") {
        assertion.kind = Assertion::Kind::Outcome;
        assertion.ambiguous = text == "outcome=ambiguous";
        return assertion;
    }
    if (text.rfind("negotiation=", 0) == 0) {
        std::string rest = text.substr(12);
        assertion.kind = Assertion::Kind::Negotiation;
        if (rest == "none") {
            assertion.state = std::nullopt;
            return assertion;
        }
        if (rest == "converged" || rest == "failed") {
            assertion.state = negotiation_state_from_name(rest);
            return assertion;
        }
        return std::nullopt;
    }
    if (text.rfind("delivered:", 0) == 0) {
        std::string rest = text.substr(10);
        auto equals = rest.find('=');
        if (equals == std::string::npos || equals == 0) {
            return std::nullopt;
        }
        auto target = target_from_name(rest.substr(equals + 1));
        if (!target) {
            return std::nullopt;
        }
        assertion.kind = Assertion::Kind::Delivered;
        assertion.agent = rest.substr(0, equals);
        assertion.target = *target;
        return assertion;
    }
    return std::nullopt;
}

ScenarioEvent parse_event(const nlohmann::json& doc,
                          const std::string& base_dir, std::size_t index) {
    auto fail = [&](const std::string& what) -> ScriptError {
        return ScriptError(index, what);
    };
    if (!doc.is_object() || !doc.contains("at") || !doc.contains("kind")) {
        throw fail("event needs 'at' and 'kind'");
    }
    if (!doc["at"].is_number_unsigned()) {
        throw fail("'at' must be a non-negative integer tick");
    }
    if (!doc["kind"].is_string()) {
        throw fail("'kind' must be a string");
    }

    ScenarioEvent event;
    event.at = doc["at"].get<std::size_t>();
    const std::string kind = doc["kind"].get<std::string>();
    try {
        if (kind == "publish") {
            require_only_keys(doc, {"at", "kind", "publisher", "source"},
                              "publish event");
            ScenarioEvent::Publish publish;
            publish.publisher = require_string(doc, "publisher", "publish event");
            publish.source = require_string(doc, "source", "publish event");
            if (publish.source.empty()) {
                throw fail("publish 'source' must not be empty");
            }
            event.action = std::move(publish);
        } else if (kind == "context_update") {
            require_only_keys(doc, {"at", "kind", "context"},
                              "context_update event");
            ScenarioEvent::ContextUpdate update;
            update.context = ContextSnapshot::from_json(
                resolve_field(require_field(doc, "context",
                                            "context_update event"),
                              base_dir, "context snapshot"));
            event.action = std::move(update);
        } else if (kind == "inject_sign") {
            require_only_keys(doc, {"at", "kind", "sign"}, "inject_sign event");
            ScenarioEvent::InjectSign inject;
            const auto& sign_doc = require_field(doc, "sign",
                                                 "inject_sign event");
            require_object(sign_doc, "inject_sign event 'sign'");
            inject.sign = Cybersign::from_json(sign_doc);
            event.action = std::move(inject);
        } else {
            throw fail("unknown event kind '" + kind + "'");
        }
    } catch (const ScriptError&) {
        throw;
    } catch (const Error& error) {
        throw fail(error.what());
    }
    return event;
}

} // namespace

Scenario load_scenario(const std::string& path) {
    return scenario_from_json(read_json_file(path, "scenario script"),
                              directory_of(path));
}

Scenario scenario_from_json(const nlohmann::json& doc,
                            const std::string& base_dir) {
    auto fail = [](const std::string& what) -> ScriptError {
        return ScriptError(ScriptError::npos, what);
    };
    try {
        require_only_keys(doc,
                          {"name", "seed", "signs", "mappings", "dialect",
                           "context", "agents", "events", "expectations"},
                          "scenario");
    } catch (const Error& error) {
        throw fail(error.what());
    }

    Scenario scenario;
    try {
        scenario.name = require_string(doc, "name", "scenario");
        if (!doc.contains("seed") || !doc["seed"].is_number_unsigned()) {
            throw Error(ErrorCode::SchemaViolation,
                        "scenario: 'seed' must be a non-negative integer");
        }
        scenario.seed = doc["seed"].get<std::uint64_t>();
        scenario.signs = SignRegistry::from_json(resolve_field(
            require_field(doc, "signs", "scenario"), base_dir, "sign registry"));
        scenario.mappings = MappingRegistry::from_json(
            resolve_field(require_field(doc, "mappings", "scenario"), base_dir,
                          "mapping tables"));
        scenario.dialect = Dialect::from_json(resolve_field(
            require_field(doc, "dialect", "scenario"), base_dir, "dialect"));
        if (doc.contains("context")) {
            scenario.initial_context = ContextSnapshot::from_json(
                resolve_field(doc["context"], base_dir, "context snapshot"));
        }

        const auto& agents = require_field(doc, "agents", "scenario");
        if (!agents.is_array() || agents.empty()) {
            throw Error(ErrorCode::SchemaViolation,
                        "scenario: 'agents' must be a non-empty array");
        }
        std::set<std::string> seen_ids;
        for (const auto& entry : agents) {
            require_only_keys(entry, {"id", "kind"}, "agent");
            AgentProfile agent;
            agent.id = require_string(entry, "id", "agent");
            auto kind = agent_kind_from_name(
                require_string(entry, "kind", "agent"));
            if (!kind) {
                throw Error(ErrorCode::SchemaViolation,
                            "agent '" + agent.id + "': unknown kind");
            }
            agent.kind = *kind;
            if (!seen_ids.insert(agent.id).second) {
                throw Error(ErrorCode::SchemaViolation,
                            "agent '" + agent.id + "' appears twice");
            }
            scenario.agents.push_back(std::move(agent));
        }
    } catch (const ScriptError&) {
        throw;
    } catch (const Error& error) {
        throw fail(error.what());
    }

    const auto& events = doc.contains("events") ? doc["events"]
                                                : nlohmann::json::array();
    if (!events.is_array()) {
        throw fail("'events' must be an array");
    }
    std::size_t last_tick = 0;
    bool first = true;
    for (std::size_t i = 0; i < events.size(); ++i) {
        ScenarioEvent event = parse_event(events[i], base_dir, i);
        if (!first && event.at <= last_tick) {
            throw ScriptError(i, "event ticks must be strictly increasing");
        }
        first = false;
        last_tick = event.at;
        if (const auto* publish =
                std::get_if<ScenarioEvent::Publish>(&event.action)) {
            bool known = std::any_of(
                scenario.agents.begin(), scenario.agents.end(),
                [&](const AgentProfile& a) { return a.id == publish->publisher; });
            if (!known) {
                throw ScriptError(i, "publisher '" + publish->publisher +
                                         "' is not a declared agent");
            }
        }
        scenario.events.push_back(std::move(event));
    }

    if (doc.contains("expectations")) {
        if (!doc["expectations"].is_array()) {
            throw fail("'expectations' must be an array");
        }
        std::size_t ordinal = 0;
        for (const auto& entry : doc["expectations"]) {
            std::string where = "expectation " + std::to_string(ordinal);
            if (!entry.is_object() || !entry.contains("event") ||
                !entry.contains("assert") ||
                !entry["event"].is_number_unsigned() ||
                !entry["assert"].is_string() || entry.size() != 2) {
                throw fail(where + ": needs 'event' index and 'assert' string");
            }
            ScenarioExpectation expectation;
            expectation.event_index = entry["event"].get<std::size_t>();
            expectation.assertion = entry["assert"].get<std::string>();
            if (expectation.event_index >= scenario.events.size()) {
                throw fail(where + ": event index out of range");
            }
            if (!std::holds_alternative<ScenarioEvent::Publish>(
                    scenario.events[expectation.event_index].action)) {
                throw fail(where + ": target event is not a publish");
            }
            if (!parse_assertion(expectation.assertion)) {
                throw fail(where + ": unrecognised assertion '" +
                           expectation.assertion + "'");
            }
            scenario.expectations.push_back(std::move(expectation));
            ++ordinal;
        }
    }
    return scenario;
}

bool ScenarioRun::expectations_passed() const noexcept {
    return std::all_of(expectations.begin(), expectations.end(),
                       [](const ExpectationResult& r) { return r.passed; });
}

namespace {

ExpectationResult evaluate_expectation(const ScenarioExpectation& expectation,
                                       const CorpusRecord& record) {
    ExpectationResult result;
    result.event_index = expectation.event_index;
    result.assertion = expectation.assertion;

    Assertion assertion = *parse_assertion(expectation.assertion);
    switch (assertion.kind) {
    case Assertion::Kind::Deliveries: {
        std::size_t delivered = static_cast<std::size_t>(std::count_if(
            record.deliveries.begin(), record.deliveries.end(),
            [](const Delivery& d) { return d.delivered; }));
        result.passed = delivered == assertion.count;
        result.detail = std::to_string(delivered) + " successful deliveries";
        break;
    }
    case Assertion::Kind::Outcome:
        result.passed = record.ambiguous == assertion.ambiguous;
        result.detail = record.ambiguous ? "outcome was ambiguous"
                                         : "outcome was resolved";
        break;
    case Assertion::Kind::Negotiation:
        if (!record.negotiation_state) {
            result.passed = !assertion.state.has_value();
            result.detail = "no negotiation took place";
        } else {
            result.passed = assertion.state.has_value() &&
                            *assertion.state == *record.negotiation_state;
            result.detail =
                "negotiation ended " +
                std::string(negotiation_state_name(*record.negotiation_state));
        }
        break;
    case Assertion::Kind::Delivered: {
        auto hit = std::find_if(
            record.deliveries.begin(), record.deliveries.end(),
            [&](const Delivery& d) {
                return d.agent == assertion.agent &&
                       d.target == assertion.target && d.delivered;
            });
        result.passed = hit != record.deliveries.end();
        result.detail = result.passed
                            ? "delivered as expected"
                            : "no matching successful delivery for '" +
                                  assertion.agent + "'";
        break;
    }
    }
    return result;
}

} // namespace

ScenarioRun run_scenario(const Scenario& scenario) {
    SemanticBus bus(scenario.signs, scenario.mappings, scenario.dialect,
                    scenario.initial_context, scenario.seed);
    for (const auto& agent : scenario.agents) {
        bus.register_agent(agent);
    }

    std::map<std::size_t, std::size_t> record_of_event;
    for (std::size_t i = 0; i < scenario.events.size(); ++i) {
        const ScenarioEvent& event = scenario.events[i];
        bus.set_tick(event.at);
        try {
            std::visit(
                [&](const auto& action) {
                    using T = std::decay_t<decltype(action)>;
                    if constexpr (std::is_same_v<T, ScenarioEvent::Publish>) {
                        bus.publish_source(action.publisher, action.source);
                        record_of_event[i] = bus.corpus().size() - 1;
                    } else if constexpr (std::is_same_v<
                                             T, ScenarioEvent::ContextUpdate>) {
                        bus.update_context(action.context);
                    } else {
                        bus.signs().register_sign(action.sign);
                    }
                },
                event.action);
        } catch (const Error& error) {
            throw ScriptError(i, error.what());
        }
    }

    ScenarioRun run;
    run.corpus = bus.corpus();
    run.corpus_jsonl = bus.export_corpus();
    for (const auto& expectation : scenario.expectations) {
        run.expectations.push_back(evaluate_expectation(
            expectation, run.corpus[record_of_event.at(expectation.event_index)]));
    }
    return run;
}

} // namespace cyberlang
