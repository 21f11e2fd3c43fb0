#include "cyberlang/broker.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "cyberlang/digest.hpp"
#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"
#include "cyberlang/parser.hpp"
#include "cyberlang/printer.hpp"

namespace cyberlang {

namespace {

constexpr std::array<std::pair<AgentProfile::Kind, std::string_view>, 4>
    kKindNames{{{AgentProfile::Kind::Human, "human"},
                {AgentProfile::Kind::Ai, "ai"},
                {AgentProfile::Kind::Robot, "robot"},
                {AgentProfile::Kind::Twin, "twin"}}};

} // namespace

std::string_view agent_kind_name(AgentProfile::Kind kind) noexcept {
    for (const auto& [value, name] : kKindNames) {
        if (value == kind) {
            return name;
        }
    }
    return "human";
}

std::optional<AgentProfile::Kind> agent_kind_from_name(
    std::string_view name) noexcept {
    for (const auto& [value, kind_name] : kKindNames) {
        if (kind_name == name) {
            return value;
        }
    }
    return std::nullopt;
}

Target preferred_target(AgentProfile::Kind kind) noexcept {
    switch (kind) {
    case AgentProfile::Kind::Human:
        return Target::HumanNl;
    case AgentProfile::Kind::Ai:
        return Target::MachineJson;
    case AgentProfile::Kind::Robot:
        return Target::RobotCmd;
    case AgentProfile::Kind::Twin:
        return Target::TwinUpdate;
    }
    return Target::MachineJson;
}

nlohmann::json CorpusRecord::to_json() const {
    nlohmann::json doc;
    doc["tick"] = tick;
    doc["publisher"] = publisher;
    doc["statement_id"] = statement_id;
    doc["canonical"] = canonical;
    doc["context"] = context.to_json();

    nlohmann::json annotation;
    for (Dimension d : kAllDimensions) {
        nlohmann::json slots = nlohmann::json::object();
        for (const auto& [key, value] : components[dimension_index(d)]) {
            slots[key] = value;
        }
        annotation[std::string(1, dimension_letter(d))] = std::move(slots);
    }
    doc["components"] = std::move(annotation);

    if (ambiguous) {
        nlohmann::json outcome;
        outcome["status"] = "ambiguous";
        outcome["ambiguity"] = ambiguity ? ambiguity->to_json()
                                         : nlohmann::json(nullptr);
        doc["outcome"] = std::move(outcome);
        doc["meaning"] = nullptr;
    } else {
        nlohmann::json outcome;
        outcome["status"] = "resolved";
        outcome["digest"] = meaning ? meaning->digest() : "";
        doc["outcome"] = std::move(outcome);
        doc["meaning"] = meaning ? meaning->to_json() : nlohmann::json(nullptr);
    }

    if (negotiation_state) {
        nlohmann::json negotiation;
        negotiation["state"] = std::string(
            negotiation_state_name(*negotiation_state));
        nlohmann::json lines = nlohmann::json::array();
        for (const auto& message : transcript) {
            lines.push_back(message.to_json());
        }
        negotiation["transcript"] = std::move(lines);
        doc["negotiation"] = std::move(negotiation);
    } else {
        doc["negotiation"] = nullptr;
    }

    nlohmann::json delivered = nlohmann::json::array();
    for (const auto& delivery : deliveries) {
        nlohmann::json entry;
        entry["agent"] = delivery.agent;
        entry["target"] = std::string(target_name(delivery.target));
        entry["status"] = delivery.delivered ? "delivered" : "failed";
        entry["content"] = delivery.content;
        entry["digest"] = delivery.delivered
                              ? nlohmann::json(sha256_hex(delivery.content))
                              : nlohmann::json(nullptr);
        delivered.push_back(std::move(entry));
    }
    doc["deliveries"] = std::move(delivered);
    return doc;
}

SemanticBus::SemanticBus(SignRegistry signs, MappingRegistry mappings,
                         Dialect dialect, ContextSnapshot context,
                         std::uint64_t seed)
    : signs_(std::move(signs)),
      mappings_(std::move(mappings)),
      dialect_(std::move(dialect)),
      context_(std::move(context)),
      ids_(seed) {}

void SemanticBus::register_agent(const AgentProfile& agent) {
    if (agent.id.empty()) {
        throw Error(ErrorCode::InvalidArgument, "agent id must not be empty");
    }
    if (agent.id == kResolverId) {
        throw Error(ErrorCode::InvalidArgument,
                    "agent id 'resolver' is reserved for the bus");
    }
    if (has_agent(agent.id)) {
        throw Error(ErrorCode::InvalidArgument,
                    "agent '" + agent.id + "' is already registered");
    }
    agents_.push_back(agent);
}

bool SemanticBus::has_agent(const std::string& id) const {
    return std::any_of(agents_.begin(), agents_.end(),
                       [&](const AgentProfile& a) { return a.id == id; });
}

void SemanticBus::update_context(ContextSnapshot context) {
    context_ = std::move(context);
}

const CorpusRecord& SemanticBus::publish(const std::string& publisher,
                                         const Cyberstatement& statement) {
    if (!has_agent(publisher)) {
        throw Error(ErrorCode::UnknownPublisher,
                    "publisher '" + publisher + "' is not registered");
    }
    require_dialect(statement, dialect_);

    // Learned priors apply only where there is something to choose between.
    std::map<std::string, double> boosts;
    std::set<std::string> boosted;
    for (const auto& block : statement.blocks) {
        for (const auto& slot : block.slots) {
            if (slot.value.kind() != ValueKind::Identifier) {
                continue;
            }
            const std::string& lambda = slot.value.as_identifier();
            if (signs_.lookup_signs(lambda).size() < 2 ||
                !boosted.insert(lambda).second) {
                continue;
            }
            // Merge per-sign boosts; lambdas never share sign digests.
            for (const auto& [digest, boost] :
                 ledger_.prior_boosts(context_, lambda)) {
                boosts[digest] = boost;
            }
        }
    }

    MeaningOutcome outcome =
        evaluate_meaning(statement, context_, signs_, boosts);

    CorpusRecord record;
    record.tick = tick_;
    record.publisher = publisher;
    record.statement_id = statement.id;
    record.canonical = print_canonical(statement);
    record.context = context_;
    for (const auto& block : statement.blocks) {
        auto& slots = record.components[dimension_index(block.dimension)];
        for (const auto& slot : block.slots) {
            slots[slot.key] = slot.value.canonical_text();
        }
    }

    if (const auto* ambiguity = std::get_if<Ambiguity>(&outcome)) {
        record.ambiguous = true;
        record.ambiguity = *ambiguity;

        // The author negotiates with the bus resolver instead of fanning
        // out a statement that nobody can interpret uniquely. The author
        // argues for its first candidate; the resolver has no stake.
        NegotiationSession session = open_session(
            ids_, *ambiguity, publisher, kResolverId);
        HonestPolicy author(publisher, statement, context_, signs_,
                            ambiguity->candidates.front(), boosts);
        HonestPolicy resolver(kResolverId, statement, context_, signs_,
                              std::nullopt, boosts);
        run_negotiation(session, author, resolver);

        record.negotiation_state = session.state;
        record.transcript = session.transcript;

        if (session.state == NegotiationState::Converged &&
            resolver.last_meaning()) {
            const ResolvedMeaning& agreed = *resolver.last_meaning();
            auto binding = agreed.sign_bindings.find(ambiguity->lambda);
            if (binding != agreed.sign_bindings.end()) {
                ledger_.record_outcome(context_, ambiguity->lambda,
                                       binding->second);
            }
        }
    } else {
        record.meaning = std::get<ResolvedMeaning>(std::move(outcome));

        std::map<Target, CompiledForm> compiled;
        std::map<Target, std::string> failed;
        for (const auto& agent : agents_) {
            if (agent.id == publisher) {
                continue;
            }
            Target target = preferred_target(agent.kind);
            if (compiled.count(target) == 0 && failed.count(target) == 0) {
                try {
                    compiled.emplace(
                        target,
                        compile(statement, TargetProfile{target, dialect_}));
                } catch (const Error& error) {
                    if (error.code() != ErrorCode::NoApplicableTemplate &&
                        error.code() != ErrorCode::EmptyCompilation) {
                        throw;
                    }
                    failed.emplace(target, error.what());
                }
            }
            Delivery delivery;
            delivery.agent = agent.id;
            delivery.target = target;
            if (auto hit = compiled.find(target); hit != compiled.end()) {
                delivery.delivered = true;
                delivery.content = hit->second.text;
            } else {
                delivery.delivered = false;
                delivery.content = failed.at(target);
            }
            record.deliveries.push_back(std::move(delivery));
        }
    }

    corpus_.push_back(std::move(record));
    return corpus_.back();
}

const CorpusRecord& SemanticBus::publish_source(const std::string& publisher,
                                                const std::string& source) {
    ParseResult parsed = parse_statement(source, ids_);
    if (!parsed.ok()) {
        std::string why = "statement does not parse";
        for (const auto& diagnostic : parsed.diagnostics) {
            if (diagnostic.severity == Severity::Error) {
                why += ": line " + std::to_string(diagnostic.span.line) + ": " +
                       diagnostic.message;
                break;
            }
        }
        throw Error(ErrorCode::InvalidArgument, why);
    }
    return publish(publisher, *parsed.statement);
}

std::string SemanticBus::export_corpus() const {
    std::string out;
    for (const auto& record : corpus_) {
        out += record.to_json().dump();
        out += '\n';
    }
    return out;
}

namespace {

bool is_hex_digest(const std::string& text) {
    if (text.size() != 64) {
        return false;
    }
    return std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

void check_record(const nlohmann::json& doc, std::size_t line_no,
                  std::vector<std::string>& problems) {
    auto complain = [&](const std::string& what) {
        problems.push_back("line " + std::to_string(line_no) + ": " + what);
    };

    if (!doc.is_object()) {
        complain("record is not a JSON object");
        return;
    }
    static const std::vector<std::string> kKeys{
        "canonical", "components",   "context",   "deliveries",
        "meaning",   "negotiation",  "outcome",   "publisher",
        "statement_id", "tick"};
    for (const auto& key : kKeys) {
        if (!doc.contains(key)) {
            complain("missing field '" + key + "'");
            return;
        }
    }
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            complain("unexpected field '" + key + "'");
        }
    }

    if (!doc["tick"].is_number_unsigned()) {
        complain("'tick' must be a non-negative integer");
    }
    for (const char* key : {"publisher", "statement_id", "canonical"}) {
        if (!doc[key].is_string() || doc[key].get<std::string>().empty()) {
            complain(std::string("'") + key + "' must be a non-empty string");
        }
    }
    if (!doc["context"].is_object() || !doc["context"].contains("timestamp")) {
        complain("'context' must embed the snapshot in force");
    }

    // The quadruple annotation is total: all four dimension maps, always.
    if (!doc["components"].is_object() || doc["components"].size() != 4) {
        complain("'components' must hold exactly the four dimension maps");
    } else {
        for (const char* letter : {"P", "S", "T", "C"}) {
            if (!doc["components"].contains(letter) ||
                !doc["components"][letter].is_object()) {
                complain(std::string("'components' is missing the ") + letter +
                         " map");
            }
        }
    }

    std::size_t delivered_count = 0;
    if (!doc["deliveries"].is_array()) {
        complain("'deliveries' must be an array");
    } else {
        for (const auto& entry : doc["deliveries"]) {
            if (!entry.is_object() || !entry.contains("agent") ||
                !entry.contains("target") || !entry.contains("status") ||
                !entry.contains("content") || !entry.contains("digest") ||
                entry.size() != 5) {
                complain("delivery entries need exactly "
                         "agent/target/status/content/digest");
                continue;
            }
            if (!entry["status"].is_string() ||
                (entry["status"] != "delivered" &&
                 entry["status"] != "failed")) {
                complain("delivery status must be 'delivered' or 'failed'");
            } else if (entry["status"] == "delivered") {
                ++delivered_count;
                if (!entry["digest"].is_string() ||
                    !entry["content"].is_string() ||
                    sha256_hex(entry["content"].get<std::string>()) !=
                        entry["digest"].get<std::string>()) {
                    complain("delivery digest does not match its content");
                }
            } else if (!entry["digest"].is_null()) {
                complain("failed deliveries must carry a null digest");
            }
            if (!entry["target"].is_string() ||
                !target_from_name(entry["target"].get<std::string>())) {
                complain("delivery target is not a known target name");
            }
        }
    }

    const auto& outcome = doc["outcome"];
    if (!outcome.is_object() || !outcome.contains("status") ||
        !outcome["status"].is_string()) {
        complain("'outcome' must be an object with a 'status' string");
        return;
    }
    const std::string status = outcome["status"].get<std::string>();
    if (status == "resolved") {
        if (!outcome.contains("digest") || !outcome["digest"].is_string() ||
            !is_hex_digest(outcome["digest"].get<std::string>())) {
            complain("resolved outcome needs a 64-hex 'digest'");
        } else if (!doc["meaning"].is_object()) {
            complain("resolved record must embed its meaning");
        } else if (sha256_hex(doc["meaning"].dump()) !=
                   outcome["digest"].get<std::string>()) {
            complain("meaning digest does not match embedded meaning");
        }
        if (!doc["negotiation"].is_null()) {
            complain("resolved record must not carry a negotiation");
        }
    } else if (status == "ambiguous") {
        if (!outcome.contains("ambiguity") ||
            !outcome["ambiguity"].is_object()) {
            complain("ambiguous outcome needs an 'ambiguity' object");
        }
        if (!doc["meaning"].is_null()) {
            complain("ambiguous record must not embed a meaning");
        }
        if (delivered_count != 0) {
            complain("ambiguous record must not deliver anything");
        }
        if (!doc["negotiation"].is_object()) {
            complain("ambiguous record must carry a negotiation");
        } else {
            const auto& negotiation = doc["negotiation"];
            if (!negotiation.contains("state") ||
                !negotiation["state"].is_string() ||
                !negotiation_state_from_name(
                    negotiation["state"].get<std::string>())) {
                complain("negotiation state is not a known state name");
            }
            if (!negotiation.contains("transcript") ||
                !negotiation["transcript"].is_array()) {
                complain("negotiation transcript must be an array");
            }
        }
    } else {
        complain("outcome status must be 'resolved' or 'ambiguous'");
    }
}

} // namespace

CorpusValidation validate_corpus(const std::string& jsonl) {
    CorpusValidation result;
    std::istringstream lines(jsonl);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        ++result.records;
        nlohmann::json doc;
        try {
            doc = parse_json_strict(line, "corpus record");
        } catch (const Error& error) {
            result.problems.push_back("line " + std::to_string(line_no) +
                                      ": " + error.what());
            continue;
        }
        check_record(doc, line_no, result.problems);
    }
    return result;
}

} // namespace cyberlang
