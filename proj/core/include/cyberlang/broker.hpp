#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyberlang/compile.hpp"
#include "cyberlang/context.hpp"
#include "cyberlang/dialect.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/ledger.hpp"
#include "cyberlang/mapping.hpp"
#include "cyberlang/meaning.hpp"
#include "cyberlang/negotiation.hpp"
#include "cyberlang/sign.hpp"
#include "cyberlang/statement.hpp"

namespace cyberlang {

struct AgentProfile {
    enum class Kind { Human, Ai, Robot, Twin };

    std::string id;
    Kind kind = Kind::Human;
};

std::string_view agent_kind_name(AgentProfile::Kind kind) noexcept;
std::optional<AgentProfile::Kind> agent_kind_from_name(
    std::string_view name) noexcept;

// Which surface form each class of agent consumes.
Target preferred_target(AgentProfile::Kind kind) noexcept;

struct Delivery {
    std::string agent;
    Target target;
    bool delivered = false;
    std::string content; // rendered compiled form, or the failure reason
};

// Everything the bus remembers about one publish event; serialised as one
// line of the corpus log. The annotation is total: all four dimension
// component maps appear even when empty, and the full context snapshot in
// force at publish time is embedded, so each line is a self-contained
// annotated sample.
struct CorpusRecord {
    std::size_t tick = 0;
    std::string publisher;
    std::string statement_id;
    std::string canonical;
    std::array<std::map<std::string, std::string>, 4> components;
    ContextSnapshot context;
    bool ambiguous = false;
    std::optional<ResolvedMeaning> meaning; // resolved publishes only
    std::optional<Ambiguity> ambiguity;     // ambiguous publishes only
    std::optional<NegotiationState> negotiation_state;
    std::vector<NegotiationMessage> transcript;
    std::vector<Delivery> deliveries;

    nlohmann::json to_json() const;
};

// In-process message broker with the single authoritative context. A
// publish is validated against the bus dialect, evaluated against the
// context, then either compiled once per distinct target and fanned out
// to every other agent, or (when evaluation hits an ambiguity) negotiated
// between the publisher and the built-in resolver with no delivery at
// all. Every successful publish appends exactly one corpus record.
class SemanticBus {
public:
    static constexpr const char* kResolverId = "resolver";

    SemanticBus(SignRegistry signs, MappingRegistry mappings, Dialect dialect,
                ContextSnapshot context, std::uint64_t seed);

    void register_agent(const AgentProfile& agent);
    bool has_agent(const std::string& id) const;
    const std::vector<AgentProfile>& agents() const noexcept { return agents_; }

    std::size_t tick() const noexcept { return tick_; }
    void set_tick(std::size_t tick) noexcept { tick_ = tick; }

    const ContextSnapshot& context() const noexcept { return context_; }
    void update_context(ContextSnapshot context);

    SignRegistry& signs() noexcept { return signs_; }
    const MappingRegistry& mappings() const noexcept { return mappings_; }
    const Dialect& dialect() const noexcept { return dialect_; }
    InterpretationLedger& ledger() noexcept { return ledger_; }
    IdGenerator& ids() noexcept { return ids_; }

    // Throws UnknownPublisher or DialectViolation before anything is
    // recorded; afterwards always appends and returns a corpus record.
    const CorpusRecord& publish(const std::string& publisher,
                                const Cyberstatement& statement);

    // Convenience: parse then publish. A statement that does not parse is
    // rejected with InvalidArgument naming the first diagnostic.
    const CorpusRecord& publish_source(const std::string& publisher,
                                       const std::string& source);

    const std::vector<CorpusRecord>& corpus() const noexcept { return corpus_; }
    std::string export_corpus() const; // JSONL, one record per line

private:
    SignRegistry signs_;
    MappingRegistry mappings_;
    Dialect dialect_;
    ContextSnapshot context_;
    IdGenerator ids_;
    InterpretationLedger ledger_;
    std::vector<AgentProfile> agents_;
    std::vector<CorpusRecord> corpus_;
    std::size_t tick_ = 0;
};

struct CorpusValidation {
    std::size_t records = 0;
    std::vector<std::string> problems; // empty when the log is well-formed

    bool ok() const noexcept { return problems.empty(); }
};

// Structural check of a corpus log: every line must parse, carry exactly
// the record fields, use legal enum values, and keep the internal
// promises (an ambiguous record delivers nothing; a resolved record's
// digest matches its embedded meaning).
CorpusValidation validate_corpus(const std::string& jsonl);

} // namespace cyberlang
