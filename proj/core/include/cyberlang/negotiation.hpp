#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyberlang/context.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/meaning.hpp"
#include "cyberlang/sign.hpp"
#include "cyberlang/statement.hpp"

namespace cyberlang {

// The seven message payloads of the negotiation protocol. An
// AmbiguityReport opens a session; MetaMarker corrections travel on the
// bus outside sessions and are a protocol violation inside one.
struct AmbiguityReportMsg {
    Ambiguity ambiguity;
    bool operator==(const AmbiguityReportMsg&) const = default;
};

struct ExplicitationRequestMsg {
    std::string statement_id;
    Dimension dimension;
    std::string key;
    bool operator==(const ExplicitationRequestMsg&) const = default;
};

struct ExplicitationResponseMsg {
    std::string statement_id;
    Dimension dimension;
    std::string key;
    SemanticValue value; // the dimensional anchor of the intended sense
    bool operator==(const ExplicitationResponseMsg&) const = default;
};

struct ProposalMsg {
    std::string statement_id;
    std::string digest; // interpretation digest the sender computed
    bool operator==(const ProposalMsg&) const = default;
};

struct AcceptMsg {
    std::string statement_id;
    std::string digest; // must name the pending proposal
    bool operator==(const AcceptMsg&) const = default;
};

struct RejectMsg {
    std::string statement_id;
    std::string digest; // must name the pending proposal
    std::string reason;
    bool operator==(const RejectMsg&) const = default;
};

using NegotiationPayload =
    std::variant<AmbiguityReportMsg, ExplicitationRequestMsg,
                 ExplicitationResponseMsg, MetaMarker, ProposalMsg, AcceptMsg,
                 RejectMsg>;

struct NegotiationMessage {
    std::string session_id;
    std::string sender;
    NegotiationPayload payload;

    bool operator==(const NegotiationMessage&) const = default;

    nlohmann::json to_json() const;
    static NegotiationMessage from_json(const nlohmann::json& doc);
};

enum class NegotiationState { Open, Explicating, Proposing, Converged, Failed };

std::string_view negotiation_state_name(NegotiationState state) noexcept;
std::optional<NegotiationState> negotiation_state_from_name(
    std::string_view name) noexcept;

// One two-party session about one ambiguous slot. The session is a pure
// state machine: apply() is the only mutation, so a transcript replayed
// through apply() reconstructs the exact final state.
struct NegotiationSession {
    std::string session_id;
    std::string initiator; // agent that hit the ambiguity (the author side)
    std::string responder;
    Ambiguity subject;
    std::size_t max_rounds = 8;

    NegotiationState state = NegotiationState::Open;
    std::size_t round = 0; // number of proposals made so far
    std::vector<NegotiationMessage> transcript;

    std::optional<std::string> pending_digest; // proposal awaiting an answer
    std::string pending_proposer;
    bool awaiting_counter = false; // a reject happened, counter expected
    std::optional<ExplicitationResponseMsg> explication;
    std::optional<std::string> agreed_digest;
    std::string failure_reason;

    bool terminal() const noexcept {
        return state == NegotiationState::Converged ||
               state == NegotiationState::Failed;
    }
};

NegotiationSession open_session(IdGenerator& ids, Ambiguity subject,
                                std::string initiator, std::string responder,
                                std::size_t max_rounds = 8);

// Validates and applies one message. Throws:
//   SessionClosed      on any message to a terminal session
//   UnknownStatement   when statement ids disagree with the subject
//   DigestMismatch     when Accept/Reject names a digest nobody proposed
//   ProtocolViolation  for anything else illegal in the current state
// On DigestMismatch the session is left unchanged.
void apply(NegotiationSession& session, const NegotiationMessage& message);

// How one party decides its replies. respond() is called after `incoming`
// was applied; returning nullopt means staying silent, which fails the
// session when a counter-proposal was expected.
class NegotiationPolicy {
public:
    virtual ~NegotiationPolicy() = default;
    virtual std::optional<NegotiationMessage> respond(
        const NegotiationSession& session,
        const NegotiationMessage& incoming) = 0;
};

// Party-local primitive: apply the incoming message to this replica, let
// the policy answer, apply the answer too, hand it back for transport.
std::optional<NegotiationMessage> step(NegotiationSession& session,
                                       const NegotiationMessage& incoming,
                                       NegotiationPolicy& policy);

// Shared-session driver: the initiator files the ambiguity report, then
// the parties alternate until the session converges, fails, or a party
// goes silent (which fails it). Returns the final state; the full
// transcript is in the session.
NegotiationState run_negotiation(NegotiationSession& session,
                                 NegotiationPolicy& initiator_policy,
                                 NegotiationPolicy& responder_policy);

// The cooperative baseline both simulated agents use. The author side
// explicates its intended sense when asked; both sides evaluate the
// statement against the shared context plus whatever explication the
// session has accumulated, propose the digest they computed, and accept
// any proposal matching their own. It never counters without new
// information, so a stonewalling peer fails the session quickly.
class HonestPolicy : public NegotiationPolicy {
public:
    HonestPolicy(std::string self, const Cyberstatement& statement,
                 const ContextSnapshot& context, const SignRegistry& signs,
                 std::optional<Cybersign> intended = std::nullopt,
                 std::map<std::string, double> prior_boosts = {});

    std::optional<NegotiationMessage> respond(
        const NegotiationSession& session,
        const NegotiationMessage& incoming) override;

    // The meaning this party computed for the agreed digest, if any.
    const std::optional<ResolvedMeaning>& last_meaning() const noexcept {
        return last_meaning_;
    }

private:
    std::optional<ResolvedMeaning> evaluate(const NegotiationSession& session);

    std::string self_;
    const Cyberstatement& statement_;
    ContextSnapshot context_;
    const SignRegistry& signs_;
    std::optional<Cybersign> intended_;
    std::map<std::string, double> boosts_;
    std::optional<ResolvedMeaning> last_meaning_;
};

} // namespace cyberlang
