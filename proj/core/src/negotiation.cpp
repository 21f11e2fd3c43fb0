#include "cyberlang/negotiation.hpp"

#include "cyberlang/errors.hpp"
#include "cyberlang/json_io.hpp"

namespace cyberlang {

namespace {

std::string dim_key(Dimension d) { return std::string(1, dimension_letter(d)); }

Dimension parse_dimension_field(const nlohmann::json& doc,
                                const std::string& what) {
    const std::string text = require_string(doc, "dimension", what);
    if (text.size() == 1) {
        if (const auto d = dimension_from_letter(text[0])) return *d;
    }
    throw Error(ErrorCode::SchemaViolation,
                what + ": bad dimension '" + text + "'");
}

// Messages carry the candidate signs in full (unlike corpus outcome
// records, which abbreviate them to digests) so a receiver can rebuild
// the ambiguity without registry access.
nlohmann::json ambiguity_wire_json(const Ambiguity& a) {
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& sign : a.candidates) candidates.push_back(sign.to_json());
    return {{"statement_id", a.statement_id},
            {"dimension", dim_key(a.dimension)},
            {"key", a.key},
            {"lambda", a.lambda},
            {"candidates", std::move(candidates)}};
}

Ambiguity ambiguity_from_wire(const nlohmann::json& doc) {
    const std::string what = "ambiguity";
    require_only_keys(doc,
                      {"statement_id", "dimension", "key", "lambda", "candidates"},
                      what);
    Ambiguity a;
    a.statement_id = require_string(doc, "statement_id", what);
    a.dimension = parse_dimension_field(doc, what);
    a.key = require_string(doc, "key", what);
    a.lambda = require_string(doc, "lambda", what);
    const auto& candidates = require_field(doc, "candidates", what);
    if (!candidates.is_array() || candidates.empty())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": 'candidates' must be a non-empty array");
    for (const auto& entry : candidates)
        a.candidates.push_back(Cybersign::from_json(entry));
    return a;
}

} // namespace

nlohmann::json NegotiationMessage::to_json() const {
    nlohmann::json doc;
    doc["session_id"] = session_id;
    doc["sender"] = sender;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, AmbiguityReportMsg>) {
                doc["kind"] = "ambiguity-report";
                doc["ambiguity"] = ambiguity_wire_json(p.ambiguity);
            } else if constexpr (std::is_same_v<T, ExplicitationRequestMsg>) {
                doc["kind"] = "explicitation-request";
                doc["statement_id"] = p.statement_id;
                doc["dimension"] = dim_key(p.dimension);
                doc["key"] = p.key;
            } else if constexpr (std::is_same_v<T, ExplicitationResponseMsg>) {
                doc["kind"] = "explicitation-response";
                doc["statement_id"] = p.statement_id;
                doc["dimension"] = dim_key(p.dimension);
                doc["key"] = p.key;
                doc["value"] = p.value.canonical_text();
            } else if constexpr (std::is_same_v<T, MetaMarker>) {
                doc["kind"] = "meta-marker";
                doc["marker"] = p.to_json();
            } else if constexpr (std::is_same_v<T, ProposalMsg>) {
                doc["kind"] = "proposal";
                doc["statement_id"] = p.statement_id;
                doc["digest"] = p.digest;
            } else if constexpr (std::is_same_v<T, AcceptMsg>) {
                doc["kind"] = "accept";
                doc["statement_id"] = p.statement_id;
                doc["digest"] = p.digest;
            } else {
                doc["kind"] = "reject";
                doc["statement_id"] = p.statement_id;
                doc["digest"] = p.digest;
                doc["reason"] = p.reason;
            }
        },
        payload);
    return doc;
}

NegotiationMessage NegotiationMessage::from_json(const nlohmann::json& doc) {
    const std::string what = "negotiation message";
    NegotiationMessage msg;
    msg.session_id = require_string(doc, "session_id", what);
    msg.sender = require_string(doc, "sender", what);
    const std::string kind = require_string(doc, "kind", what);

    if (kind == "ambiguity-report") {
        msg.payload = AmbiguityReportMsg{
            ambiguity_from_wire(require_field(doc, "ambiguity", what))};
    } else if (kind == "explicitation-request") {
        msg.payload = ExplicitationRequestMsg{
            require_string(doc, "statement_id", what),
            parse_dimension_field(doc, what), require_string(doc, "key", what)};
    } else if (kind == "explicitation-response") {
        msg.payload = ExplicitationResponseMsg{
            require_string(doc, "statement_id", what),
            parse_dimension_field(doc, what), require_string(doc, "key", what),
            SemanticValue::parse(require_string(doc, "value", what))};
    } else if (kind == "meta-marker") {
        msg.payload = MetaMarker::from_json(require_field(doc, "marker", what));
    } else if (kind == "proposal") {
        msg.payload = ProposalMsg{require_string(doc, "statement_id", what),
                                  require_string(doc, "digest", what)};
    } else if (kind == "accept") {
        msg.payload = AcceptMsg{require_string(doc, "statement_id", what),
                                require_string(doc, "digest", what)};
    } else if (kind == "reject") {
        msg.payload = RejectMsg{require_string(doc, "statement_id", what),
                                require_string(doc, "digest", what),
                                require_string(doc, "reason", what)};
    } else {
        throw Error(ErrorCode::SchemaViolation,
                    what + ": unknown kind '" + kind + "'");
    }
    return msg;
}

std::string_view negotiation_state_name(NegotiationState state) noexcept {
    switch (state) {
    case NegotiationState::Open: return "open";
    case NegotiationState::Explicating: return "explicating";
    case NegotiationState::Proposing: return "proposing";
    case NegotiationState::Converged: return "converged";
    case NegotiationState::Failed: return "failed";
    }
    return "?";
}

std::optional<NegotiationState> negotiation_state_from_name(
    std::string_view name) noexcept {
    for (NegotiationState state :
         {NegotiationState::Open, NegotiationState::Explicating,
          NegotiationState::Proposing, NegotiationState::Converged,
          NegotiationState::Failed}) {
        if (negotiation_state_name(state) == name) {
            return state;
        }
    }
    return std::nullopt;
}

NegotiationSession open_session(IdGenerator& ids, Ambiguity subject,
                                std::string initiator, std::string responder,
                                std::size_t max_rounds) {
    if (max_rounds == 0)
        throw Error(ErrorCode::InvalidArgument, "max_rounds must be positive");
    NegotiationSession session;
    session.session_id = ids.next();
    session.subject = std::move(subject);
    session.initiator = std::move(initiator);
    session.responder = std::move(responder);
    session.max_rounds = max_rounds;
    return session;
}

void apply(NegotiationSession& session, const NegotiationMessage& message) {
    if (session.terminal())
        throw Error(ErrorCode::SessionClosed,
                    "session " + session.session_id + " is already " +
                        std::string(negotiation_state_name(session.state)));
    if (message.session_id != session.session_id)
        throw Error(ErrorCode::ProtocolViolation,
                    "message addressed to session " + message.session_id);
    if (message.sender != session.initiator &&
        message.sender != session.responder)
        throw Error(ErrorCode::ProtocolViolation,
                    "sender '" + message.sender + "' is not a party of the "
                    "session");

    auto check_statement = [&](const std::string& id) {
        if (id != session.subject.statement_id)
            throw Error(ErrorCode::UnknownStatement,
                        "message is about statement " + id +
                            " but the session negotiates " +
                            session.subject.statement_id);
    };

    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, AmbiguityReportMsg>) {
                check_statement(p.ambiguity.statement_id);
                if (!session.transcript.empty())
                    throw Error(ErrorCode::ProtocolViolation,
                                "an ambiguity report may only open a session");
                if (message.sender != session.initiator)
                    throw Error(ErrorCode::ProtocolViolation,
                                "only the initiator reports the ambiguity");
                session.transcript.push_back(message);
            } else if constexpr (std::is_same_v<T, ExplicitationRequestMsg>) {
                check_statement(p.statement_id);
                if (session.state != NegotiationState::Open)
                    throw Error(ErrorCode::ProtocolViolation,
                                "explicitation can only be requested before "
                                "proposals start");
                session.transcript.push_back(message);
                session.state = NegotiationState::Explicating;
            } else if constexpr (std::is_same_v<T, ExplicitationResponseMsg>) {
                check_statement(p.statement_id);
                if (session.state != NegotiationState::Explicating)
                    throw Error(ErrorCode::ProtocolViolation,
                                "no explicitation was requested");
                session.transcript.push_back(message);
                session.explication = p;
                session.state = NegotiationState::Proposing;
            } else if constexpr (std::is_same_v<T, MetaMarker>) {
                throw Error(ErrorCode::ProtocolViolation,
                            "meta markers travel on the bus, not inside "
                            "negotiation sessions");
            } else if constexpr (std::is_same_v<T, ProposalMsg>) {
                check_statement(p.statement_id);
                if (session.state != NegotiationState::Open &&
                    session.state != NegotiationState::Proposing)
                    throw Error(ErrorCode::ProtocolViolation,
                                "proposal is not acceptable in state " +
                                    std::string(negotiation_state_name(
                                        session.state)));
                session.transcript.push_back(message);
                if (session.round == session.max_rounds) {
                    session.state = NegotiationState::Failed;
                    session.failure_reason = "round limit reached";
                    return;
                }
                ++session.round;
                session.pending_digest = p.digest;
                session.pending_proposer = message.sender;
                session.awaiting_counter = false;
                session.state = NegotiationState::Proposing;
            } else if constexpr (std::is_same_v<T, AcceptMsg>) {
                check_statement(p.statement_id);
                if (!session.pending_digest)
                    throw Error(ErrorCode::ProtocolViolation,
                                "there is no proposal to accept");
                if (message.sender == session.pending_proposer)
                    throw Error(ErrorCode::ProtocolViolation,
                                "a proposal cannot be accepted by its sender");
                if (p.digest != *session.pending_digest)
                    throw Error(ErrorCode::DigestMismatch,
                                "accept names digest " + p.digest +
                                    " but the pending proposal is " +
                                    *session.pending_digest);
                session.transcript.push_back(message);
                session.agreed_digest = p.digest;
                session.state = NegotiationState::Converged;
            } else { // RejectMsg
                check_statement(p.statement_id);
                if (!session.pending_digest)
                    throw Error(ErrorCode::ProtocolViolation,
                                "there is no proposal to reject");
                if (message.sender == session.pending_proposer)
                    throw Error(ErrorCode::ProtocolViolation,
                                "a proposal cannot be rejected by its sender");
                if (p.digest != *session.pending_digest)
                    throw Error(ErrorCode::DigestMismatch,
                                "reject names digest " + p.digest +
                                    " but the pending proposal is " +
                                    *session.pending_digest);
                session.transcript.push_back(message);
                session.pending_digest.reset();
                session.pending_proposer.clear();
                if (session.round >= session.max_rounds) {
                    session.state = NegotiationState::Failed;
                    session.failure_reason = "round limit reached";
                } else {
                    session.awaiting_counter = true;
                }
            }
        },
        message.payload);
}

std::optional<NegotiationMessage> step(NegotiationSession& session,
                                       const NegotiationMessage& incoming,
                                       NegotiationPolicy& policy) {
    apply(session, incoming);
    if (session.terminal()) return std::nullopt;
    auto outgoing = policy.respond(session, incoming);
    if (outgoing) {
        apply(session, *outgoing);
    } else {
        session.state = NegotiationState::Failed;
        session.failure_reason = session.awaiting_counter
                                     ? "no counter-proposal offered"
                                     : "negotiation stalled without a reply";
    }
    return outgoing;
}

NegotiationState run_negotiation(NegotiationSession& session,
                                 NegotiationPolicy& initiator_policy,
                                 NegotiationPolicy& responder_policy) {
    NegotiationMessage current{session.session_id, session.initiator,
                               AmbiguityReportMsg{session.subject}};
    apply(session, current);

    while (!session.terminal()) {
        NegotiationPolicy& replier = current.sender == session.initiator
                                         ? responder_policy
                                         : initiator_policy;
        auto reply = replier.respond(session, current);
        if (!reply) {
            session.state = NegotiationState::Failed;
            session.failure_reason = session.awaiting_counter
                                         ? "no counter-proposal offered"
                                         : "negotiation stalled without a reply";
            break;
        }
        apply(session, *reply);
        current = *reply;
    }
    return session.state;
}

HonestPolicy::HonestPolicy(std::string self, const Cyberstatement& statement,
                           const ContextSnapshot& context,
                           const SignRegistry& signs,
                           std::optional<Cybersign> intended,
                           std::map<std::string, double> prior_boosts)
    : self_(std::move(self)),
      statement_(statement),
      context_(context),
      signs_(signs),
      intended_(std::move(intended)),
      boosts_(std::move(prior_boosts)) {}

std::optional<ResolvedMeaning> HonestPolicy::evaluate(
    const NegotiationSession& session) {
    ContextSnapshot ctx = context_;
    if (session.explication) {
        ctx.set(session.explication->dimension, session.explication->key,
                session.explication->value);
    }
    auto outcome = evaluate_meaning(statement_, ctx, signs_, boosts_);
    if (auto* meaning = std::get_if<ResolvedMeaning>(&outcome))
        return std::move(*meaning);
    return std::nullopt;
}

std::optional<NegotiationMessage> HonestPolicy::respond(
    const NegotiationSession& session, const NegotiationMessage& incoming) {
    if (session.terminal()) return std::nullopt;

    const std::string& stmt_id = session.subject.statement_id;
    auto make = [&](NegotiationPayload payload) {
        return NegotiationMessage{session.session_id, self_, std::move(payload)};
    };

    return std::visit(
        [&](const auto& p) -> std::optional<NegotiationMessage> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, AmbiguityReportMsg>) {
                // Ask the author to anchor the ambiguous slot's dimension.
                return make(ExplicitationRequestMsg{
                    stmt_id, session.subject.dimension, session.subject.key});
            } else if constexpr (std::is_same_v<T, ExplicitationRequestMsg>) {
                if (!intended_) return std::nullopt;
                return make(ExplicitationResponseMsg{
                    stmt_id, p.dimension, p.key,
                    intended_->dyad(p.dimension).signified});
            } else if constexpr (std::is_same_v<T, ExplicitationResponseMsg>) {
                auto meaning = evaluate(session);
                if (!meaning) return std::nullopt;
                const std::string digest = meaning->digest();
                last_meaning_ = std::move(meaning);
                return make(ProposalMsg{stmt_id, digest});
            } else if constexpr (std::is_same_v<T, ProposalMsg>) {
                auto meaning = evaluate(session);
                if (!meaning) return std::nullopt;
                const std::string digest = meaning->digest();
                last_meaning_ = std::move(meaning);
                if (digest == p.digest) return make(AcceptMsg{stmt_id, p.digest});
                return make(RejectMsg{stmt_id, p.digest,
                                      "computed a different interpretation (" +
                                          digest.substr(0, 12) + ")"});
            } else {
                // Accept and Reject leave nothing for an honest party to
                // add without new information; meta markers never reach a
                // session.
                return std::nullopt;
            }
        },
        incoming.payload);
}

} // namespace cyberlang
