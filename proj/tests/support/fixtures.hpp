#pragma once

#include <string>

#include "cyberlang/context.hpp"
#include "cyberlang/dialect.hpp"
#include "cyberlang/errors.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/mapping.hpp"
#include "cyberlang/parser.hpp"
#include "cyberlang/sign.hpp"
#include "cyberlang/statement.hpp"

namespace cyberlang::testing {

// The crisis-response tasking statement used throughout the suite, in its
// canonical ASCII form. Pinned as a literal: several tests assert the
// printer reproduces exactly these bytes.
inline const std::string kWorkedCanonical =
    "[P: sector=A7, altitude=50m, duration=1800s] "
    "[S: authorisation=alpha, mission-id=SAR-2026-047] "
    "[T: intent=reconnaissance, confidence=0.92, urgency=high] "
    "[C: algorithm=path-optimize-v3, datasource=live-weather-api] "
    "[+O: P>S, T||C]";

// The same statement with the Unicode operator spellings, which must lex
// to the identical token stream.
inline const std::string kWorkedUnicode =
    "[P: sector=A7, altitude=50m, duration=1800s] "
    "[S: authorisation=alpha, mission-id=SAR-2026-047] "
    "[T: intent=reconnaissance, confidence=0.92, urgency=high] "
    "[C: algorithm=path-optimize-v3, datasource=live-weather-api] "
    "[\xE2\x8A\x95\xCE\xA9: P\xE2\x89\xBBS, T\xE2\x88\xA5"
    "C]";

inline const std::string kWorkedSentence =
    "Reconnaissance of sector A7 at 50m for 1800s under authorization alpha "
    "(mission SAR-2026-047), urgency high, confidence 0.92, using "
    "path-optimize-v3 with live-weather-api.";

inline Cyberstatement parse_worked(IdGenerator& ids) {
    ParseResult result = parse_statement(kWorkedCanonical, ids);
    if (!result.ok())
        throw Error(ErrorCode::InvalidArgument,
                    "worked-example fixture failed to parse: " +
                        result.diagnostics.front().message);
    return std::move(*result.statement);
}

inline Cyberstatement parse_or_throw(const std::string& source,
                                     IdGenerator& ids) {
    ParseResult result = parse_statement(source, ids);
    if (!result.ok())
        throw Error(ErrorCode::InvalidArgument,
                    "fixture statement failed to parse: " +
                        result.diagnostics.front().message);
    return std::move(*result.statement);
}

inline Cybersign make_sign(const std::string& lambda, const std::string& p_sig,
                           const std::string& p_ref, const std::string& s_sig,
                           const std::string& s_ref, const std::string& t_sig,
                           const std::string& t_ref, const std::string& c_sig,
                           const std::string& c_ref) {
    Cybersign sign;
    sign.lambda = lambda;
    sign.dyads[dimension_index(Dimension::Physical)] =
        DimensionalDyad{p_sig, SemanticValue::reference(p_ref)};
    sign.dyads[dimension_index(Dimension::Social)] =
        DimensionalDyad{s_sig, SemanticValue::reference(s_ref)};
    sign.dyads[dimension_index(Dimension::Thinking)] =
        DimensionalDyad{t_sig, SemanticValue::reference(t_ref)};
    sign.dyads[dimension_index(Dimension::Cyber)] =
        DimensionalDyad{c_sig, SemanticValue::reference(c_ref)};
    return sign;
}

inline Cybersign recon_sign() {
    return make_sign("reconnaissance", "recon-flight", "p:flight/survey",
                     "mission-order", "s:order/standing", "area-scan",
                     "t:plan/scan", "scan-task", "c:task/scan");
}

// The hazard reading of "danger": a physical obstacle picked up by the
// anomaly detector.
inline Cybersign danger_hazard_sign() {
    return make_sign("danger", "hazard", "p:hazard/obstacle", "opinion-risk",
                     "s:risk/public-opinion", "judgment-bias",
                     "t:bias/judgment", "anomaly", "c:anomaly/algorithmic");
}

// The crowd reading of "danger": a panic surge showing up as a traffic
// spike. Registering both senses makes "danger" a homonym.
inline Cybersign danger_crowd_sign() {
    return make_sign("danger", "crowd-crush", "p:crowd/panic-surge", "panic",
                     "s:risk/panic", "availability-bias", "t:bias/availability",
                     "traffic-spike", "c:anomaly/traffic-spike");
}

inline SignRegistry worked_registry() {
    SignRegistry registry;
    registry.register_sign(recon_sign());
    registry.register_sign(danger_hazard_sign());
    return registry;
}

inline SignRegistry homonym_registry() {
    SignRegistry registry = worked_registry();
    registry.register_sign(danger_crowd_sign());
    return registry;
}

inline MappingRegistry worked_mappings() {
    MappingRegistry registry;
    auto& cp = registry.table_for(Dimension::Physical);
    cp.add_row("p:flight/survey", "c:task/scan");
    cp.add_row("p:hazard/obstacle", "c:anomaly/algorithmic");
    cp.add_row("p:crowd/panic-surge", "c:anomaly/traffic-spike");
    cp.add_row("p:sector/A7", "c:zone/a7");
    auto& cs = registry.table_for(Dimension::Social);
    cs.add_row("s:order/standing", "c:task/scan");
    cs.add_row("s:risk/public-opinion", "c:anomaly/algorithmic");
    cs.add_row("s:risk/panic", "c:anomaly/traffic-spike");
    auto& ct = registry.table_for(Dimension::Thinking);
    ct.add_row("t:plan/scan", "c:task/scan");
    ct.add_row("t:bias/judgment", "c:anomaly/algorithmic");
    ct.add_row("t:bias/availability", "c:anomaly/traffic-spike");
    return registry;
}

// In-code copy of the emergency-response dialect shipped under data/.
inline Dialect emergency_dialect() {
    Dialect dialect;
    dialect.name = "emergency-response";

    auto& p = dialect.allowed_slots[dimension_index(Dimension::Physical)];
    p["sector"] = SlotRule{ValueKind::Identifier, std::nullopt};
    p["altitude"] = SlotRule{ValueKind::Quantity, UnitCode::Metre};
    p["duration"] = SlotRule{ValueKind::Quantity, UnitCode::Second};
    p["threat"] = SlotRule{ValueKind::Identifier, std::nullopt};
    p["detected"] = SlotRule{ValueKind::Reference, std::nullopt};

    auto& s = dialect.allowed_slots[dimension_index(Dimension::Social)];
    s["authorisation"] = SlotRule{ValueKind::Identifier, std::nullopt};
    s["mission-id"] = SlotRule{ValueKind::Identifier, std::nullopt};
    s["note"] = SlotRule{ValueKind::Text, std::nullopt};

    auto& t = dialect.allowed_slots[dimension_index(Dimension::Thinking)];
    t["intent"] = SlotRule{ValueKind::Identifier, std::nullopt};
    t["confidence"] = SlotRule{ValueKind::Probability, std::nullopt};
    t["urgency"] = SlotRule{ValueKind::Identifier, std::nullopt};

    auto& c = dialect.allowed_slots[dimension_index(Dimension::Cyber)];
    c["algorithm"] = SlotRule{ValueKind::Identifier, std::nullopt};
    c["datasource"] = SlotRule{ValueKind::Identifier, std::nullopt};
    c["bandwidth"] = SlotRule{ValueKind::Quantity, UnitCode::Hertz};

    dialect.nl_templates.push_back(NlTemplate{
        "Reconnaissance of sector {P.sector} at {P.altitude} for "
        "{P.duration} under authorization {S.authorisation} (mission "
        "{S.mission-id}), urgency {T.urgency}, confidence {T.confidence}, "
        "using {C.algorithm} with {C.datasource}.",
        {SlotRef{Dimension::Physical, "sector"},
         SlotRef{Dimension::Physical, "altitude"},
         SlotRef{Dimension::Physical, "duration"},
         SlotRef{Dimension::Social, "authorisation"},
         SlotRef{Dimension::Social, "mission-id"},
         SlotRef{Dimension::Thinking, "intent"},
         SlotRef{Dimension::Thinking, "urgency"},
         SlotRef{Dimension::Thinking, "confidence"},
         SlotRef{Dimension::Cyber, "algorithm"},
         SlotRef{Dimension::Cyber, "datasource"}}});
    dialect.nl_templates.push_back(NlTemplate{
        "Threat {P.threat} reported in sector {P.sector}, urgency "
        "{T.urgency}.",
        {SlotRef{Dimension::Physical, "threat"},
         SlotRef{Dimension::Physical, "sector"},
         SlotRef{Dimension::Thinking, "urgency"}}});
    dialect.nl_templates.push_back(
        NlTemplate{"Status update for sector {P.sector}.",
                   {SlotRef{Dimension::Physical, "sector"}}});

    dialect.robot_rules.push_back(
        RobotRule{"survey-area",
                  {"{P.sector}", "{P.altitude}", "{P.duration}"},
                  {SlotRef{Dimension::Physical, "sector"},
                   SlotRef{Dimension::Physical, "altitude"},
                   SlotRef{Dimension::Physical, "duration"}}});
    dialect.robot_rules.push_back(
        RobotRule{"hold-position",
                  {"{P.sector}"},
                  {SlotRef{Dimension::Physical, "threat"},
                   SlotRef{Dimension::Physical, "sector"}}});

    dialect.twin_paths = {
        {"P.sector", "/physical/sector"},
        {"P.altitude", "/physical/altitude"},
        {"P.duration", "/physical/duration"},
        {"P.threat", "/physical/threat"},
        {"T.confidence", "/thinking/confidence"},
        {"T.urgency", "/thinking/urgency"},
        {"C.algorithm", "/cyber/algorithm"},
        {"C.datasource", "/cyber/datasource"},
    };
    return dialect;
}

inline ContextSnapshot worked_context() {
    ContextSnapshot context;
    context.timestamp = 1754006400000;
    context.set(Dimension::Physical, "weather",
                SemanticValue::identifier("clear"));
    context.set(Dimension::Social, "oncall",
                SemanticValue::identifier("unit-7"));
    context.set(Dimension::Cyber, "uplink", SemanticValue::identifier("sat-2"));
    return context;
}

inline std::string data_path(const std::string& relative) {
#ifdef CYBERLANG_TEST_DATA_DIR
    return std::string(CYBERLANG_TEST_DATA_DIR) + "/" + relative;
#else
    return "data/" + relative;
#endif
}

} // namespace cyberlang::testing
