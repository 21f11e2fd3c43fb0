#include "cyberlang/ledger.hpp"

#include <sstream>

#include "cyberlang/digest.hpp"
#include "cyberlang/json_io.hpp"

namespace cyberlang {

std::string InterpretationLedger::context_signature(
    const ContextSnapshot& context) {
    // One sorted "D/key" line per entry; values and timestamps excluded so
    // contexts with the same shape share priors.
    std::string shape;
    for (Dimension d : kAllDimensions) {
        for (const auto& [key, entry] : context.state(d)) {
            shape += dimension_letter(d);
            shape += '/';
            shape += key;
            shape += '\n';
        }
    }
    return sha256_hex(shape);
}

void InterpretationLedger::record_outcome(const ContextSnapshot& context,
                                          const std::string& lambda,
                                          const Cybersign& chosen) {
    Event event{context_signature(context), lambda, chosen.digest()};
    counts_[{event.signature, event.lambda}][event.chosen] += 1;
    events_.push_back(std::move(event));
}

double InterpretationLedger::prior_boost(const ContextSnapshot& context,
                                         const std::string& lambda,
                                         const Cybersign& candidate) const {
    const auto boosts = prior_boosts(context, lambda);
    const auto it = boosts.find(candidate.digest());
    return it == boosts.end() ? 0.0 : it->second;
}

std::map<std::string, double> InterpretationLedger::prior_boosts(
    const ContextSnapshot& context, const std::string& lambda) const {
    std::map<std::string, double> out;
    const auto it = counts_.find({context_signature(context), lambda});
    if (it == counts_.end()) return out;
    int total = 0;
    for (const auto& [digest, wins] : it->second) total += wins;
    for (const auto& [digest, wins] : it->second) {
        out[digest] = 0.5 * static_cast<double>(wins) /
                      (1.0 + static_cast<double>(total));
    }
    return out;
}

std::string InterpretationLedger::to_jsonl() const {
    std::string out;
    for (const auto& event : events_) {
        const nlohmann::json line = {{"context_signature", event.signature},
                                     {"lambda", event.lambda},
                                     {"chosen", event.chosen}};
        out += line.dump();
        out += '\n';
    }
    return out;
}

InterpretationLedger InterpretationLedger::from_jsonl(const std::string& text) {
    InterpretationLedger ledger;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto doc = parse_json_strict(
            line, "ledger line " + std::to_string(line_no));
        const std::string what = "ledger line " + std::to_string(line_no);
        require_only_keys(doc, {"context_signature", "lambda", "chosen"}, what);
        Event event{require_string(doc, "context_signature", what),
                    require_string(doc, "lambda", what),
                    require_string(doc, "chosen", what)};
        ledger.counts_[{event.signature, event.lambda}][event.chosen] += 1;
        ledger.events_.push_back(std::move(event));
    }
    return ledger;
}

void InterpretationLedger::save(const std::string& path) const {
    write_text_file(path, to_jsonl());
}

InterpretationLedger InterpretationLedger::load(const std::string& path) {
    return from_jsonl(read_text_file(path));
}

} // namespace cyberlang
