#include "cyberlang/printer.hpp"

#include "cyberlang/value.hpp"

namespace cyberlang {

std::string print_canonical_omega(const IntegrationOperator& omega) {
    if (omega.directives.empty()) return "";
    std::string out = "[+O: ";
    bool first = true;
    auto sep = [&]() {
        if (!first) out += ", ";
        first = false;
    };
    for (const auto& directive : omega.directives) {
        if (const auto* p = std::get_if<PrecedenceDirective>(&directive)) {
            sep();
            out += dimension_letter(p->higher);
            out += '>';
            out += dimension_letter(p->lower);
        } else if (const auto* q = std::get_if<ParallelDirective>(&directive)) {
            sep();
            out += dimension_letter(q->left);
            out += "||";
            out += dimension_letter(q->right);
        } else {
            for (const auto& entry : std::get<BlendDirective>(directive).entries) {
                sep();
                out += dimension_letter(entry.dimension);
                out += '~';
                out += format_double(entry.weight);
            }
        }
    }
    out += ']';
    return out;
}

std::string print_canonical(const Cyberstatement& statement) {
    std::string out;
    for (const auto& block : statement.blocks) {
        if (!out.empty()) out += ' ';
        out += '[';
        out += dimension_letter(block.dimension);
        out += ": ";
        for (std::size_t i = 0; i < block.slots.size(); ++i) {
            if (i > 0) out += ", ";
            out += block.slots[i].key;
            out += '=';
            out += block.slots[i].value.canonical_text();
        }
        out += ']';
    }
    const std::string omega = print_canonical_omega(statement.omega);
    if (!omega.empty()) {
        if (!out.empty()) out += ' ';
        out += omega;
    }
    return out;
}

} // namespace cyberlang
