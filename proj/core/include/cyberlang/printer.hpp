#pragma once

#include <string>

#include "cyberlang/statement.hpp"

namespace cyberlang {

// Single-line canonical form: blocks in P,S,T,C order, one space between
// blocks, ", " between slots and directives, ASCII operator spellings.
// Parsing the result reproduces the statement structurally (ids differ).
std::string print_canonical(const Cyberstatement& statement);

// The bracketed integration operator on its own ("[+O: P>S, T||C]"),
// empty string when there are no directives.
std::string print_canonical_omega(const IntegrationOperator& omega);

} // namespace cyberlang
