#pragma once

#include "qma/poly.hpp"

#include <stdexcept>
#include <string>

namespace qma {

// Error with the 0-based offset of the offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

// Parses "q^2*x11*x21 + (1/2)*x12^3 - (q - q^-1)*x22" style expressions
// over the presentation's generators and normalizes the result.
// Grammar: expr := ['-'] term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := rational | 'q' ['^' int] | gen ['^' int] | '(' expr ')'
NcPoly parse_expr(const Presentation& p, const std::string& text,
                  long budget = kDefaultRewriteBudget);

}  // namespace qma
