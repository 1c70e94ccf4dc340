#pragma once

#include "hacf/poly.hpp"

#include <stdexcept>
#include <string>

namespace hacf {

// Parse failure with the byte offset of the offending token and a summary of
// what would have been accepted there.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t offset, std::string expected, std::string found)
        : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected " +
                             expected + ", found " + found),
          offset_(offset),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

  private:
    std::size_t offset_;
    std::string expected_, found_;
};

struct ParseOptions {
    // Cap on the total degree of the result; guards the exact-arithmetic
    // layers against accidental blowup from pasted expressions.
    int max_total_degree = 8;
};

// Grammar (no implicit multiplication, integer exponents, rational literals
// as a/b with nonzero b):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := 'x' | 'y' | 't' | number | '(' expr ')' | '-' factor
Poly3 parse_poly(const std::string& src, const ParseOptions& opts = {});

// Canonical text form: terms sorted by H-degree descending, ties graded-lex
// descending; coefficients exact; "0" for the zero polynomial. Round-trips
// through parse_poly.
std::string format_poly(const Poly3& p);

}  // namespace hacf
