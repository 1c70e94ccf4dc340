#include "hacf/parse.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace hacf {

namespace {

enum class Tok { Var, Number, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;  // variable name or literal digits (possibly "a/b")
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::size_t at = pos_;
        if (pos_ >= src_.size()) return {Tok::End, at, ""};
        char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {Tok::Plus, at, "+"};
            case '-': ++pos_; return {Tok::Minus, at, "-"};
            case '*': ++pos_; return {Tok::Star, at, "*"};
            case '^': ++pos_; return {Tok::Caret, at, "^"};
            case '(': ++pos_; return {Tok::LParen, at, "("};
            case ')': ++pos_; return {Tok::RParen, at, ")"};
            case 'x':
            case 'y':
            case 't': ++pos_; return {Tok::Var, at, std::string(1, c)};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text = digits();
            // rational literal a/b, slash glued to the digits
            if (pos_ < src_.size() && src_[pos_] == '/') {
                std::size_t slash = pos_;
                ++pos_;
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    throw ParseError(slash + 1, "denominator digits", peek_text());
                std::string den = digits();
                if (den.find_first_not_of('0') == std::string::npos)
                    throw ParseError(slash + 1, "nonzero denominator", "'" + den + "'");
                text += "/" + den;
            }
            return {Tok::Number, at, text};
        }
        throw ParseError(at, "'x', 'y', 't', a number, '(', or '-'", "'" + std::string(1, c) + "'");
    }

  private:
    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return src_.substr(start, pos_ - start);
    }
    std::string peek_text() const {
        if (pos_ >= src_.size()) return "end of input";
        return "'" + std::string(1, src_[pos_]) + "'";
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

class Parser {
  public:
    Parser(const std::string& src, const ParseOptions& opts)
        : lex_(src), opts_(opts), cur_(lex_.next()) {}

    Poly3 run() {
        Poly3 p = expr();
        if (cur_.kind != Tok::End)
            throw ParseError(cur_.offset, "'+', '-', '*', '^', or end of input", describe(cur_));
        return p;
    }

  private:
    void advance() { cur_ = lex_.next(); }

    void check_degree(const Poly3& p, std::size_t at) const {
        if (p.total_degree() > opts_.max_total_degree)
            throw ParseError(at,
                             "total degree <= " + std::to_string(opts_.max_total_degree),
                             "degree " + std::to_string(p.total_degree()));
    }

    Poly3 expr() {
        Poly3 acc = term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            bool minus = cur_.kind == Tok::Minus;
            advance();
            Poly3 rhs = term();
            if (minus)
                acc -= rhs;
            else
                acc += rhs;
        }
        return acc;
    }

    Poly3 term() {
        Poly3 acc = factor();
        while (cur_.kind == Tok::Star) {
            std::size_t at = cur_.offset;
            advance();
            acc = acc * factor();
            check_degree(acc, at);
        }
        return acc;
    }

    Poly3 factor() {
        Poly3 b = base();
        if (cur_.kind == Tok::Caret) {
            std::size_t at = cur_.offset;
            advance();
            if (cur_.kind != Tok::Number || cur_.text.find('/') != std::string::npos)
                throw ParseError(cur_.offset, "a nonnegative integer exponent", describe(cur_));
            if (cur_.text.size() > 6)
                throw ParseError(cur_.offset, "an exponent with at most 6 digits", describe(cur_));
            unsigned e = static_cast<unsigned>(std::stoul(cur_.text));
            advance();
            if (b.total_degree() > 0 && e > 0 &&
                b.total_degree() * static_cast<long>(e) > opts_.max_total_degree)
                throw ParseError(at,
                                 "total degree <= " + std::to_string(opts_.max_total_degree),
                                 "degree " + std::to_string(b.total_degree() * static_cast<long>(e)));
            b = b.pow(e);
            check_degree(b, at);
        }
        return b;
    }

    Poly3 base() {
        switch (cur_.kind) {
            case Tok::Var: {
                char v = cur_.text[0];
                advance();
                return Poly3::variable(v == 'x' ? Var::X : v == 'y' ? Var::Y : Var::T);
            }
            case Tok::Number: {
                Rational q(cur_.text);
                q.canonicalize();
                advance();
                return Poly3(q);
            }
            case Tok::LParen: {
                std::size_t open = cur_.offset;
                advance();
                Poly3 p = expr();
                if (cur_.kind != Tok::RParen)
                    throw ParseError(cur_.offset, "')' closing '(' at offset " +
                                                      std::to_string(open),
                                     describe(cur_));
                advance();
                return p;
            }
            case Tok::Minus: {
                advance();
                return -factor();
            }
            default:
                throw ParseError(cur_.offset, "'x', 'y', 't', a number, '(', or '-'",
                                 describe(cur_));
        }
    }

    Lexer lex_;
    ParseOptions opts_;
    Token cur_;
};

// Output term order: H-degree descending, then graded-lex descending. Keeps
// the top graded part first, e.g. "-2*x^3 - 3*y*t + x".
bool output_before(const MultiIndex& a, const MultiIndex& b) {
    if (a.h_degree() != b.h_degree()) return a.h_degree() > b.h_degree();
    return GradedLexLess{}(b, a);
}

std::string monomial_text(const MultiIndex& m) {
    std::string out;
    auto put = [&out](char v, int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += v;
        if (e > 1) out += "^" + std::to_string(e);
    };
    put('x', m.b1);
    put('y', m.b2);
    put('t', m.b3);
    return out;
}

}  // namespace

Poly3 parse_poly(const std::string& src, const ParseOptions& opts) {
    return Parser(src, opts).run();
}

std::string format_poly(const Poly3& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<MultiIndex, Rational>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](auto& a, auto& b) { return output_before(a.first, b.first); });

    std::string out;
    bool first = true;
    for (auto& [m, c] : terms) {
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono = monomial_text(m);
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    return out;
}

}  // namespace hacf
