#pragma once

#include "hacf/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hacf {

// Exponent triple for a monomial x^b1 y^b2 t^b3.
// Two gradings coexist and must not be mixed up:
//   total_degree = b1+b2+b3      (Euclidean)
//   h_degree     = b1+b2+2*b3    (t counts twice under the anisotropic dilation)
struct MultiIndex {
    int b1 = 0, b2 = 0, b3 = 0;

    int total_degree() const { return b1 + b2 + b3; }
    int h_degree() const { return b1 + b2 + 2 * b3; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// Graded-lex on the Euclidean degree, then lex on (b1,b2,b3). Total order;
// used as the canonical term order everywhere (storage, printing, pivoting).
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        if (a.b1 != b.b1) return a.b1 < b.b1;
        if (a.b2 != b.b2) return a.b2 < b.b2;
        return a.b3 < b.b3;
    }
};

enum class Var { X = 0, Y = 1, T = 2 };

// Sparse polynomial in Q[x,y,t]. Invariant: no zero coefficients stored.
class Poly3 {
  public:
    using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

    Poly3() = default;
    explicit Poly3(const Rational& c) {
        if (c != 0) terms_[MultiIndex{}] = c;
    }
    static Poly3 monomial(MultiIndex m, const Rational& c) {
        Poly3 p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }
    static Poly3 variable(Var v) {
        MultiIndex m;
        (v == Var::X ? m.b1 : v == Var::Y ? m.b2 : m.b3) = 1;
        return monomial(m, Rational(1));
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(MultiIndex m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Max degrees; zero polynomial reports -1 so callers can tell it apart.
    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }
    int h_degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m.h_degree());
        return d;
    }

    bool is_h_homogeneous(int k) const {
        for (auto& [m, c] : terms_)
            if (m.h_degree() != k) return false;
        return true;
    }
    bool is_homogeneous(int k) const {
        for (auto& [m, c] : terms_)
            if (m.total_degree() != k) return false;
        return true;
    }

    Poly3& operator+=(const Poly3& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly3& operator-=(const Poly3& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly3& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
    friend Poly3 operator-(Poly3 a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Poly3 operator*(const Poly3& a, const Poly3& b) {
        Poly3 r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_)
                r.add_term(MultiIndex{ma.b1 + mb.b1, ma.b2 + mb.b2, ma.b3 + mb.b3}, ca * cb);
        return r;
    }
    friend Poly3 operator*(const Rational& s, Poly3 p) { return p *= s; }
    friend Poly3 operator*(Poly3 p, const Rational& s) { return p *= s; }

    friend bool operator==(const Poly3& a, const Poly3& b) { return a.terms_ == b.terms_; }

    Poly3 pow(unsigned e) const {
        Poly3 acc(Rational(1)), base = *this;
        while (e) {
            if (e & 1u) acc = acc * base;
            if (e >>= 1u) base = base * base;
        }
        return acc;
    }

    Poly3 derivative(Var v) const {
        Poly3 r;
        for (auto& [m, c] : terms_) {
            MultiIndex d = m;
            int& e = (v == Var::X ? d.b1 : v == Var::Y ? d.b2 : d.b3);
            if (e == 0) continue;
            int old = e--;
            r.add_term(d, c * old);
        }
        return r;
    }

    // Composition p(px, py, pt). Exponents stay small (degree cap 8 upstream),
    // so the naive pow-and-multiply is fine.
    Poly3 substitute(const Poly3& px, const Poly3& py, const Poly3& pt) const {
        Poly3 r;
        for (auto& [m, c] : terms_) {
            Poly3 t = Poly3(c);
            if (m.b1) t = t * px.pow(static_cast<unsigned>(m.b1));
            if (m.b2) t = t * py.pow(static_cast<unsigned>(m.b2));
            if (m.b3) t = t * pt.pow(static_cast<unsigned>(m.b3));
            r += t;
        }
        return r;
    }

    // Split by grading; only nonzero parts are present.
    std::map<int, Poly3> h_decompose() const {
        std::map<int, Poly3> parts;
        for (auto& [m, c] : terms_) parts[m.h_degree()].add_term(m, c);
        return parts;
    }
    std::map<int, Poly3> e_decompose() const {
        std::map<int, Poly3> parts;
        for (auto& [m, c] : terms_) parts[m.total_degree()].add_term(m, c);
        return parts;
    }

    Rational eval_exact(const Rational& x, const Rational& y, const Rational& t) const {
        Rational acc(0);
        for (auto& [m, c] : terms_)
            acc += c * pow_rational(x, static_cast<unsigned>(m.b1)) *
                   pow_rational(y, static_cast<unsigned>(m.b2)) *
                   pow_rational(t, static_cast<unsigned>(m.b3));
        return acc;
    }

    // Plain double evaluation, term order fixed by the map. Hot paths go
    // through the compiled kernels instead.
    double eval(double x, double y, double t) const;

    void add_term(MultiIndex m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

  private:
    TermMap terms_;
};

// Horizontal fields on the first Heisenberg group:
//   X = d/dx + 2y d/dt,   Y = d/dy - 2x d/dt,   [X,Y] = -4 d/dt.
Poly3 apply_X(const Poly3& p);
Poly3 apply_Y(const Poly3& p);

// X(Y p) - Y(X p) + 4 dp/dt; zero for every p.
Poly3 commutator_defect(const Poly3& p);

// Kohn Laplacian X^2 + Y^2 and the flat Laplacian for the comparison model.
Poly3 kohn_laplacian(const Poly3& p);
Poly3 euclid_laplacian(const Poly3& p);

bool is_h_harmonic(const Poly3& p);

struct HorizontalGradient {
    Poly3 xc, yc;  // coefficients along X and Y
};
HorizontalGradient horizontal_gradient(const Poly3& p);

// Squared horizontal gradient (Xp)^2 + (Yp)^2 of an H-homogeneous part of
// degree k. H-homogeneous of degree 2(k-1).
Poly3 q_poly(const Poly3& p_k);

// Cross term X(p_h) X(p_k) + Y(p_h) Y(p_k) for distinct H-degrees h, k.
Poly3 t_poly(const Poly3& p_h, const Poly3& p_k);

// Euclidean analogue: <grad p_h, grad p_k> with full gradients.
Poly3 e_q_poly(const Poly3& p_k);
Poly3 e_t_poly(const Poly3& p_h, const Poly3& p_k);

// p(delta_s(x,y,t)) with rational s: scales each term by s^{h_degree}.
Poly3 dilate_poly(const Poly3& p, const Rational& s);

}  // namespace hacf
