#include "hacf/poly.hpp"

#include <cmath>

namespace hacf {

double Poly3::eval(double x, double y, double t) const {
    double acc = 0.0;
    for (auto& [m, c] : terms_) {
        double v = to_double(c);
        for (int i = 0; i < m.b1; ++i) v *= x;
        for (int i = 0; i < m.b2; ++i) v *= y;
        for (int i = 0; i < m.b3; ++i) v *= t;
        acc += v;
    }
    return acc;
}

Poly3 apply_X(const Poly3& p) {
    // d/dx + 2y d/dt
    Poly3 r = p.derivative(Var::X);
    Poly3 two_y = Poly3::monomial(MultiIndex{0, 1, 0}, Rational(2));
    r += two_y * p.derivative(Var::T);
    return r;
}

Poly3 apply_Y(const Poly3& p) {
    // d/dy - 2x d/dt
    Poly3 r = p.derivative(Var::Y);
    Poly3 neg_two_x = Poly3::monomial(MultiIndex{1, 0, 0}, Rational(-2));
    r += neg_two_x * p.derivative(Var::T);
    return r;
}

Poly3 commutator_defect(const Poly3& p) {
    return apply_X(apply_Y(p)) - apply_Y(apply_X(p)) + Rational(4) * p.derivative(Var::T);
}

Poly3 kohn_laplacian(const Poly3& p) { return apply_X(apply_X(p)) + apply_Y(apply_Y(p)); }

Poly3 euclid_laplacian(const Poly3& p) {
    return p.derivative(Var::X).derivative(Var::X) + p.derivative(Var::Y).derivative(Var::Y) +
           p.derivative(Var::T).derivative(Var::T);
}

bool is_h_harmonic(const Poly3& p) { return kohn_laplacian(p).is_zero(); }

HorizontalGradient horizontal_gradient(const Poly3& p) { return {apply_X(p), apply_Y(p)}; }

Poly3 q_poly(const Poly3& p_k) {
    int k = p_k.h_degree();
    if (k < 0) return Poly3();
    if (!p_k.is_h_homogeneous(k))
        throw std::domain_error("q_poly: input must be H-homogeneous");
    Poly3 gx = apply_X(p_k), gy = apply_Y(p_k);
    return gx * gx + gy * gy;
}

Poly3 t_poly(const Poly3& p_h, const Poly3& p_k) {
    int h = p_h.h_degree(), k = p_k.h_degree();
    if (h < 0 || k < 0) return Poly3();
    if (!p_h.is_h_homogeneous(h) || !p_k.is_h_homogeneous(k))
        throw std::domain_error("t_poly: inputs must be H-homogeneous");
    if (h == k) throw std::domain_error("t_poly: degrees must differ");
    return apply_X(p_h) * apply_X(p_k) + apply_Y(p_h) * apply_Y(p_k);
}

Poly3 e_q_poly(const Poly3& p_k) {
    int k = p_k.total_degree();
    if (k < 0) return Poly3();
    if (!p_k.is_homogeneous(k))
        throw std::domain_error("e_q_poly: input must be homogeneous");
    Poly3 gx = p_k.derivative(Var::X), gy = p_k.derivative(Var::Y), gt = p_k.derivative(Var::T);
    return gx * gx + gy * gy + gt * gt;
}

Poly3 e_t_poly(const Poly3& p_h, const Poly3& p_k) {
    int h = p_h.total_degree(), k = p_k.total_degree();
    if (h < 0 || k < 0) return Poly3();
    if (!p_h.is_homogeneous(h) || !p_k.is_homogeneous(k))
        throw std::domain_error("e_t_poly: inputs must be homogeneous");
    if (h == k) throw std::domain_error("e_t_poly: degrees must differ");
    return p_h.derivative(Var::X) * p_k.derivative(Var::X) +
           p_h.derivative(Var::Y) * p_k.derivative(Var::Y) +
           p_h.derivative(Var::T) * p_k.derivative(Var::T);
}

Poly3 dilate_poly(const Poly3& p, const Rational& s) {
    Poly3 r;
    for (auto& [m, c] : p.terms())
        r.add_term(m, c * pow_rational(s, static_cast<unsigned>(m.h_degree())));
    return r;
}

}  // namespace hacf
