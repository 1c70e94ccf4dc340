#include "hacf/heis.hpp"

#include <cmath>
#include <stdexcept>

namespace hacf {

GaugePoint group_mul(const GaugePoint& a, const GaugePoint& b) {
    return {a.x + b.x, a.y + b.y, a.t + b.t + 2.0 * (b.x * a.y - a.x * b.y)};
}

GaugePoint group_inv(const GaugePoint& a) { return {-a.x, -a.y, -a.t}; }

GaugePoint dilate(const GaugePoint& p, double r) {
    if (!(r > 0.0)) throw std::domain_error("dilate: radius must be positive");
    return {r * p.x, r * p.y, r * r * p.t};
}

double koranyi_norm(const GaugePoint& p) {
    double rho2 = p.x * p.x + p.y * p.y;
    return std::pow(rho2 * rho2 + p.t * p.t, 0.25);
}

Poly3 translate_poly(const Poly3& p, const GaugePoint& base) {
    Rational a = rational_from_double(base.x);
    Rational b = rational_from_double(base.y);
    Rational c = rational_from_double(base.t);
    // base o (x,y,t) = (a+x, b+y, c+t+2(x b - a y))
    Poly3 x = Poly3::variable(Var::X), y = Poly3::variable(Var::Y), t = Poly3::variable(Var::T);
    Poly3 nx = Poly3(a) + x;
    Poly3 ny = Poly3(b) + y;
    Poly3 nt = Poly3(c) + t + Rational(2) * b * x - Rational(2) * a * y;
    return p.substitute(nx, ny, nt);
}

}  // namespace hacf
