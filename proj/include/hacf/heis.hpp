#pragma once

#include "hacf/poly.hpp"

namespace hacf {

// Homogeneous dimension of the group: 2 horizontal directions + twice-weighted
// center. Drives every scaling exponent downstream (volume ~ r^4, the r^-2
// normalisation of the energy, s^3 in the polar radial factor).
inline constexpr int homogeneous_dimension = 4;

struct GaugePoint {
    double x = 0, y = 0, t = 0;
};

// Group law. Non-abelian: the center picks up the symplectic area term
// 2*(x2*y1 - x1*y2). Order matters.
GaugePoint group_mul(const GaugePoint& a, const GaugePoint& b);
GaugePoint group_inv(const GaugePoint& a);

// Anisotropic dilation (r x, r y, r^2 t); group automorphism for every r > 0.
GaugePoint dilate(const GaugePoint& p, double r);

// Gauge norm ((x^2+y^2)^2 + t^2)^(1/4); homogeneous of degree 1 under dilate.
double koranyi_norm(const GaugePoint& p);

inline GaugePoint gauge_sphere_point(double x, double y, double t) { return {x, y, t}; }

// v(xi) = p(base o xi); exact because the double coordinates of base are
// dyadic rationals. Left translation, consistent with group_mul's order.
Poly3 translate_poly(const Poly3& p, const GaugePoint& base);

}  // namespace hacf
