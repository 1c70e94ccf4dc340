#pragma once

#include "hacf/heis.hpp"

#include <functional>
#include <vector>

namespace hacf {

// 1d Gauss-Legendre rule. Nodes by Newton on the Legendre recurrence,
// deterministic to the last bit for a given n.
struct Quad1D {
    std::vector<double> node, weight;
    std::size_t size() const { return node.size(); }
};
Quad1D gauss_legendre(int n);                      // on [-1, 1]
Quad1D gauss_legendre(int n, double a, double b);  // affinely mapped

enum class Geometry { Koranyi, Euclid3 };

// Product rule on a unit sphere.
//
// Koranyi: the gauge sphere {((x^2+y^2)^2+t^2)^(1/4) = 1} parametrized per
// hemisphere by (x,y,t) = (sqrt(sin phi) cos theta, sqrt(sin phi) sin theta,
// +-cos phi), phi in (0, pi/2). The horizontal-perimeter measure in these
// coordinates is sqrt(sin phi) dphi dtheta, so the rule is Gauss-Legendre in
// phi times trapezoid in theta with that density folded into w.
//
// Euclid3: the round sphere, Gauss-Legendre in cos(polar) times trapezoid in
// the azimuth; w sums to 4pi.
//
// n_theta must be even: the node set is then invariant under theta ->
// theta + pi, i.e. under (x,y,t) -> (-x,-y,t), which downstream phase
// splitting relies on.
struct SphereRule {
    Geometry geometry = Geometry::Koranyi;
    int n_phi = 0, n_theta = 0;
    std::vector<double> x, y, t, w;
    // Koranyi only: w_i / sqrt(x_i^2+y_i^2), the effective weight in the
    // polar/coarea formula for gauge-ball integrals.
    std::vector<double> w_over_rho;
    double total_weight = 0;  // pairwise sum of w

    std::size_t size() const { return x.size(); }
};

SphereRule koranyi_sphere_rule(int n_phi, int n_theta);
SphereRule euclid_sphere_rule(int n);  // n-point GL x 2n-point trapezoid

// sum_i w_i f(node_i). Throws if f returns a non-finite value, reporting the
// offending node.
double integrate_sphere(const SphereRule& rule, const std::function<double(GaugePoint)>& f);

// Gauge-ball integral by the polar/coarea factorization
//   int_{B_r} f = int_0^r s^3 [ sum_i (w_i/rho_i) f(delta_s sigma_i) ] ds,
// radial part n_r-point Gauss-Legendre on [0, r]. Generic evaluation path;
// the functional layer has a compiled fast path that must agree with this.
double koranyi_ball_integrate(const std::function<double(GaugePoint)>& f, double r, int n_r,
                              const SphereRule& rule);

// Euclidean ball integral, int_0^r s^2 [ sum_i w_i f(s sigma_i) ] ds.
double euclid_ball_integrate(const std::function<double(GaugePoint)>& f, double r, int n_r,
                             const SphereRule& rule);

}  // namespace hacf
