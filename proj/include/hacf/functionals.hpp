#pragma once

#include "hacf/heis.hpp"
#include "hacf/poly.hpp"
#include "hacf/quadrature.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hacf {

// Quadrature orders for the functional layer. The defaults give spectral
// accuracy for gradient-energy integrands (smooth on the sphere after the
// azimuthal sum). Phase-split (indicator) integrands refine both angular
// directions by indicator_refine; the radial integrand stays piecewise smooth
// so n_r is left alone.
struct Orders {
    int n_phi = 64;
    int n_theta = 128;
    int n_r = 48;
    int indicator_refine = 4;
};

// Nodes where |u| falls at or below this threshold count toward neither
// phase; keeps the splitting deterministic at sign boundaries, at the price
// of dropping a whole node column when the free boundary runs exactly
// through the theta grid (so I+ + I- <= I, short by O(1/n_theta)).
inline constexpr double kPhaseTie = 1e-14;

enum class Phase { Plus, Minus };

// Scale-normalized gradient energy of u over the gauge ball of radius r:
//   I(r) = r^-2 int_{B_r} |grad_H u|^2 / |xi|^2 dxi
// computed through the polar factorization, one compiled-kernel sweep per
// radial node. Any polynomial u, no homogeneity assumed.
double I_heis(const Poly3& u, double r, const Orders& orders = {});

// Same energy restricted to {u > 0} (Plus) or {u < 0} (Minus).
double I_heis_phase(const Poly3& u, double r, Phase ph, const Orders& orders = {});

// Two-phase product J(r) = I+(r) * I-(r); the pair is computed in a single
// sweep. Scale-invariant normalization: constant when both phases carry
// 1-homogeneous energy.
double J_heis(const Poly3& u, double r, const Orders& orders = {});

// Same quantity through the generic (uncompiled) ball integrator:
//   r^-4 * int_{B_r} |grad_H u+|^2/|xi|^2 * int_{B_r} |grad_H u-|^2/|xi|^2.
// Cross-check path for J_heis; agreement is a test invariant.
double J_heis_direct(const Poly3& u, double r, const Orders& orders = {});

// beta-weighted variant with phase scalings u -> alpha1 u+ - alpha2 u-:
//   r^(4-beta) * (alpha1^2 I+) * (alpha2^2 I-).
double J_beta_heis(const Poly3& u, double beta, double r, const Orders& orders = {},
                   double alpha1 = 1.0, double alpha2 = 1.0);

// Euclidean n=3 baseline on round balls: r^-2 int_{B_r} |grad u|^2 / |P| dP.
double I_euclid(const Poly3& u, double r, const Orders& orders = {});
double I_euclid_phase(const Poly3& u, double r, Phase ph, const Orders& orders = {});
double J_euclid(const Poly3& u, double r, const Orders& orders = {});

// Expansion coefficients over the unit gauge sphere (graded parts u_k of u):
//   diag:  a_k     = (2k)^-1     int |grad_H u_k|^2 / rho dsigma
//   cross: a_{h,k} = (h+k)^-1    int <grad_H u_h, grad_H u_k> / rho dsigma
// rho = sqrt(x^2+y^2). Missing parts give 0. Signed convention: the cross
// coefficient keeps its sign; I(r) = sum_k a_k r^(2k-2) + sum_{h!=k} a_{h,k}
// r^(h+k-2).
double coeff_diag(const Poly3& u, int k, const SphereRule& rule);
double coeff_cross(const Poly3& u, int h, int k, const SphereRule& rule);

// Euclidean analogue on the round sphere (ordinary homogeneous parts):
// (2k)^-1 int_{S^2} |grad u_k|^2 dsigma, plus the cross term, which vanishes
// analytically when the parts are harmonic.
double coeff_euclid_diag(const Poly3& u, int k, const SphereRule& rule);
double coeff_euclid_cross(const Poly3& u, int h, int k, const SphereRule& rule);

// All coefficients up to H-degree K (default: the H-degree of u), with an
// evaluator for the resulting finite expansion.
struct SeriesCoefficients {
    int K = 0;
    std::map<int, double> diag;                   // k -> a_k, k = 1..K
    std::map<std::pair<int, int>, double> cross;  // (h<k) -> a_{h,k}

    double diag_at(int k) const;
    double cross_at(int h, int k) const;  // symmetric
    double eval_I(double r) const;
};
SeriesCoefficients compute_series(const Poly3& u, const SphereRule& rule, int K = -1);

enum class Verdict { Increasing, Decreasing, Constant, Mixed };
std::string verdict_name(Verdict v);

// Monotonicity call on sampled values, tolerance applied to values normalized
// by the curve mean. Constant: every value within tol of the mean.
// Increasing/Decreasing: every consecutive difference beyond tol with the
// matching sign. Anything else is Mixed. evidence = size of the worst
// violation of the assigned hypothesis (0 when clean).
struct Classification {
    Verdict verdict = Verdict::Mixed;
    double evidence = 0;
};
Classification classify_curve(std::span<const double> values, double tol = 1e-7);

struct FunctionalCurve {
    std::vector<double> r, value;
};

// Phase energies along a grid from one plan: plus[i] = I+(r_i), minus[i] =
// I-(r_i). J(r_i) = plus[i]*minus[i] by definition.
struct PhaseCurves {
    std::vector<double> r, plus, minus;
};
PhaseCurves sample_phase_curves(const Poly3& u, const std::vector<double>& grid,
                                const Orders& orders = {});

enum class FunctionalKind { I, J, JBeta, IEuclid, JEuclid };

struct CurveRequest {
    FunctionalKind kind = FunctionalKind::I;
    std::vector<double> grid;  // radii, ascending
    Orders orders{};
    double beta = 4.0;
    double alpha1 = 1.0, alpha2 = 1.0;  // JBeta only
};
FunctionalCurve sample_curve(const Poly3& u, const CurveRequest& req);

// Geometric grid r_i = r_min (r_max/r_min)^(i/(count-1)).
std::vector<double> geometric_grid(double r_min, double r_max, int count);

// Least-squares fit of v ~ c0 + c2 r^2 + c4 r^4 (normal equations on a
// rescaled basis, long double).
struct EvenQuarticFit {
    double c0 = 0, c2 = 0, c4 = 0;
};
EvenQuarticFit fit_even_quartic(std::span<const double> r, std::span<const double> v);

// The decreasing example: u = x - 3yt - 2x^3, harmonic for the Kohn
// Laplacian, with I(r) = pi^2 - 12 pi r^2 + (33 pi^2/4) r^4 near 0.
Poly3 decreasing_example();

// Free-boundary samples of the example: roots of u(x, y, t) = 0 in x for
// seeded (y, t) pairs near the origin. Deterministic.
std::vector<GaugePoint> free_boundary_samples(int count);

// max over samples of | alpha1^2 g1 - alpha2^2 g1 - g_{alpha1,alpha2} | where
// g1 = |grad_H u|^2 at the sample and g_{a1,a2} = (a1^2 - a2^2) g1 is the
// two-phase flux datum of alpha1 u+ - alpha2 u-. Samples must lie on the free
// boundary (|u| <= 1e-10).
double two_phase_residual(double alpha1, double alpha2, std::span<const GaugePoint> samples);

// | I_{alpha1 u+ - alpha2 u-}(r) - (alpha1^2 + alpha2^2)/2 * I_u(r) | for the
// decreasing example; the identity holds because the example's energy splits
// evenly across phases.
double generalized_identity_residual(double alpha1, double alpha2, double r,
                                     const Orders& orders = {});

}  // namespace hacf
