#include "hacf/functionals.hpp"

#include "hacf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hacf {

namespace {

// Precompiled state for sweeping one functional over many radii: sphere rule,
// radial rule on [0,1] (mapped per radius via coefficient scaling), compiled
// energy density P = |grad u|^2 and, for phase splits, compiled u.
struct SweepPlan {
    SphereRule rule;
    Quad1D radial;
    CompiledPoly cP, cu;
    Grading grading = Grading::H;
    bool phased = false;

    std::vector<double> sc, sc_u, vals, vals_u, masked_p, masked_m;
    std::vector<double> shell, shell_p, shell_m;
};

Poly3 h_energy_density(const Poly3& u) {
    HorizontalGradient g = horizontal_gradient(u);
    return g.xc * g.xc + g.yc * g.yc;
}

Poly3 e_energy_density(const Poly3& u) {
    Poly3 gx = u.derivative(Var::X), gy = u.derivative(Var::Y), gt = u.derivative(Var::T);
    return gx * gx + gy * gy + gt * gt;
}

SweepPlan make_plan(const Poly3& u, const Orders& o, Geometry geom, bool phased) {
    if (o.n_r < 1) throw std::domain_error("orders: n_r must be >= 1");
    const int refine = phased ? std::max(1, o.indicator_refine) : 1;
    SweepPlan plan;
    plan.phased = phased;
    if (geom == Geometry::Koranyi) {
        plan.rule = koranyi_sphere_rule(o.n_phi * refine, o.n_theta * refine);
        plan.cP = compile_poly(h_energy_density(u));
        plan.grading = Grading::H;
    } else {
        plan.rule = euclid_sphere_rule(o.n_phi * refine);
        plan.cP = compile_poly(e_energy_density(u));
        plan.grading = Grading::Euclid;
    }
    plan.radial = gauss_legendre(o.n_r, 0.0, 1.0);
    plan.cu = compile_poly(u);
    plan.sc.resize(plan.cP.size());
    plan.sc_u.resize(plan.cu.size());
    const std::size_t n = plan.rule.size();
    plan.vals.resize(n);
    plan.vals_u.resize(n);
    plan.masked_p.resize(n);
    plan.masked_m.resize(n);
    plan.shell.resize(plan.radial.size());
    plan.shell_p.resize(plan.radial.size());
    plan.shell_m.resize(plan.radial.size());
    return plan;
}

// Effective sphere weights for the two geometries: the polar factorization on
// gauge balls integrates against w/rho, round balls against w.
const std::vector<double>& sweep_weights(const SweepPlan& plan) {
    return plan.grading == Grading::H ? plan.rule.w_over_rho : plan.rule.w;
}

struct SweepResult {
    double full = 0, plus = 0, minus = 0;
};

// I(r) = int_0^1 tau * G(r tau) dtau with G(s) = sum_i W_i P(delta_s sigma_i)
// (same shape in the Euclidean model with ordinary scaling and W = w). The
// phase sums mask nodes by the sign of u at the dilated node.
SweepResult sweep(SweepPlan& plan, double r) {
    if (!(r > 0)) throw std::domain_error("functional: r must be positive");
    const std::vector<double>& W = sweep_weights(plan);
    const std::size_t n = plan.rule.size();
    for (std::size_t k = 0; k < plan.radial.size(); ++k) {
        const double tau = plan.radial.node[k];
        const double s = r * tau;
        scale_coeffs(plan.cP, s, plan.grading, plan.sc);
        eval_batch(plan.cP, plan.sc, plan.rule.x, plan.rule.y, plan.rule.t, plan.vals);
        if (!plan.phased) {
            plan.shell[k] = tau * pairwise_dot(plan.vals, W);
            continue;
        }
        scale_coeffs(plan.cu, s, plan.grading, plan.sc_u);
        eval_batch(plan.cu, plan.sc_u, plan.rule.x, plan.rule.y, plan.rule.t, plan.vals_u);
        for (std::size_t i = 0; i < n; ++i) {
            const double uv = plan.vals_u[i];
            plan.masked_p[i] = uv > kPhaseTie ? plan.vals[i] : 0.0;
            plan.masked_m[i] = uv < -kPhaseTie ? plan.vals[i] : 0.0;
        }
        plan.shell_p[k] = tau * pairwise_dot(plan.masked_p, W);
        plan.shell_m[k] = tau * pairwise_dot(plan.masked_m, W);
    }
    SweepResult res;
    if (!plan.phased) {
        res.full = pairwise_dot(plan.shell, plan.radial.weight);
        if (!std::isfinite(res.full)) throw std::range_error("functional: non-finite value");
        return res;
    }
    res.plus = pairwise_dot(plan.shell_p, plan.radial.weight);
    res.minus = pairwise_dot(plan.shell_m, plan.radial.weight);
    res.full = res.plus + res.minus;
    if (!std::isfinite(res.plus) || !std::isfinite(res.minus))
        throw std::range_error("functional: non-finite value");
    return res;
}

}  // namespace

double I_heis(const Poly3& u, double r, const Orders& orders) {
    SweepPlan plan = make_plan(u, orders, Geometry::Koranyi, false);
    return sweep(plan, r).full;
}

double I_heis_phase(const Poly3& u, double r, Phase ph, const Orders& orders) {
    SweepPlan plan = make_plan(u, orders, Geometry::Koranyi, true);
    SweepResult res = sweep(plan, r);
    return ph == Phase::Plus ? res.plus : res.minus;
}

double J_heis(const Poly3& u, double r, const Orders& orders) {
    SweepPlan plan = make_plan(u, orders, Geometry::Koranyi, true);
    SweepResult res = sweep(plan, r);
    return res.plus * res.minus;
}

double J_heis_direct(const Poly3& u, double r, const Orders& orders) {
    const int refine = std::max(1, orders.indicator_refine);
    SphereRule rule = koranyi_sphere_rule(orders.n_phi * refine, orders.n_theta * refine);
    Poly3 P = h_energy_density(u);
    auto phase_integral = [&](double sign) {
        return koranyi_ball_integrate(
            [&](GaugePoint p) {
                double uv = u.eval(p.x, p.y, p.t);
                if (sign * uv <= kPhaseTie) return 0.0;
                double N = koranyi_norm(p);
                return P.eval(p.x, p.y, p.t) / (N * N);
            },
            r, orders.n_r, rule);
    };
    double ip = phase_integral(+1.0), im = phase_integral(-1.0);
    return ip * im / (r * r * r * r);
}

double J_beta_heis(const Poly3& u, double beta, double r, const Orders& orders, double alpha1,
                   double alpha2) {
    if (!(beta > 0)) throw std::domain_error("J_beta_heis: beta must be positive");
    SweepPlan plan = make_plan(u, orders, Geometry::Koranyi, true);
    SweepResult res = sweep(plan, r);
    return std::pow(r, 4.0 - beta) * (alpha1 * alpha1 * res.plus) * (alpha2 * alpha2 * res.minus);
}

double I_euclid(const Poly3& u, double r, const Orders& orders) {
    SweepPlan plan = make_plan(u, orders, Geometry::Euclid3, false);
    return sweep(plan, r).full;
}

double I_euclid_phase(const Poly3& u, double r, Phase ph, const Orders& orders) {
    SweepPlan plan = make_plan(u, orders, Geometry::Euclid3, true);
    SweepResult res = sweep(plan, r);
    return ph == Phase::Plus ? res.plus : res.minus;
}

double J_euclid(const Poly3& u, double r, const Orders& orders) {
    SweepPlan plan = make_plan(u, orders, Geometry::Euclid3, true);
    SweepResult res = sweep(plan, r);
    return res.plus * res.minus;
}

namespace {

double sphere_energy(const Poly3& density, const SphereRule& rule,
                     const std::vector<double>& W) {
    CompiledPoly cp = compile_poly(density);
    std::vector<double> vals(rule.size());
    eval_batch(cp, cp.coeff, rule.x, rule.y, rule.t, vals);
    double v = pairwise_dot(vals, W);
    if (!std::isfinite(v)) throw std::range_error("coefficient: non-finite value");
    return v;
}

}  // namespace

double coeff_diag(const Poly3& u, int k, const SphereRule& rule) {
    if (rule.geometry != Geometry::Koranyi) throw std::domain_error("coeff_diag: Koranyi rule");
    if (k <= 0) return 0.0;
    auto parts = u.h_decompose();
    auto it = parts.find(k);
    if (it == parts.end()) return 0.0;
    return sphere_energy(q_poly(it->second), rule, rule.w_over_rho) / (2.0 * k);
}

double coeff_cross(const Poly3& u, int h, int k, const SphereRule& rule) {
    if (rule.geometry != Geometry::Koranyi) throw std::domain_error("coeff_cross: Koranyi rule");
    if (h == k) throw std::domain_error("coeff_cross: degrees must differ");
    if (h <= 0 || k <= 0) return 0.0;
    auto parts = u.h_decompose();
    auto ih = parts.find(h), ik = parts.find(k);
    if (ih == parts.end() || ik == parts.end()) return 0.0;
    return sphere_energy(t_poly(ih->second, ik->second), rule, rule.w_over_rho) / (h + k);
}

double coeff_euclid_diag(const Poly3& u, int k, const SphereRule& rule) {
    if (rule.geometry != Geometry::Euclid3)
        throw std::domain_error("coeff_euclid_diag: Euclid3 rule");
    if (k <= 0) return 0.0;
    auto parts = u.e_decompose();
    auto it = parts.find(k);
    if (it == parts.end()) return 0.0;
    return sphere_energy(e_q_poly(it->second), rule, rule.w) / (2.0 * k);
}

double coeff_euclid_cross(const Poly3& u, int h, int k, const SphereRule& rule) {
    if (rule.geometry != Geometry::Euclid3)
        throw std::domain_error("coeff_euclid_cross: Euclid3 rule");
    if (h == k) throw std::domain_error("coeff_euclid_cross: degrees must differ");
    if (h <= 0 || k <= 0) return 0.0;
    auto parts = u.e_decompose();
    auto ih = parts.find(h), ik = parts.find(k);
    if (ih == parts.end() || ik == parts.end()) return 0.0;
    return sphere_energy(e_t_poly(ih->second, ik->second), rule, rule.w) / (h + k);
}

double SeriesCoefficients::diag_at(int k) const {
    auto it = diag.find(k);
    return it == diag.end() ? 0.0 : it->second;
}

double SeriesCoefficients::cross_at(int h, int k) const {
    if (h > k) std::swap(h, k);
    auto it = cross.find({h, k});
    return it == cross.end() ? 0.0 : it->second;
}

double SeriesCoefficients::eval_I(double r) const {
    double acc = 0.0;
    for (auto& [k, a] : diag) acc += a * std::pow(r, 2 * k - 2);
    for (auto& [hk, a] : cross) acc += 2.0 * a * std::pow(r, hk.first + hk.second - 2);
    return acc;
}

SeriesCoefficients compute_series(const Poly3& u, const SphereRule& rule, int K) {
    SeriesCoefficients sc;
    sc.K = K < 0 ? std::max(0, u.h_degree()) : K;
    for (int k = 1; k <= sc.K; ++k) sc.diag[k] = coeff_diag(u, k, rule);
    for (int h = 1; h <= sc.K; ++h)
        for (int k = h + 1; k <= sc.K; ++k) sc.cross[{h, k}] = coeff_cross(u, h, k, rule);
    return sc;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Increasing: return "Increasing";
        case Verdict::Decreasing: return "Decreasing";
        case Verdict::Constant: return "Constant";
        case Verdict::Mixed: return "Mixed";
    }
    return "?";
}

Classification classify_curve(std::span<const double> values, double tol) {
    if (values.size() < 3) throw std::domain_error("classify_curve: need >= 3 samples");
    for (double v : values)
        if (!std::isfinite(v)) throw std::range_error("classify_curve: non-finite value");

    const double mean = pairwise_sum(values) / static_cast<double>(values.size());
    double scale = std::abs(mean);
    if (scale < 1e-300) scale = 1.0;

    double spread = 0.0;
    for (double v : values) spread = std::max(spread, std::abs(v - mean) / scale);
    if (spread <= tol) return {Verdict::Constant, spread};

    double dmin = std::numeric_limits<double>::infinity(), dmax = -dmin;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        double d = (values[i + 1] - values[i]) / scale;
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    const double v_inc = std::max(0.0, -dmin);  // worst violation of "increasing"
    const double v_dec = std::max(0.0, dmax);   // worst violation of "decreasing"
    if (dmin > tol) return {Verdict::Increasing, v_inc};
    if (dmax < -tol) return {Verdict::Decreasing, v_dec};
    return {Verdict::Mixed, std::min(v_inc, v_dec)};
}

std::vector<double> geometric_grid(double r_min, double r_max, int count) {
    if (!(r_min > 0) || !(r_max > r_min)) throw std::domain_error("geometric_grid: bad range");
    if (count < 1) throw std::domain_error("geometric_grid: count must be >= 1");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = r_min;
        return g;
    }
    const double q = r_max / r_min;
    for (int i = 0; i < count; ++i)
        g[i] = r_min * std::pow(q, static_cast<double>(i) / (count - 1));
    g.front() = r_min;
    g.back() = r_max;
    return g;
}

namespace {

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::domain_error("sample_curve: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0)) throw std::domain_error("sample_curve: radii must be positive");
        if (i && !(grid[i] > grid[i - 1]))
            throw std::domain_error("sample_curve: radii must be ascending");
    }
}

}  // namespace

PhaseCurves sample_phase_curves(const Poly3& u, const std::vector<double>& grid,
                                const Orders& orders) {
    validate_grid(grid);
    SweepPlan plan = make_plan(u, orders, Geometry::Koranyi, true);
    PhaseCurves out;
    out.r = grid;
    out.plus.reserve(grid.size());
    out.minus.reserve(grid.size());
    for (double r : grid) {
        SweepResult res = sweep(plan, r);
        out.plus.push_back(res.plus);
        out.minus.push_back(res.minus);
    }
    return out;
}

FunctionalCurve sample_curve(const Poly3& u, const CurveRequest& req) {
    validate_grid(req.grid);
    const bool phased = req.kind == FunctionalKind::J || req.kind == FunctionalKind::JBeta ||
                        req.kind == FunctionalKind::JEuclid;
    const Geometry geom =
        (req.kind == FunctionalKind::IEuclid || req.kind == FunctionalKind::JEuclid)
            ? Geometry::Euclid3
            : Geometry::Koranyi;
    SweepPlan plan = make_plan(u, req.orders, geom, phased);

    FunctionalCurve curve;
    curve.r = req.grid;
    curve.value.reserve(req.grid.size());
    for (double r : req.grid) {
        SweepResult res = sweep(plan, r);
        switch (req.kind) {
            case FunctionalKind::I:
            case FunctionalKind::IEuclid: curve.value.push_back(res.full); break;
            case FunctionalKind::J:
            case FunctionalKind::JEuclid: curve.value.push_back(res.plus * res.minus); break;
            case FunctionalKind::JBeta:
                curve.value.push_back(std::pow(r, 4.0 - req.beta) *
                                      (req.alpha1 * req.alpha1 * res.plus) *
                                      (req.alpha2 * req.alpha2 * res.minus));
                break;
        }
    }
    return curve;
}

EvenQuarticFit fit_even_quartic(std::span<const double> r, std::span<const double> v) {
    if (r.size() != v.size() || r.size() < 3)
        throw std::domain_error("fit_even_quartic: need >= 3 samples");
    double R = 0;
    for (double x : r) R = std::max(R, std::abs(x));
    if (R == 0) throw std::domain_error("fit_even_quartic: degenerate radii");

    // Normal equations for the basis {1, (r/R)^2, (r/R)^4}; 3x3 solve with
    // partial pivoting in long double, then unscale.
    long double A[3][3] = {};
    long double b[3] = {};
    for (std::size_t i = 0; i < r.size(); ++i) {
        long double q = (long double)(r[i] / R) * (r[i] / R);
        long double phi[3] = {1.0L, q, q * q};
        for (int a = 0; a < 3; ++a) {
            for (int c = 0; c < 3; ++c) A[a][c] += phi[a] * phi[c];
            b[a] += phi[a] * v[i];
        }
    }
    int perm[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
        int p = c;
        for (int i = c + 1; i < 3; ++i)
            if (std::abs((double)A[perm[i]][c]) > std::abs((double)A[perm[p]][c])) p = i;
        std::swap(perm[c], perm[p]);
        long double piv = A[perm[c]][c];
        if (piv == 0.0L) throw std::domain_error("fit_even_quartic: singular system");
        for (int i = c + 1; i < 3; ++i) {
            long double f = A[perm[i]][c] / piv;
            for (int j = c; j < 3; ++j) A[perm[i]][j] -= f * A[perm[c]][j];
            b[perm[i]] -= f * b[perm[c]];
        }
    }
    long double sol[3];
    for (int i = 2; i >= 0; --i) {
        long double acc = b[perm[i]];
        for (int j = i + 1; j < 3; ++j) acc -= A[perm[i]][j] * sol[j];
        sol[i] = acc / A[perm[i]][i];
    }
    EvenQuarticFit fit;
    fit.c0 = (double)sol[0];
    fit.c2 = (double)(sol[1] / ((long double)R * R));
    fit.c4 = (double)(sol[2] / ((long double)R * R * R * R));
    return fit;
}

Poly3 decreasing_example() {
    Poly3 u = Poly3::variable(Var::X);
    u.add_term(MultiIndex{0, 1, 1}, Rational(-3));
    u.add_term(MultiIndex{3, 0, 0}, Rational(-2));
    return u;
}

std::vector<GaugePoint> free_boundary_samples(int count) {
    if (count < 1) throw std::domain_error("free_boundary_samples: count must be >= 1");
    Poly3 u = decreasing_example();
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> box(-0.2, 0.2);
    std::vector<GaugePoint> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        const double y = box(rng), t = box(rng);
        // u is strictly increasing in x on [-0.4, 0.4] (du/dx = 1 - 6x^2 > 0)
        // and |3yt| <= 0.12 < 0.272 = |u(+-0.4, 0, 0)|, so the sign changes.
        double lo = -0.4, hi = 0.4;
        double flo = u.eval(lo, y, t);
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = u.eval(mid, y, t);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        out.push_back(GaugePoint{0.5 * (lo + hi), y, t});
    }
    return out;
}

double two_phase_residual(double alpha1, double alpha2, std::span<const GaugePoint> samples) {
    Poly3 u = decreasing_example();
    Poly3 g1 = h_energy_density(u);
    double worst = 0.0;
    for (const GaugePoint& p : samples) {
        if (std::abs(u.eval(p.x, p.y, p.t)) > 1e-10)
            throw std::domain_error("two_phase_residual: sample off the free boundary");
        const double v = g1.eval(p.x, p.y, p.t);
        const double lhs = alpha1 * alpha1 * v - alpha2 * alpha2 * v;
        const double g = (alpha1 * alpha1 - alpha2 * alpha2) * v;
        worst = std::max(worst, std::abs(lhs - g));
    }
    return worst;
}

double generalized_identity_residual(double alpha1, double alpha2, double r,
                                     const Orders& orders) {
    if (!(alpha1 > 0) || !(alpha2 > 0))
        throw std::domain_error("generalized_identity_residual: phase factors must be positive");
    Poly3 u = decreasing_example();
    SweepPlan phased = make_plan(u, orders, Geometry::Koranyi, true);
    SweepResult res = sweep(phased, r);
    const double i_alpha = alpha1 * alpha1 * res.plus + alpha2 * alpha2 * res.minus;
    const double i_full = I_heis(u, r, orders);
    return std::abs(i_alpha - 0.5 * (alpha1 * alpha1 + alpha2 * alpha2) * i_full);
}

}  // namespace hacf
