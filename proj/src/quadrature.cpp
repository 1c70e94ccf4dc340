#include "hacf/quadrature.hpp"

#include "hacf/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hacf {

Quad1D gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
    Quad1D q;
    q.node.resize(n);
    q.weight.resize(n);
    // Roots of P_n by Newton from the Chebyshev-like guess; symmetric pairs
    // filled together so the rule is exactly symmetric.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one clean-up iteration and out
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / dp;
                break;
            }
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.node[i] = -x;  // guess starts near +1; store ascending
        q.weight[i] = w;
        q.node[n - 1 - i] = x;
        q.weight[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.node[n / 2] = 0.0;
    return q;
}

Quad1D gauss_legendre(int n, double a, double b) {
    Quad1D q = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        q.node[i] = mid + half * q.node[i];
        q.weight[i] *= half;
    }
    return q;
}

namespace {

void require_angular_orders(int n_phi, int n_theta) {
    if (n_phi < 2) throw std::domain_error("sphere rule: n_phi must be >= 2");
    if (n_theta < 2 || n_theta % 2 != 0)
        throw std::domain_error("sphere rule: n_theta must be even and >= 2");
}

}  // namespace

SphereRule koranyi_sphere_rule(int n_phi, int n_theta) {
    require_angular_orders(n_phi, n_theta);
    SphereRule rule;
    rule.geometry = Geometry::Koranyi;
    rule.n_phi = n_phi;
    rule.n_theta = n_theta;
    const std::size_t n = 2u * n_phi * n_theta;
    rule.x.reserve(n);
    rule.y.reserve(n);
    rule.t.reserve(n);
    rule.w.reserve(n);
    rule.w_over_rho.reserve(n);

    Quad1D qphi = gauss_legendre(n_phi, 0.0, 0.5 * std::numbers::pi);
    const double dtheta = 2.0 * std::numbers::pi / n_theta;
    const int half = n_theta / 2;
    for (int hemi = 0; hemi < 2; ++hemi) {
        const double tsign = hemi == 0 ? 1.0 : -1.0;
        for (int i = 0; i < n_phi; ++i) {
            const double phi = qphi.node[i];
            const double rho = std::sqrt(std::sin(phi));  // sqrt(x^2+y^2) on the gauge sphere
            const double w = qphi.weight[i] * dtheta * rho;
            // second half-ring by exact negation: the node set is then
            // invariant under (x,y) -> (-x,-y) to the last bit
            for (int j = 0; j < n_theta; ++j) {
                const double theta = dtheta * (j % half);
                const double sign = j < half ? 1.0 : -1.0;
                rule.x.push_back(sign * rho * std::cos(theta));
                rule.y.push_back(sign * rho * std::sin(theta));
                rule.t.push_back(tsign * std::cos(phi));
                rule.w.push_back(w);
                rule.w_over_rho.push_back(w / rho);
            }
        }
    }
    rule.total_weight = pairwise_sum(rule.w);
    return rule;
}

SphereRule euclid_sphere_rule(int n) {
    const int n_theta = 2 * n;
    require_angular_orders(n, n_theta);
    SphereRule rule;
    rule.geometry = Geometry::Euclid3;
    rule.n_phi = n;
    rule.n_theta = n_theta;
    const std::size_t total = static_cast<std::size_t>(n) * n_theta;
    rule.x.reserve(total);
    rule.y.reserve(total);
    rule.t.reserve(total);
    rule.w.reserve(total);

    Quad1D qc = gauss_legendre(n, -1.0, 1.0);  // c = cos(polar angle)
    const double dtheta = 2.0 * std::numbers::pi / n_theta;
    const int half = n_theta / 2;
    for (int i = 0; i < n; ++i) {
        const double c = qc.node[i];
        const double sin_polar = std::sqrt(1.0 - c * c);
        const double w = qc.weight[i] * dtheta;
        for (int j = 0; j < n_theta; ++j) {
            const double theta = dtheta * (j % half);
            const double sign = j < half ? 1.0 : -1.0;
            rule.x.push_back(sign * sin_polar * std::cos(theta));
            rule.y.push_back(sign * sin_polar * std::sin(theta));
            rule.t.push_back(c);
            rule.w.push_back(w);
        }
    }
    rule.total_weight = pairwise_sum(rule.w);
    return rule;
}

namespace {

[[noreturn]] void throw_nonfinite(const GaugePoint& p) {
    throw std::range_error("integrand non-finite at node (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ", " + std::to_string(p.t) + ")");
}

}  // namespace

double integrate_sphere(const SphereRule& rule, const std::function<double(GaugePoint)>& f) {
    std::vector<double> vals(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        GaugePoint p{rule.x[i], rule.y[i], rule.t[i]};
        vals[i] = f(p);
        if (!std::isfinite(vals[i])) throw_nonfinite(p);
    }
    return pairwise_dot(vals, rule.w);
}

double koranyi_ball_integrate(const std::function<double(GaugePoint)>& f, double r, int n_r,
                              const SphereRule& rule) {
    if (!(r > 0)) throw std::domain_error("koranyi_ball_integrate: r must be positive");
    if (rule.geometry != Geometry::Koranyi)
        throw std::domain_error("koranyi_ball_integrate: needs a Koranyi rule");
    Quad1D qs = gauss_legendre(n_r, 0.0, r);
    std::vector<double> shell(qs.size()), vals(rule.size());
    for (std::size_t k = 0; k < qs.size(); ++k) {
        const double s = qs.node[k];
        for (std::size_t i = 0; i < rule.size(); ++i) {
            GaugePoint p{s * rule.x[i], s * rule.y[i], s * s * rule.t[i]};
            vals[i] = f(p);
            if (!std::isfinite(vals[i])) throw_nonfinite(p);
        }
        shell[k] = s * s * s * pairwise_dot(vals, rule.w_over_rho);
    }
    return pairwise_dot(shell, qs.weight);
}

double euclid_ball_integrate(const std::function<double(GaugePoint)>& f, double r, int n_r,
                             const SphereRule& rule) {
    if (!(r > 0)) throw std::domain_error("euclid_ball_integrate: r must be positive");
    if (rule.geometry != Geometry::Euclid3)
        throw std::domain_error("euclid_ball_integrate: needs a Euclid3 rule");
    Quad1D qs = gauss_legendre(n_r, 0.0, r);
    std::vector<double> shell(qs.size()), vals(rule.size());
    for (std::size_t k = 0; k < qs.size(); ++k) {
        const double s = qs.node[k];
        for (std::size_t i = 0; i < rule.size(); ++i) {
            GaugePoint p{s * rule.x[i], s * rule.y[i], s * rule.t[i]};
            vals[i] = f(p);
            if (!std::isfinite(vals[i])) throw_nonfinite(p);
        }
        shell[k] = s * s * pairwise_dot(vals, rule.w);
    }
    return pairwise_dot(shell, qs.weight);
}

}  // namespace hacf
