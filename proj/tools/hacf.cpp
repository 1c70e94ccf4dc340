// Command-line front end: polynomial checks and functional sweeps on the
// first Heisenberg group, CSV or table output.
//
// Exit codes: 0 success, 1 failed mathematical check, 2 usage/config error,
// 3 non-finite numeric result.

#include "hacf/functionals.hpp"
#include "hacf/harmonic.hpp"
#include "hacf/kernels.hpp"
#include "hacf/parse.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

#ifndef HACF_BUILD_ID
#define HACF_BUILD_ID "unversioned"
#endif

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt2e(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

struct GridSpec {
    double r_min = 0.02, r_max = 0.5;
    int count = 24;
};

struct OrderSpec {
    int n_phi = 64, n_theta = 128, n_r = 48;
};

hacf::Orders to_orders(const OrderSpec& o) {
    hacf::Orders orders;
    orders.n_phi = o.n_phi;
    orders.n_theta = o.n_theta;
    orders.n_r = o.n_r;
    return orders;
}

void add_grid_flags(CLI::App* cmd, GridSpec& g) {
    cmd->add_option("--r-min", g.r_min, "smallest radius")->check(CLI::PositiveNumber);
    cmd->add_option("--r-max", g.r_max, "largest radius")->check(CLI::PositiveNumber);
    cmd->add_option("--r-count", g.count, "number of grid points (geometric spacing)")
        ->check(CLI::Range(3, 100000));
}

void add_order_flags(CLI::App* cmd, OrderSpec& o) {
    cmd->add_option("--n-phi", o.n_phi, "polar quadrature order")->check(CLI::Range(2, 100000));
    cmd->add_option("--n-theta", o.n_theta, "azimuthal quadrature order (even)")
        ->check(CLI::Range(2, 100000));
    cmd->add_option("--n-r", o.n_r, "radial quadrature order")->check(CLI::Range(1, 100000));
}

std::vector<double> make_grid(const GridSpec& g) {
    if (!(g.r_min < g.r_max))
        throw std::domain_error("grid: --r-min must be smaller than --r-max");
    return hacf::geometric_grid(g.r_min, g.r_max, g.count);
}

// Output sink: stdout or --out file. LF endings, UTF-8.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::domain_error("cannot open output file: " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_meta(std::ostream& os, const std::string& what, const OrderSpec& o, double tol) {
    os << "# hacf " << HACF_BUILD_ID << "\n";
    os << "# " << what << "\n";
    os << "# orders: n_phi=" << o.n_phi << " n_theta=" << o.n_theta << " n_r=" << o.n_r << "\n";
    os << "# tol=" << fmt2e(tol) << "\n";
}

void write_curve(std::ostream& os, const hacf::FunctionalCurve& curve,
                 const hacf::Classification& cls, bool csv) {
    if (csv) {
        os << "r,value\n";
        for (std::size_t i = 0; i < curve.r.size(); ++i)
            os << fmt17(curve.r[i]) << "," << fmt17(curve.value[i]) << "\n";
        os << "# verdict=" << hacf::verdict_name(cls.verdict)
           << " max_violation=" << fmt17(cls.evidence) << "\n";
    } else {
        os << "        r                          value\n";
        char buf[80];
        for (std::size_t i = 0; i < curve.r.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%-25.17g  %-25.17g\n", curve.r[i], curve.value[i]);
            os << buf;
        }
        os << "verdict=" << hacf::verdict_name(cls.verdict)
           << " max_violation=" << fmt17(cls.evidence) << "\n";
    }
}

// ---- harmonic ----

struct HarmonicArgs {
    std::string expr;
    int basis_degree = -1;
};

int run_harmonic(const HarmonicArgs& a) {
    int exit_code = kExitOk;
    if (!a.expr.empty()) {
        hacf::Poly3 u = hacf::parse_poly(a.expr);
        hacf::Poly3 lap = hacf::kohn_laplacian(u);
        if (lap.is_zero()) {
            std::cout << "H1-harmonic: yes\n";
        } else {
            std::cout << "H1-harmonic: no; residual = " << hacf::format_poly(lap) << "\n";
            exit_code = kExitCheckFailed;
        }
    }
    if (a.basis_degree >= 0) {
        for (const hacf::Poly3& b : hacf::h_harmonic_basis(a.basis_degree))
            std::cout << hacf::format_poly(b) << "\n";
    }
    return exit_code;
}

// ---- functional ----

struct FunctionalArgs {
    std::string kind = "I";
    std::string expr;
    GridSpec grid;
    OrderSpec orders;
    double beta = 4.0;
    std::vector<double> alpha{1.0, 1.0};
    std::string out;
    std::string format = "csv";
    double tol = 1e-7;
};

int run_functional(const FunctionalArgs& a) {
    hacf::Poly3 u = hacf::parse_poly(a.expr);
    hacf::CurveRequest req;
    if (a.kind == "I")
        req.kind = hacf::FunctionalKind::I;
    else if (a.kind == "J")
        req.kind = hacf::FunctionalKind::J;
    else if (a.kind == "Jbeta")
        req.kind = hacf::FunctionalKind::JBeta;
    else if (a.kind == "Ieuclid")
        req.kind = hacf::FunctionalKind::IEuclid;
    else
        req.kind = hacf::FunctionalKind::JEuclid;
    req.grid = make_grid(a.grid);
    req.orders = to_orders(a.orders);
    req.beta = a.beta;
    req.alpha1 = a.alpha[0];
    req.alpha2 = a.alpha[1];
    if (req.kind == hacf::FunctionalKind::JBeta && !(req.beta > 0))
        throw std::domain_error("--beta must be positive");

    hacf::FunctionalCurve curve = hacf::sample_curve(u, req);
    hacf::Classification cls = hacf::classify_curve(curve.value, a.tol);

    Sink sink(a.out);
    std::ostream& os = sink.out();
    write_meta(os,
               "functional kind=" + a.kind + " expr=\"" + a.expr + "\" beta=" + fmt17(a.beta) +
                   " alpha=(" + fmt17(a.alpha[0]) + "," + fmt17(a.alpha[1]) + ")",
               a.orders, a.tol);
    write_curve(os, curve, cls, a.format == "csv");
    return kExitOk;
}

// ---- coeffs ----

struct CoeffArgs {
    std::string expr;
    int max_k = -1;
    std::string setting = "heis";
    std::string out;
};

int run_coeffs(const CoeffArgs& a) {
    hacf::Poly3 u = hacf::parse_poly(a.expr);
    int K = a.max_k;
    if (K < 0) K = std::max(1, u.h_degree());

    Sink sink(a.out);
    std::ostream& os = sink.out();
    os << "# hacf " << HACF_BUILD_ID << "\n";
    os << "# coeffs expr=\"" << a.expr << "\" max_k=" << K << " setting=" << a.setting << "\n";
    os << "kind,k,h,value\n";
    if (a.setting == "heis" || a.setting == "both") {
        hacf::SphereRule rule = hacf::koranyi_sphere_rule(64, 128);
        for (int k = 1; k <= K; ++k)
            os << "diag," << k << ",," << fmt17(hacf::coeff_diag(u, k, rule)) << "\n";
        for (int k = 2; k <= K; ++k)
            for (int h = 1; h < k; ++h)
                os << "cross," << k << "," << h << ","
                   << fmt17(hacf::coeff_cross(u, h, k, rule)) << "\n";
    }
    if (a.setting == "euclid" || a.setting == "both") {
        hacf::SphereRule rule = hacf::euclid_sphere_rule(64);
        for (int k = 1; k <= K; ++k)
            os << "euclid_diag," << k << ",," << fmt17(hacf::coeff_euclid_diag(u, k, rule))
               << "\n";
        for (int k = 2; k <= K; ++k)
            for (int h = 1; h < k; ++h)
                os << "euclid_cross," << k << "," << h << ","
                   << fmt17(hacf::coeff_euclid_cross(u, h, k, rule)) << "\n";
    }
    return kExitOk;
}

// ---- counterexample ----

struct CounterArgs {
    GridSpec grid{0.02, 0.3, 16};
    OrderSpec orders;
    std::vector<double> alpha;  // empty: skip the two-phase identity block
    bool euclid_baseline = false;
    std::string out;
    double tol = 1e-7;
};

class CheckList {
  public:
    void check(const std::string& name, bool ok, const std::string& detail) {
        ++total_;
        if (!ok) {
            ++failed_;
            if (first_failure_.empty()) first_failure_ = name;
        }
        std::printf("check %-28s %s  %s\n", name.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
    }
    void check_rel(const std::string& name, double value, double reference, double tol) {
        double rel = std::abs(value - reference) / std::abs(reference);
        check(name, rel <= tol,
              "value=" + fmt17(value) + " ref=" + fmt17(reference) + " rel=" + fmt2e(rel) +
                  " tol=" + fmt2e(tol));
    }
    void check_abs(const std::string& name, double value, double tol) {
        check(name, std::abs(value) <= tol,
              "value=" + fmt17(value) + " tol=" + fmt2e(tol));
    }
    int finish() const {
        std::printf("counterexample: %s (%d/%d checks)\n", failed_ == 0 ? "PASS" : "FAIL",
                    total_ - failed_, total_);
        if (failed_ != 0) std::printf("first failing check: %s\n", first_failure_.c_str());
        return failed_ == 0 ? kExitOk : kExitCheckFailed;
    }

  private:
    int total_ = 0, failed_ = 0;
    std::string first_failure_;
};

int run_counterexample(const CounterArgs& a) {
    const double pi = std::numbers::pi;
    hacf::Poly3 u = hacf::decreasing_example();
    hacf::Orders orders = to_orders(a.orders);
    std::vector<double> grid = make_grid(a.grid);

    std::printf("# u = %s\n", hacf::format_poly(u).c_str());
    std::printf("# orders: n_phi=%d n_theta=%d n_r=%d; grid: %d points geometric [%s, %s]\n",
                orders.n_phi, orders.n_theta, orders.n_r, (int)grid.size(),
                fmt17(grid.front()).c_str(), fmt17(grid.back()).c_str());

    CheckList checks;

    // exact layer
    checks.check("harmonic_exact", hacf::kohn_laplacian(u).is_zero(),
                 "kohn laplacian = " + hacf::format_poly(hacf::kohn_laplacian(u)));

    // expansion coefficients on the unit gauge sphere
    hacf::SphereRule rule = hacf::koranyi_sphere_rule(orders.n_phi, orders.n_theta);
    double a1 = hacf::coeff_diag(u, 1, rule);
    double a2 = hacf::coeff_diag(u, 2, rule);
    double a3 = hacf::coeff_diag(u, 3, rule);
    double a31 = hacf::coeff_cross(u, 3, 1, rule);
    double a21 = hacf::coeff_cross(u, 2, 1, rule);
    checks.check_rel("a1_pi2", a1, pi * pi, 1e-6);
    checks.check_rel("a31_minus_6pi", a31, -6.0 * pi, 1e-6);
    checks.check("a2_zero_exact", a2 == 0.0, "value=" + fmt17(a2) + " (no degree-2 part)");
    checks.check_abs("a21_zero", a21, 1e-10);
    checks.check("a3_positive", a3 > 0, "value=" + fmt17(a3));

    std::printf("series (signed):  I(r) = a1 + 2*a31*r^2 + a3*r^4, a1=%s a31=%s a3=%s\n",
                fmt17(a1).c_str(), fmt17(a31).c_str(), fmt17(a3).c_str());
    std::printf("curve (display):  I(r) = %s - %s*r^2 + %s*r^4\n", fmt17(a1).c_str(),
                fmt17(-2.0 * a31).c_str(), fmt17(a3).c_str());

    // I curve, quartic fit, monotonicity
    hacf::CurveRequest ireq;
    ireq.kind = hacf::FunctionalKind::I;
    ireq.grid = grid;
    ireq.orders = orders;
    hacf::FunctionalCurve icurve = hacf::sample_curve(u, ireq);
    hacf::EvenQuarticFit fit = hacf::fit_even_quartic(icurve.r, icurve.value);
    checks.check_rel("fit_a1", fit.c0, pi * pi, 1e-4);
    checks.check_rel("fit_c2", fit.c2, -12.0 * pi, 1e-4);
    checks.check_rel("fit_a3", fit.c4, a3, 1e-5);

    hacf::Classification icls = hacf::classify_curve(icurve.value, a.tol);
    checks.check("I_decreasing", icls.verdict == hacf::Verdict::Decreasing,
                 "verdict=" + hacf::verdict_name(icls.verdict) +
                     " max_violation=" + fmt17(icls.evidence));

    {
        // central differences, fixed step
        const double h = 1e-3;
        double worst = -std::numeric_limits<double>::infinity();
        for (double r : grid) {
            double d = (hacf::I_heis(u, r + h, orders) - hacf::I_heis(u, r - h, orders)) /
                       (2.0 * h);
            worst = std::max(worst, d);
        }
        checks.check("I_fd_negative", worst < 0.0,
                     "max dI/dr=" + fmt17(worst) + " (step " + fmt2e(h) + ")");
    }

    // phase curves, J, symmetry
    hacf::PhaseCurves phases = hacf::sample_phase_curves(u, grid, orders);
    std::vector<double> jvals(grid.size());
    double worst_sym = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        jvals[i] = phases.plus[i] * phases.minus[i];
        worst_sym = std::max(worst_sym,
                             std::abs(phases.plus[i] - phases.minus[i]) / icurve.value[i]);
    }
    hacf::Classification jcls = hacf::classify_curve(jvals, a.tol);
    checks.check("J_decreasing", jcls.verdict == hacf::Verdict::Decreasing,
                 "verdict=" + hacf::verdict_name(jcls.verdict) +
                     " max_violation=" + fmt17(jcls.evidence));
    checks.check_abs("phase_symmetry_rel", worst_sym, 1e-8);

    if (a.alpha.size() == 2) {
        const double a1p = a.alpha[0], a2p = a.alpha[1];
        std::vector<hacf::GaugePoint> samples = hacf::free_boundary_samples(50);
        checks.check_abs("two_phase_residual", hacf::two_phase_residual(a1p, a2p, samples),
                         1e-9);
        double worst_rel = 0.0;
        for (double r : {0.05, 0.1, 0.2}) {
            double res = hacf::generalized_identity_residual(a1p, a2p, r, orders);
            double scale = a1p * a1p * hacf::I_heis_phase(u, r, hacf::Phase::Plus, orders) +
                           a2p * a2p * hacf::I_heis_phase(u, r, hacf::Phase::Minus, orders);
            worst_rel = std::max(worst_rel, res / scale);
        }
        checks.check_abs("generalized_identity_rel", worst_rel, 1e-6);
    }

    if (a.euclid_baseline) {
        hacf::Poly3 v = hacf::parse_poly("x + x^2 - y^2");
        hacf::CurveRequest ereq;
        ereq.kind = hacf::FunctionalKind::IEuclid;
        ereq.grid = hacf::geometric_grid(0.1, 0.9, 9);
        ereq.orders = orders;
        hacf::FunctionalCurve ecurve = hacf::sample_curve(v, ereq);
        hacf::Classification ecls = hacf::classify_curve(ecurve.value, a.tol);
        checks.check("euclid_increasing", ecls.verdict == hacf::Verdict::Increasing,
                     "verdict=" + hacf::verdict_name(ecls.verdict));
        checks.check_rel("euclid_constant_2pi",
                         hacf::I_euclid(hacf::parse_poly("x"), 0.5, orders), 2.0 * pi, 1e-8);
        hacf::SphereRule erule = hacf::euclid_sphere_rule(orders.n_phi);
        checks.check_abs("euclid_orthogonality", hacf::coeff_euclid_cross(v, 1, 2, erule),
                         1e-10);
    }

    if (!a.out.empty()) {
        Sink sink(a.out);
        std::ostream& os = sink.out();
        write_meta(os, "counterexample curves", a.orders, a.tol);
        os << "r,I,J,Iplus,Iminus\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << fmt17(grid[i]) << "," << fmt17(icurve.value[i]) << "," << fmt17(jvals[i])
               << "," << fmt17(phases.plus[i]) << "," << fmt17(phases.minus[i]) << "\n";
        os << "# verdict_I=" << hacf::verdict_name(icls.verdict)
           << " verdict_J=" << hacf::verdict_name(jcls.verdict)
           << " phase_symmetry=" << fmt17(worst_sym) << "\n";
    }

    return checks.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-group monotonicity toolkit"};
    app.set_version_flag("--version", std::string("hacf ") + HACF_BUILD_ID);
    app.require_subcommand(1);

    HarmonicArgs ha;
    CLI::App* harmonic = app.add_subcommand(
        "harmonic", "check Kohn-Laplacian harmonicity of a polynomial, print kernel bases");
    harmonic->add_option("--expr", ha.expr, "polynomial in x, y, t");
    harmonic->add_option("--basis", ha.basis_degree,
                         "print the H1-harmonic basis of this Heisenberg degree")
        ->check(CLI::Range(0, 8));

    FunctionalArgs fa;
    CLI::App* functional =
        app.add_subcommand("functional", "sample a monotonicity functional over an r-grid");
    functional->add_option("--kind", fa.kind, "functional to sample")
        ->check(CLI::IsMember({"I", "J", "Jbeta", "Ieuclid", "Jeuclid"}));
    functional->add_option("--expr", fa.expr, "polynomial in x, y, t")->required();
    add_grid_flags(functional, fa.grid);
    add_order_flags(functional, fa.orders);
    functional->add_option("--beta", fa.beta, "exponent for Jbeta");
    functional->add_option("--alpha", fa.alpha, "phase factors alpha1 alpha2 (Jbeta)")
        ->expected(2);
    functional->add_option("--out", fa.out, "write to file instead of stdout");
    functional->add_option("--format", fa.format, "output format")
        ->check(CLI::IsMember({"csv", "table"}));
    functional->add_option("--tol", fa.tol, "classification tolerance")
        ->check(CLI::PositiveNumber);

    CoeffArgs ca;
    CLI::App* coeffs = app.add_subcommand("coeffs", "expansion coefficients a_k and a_{h,k}");
    coeffs->add_option("--expr", ca.expr, "polynomial in x, y, t")->required();
    coeffs->add_option("--max-k", ca.max_k, "largest degree (default: degree of the input)")
        ->check(CLI::Range(1, 16));
    coeffs->add_option("--setting", ca.setting, "coefficient family")
        ->check(CLI::IsMember({"heis", "euclid", "both"}));
    coeffs->add_option("--out", ca.out, "write to file instead of stdout");

    CounterArgs xa;
    CLI::App* counter = app.add_subcommand(
        "counterexample", "one-shot reproduction of the decreasing-functional example");
    add_grid_flags(counter, xa.grid);
    add_order_flags(counter, xa.orders);
    counter->add_option("--alpha", xa.alpha, "also check the two-phase identities")->expected(2);
    counter->add_flag("--euclid-baseline", xa.euclid_baseline,
                      "also run the increasing Euclidean baseline");
    counter->add_option("--out", xa.out, "write curves as CSV to this file");
    counter->add_option("--tol", xa.tol, "classification tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(harmonic)) {
            if (ha.expr.empty() && ha.basis_degree < 0) {
                std::cerr << "error: harmonic needs --expr or --basis\n";
                return kExitUsage;
            }
            return run_harmonic(ha);
        }
        if (app.got_subcommand(functional)) return run_functional(fa);
        if (app.got_subcommand(coeffs)) return run_coeffs(ca);
        return run_counterexample(xa);
    } catch (const hacf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
