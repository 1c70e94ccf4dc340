#include "hacf/functionals.hpp"
#include "hacf/heis.hpp"
#include "hacf/parse.hpp"
#include "hacf/poly.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace hacf;

namespace {
Poly3 P(const char* s) { return parse_poly(s); }
}

TEST_SUITE_BEGIN("poly");

TEST_CASE("term storage keeps no zeros") {
    Poly3 p = P("x + y");
    p -= P("y");
    CHECK(p == P("x"));
    CHECK(p.term_count() == 1);
    p -= P("x");
    CHECK(p.is_zero());
    CHECK(p.total_degree() == -1);
    CHECK(p.h_degree() == -1);
}

TEST_CASE("arithmetic identities") {
    CHECK(P("(x + y)*(x - y)") == P("x^2 - y^2"));
    CHECK(P("(x + 2*t)^3") == P("x^3 + 6*x^2*t + 12*x*t^2 + 8*t^3"));
    CHECK(P("x").pow(0) == Poly3(Rational(1)));
    CHECK((P("x + y") * Rational(0)).is_zero());
}

TEST_CASE("gradings") {
    Poly3 u = decreasing_example();
    CHECK(u == P("x - 3*y*t - 2*x^3"));
    CHECK(u.total_degree() == 3);
    CHECK(u.h_degree() == 3);
    CHECK(P("y*t").h_degree() == 3);
    CHECK(P("y*t").total_degree() == 2);
    CHECK(P("t^2").h_degree() == 4);
    CHECK(u.is_h_homogeneous(3) == false);

    auto hparts = u.h_decompose();
    REQUIRE(hparts.size() == 2);
    CHECK(hparts.at(1) == P("x"));
    CHECK(hparts.at(3) == P("-3*y*t - 2*x^3"));

    auto eparts = u.e_decompose();
    REQUIRE(eparts.size() == 3);
    CHECK(eparts.at(1) == P("x"));
    CHECK(eparts.at(2) == P("-3*y*t"));
    CHECK(eparts.at(3) == P("-2*x^3"));
}

TEST_CASE("horizontal fields on generators") {
    CHECK(apply_X(P("x")) == P("1"));
    CHECK(apply_X(P("y")).is_zero());
    CHECK(apply_X(P("t")) == P("2*y"));
    CHECK(apply_Y(P("x")).is_zero());
    CHECK(apply_Y(P("y")) == P("1"));
    CHECK(apply_Y(P("t")) == P("-2*x"));
}

TEST_CASE("commutator XY - YX = -4 d/dt") {
    std::mt19937 rng(7);
    for (int i = 0; i < 6; ++i) CHECK(commutator_defect(oracle::random_poly(rng, 5)).is_zero());
    CHECK(commutator_defect(P("x^3*y*t^2")).is_zero());
}

TEST_CASE("kohn laplacian on cubic monomials") {
    CHECK(kohn_laplacian(P("x^3")) == P("6*x"));
    CHECK(kohn_laplacian(P("x^2*y")) == P("2*y"));
    CHECK(kohn_laplacian(P("x*y^2")) == P("2*x"));
    CHECK(kohn_laplacian(P("y^3")) == P("6*y"));
    CHECK(kohn_laplacian(P("x*t")) == P("4*y"));
    CHECK(kohn_laplacian(P("y*t")) == P("-4*x"));
    CHECK(kohn_laplacian(P("t")).is_zero());
    CHECK(kohn_laplacian(P("x*y")).is_zero());
    CHECK(kohn_laplacian(P("x^2 - y^2")).is_zero());
}

TEST_CASE("the decreasing example is exactly harmonic") {
    Poly3 u = decreasing_example();
    CHECK(kohn_laplacian(u).is_zero());
    CHECK(is_h_harmonic(u));
    // the flat laplacian does not kill it: the example is genuinely sub-Riemannian
    CHECK(euclid_laplacian(u) == P("-12*x"));
}

TEST_CASE("gradient energy of the example, closed forms") {
    Poly3 u = decreasing_example();
    HorizontalGradient g = horizontal_gradient(u);
    CHECK(g.xc == P("1 - 6*x^2 - 6*y^2"));
    CHECK(g.yc == P("-3*t + 6*x*y"));

    Poly3 u1 = u.h_decompose().at(1);
    Poly3 u3 = u.h_decompose().at(3);
    CHECK(q_poly(u1) == P("1"));
    CHECK(q_poly(u3) == P("36*x^4 + 108*x^2*y^2 + 36*y^4 + 9*t^2 - 36*x*y*t"));
    CHECK(t_poly(u1, u3) == P("-6*x^2 - 6*y^2"));
    CHECK(t_poly(u3, u1) == t_poly(u1, u3));
}

TEST_CASE("q/t preconditions") {
    CHECK_THROWS_AS(q_poly(P("x + t")), std::domain_error);          // mixed H-degrees
    CHECK_THROWS_AS(t_poly(P("x"), P("2*y")), std::domain_error);    // equal H-degrees
    CHECK(q_poly(Poly3{}).is_zero());
}

TEST_CASE("euclidean analogues") {
    CHECK(e_q_poly(P("x")) == P("1"));
    CHECK(e_q_poly(P("t")) == P("1"));  // full gradient includes d/dt
    CHECK(e_t_poly(P("x"), P("x^2 - y^2")) == P("2*x"));
    CHECK(euclid_laplacian(P("x^2 + y^2 + t^2")) == P("6"));
    CHECK(euclid_laplacian(P("x^2 - y^2")).is_zero());
}

TEST_CASE("dilation scales by the anisotropic grading") {
    std::mt19937 rng(11);
    Poly3 p = oracle::random_poly(rng, 5);
    Rational s(3, 2);
    // reference: plain substitution x -> sx, y -> sy, t -> s^2 t
    Poly3 ref = p.substitute(P("x") * s, P("y") * s, P("t") * (s * s));
    CHECK(dilate_poly(p, s) == ref);

    // h-homogeneous parts are eigenvectors: delta_s p_k = s^k p_k
    for (auto& [k, part] : p.h_decompose())
        CHECK(dilate_poly(part, s) == part * pow_rational(s, static_cast<unsigned>(k)));
}

TEST_CASE("exact and double evaluation agree on dyadic points") {
    std::mt19937 rng(13);
    Poly3 p = oracle::random_poly(rng, 4);
    Rational x(3, 8), y(-1, 4), t(5, 2);
    double ref = to_double(p.eval_exact(x, y, t));
    CHECK(p.eval(0.375, -0.25, 2.5) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("left translation pulls back through the group law") {
    std::mt19937 rng(17);
    Poly3 p = oracle::random_poly(rng, 4);
    GaugePoint g{0.5, -0.25, 0.125};   // dyadic: translate_poly is exact here
    GaugePoint q{0.25, 0.5, -0.5};
    Poly3 tp = translate_poly(p, g);
    GaugePoint gq = group_mul(g, q);
    // both sides exact: dyadic coordinates, rational arithmetic
    CHECK(tp.eval_exact(rational_from_double(q.x), rational_from_double(q.y),
                        rational_from_double(q.t)) ==
          p.eval_exact(rational_from_double(gq.x), rational_from_double(gq.y),
                       rational_from_double(gq.t)));

    // composition law: T_{g2}(T_{g1} p) = T_{g1 g2} p
    GaugePoint h{-0.75, 0.5, 0.25};
    CHECK(translate_poly(translate_poly(p, g), h) == translate_poly(p, group_mul(g, h)));
}

TEST_CASE("horizontal fields are left invariant") {
    std::mt19937 rng(19);
    Poly3 p = oracle::random_poly(rng, 4);
    GaugePoint g{0.5, 0.75, -1.25};
    CHECK(apply_X(translate_poly(p, g)) == translate_poly(apply_X(p), g));
    CHECK(apply_Y(translate_poly(p, g)) == translate_poly(apply_Y(p), g));
    CHECK(kohn_laplacian(translate_poly(p, g)) == translate_poly(kohn_laplacian(p), g));
}

TEST_CASE("derivative basics") {
    Poly3 p = P("x^2*y*t^3");
    CHECK(p.derivative(Var::X) == P("2*x*y*t^3"));
    CHECK(p.derivative(Var::Y) == P("x^2*t^3"));
    CHECK(p.derivative(Var::T) == P("3*x^2*y*t^2"));
    CHECK(Poly3(Rational(5)).derivative(Var::X).is_zero());
}

TEST_SUITE_END();
