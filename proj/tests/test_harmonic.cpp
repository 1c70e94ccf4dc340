#include "hacf/functionals.hpp"
#include "hacf/harmonic.hpp"
#include "hacf/parse.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace hacf;

namespace {

Poly3 P(const char* s) { return parse_poly(s); }

// x dx + y dy + 2t dt, the generator of the anisotropic dilations
Poly3 euler_h(const Poly3& p) {
    return Poly3::variable(Var::X) * p.derivative(Var::X) +
           Poly3::variable(Var::Y) * p.derivative(Var::Y) +
           Rational(2) * Poly3::variable(Var::T) * p.derivative(Var::T);
}

// coefficient vector of p on the monomial list of its H-degree
std::vector<Rational> coeff_vector(const Poly3& p, const std::vector<MultiIndex>& monos) {
    std::vector<Rational> v;
    for (const MultiIndex& m : monos) v.push_back(p.coeff(m));
    return v;
}

}  // namespace

TEST_SUITE_BEGIN("harmonic");

TEST_CASE("monomial enumeration, anisotropic grading") {
    // b1 + b2 + 2 b3 = k, listed in graded-lex order
    std::vector<MultiIndex> m3 = h_monomials(3);
    REQUIRE(m3.size() == 6);
    CHECK(m3[0] == MultiIndex{0, 1, 1});
    CHECK(m3[1] == MultiIndex{1, 0, 1});
    CHECK(m3[2] == MultiIndex{0, 3, 0});
    CHECK(m3[3] == MultiIndex{1, 2, 0});
    CHECK(m3[4] == MultiIndex{2, 1, 0});
    CHECK(m3[5] == MultiIndex{3, 0, 0});

    CHECK(h_monomials(0).size() == 1);
    CHECK(h_monomials(1).size() == 2);
    CHECK(h_monomials(2).size() == 4);  // t, y^2, xy, x^2
    CHECK(h_monomials(4).size() == 9);
    CHECK(e_monomials(2).size() == 6);
    CHECK(e_monomials(3).size() == 10);
}

TEST_CASE("kohn-harmonic bases, low degrees") {
    std::vector<Poly3> b1 = h_harmonic_basis(1);
    REQUIRE(b1.size() == 2);
    CHECK(b1[0] == P("y"));
    CHECK(b1[1] == P("x"));

    std::vector<Poly3> b2 = h_harmonic_basis(2);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0] == P("t"));
    CHECK(b2[1] == P("x*y"));
    CHECK(b2[2] == P("x^2 - y^2"));

    for (int k = 1; k <= 4; ++k)
        for (const Poly3& b : h_harmonic_basis(k)) {
            CHECK(kohn_laplacian(b).is_zero());
            CHECK(b.is_h_homogeneous(k));
            // Euler identity: H-homogeneous of degree k
            CHECK(euler_h(b) == b * Rational(k));
        }
}

TEST_CASE("degree-3 kernel is cut out by two linear conditions") {
    // on (b_011, b_101, b_030, b_120, b_210, b_300):
    //   3 b_300 + b_120 - 2 b_011 = 0
    //   3 b_030 + b_210 + 2 b_101 = 0
    std::vector<MultiIndex> monos = h_monomials(3);
    auto idx = [&](int b1, int b2, int b3) {
        for (std::size_t i = 0; i < monos.size(); ++i)
            if (monos[i] == MultiIndex{b1, b2, b3}) return i;
        REQUIRE(false);
        return std::size_t{0};
    };
    std::vector<std::vector<Rational>> cond(2, std::vector<Rational>(6, Rational(0)));
    cond[0][idx(3, 0, 0)] = 3;
    cond[0][idx(1, 2, 0)] = 1;
    cond[0][idx(0, 1, 1)] = -2;
    cond[1][idx(0, 3, 0)] = 3;
    cond[1][idx(2, 1, 0)] = 1;
    cond[1][idx(1, 0, 1)] = 2;
    CHECK(oracle::exact_rank(cond) == 2);

    std::vector<Poly3> basis = h_harmonic_basis(3);
    REQUIRE(basis.size() == 4);  // 6 monomials - 2 independent conditions

    std::vector<std::vector<Rational>> basis_rows;
    for (const Poly3& b : basis) {
        std::vector<Rational> v = coeff_vector(b, monos);
        // both conditions vanish exactly on every basis element
        for (const auto& c : cond) {
            Rational dot(0);
            for (std::size_t i = 0; i < 6; ++i) dot += c[i] * v[i];
            CHECK(dot == 0);
        }
        basis_rows.push_back(v);
    }
    CHECK(oracle::exact_rank(basis_rows) == 4);

    // conditions + kernel together span everything: the kernel is exactly
    // the solution set, not a proper subspace of it
    std::vector<std::vector<Rational>> all = basis_rows;
    all.push_back(cond[0]);
    all.push_back(cond[1]);
    CHECK(oracle::exact_rank(all) == 6);

    // the cubic part of the decreasing example lies in the kernel
    CHECK(decreasing_example().h_decompose().at(3) == P("-3*y*t - 2*x^3"));
}

TEST_CASE("kernel dimension equals nullity of the exact laplacian matrix") {
    // degree 0 and 1 are killed outright (the laplacian drops H-degree by 2)
    CHECK(h_harmonic_basis(0).size() == 1);
    CHECK(h_harmonic_basis(1).size() == 2);
    for (int k = 2; k <= 5; ++k) {
        std::vector<MultiIndex> dom = h_monomials(k);
        std::vector<MultiIndex> img = h_monomials(k - 2);
        std::vector<std::vector<Rational>> m;
        for (const MultiIndex& mono : dom) {
            Poly3 lp = kohn_laplacian(Poly3::monomial(mono, Rational(1)));
            std::vector<Rational> row;
            for (const MultiIndex& im : img) row.push_back(lp.coeff(im));
            m.push_back(row);
            // nothing escapes the expected image space
            std::size_t nonzero = 0;
            for (const Rational& c : row) nonzero += (c != 0);
            CHECK(lp.term_count() == nonzero);
        }
        int nullity = static_cast<int>(dom.size()) - oracle::exact_rank(m);
        CHECK(static_cast<int>(h_harmonic_basis(k).size()) == nullity);
    }
}

TEST_CASE("euclidean harmonic bases") {
    for (int k = 1; k <= 4; ++k) {
        std::vector<Poly3> basis = euclid_harmonic_basis(k);
        CHECK(static_cast<int>(basis.size()) == 2 * k + 1);  // classical dimension
        for (const Poly3& b : basis) {
            CHECK(euclid_laplacian(b).is_zero());
            CHECK(b.is_homogeneous(k));
        }
    }
    std::vector<Poly3> b1 = euclid_harmonic_basis(1);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0] == P("t"));
    CHECK(b1[1] == P("y"));
    CHECK(b1[2] == P("x"));
}

TEST_CASE("random combinations stay harmonic") {
    std::mt19937 rng(23);
    for (int i = 0; i < 5; ++i) {
        CHECK(kohn_laplacian(oracle::random_h_harmonic(rng, 1, 4)).is_zero());
        CHECK(euclid_laplacian(oracle::random_e_harmonic(rng, 1, 3)).is_zero());
    }
}

TEST_SUITE_END();
