#pragma once

#include "hacf/poly.hpp"

#include <vector>

namespace hacf {

// Monomials of exact H-degree k (resp. Euclidean degree k), canonical
// graded-lex order. Basis of the homogeneous slice the Laplacians act on.
std::vector<MultiIndex> h_monomials(int k);
std::vector<MultiIndex> e_monomials(int k);

// Exact kernel basis of the Kohn Laplacian on H-degree-k polynomials.
// Deterministic: Gauss-Jordan over Q, columns in graded-lex order, first
// nonzero pivot per row; basis vectors come out with the free variables in
// order, leading coefficient 1.
std::vector<Poly3> h_harmonic_basis(int k);

// Same for the flat Laplacian on Euclidean-degree-k polynomials
// (dim = 2k+1 in three variables).
std::vector<Poly3> euclid_harmonic_basis(int k);

}  // namespace hacf
