#pragma once

#include "hacf/poly.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hacf {

// Per-variable exponent bound in the eval kernels (power tables live on the
// stack). Far above the parser's degree cap.
inline constexpr int kMaxExponent = 32;

// Structure-of-arrays form of a polynomial for batch evaluation at quadrature
// nodes. Term order is the canonical graded-lex order of Poly3, which fixes
// the accumulation order and with it the exact floating-point result.
struct CompiledPoly {
    std::vector<double> coeff;
    std::vector<std::uint8_t> ex, ey, et;
    std::vector<std::uint8_t> hdeg;  // ex+ey+2*et, anisotropic dilation weight
    std::vector<std::uint8_t> edeg;  // ex+ey+et, ordinary dilation weight
    std::uint8_t max_ex = 0, max_ey = 0, max_et = 0;

    std::size_t size() const { return coeff.size(); }
};

CompiledPoly compile_poly(const Poly3& p);

enum class Grading { H, Euclid };

// Rescale term coefficients for evaluation at delta_s (H grading) or s*
// (Euclid grading) of the base nodes: out[i] = coeff[i] * s^deg[i]. Powers
// built by successive multiplication so the result is identical across call
// sites.
void scale_coeffs(const CompiledPoly& p, double s, Grading g, std::span<double> out);

enum class Backend { Scalar, Avx2, Neon };

bool backend_available(Backend b);
// Highest available backend unless overridden by HACF_KERNEL=scalar|avx2|neon
// (read once). Setting an unavailable backend throws.
Backend active_backend();
void set_backend(Backend b);
std::string backend_name(Backend b);

// out[i] = sum_j coeff[j] * x[i]^ex[j] * y[i]^ey[j] * t[i]^et[j].
// `coeff` may be p.coeff or a scaled copy; sizes must match p.
// All backends produce bitwise-identical out arrays: same per-lane operation
// sequence, no FMA, no reassociation.
void eval_batch(const CompiledPoly& p, std::span<const double> coeff,
                std::span<const double> x, std::span<const double> y,
                std::span<const double> t, std::span<double> out);
void eval_batch_with(Backend b, const CompiledPoly& p, std::span<const double> coeff,
                     std::span<const double> x, std::span<const double> y,
                     std::span<const double> t, std::span<double> out);

// Deterministic pairwise reduction: recursive halving with a fixed serial
// base case. The one and only summation used anywhere; never vectorized so
// every backend and thread count reduces through the identical tree.
double pairwise_sum(std::span<const double> v);
// sum_i a[i]*b[i] through the same tree (products formed per leaf).
double pairwise_dot(std::span<const double> a, std::span<const double> b);

}  // namespace hacf
