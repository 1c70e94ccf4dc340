#include "hacf/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hacf {

namespace detail {
void eval_batch_scalar(const CompiledPoly& p, const double* coeff, const double* x,
                       const double* y, const double* t, double* out, std::size_t n);
#if defined(HACF_HAVE_AVX2)
void eval_batch_avx2(const CompiledPoly& p, const double* coeff, const double* x, const double* y,
                     const double* t, double* out, std::size_t n);
#endif
#if defined(HACF_HAVE_NEON)
void eval_batch_neon(const CompiledPoly& p, const double* coeff, const double* x, const double* y,
                     const double* t, double* out, std::size_t n);
#endif
}  // namespace detail

CompiledPoly compile_poly(const Poly3& p) {
    CompiledPoly cp;
    for (auto& [m, c] : p.terms()) {
        // kMaxExponent bounds the power-table size in the eval kernels
        if (m.b1 > kMaxExponent || m.b2 > kMaxExponent || m.b3 > kMaxExponent)
            throw std::domain_error("compile_poly: exponent too large");
        cp.coeff.push_back(to_double(c));
        cp.ex.push_back(static_cast<std::uint8_t>(m.b1));
        cp.ey.push_back(static_cast<std::uint8_t>(m.b2));
        cp.et.push_back(static_cast<std::uint8_t>(m.b3));
        cp.hdeg.push_back(static_cast<std::uint8_t>(m.h_degree()));
        cp.edeg.push_back(static_cast<std::uint8_t>(m.total_degree()));
        cp.max_ex = std::max(cp.max_ex, cp.ex.back());
        cp.max_ey = std::max(cp.max_ey, cp.ey.back());
        cp.max_et = std::max(cp.max_et, cp.et.back());
    }
    return cp;
}

void scale_coeffs(const CompiledPoly& p, double s, Grading g, std::span<double> out) {
    if (out.size() != p.size()) throw std::invalid_argument("scale_coeffs: size mismatch");
    const std::vector<std::uint8_t>& deg = g == Grading::H ? p.hdeg : p.edeg;
    double spow[4 * kMaxExponent + 1];
    int maxd = 0;
    for (std::size_t i = 0; i < p.size(); ++i) maxd = std::max(maxd, int(deg[i]));
    spow[0] = 1.0;
    for (int k = 1; k <= maxd; ++k) spow[k] = spow[k - 1] * s;
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p.coeff[i] * spow[deg[i]];
}

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(HACF_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::Neon:
#if defined(HACF_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

namespace {

Backend pick_default() {
    if (const char* env = std::getenv("HACF_KERNEL")) {
        std::string s(env);
        Backend want = Backend::Scalar;
        if (s == "scalar")
            want = Backend::Scalar;
        else if (s == "avx2")
            want = Backend::Avx2;
        else if (s == "neon")
            want = Backend::Neon;
        else
            throw std::runtime_error("HACF_KERNEL: unknown backend '" + s + "'");
        if (!backend_available(want))
            throw std::runtime_error("HACF_KERNEL: backend '" + s + "' not available on this cpu");
        return want;
    }
    if (backend_available(Backend::Avx2)) return Backend::Avx2;
    if (backend_available(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

Backend& backend_slot() {
    static Backend b = pick_default();
    return b;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error("set_backend: " + backend_name(b) + " not available");
    backend_slot() = b;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

void eval_batch_with(Backend b, const CompiledPoly& p, std::span<const double> coeff,
                     std::span<const double> x, std::span<const double> y,
                     std::span<const double> t, std::span<double> out) {
    const std::size_t n = x.size();
    if (coeff.size() != p.size() || y.size() != n || t.size() != n || out.size() != n)
        throw std::invalid_argument("eval_batch: size mismatch");
    switch (b) {
        case Backend::Scalar:
            detail::eval_batch_scalar(p, coeff.data(), x.data(), y.data(), t.data(), out.data(), n);
            return;
        case Backend::Avx2:
#if defined(HACF_HAVE_AVX2)
            detail::eval_batch_avx2(p, coeff.data(), x.data(), y.data(), t.data(), out.data(), n);
            return;
#else
            break;
#endif
        case Backend::Neon:
#if defined(HACF_HAVE_NEON)
            detail::eval_batch_neon(p, coeff.data(), x.data(), y.data(), t.data(), out.data(), n);
            return;
#else
            break;
#endif
    }
    throw std::runtime_error("eval_batch: backend " + backend_name(b) + " not compiled in");
}

void eval_batch(const CompiledPoly& p, std::span<const double> coeff, std::span<const double> x,
                std::span<const double> y, std::span<const double> t, std::span<double> out) {
    eval_batch_with(active_backend(), p, coeff, x, y, t, out);
}

namespace {

// Base case small enough to keep error O(log n) in practice, large enough to
// amortize recursion. Serial left-to-right below the cutoff.
constexpr std::size_t kPairwiseCutoff = 8;

double pairwise_sum_impl(const double* v, std::size_t n) {
    if (n <= kPairwiseCutoff) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

double pairwise_dot_impl(const double* a, const double* b, std::size_t n) {
    if (n <= kPairwiseCutoff) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_dot_impl(a, b, half) + pairwise_dot_impl(a + half, b + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v.data(), v.size()); }

double pairwise_dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("pairwise_dot: size mismatch");
    return pairwise_dot_impl(a.data(), b.data(), a.size());
}

}  // namespace hacf
