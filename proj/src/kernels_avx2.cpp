// AVX2 variant of the batch evaluator. 4 nodes per iteration, remainder
// through the scalar kernel. Mirrors the scalar op sequence lane by lane:
// power tables by successive multiplication, ((c*px)*py)*pt, separate add.
// Deliberately no FMA: contraction would change the rounding and break the
// bitwise scalar/simd equivalence the tests pin down.

#include "hacf/kernels.hpp"

#if defined(HACF_HAVE_AVX2)

#include <immintrin.h>

namespace hacf::detail {

void eval_batch_scalar(const CompiledPoly& p, const double* coeff, const double* x,
                       const double* y, const double* t, double* out, std::size_t n);

void eval_batch_avx2(const CompiledPoly& p, const double* coeff, const double* x, const double* y,
                     const double* t, double* out, std::size_t n) {
    const std::size_t m = p.size();
    const std::size_t n4 = n - n % 4;
    __m256d px[kMaxExponent + 1], py[kMaxExponent + 1], pt[kMaxExponent + 1];
    px[0] = py[0] = pt[0] = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vt = _mm256_loadu_pd(t + i);
        for (int k = 1; k <= p.max_ex; ++k) px[k] = _mm256_mul_pd(px[k - 1], vx);
        for (int k = 1; k <= p.max_ey; ++k) py[k] = _mm256_mul_pd(py[k - 1], vy);
        for (int k = 1; k <= p.max_et; ++k) pt[k] = _mm256_mul_pd(pt[k - 1], vt);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < m; ++j) {
            __m256d term = _mm256_mul_pd(_mm256_set1_pd(coeff[j]), px[p.ex[j]]);
            term = _mm256_mul_pd(term, py[p.ey[j]]);
            term = _mm256_mul_pd(term, pt[p.et[j]]);
            acc = _mm256_add_pd(acc, term);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (n4 < n) eval_batch_scalar(p, coeff, x + n4, y + n4, t + n4, out + n4, n - n4);
}

}  // namespace hacf::detail

#endif  // HACF_HAVE_AVX2
