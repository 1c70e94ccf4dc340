// NEON variant, 2 nodes per iteration. Same lane-wise op sequence as the
// scalar kernel; vmulq/vaddq only (no vfmaq) to keep results bitwise equal.

#include "hacf/kernels.hpp"

#if defined(HACF_HAVE_NEON)

#include <arm_neon.h>

namespace hacf::detail {

void eval_batch_scalar(const CompiledPoly& p, const double* coeff, const double* x,
                       const double* y, const double* t, double* out, std::size_t n);

void eval_batch_neon(const CompiledPoly& p, const double* coeff, const double* x, const double* y,
                     const double* t, double* out, std::size_t n) {
    const std::size_t m = p.size();
    const std::size_t n2 = n - n % 2;
    float64x2_t px[kMaxExponent + 1], py[kMaxExponent + 1], pt[kMaxExponent + 1];
    px[0] = py[0] = pt[0] = vdupq_n_f64(1.0);
    for (std::size_t i = 0; i < n2; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        float64x2_t vy = vld1q_f64(y + i);
        float64x2_t vt = vld1q_f64(t + i);
        for (int k = 1; k <= p.max_ex; ++k) px[k] = vmulq_f64(px[k - 1], vx);
        for (int k = 1; k <= p.max_ey; ++k) py[k] = vmulq_f64(py[k - 1], vy);
        for (int k = 1; k <= p.max_et; ++k) pt[k] = vmulq_f64(pt[k - 1], vt);
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < m; ++j) {
            float64x2_t term = vmulq_f64(vdupq_n_f64(coeff[j]), px[p.ex[j]]);
            term = vmulq_f64(term, py[p.ey[j]]);
            term = vmulq_f64(term, pt[p.et[j]]);
            acc = vaddq_f64(acc, term);
        }
        vst1q_f64(out + i, acc);
    }
    if (n2 < n) eval_batch_scalar(p, coeff, x + n2, y + n2, t + n2, out + n2, n - n2);
}

}  // namespace hacf::detail

#endif  // HACF_HAVE_NEON
