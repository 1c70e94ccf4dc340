#include "hacf/kernels.hpp"

namespace hacf::detail {

// Reference kernel. The SIMD variants replicate this exact operation sequence
// per lane (power tables by successive multiplication, term = ((c*px)*py)*pt,
// plain add). Compiled with -ffp-contract=off like everything else, so the
// results are bitwise identical across backends.
void eval_batch_scalar(const CompiledPoly& p, const double* coeff, const double* x,
                       const double* y, const double* t, double* out, std::size_t n) {
    const std::size_t m = p.size();
    double px[kMaxExponent + 1], py[kMaxExponent + 1], pt[kMaxExponent + 1];
    px[0] = py[0] = pt[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 1; k <= p.max_ex; ++k) px[k] = px[k - 1] * x[i];
        for (int k = 1; k <= p.max_ey; ++k) py[k] = py[k - 1] * y[i];
        for (int k = 1; k <= p.max_et; ++k) pt[k] = pt[k - 1] * t[i];
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double term = coeff[j] * px[p.ex[j]];
            term = term * py[p.ey[j]];
            term = term * pt[p.et[j]];
            acc = acc + term;
        }
        out[i] = acc;
    }
}

}  // namespace hacf::detail
