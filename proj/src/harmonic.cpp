#include "hacf/harmonic.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hacf {

std::vector<MultiIndex> h_monomials(int k) {
    if (k < 0) throw std::domain_error("h_monomials: negative degree");
    std::vector<MultiIndex> out;
    for (int b3 = 0; 2 * b3 <= k; ++b3)
        for (int b1 = 0; b1 <= k - 2 * b3; ++b1)
            out.push_back(MultiIndex{b1, k - 2 * b3 - b1, b3});
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return GradedLexLess{}(a, b); });
    return out;
}

std::vector<MultiIndex> e_monomials(int k) {
    if (k < 0) throw std::domain_error("e_monomials: negative degree");
    std::vector<MultiIndex> out;
    for (int b1 = 0; b1 <= k; ++b1)
        for (int b2 = 0; b1 + b2 <= k; ++b2)
            out.push_back(MultiIndex{b1, b2, k - b1 - b2});
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return GradedLexLess{}(a, b); });
    return out;
}

namespace {

// Kernel of a linear map spanned by `domain` monomials under `op`, as exact
// reduced row echelon data. Rows of M are images of the domain monomials
// expressed in the image monomial basis; we reduce M^T (image x domain) so the
// kernel lives in domain coordinates.
std::vector<Poly3> kernel_basis(const std::vector<MultiIndex>& domain,
                                const std::function<Poly3(const Poly3&)>& op) {
    const std::size_t n = domain.size();

    // Collect image monomials in canonical order.
    std::map<MultiIndex, std::size_t, GradedLexLess> image_index;
    std::vector<Poly3> images(n);
    for (std::size_t j = 0; j < n; ++j) {
        images[j] = op(Poly3::monomial(domain[j], Rational(1)));
        for (auto& [m, c] : images[j].terms()) image_index.emplace(m, 0);
    }
    std::size_t rows = 0;
    for (auto& [m, idx] : image_index) idx = rows++;

    // A is rows x n over Q; kernel of A = harmonic coefficient vectors.
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(n, Rational(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (auto& [m, c] : images[j].terms()) A[image_index[m]][j] = c;

    // Gauss-Jordan with first-nonzero pivoting (exact arithmetic, so partial
    // pivoting is about determinism, not stability).
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[r]);
        Rational inv = A[r][c];
        for (std::size_t j = c; j < n; ++j) A[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }

    // Free columns generate the kernel; one basis vector per free column with
    // a 1 there and back-substituted pivot entries.
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    std::vector<Poly3> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        Poly3 v = Poly3::monomial(domain[c], Rational(1));
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            if (A[i][c] != 0) v.add_term(domain[pivot_col[i]], -A[i][c]);
        basis.push_back(v);
    }
    return basis;
}

}  // namespace

std::vector<Poly3> h_harmonic_basis(int k) {
    return kernel_basis(h_monomials(k), [](const Poly3& p) { return kohn_laplacian(p); });
}

std::vector<Poly3> euclid_harmonic_basis(int k) {
    return kernel_basis(e_monomials(k), [](const Poly3& p) { return euclid_laplacian(p); });
}

}  // namespace hacf
