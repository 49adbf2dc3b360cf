#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "sogkit/matrix.hpp"

namespace sogkit {

struct SvdResult {
    DenseMatrix U;               ///< m x n, orthonormal columns
    std::vector<HiPrec> sigma;   ///< length n, non-increasing, >= 0
    DenseMatrix V;               ///< n x n orthogonal
};

namespace detail {

/// One-sided Jacobi on the columns of W (m >= n). Returns V; on exit the
/// columns of W are mutually orthogonal.
inline DenseMatrix jacobi_orthogonalize(DenseMatrix& W, int max_sweeps) {
    const int m = W.rows();
    const int n = W.cols();
    const mpfr_prec_t prec = W.prec();
    DenseMatrix V = DenseMatrix::identity(n, prec);
    const HiPrec one(1.0, prec);
    const HiPrec stop = HiPrec::two_pow(-static_cast<long>(prec) + 8, prec);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                HiPrec aii(0.0, prec), ajj(0.0, prec), aij(0.0, prec);
                for (int k = 0; k < m; ++k) {
                    aii.fma_accum(W(k, i), W(k, i));
                    ajj.fma_accum(W(k, j), W(k, j));
                    aij.fma_accum(W(k, i), W(k, j));
                }
                if (aii.is_zero() || ajj.is_zero()) continue;
                if (abs(aij) <= stop * sqrt(aii * ajj)) continue;
                rotated = true;
                // classical two-sided rotation angle for the 2x2 Gram block
                HiPrec zeta = mul_2si((ajj - aii) / aij, -1);
                HiPrec t = one / (abs(zeta) + sqrt(one + zeta * zeta));
                if (zeta.sign() < 0) t = -t;
                HiPrec c = one / sqrt(one + t * t);
                HiPrec s = c * t;
                for (int k = 0; k < m; ++k) {
                    HiPrec wi = W(k, i);
                    W(k, i) = c * wi - s * W(k, j);
                    W(k, j) = s * wi + c * W(k, j);
                }
                for (int k = 0; k < n; ++k) {
                    HiPrec vi = V(k, i);
                    V(k, i) = c * vi - s * V(k, j);
                    V(k, j) = s * vi + c * V(k, j);
                }
            }
        }
        if (!rotated) return V;
    }
    throw ConvergenceFailure("jacobi SVD did not converge; precision may be too low");
}

}  // namespace detail

///
/// Singular value decomposition M = U * diag(sigma) * V^T by one-sided
/// Jacobi, robust at arbitrary precision for the small dense matrices the
/// reduction pipeline produces.
///
inline SvdResult svd(const DenseMatrix& M) {
    if (M.rows() < M.cols()) {
        SvdResult t = svd(M.transposed());
        return SvdResult{t.V, std::move(t.sigma), t.U};
    }
    const int m = M.rows();
    const int n = M.cols();
    const mpfr_prec_t prec = M.prec();

    DenseMatrix W(m, n, prec);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) W(i, j) = M(i, j);
    DenseMatrix V = detail::jacobi_orthogonalize(W, 64);

    std::vector<HiPrec> sig;
    sig.reserve(n);
    for (int j = 0; j < n; ++j) {
        HiPrec s(0.0, prec);
        for (int k = 0; k < m; ++k) s.fma_accum(W(k, j), W(k, j));
        sig.push_back(sqrt(s));
    }

    // descending order, ties broken by column index for determinism
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sig[a] > sig[b]; });

    SvdResult out{DenseMatrix(m, n, prec), {}, DenseMatrix(n, n, prec)};
    out.sigma.reserve(n);
    for (int jj = 0; jj < n; ++jj) {
        int j = order[jj];
        out.sigma.push_back(sig[j]);
        for (int k = 0; k < n; ++k) out.V(k, jj) = V(k, j);
        if (sig[j].sign() > 0) {
            for (int k = 0; k < m; ++k) out.U(k, jj) = W(k, j) / sig[j];
        } else {
            // null column: complete U to orthonormal deterministically
            for (int e = 0; e < m; ++e) {
                for (int k = 0; k < m; ++k) out.U(k, jj) = HiPrec(k == e ? 1.0 : 0.0, prec);
                for (int prev = 0; prev < jj; ++prev) {
                    HiPrec dot(0.0, prec);
                    for (int k = 0; k < m; ++k) dot.fma_accum(out.U(k, prev), out.U(k, jj));
                    for (int k = 0; k < m; ++k) out.U(k, jj) -= dot * out.U(k, prev);
                }
                HiPrec nrm(0.0, prec);
                for (int k = 0; k < m; ++k) nrm.fma_accum(out.U(k, jj), out.U(k, jj));
                nrm = sqrt(nrm);
                if (nrm > 0.5) {
                    for (int k = 0; k < m; ++k) out.U(k, jj) /= nrm;
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace sogkit
