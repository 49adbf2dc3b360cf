#pragma once

#include <vector>

#include "sogkit/matrix.hpp"

namespace sogkit {

struct CholeskyResult {
    DenseMatrix L;           ///< n x rank factor with L*L^T = M (rows in original order)
    std::vector<int> perm;   ///< pivot order chosen by diagonal pivoting
    int rank;
};

///
/// Pivoted Cholesky factorization of a symmetric positive semi-definite
/// matrix. Diagonal pivoting reveals the numerical rank: factorization
/// stops once the largest remaining pivot falls to the rounding floor of
/// the working precision. A pivot that is negative beyond
/// 2^{-prec/2}*max_pivot means the input was not PSD.
///
/// The Gramians this factors carry meaningful singular values far below
/// 2^{-prec/2} relative, so the truncation floor is set near machine
/// level rather than at the half-precision mark; dropping columns any
/// earlier visibly corrupts the small Hankel values downstream.
///
inline CholeskyResult cholesky(const DenseMatrix& M) {
    const int n = M.rows();
    if (M.cols() != n) throw LengthMismatch("cholesky requires a square matrix");
    const mpfr_prec_t prec = M.prec();

    HiPrec scale = M.max_abs();
    HiPrec sym_tol = HiPrec::two_pow(-static_cast<long>(prec / 2), prec) * scale;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (abs(M(i, j) - M(j, i)) > sym_tol)
                throw NotSymmetric("asymmetry above 2^{-prec/2} * max|M|");

    // Working copy (lower triangle in pivoted order) and pivot bookkeeping.
    DenseMatrix W(n, n, prec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) W(i, j) = M(i, j);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    DenseMatrix Lp(n, n, prec);
    HiPrec max_pivot(0.0, prec);
    long trunc_exp = -static_cast<long>(prec) + 48;
    int rank = n;

    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (W(i, i) > W(p, p)) p = i;
        if (p != k) {
            std::swap(perm[p], perm[k]);
            for (int j = 0; j < n; ++j) swap(W(p, j), W(k, j));
            for (int i = 0; i < n; ++i) swap(W(i, p), W(i, k));
            for (int j = 0; j < k; ++j) swap(Lp(p, j), Lp(k, j));
        }
        HiPrec piv = W(k, k);
        if (k == 0) max_pivot = piv;
        if (piv < -(HiPrec::two_pow(-static_cast<long>(prec / 2), prec) * max(max_pivot, scale)))
            throw IndefiniteMatrix("negative pivot beyond tolerance");
        if (piv <= HiPrec::two_pow(trunc_exp, prec) * max_pivot || piv.sign() <= 0) {
            rank = k;
            break;
        }
        HiPrec root = sqrt(piv);
        Lp(k, k) = root;
        for (int i = k + 1; i < n; ++i) Lp(i, k) = W(i, k) / root;
        for (int j = k + 1; j < n; ++j) {
            const HiPrec neg(-(Lp(j, k)));
            for (int i = j; i < n; ++i) W(i, j).fma_accum(Lp(i, k), neg);
        }
    }

    CholeskyResult out{DenseMatrix(n, rank > 0 ? rank : 1, prec), perm, rank};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) out.L(perm[i], j) = Lp(i, j);
    return out;
}

}  // namespace sogkit
