#pragma once

#include <vector>

#include "sogkit/matrix.hpp"

namespace sogkit {

struct EigResult {
    std::vector<HiComplex> values;
    CMatrix vectors;   ///< columns are right eigenvectors, M V = V diag(values)
};

namespace detail {

struct Givens {
    HiPrec c;      // real
    HiComplex s;
};

/// Rotation G = [[c, s], [-conj(s), c]] zeroing b in (a, b)^T.
inline Givens make_givens(const HiComplex& a, const HiComplex& b, mpfr_prec_t prec) {
    Givens g{HiPrec(1.0, prec), HiComplex(prec)};
    HiPrec bm = abs(b);
    if (bm.is_zero()) return g;
    HiPrec am = abs(a);
    HiPrec r = hypot(am, bm);
    if (am.is_zero()) {
        g.c = HiPrec(0.0, prec);
        g.s = conj(HiComplex(b.re / bm, b.im / bm));
        return g;
    }
    g.c = am / r;
    HiComplex phase{a.re / am, a.im / am};
    g.s = phase * conj(HiComplex(b.re / r, b.im / r));
    return g;
}

inline HiComplex rot_lo(const Givens& g, const HiComplex& x, const HiComplex& y) {
    HiComplex r = x * g.c + g.s * y;
    return r;
}
inline HiComplex rot_hi(const Givens& g, const HiComplex& x, const HiComplex& y) {
    return y * g.c - conj(g.s) * x;
}

inline void hessenberg(CMatrix& H, CMatrix& Q) {
    const int n = H.rows();
    const mpfr_prec_t prec = H.prec();
    for (int k = 0; k + 2 < n; ++k) {
        // Householder vector annihilating H(k+2..n-1, k)
        HiPrec norm2(0.0, prec);
        for (int i = k + 1; i < n; ++i) {
            norm2.fma_accum(H(i, k).re, H(i, k).re);
            norm2.fma_accum(H(i, k).im, H(i, k).im);
        }
        HiPrec norm = sqrt(norm2);
        if (norm.is_zero()) continue;
        HiComplex alpha = H(k + 1, k);
        HiPrec am = abs(alpha);
        HiComplex nu = am.is_zero() ? HiComplex(-norm)
                                    : HiComplex(-(alpha.re / am) * norm, -(alpha.im / am) * norm);
        std::vector<HiComplex> v(n, HiComplex(prec));
        for (int i = k + 1; i < n; ++i) v[i] = H(i, k);
        v[k + 1] = v[k + 1] - nu;
        HiPrec vv(0.0, prec);
        for (int i = k + 1; i < n; ++i) {
            vv.fma_accum(v[i].re, v[i].re);
            vv.fma_accum(v[i].im, v[i].im);
        }
        if (vv.is_zero()) continue;
        HiPrec beta = HiPrec(2.0, prec) / vv;
        // H <- H - beta v (v^H H)
        for (int j = k; j < n; ++j) {
            HiComplex dot(prec);
            for (int i = k + 1; i < n; ++i) dot += conj(v[i]) * H(i, j);
            dot = dot * beta;
            for (int i = k + 1; i < n; ++i) H(i, j) -= v[i] * dot;
        }
        // H <- H - beta (H v) v^H
        for (int i = 0; i < n; ++i) {
            HiComplex dot(prec);
            for (int j = k + 1; j < n; ++j) dot += H(i, j) * v[j];
            dot = dot * beta;
            for (int j = k + 1; j < n; ++j) H(i, j) -= dot * conj(v[j]);
        }
        // Q <- Q - beta (Q v) v^H
        for (int i = 0; i < n; ++i) {
            HiComplex dot(prec);
            for (int j = k + 1; j < n; ++j) dot += Q(i, j) * v[j];
            dot = dot * beta;
            for (int j = k + 1; j < n; ++j) Q(i, j) -= dot * conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) H(i, k) = HiComplex(prec);
        H(k + 1, k) = nu;
    }
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 closest to its (1,1).
inline HiComplex wilkinson_shift(const CMatrix& H, int hi) {
    const mpfr_prec_t prec = H.prec();
    const HiComplex& a = H(hi - 1, hi - 1);
    const HiComplex& b = H(hi - 1, hi);
    const HiComplex& c = H(hi, hi - 1);
    const HiComplex& d = H(hi, hi);
    HiComplex half{HiPrec(0.5, prec), HiPrec(0.0, prec)};
    HiComplex e = (a - d) * half;
    HiComplex disc = sqrt(e * e + b * c);
    HiComplex r1 = e + disc;
    HiComplex r2 = e - disc;
    // mu = d + e -/+ disc; pick the branch with larger |e +/- disc| for stability
    HiComplex denom = abs(r1) >= abs(r2) ? r1 : r2;
    if (abs(denom).is_zero()) return d;
    return d - (b * c) / denom;
}

}  // namespace detail

///
/// Eigendecomposition of a real square matrix via unitary Hessenberg
/// reduction and complex shifted QR. The matrices this sees (balanced
/// reduced realizations) are small and diagonalizable in practice; for a
/// real input, complex eigenvalues come out in numerically conjugate
/// pairs.
///
inline EigResult eig(const DenseMatrix& M) {
    const int n = M.rows();
    if (M.cols() != n) throw LengthMismatch("eig requires a square matrix");
    const mpfr_prec_t prec = M.prec();

    CMatrix H(n, n, prec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) H(i, j) = HiComplex(M(i, j));
    CMatrix Q = CMatrix::identity(n, prec);
    detail::hessenberg(H, Q);

    const HiPrec tol = HiPrec::two_pow(-static_cast<long>(prec) + 6, prec);
    long iters_left = 80L * n + 200;
    int hi = n - 1;
    int stall = 0;
    while (hi > 0) {
        // deflate converged subdiagonals
        int lo = hi;
        while (lo > 0) {
            HiPrec off = abs(H(lo, lo - 1));
            if (off <= tol * (abs(H(lo - 1, lo - 1)) + abs(H(lo, lo)))) {
                H(lo, lo - 1) = HiComplex(prec);
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            stall = 0;
            continue;
        }
        if (--iters_left < 0)
            throw ConvergenceFailure("QR iteration stalled; raise the working precision");

        HiComplex mu = detail::wilkinson_shift(H, hi);
        if (++stall % 24 == 0) {
            // exceptional shift to break symmetric stalls
            mu = H(hi, hi) + HiComplex(abs(H(hi, hi - 1)) * HiPrec(1.0, prec));
        }

        for (int i = lo; i <= hi; ++i) H(i, i) -= mu;
        std::vector<detail::Givens> rots;
        rots.reserve(hi - lo);
        for (int i = lo; i < hi; ++i) {
            detail::Givens g = detail::make_givens(H(i, i), H(i + 1, i), prec);
            rots.push_back(g);
            for (int j = i; j < n; ++j) {
                HiComplex x = H(i, j), y = H(i + 1, j);
                H(i, j) = detail::rot_lo(g, x, y);
                H(i + 1, j) = detail::rot_hi(g, x, y);
            }
            H(i + 1, i) = HiComplex(prec);
        }
        for (int i = lo; i < hi; ++i) {
            const detail::Givens& g = rots[i - lo];
            int rmax = i + 1 < hi ? i + 1 : hi;
            for (int r = 0; r <= rmax; ++r) {
                HiComplex x = H(r, i), y = H(r, i + 1);
                H(r, i) = x * g.c + conj(g.s) * y;
                H(r, i + 1) = y * g.c - g.s * x;
            }
            for (int r = 0; r < n; ++r) {
                HiComplex x = Q(r, i), y = Q(r, i + 1);
                Q(r, i) = x * g.c + conj(g.s) * y;
                Q(r, i + 1) = y * g.c - g.s * x;
            }
        }
        for (int i = lo; i <= hi; ++i) H(i, i) += mu;
    }

    EigResult out{std::vector<HiComplex>(), CMatrix(n, n, prec)};
    out.values.reserve(n);
    for (int i = 0; i < n; ++i) out.values.push_back(H(i, i));

    // eigenvectors of the triangular factor by back-substitution
    HiPrec scale = HiPrec(0.0, prec);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) scale = max(scale, abs(H(i, j)));
    HiPrec smallnum = max(scale, HiPrec(1.0, prec)) * HiPrec::two_pow(-static_cast<long>(prec) + 4, prec);

    std::vector<HiComplex> y(n, HiComplex(prec));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) y[i] = HiComplex(prec);
        y[k] = HiComplex(HiPrec(1.0, prec));
        for (int i = k - 1; i >= 0; --i) {
            HiComplex acc(prec);
            for (int j = i + 1; j <= k; ++j) acc += H(i, j) * y[j];
            HiComplex den = H(i, i) - out.values[k];
            if (abs(den) < smallnum) den = HiComplex(smallnum);
            y[i] = -acc / den;
        }
        // map back through the accumulated unitary transform
        HiPrec nrm(0.0, prec);
        std::vector<HiComplex> v(n, HiComplex(prec));
        for (int i = 0; i < n; ++i) {
            HiComplex acc(prec);
            for (int j = 0; j <= k; ++j) acc += Q(i, j) * y[j];
            v[i] = acc;
            nrm.fma_accum(acc.re, acc.re);
            nrm.fma_accum(acc.im, acc.im);
        }
        nrm = sqrt(nrm);
        if (nrm.is_zero()) throw DefectiveMatrix("zero eigenvector from back-substitution");
        // normalize and fix the phase of the largest component
        int imax = 0;
        HiPrec best(0.0, prec);
        for (int i = 0; i < n; ++i) {
            HiPrec a = abs(v[i]);
            if (a > best) { best = a; imax = i; }
        }
        HiComplex phase = conj(v[imax]) * (HiPrec(1.0, prec) / (best * nrm));
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v[i] * phase;
    }
    return out;
}

/// Solve A x = b for complex dense A by LU with partial pivoting.
inline std::vector<HiComplex> lu_solve(const CMatrix& A, const std::vector<HiComplex>& b) {
    const int n = A.rows();
    if (A.cols() != n || static_cast<int>(b.size()) != n)
        throw LengthMismatch("lu_solve dimension mismatch");
    const mpfr_prec_t prec = A.prec();
    CMatrix W(n, n, prec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) W(i, j) = A(i, j);
    std::vector<HiComplex> x(b);

    HiPrec scale(0.0, prec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = max(scale, abs(W(i, j)));
    HiPrec tiny = scale * HiPrec::two_pow(-static_cast<long>(prec) + 16, prec);

    for (int k = 0; k < n; ++k) {
        int p = k;
        HiPrec best = abs(W(k, k));
        for (int i = k + 1; i < n; ++i) {
            HiPrec a = abs(W(i, k));
            if (a > best) { best = a; p = i; }
        }
        if (best <= tiny)
            throw DefectiveMatrix("numerically singular eigenvector matrix");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(W(p, j), W(k, j));
            std::swap(x[p], x[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            HiComplex f = W(i, k) / W(k, k);
            for (int j = k + 1; j < n; ++j) W(i, j) -= f * W(k, j);
            x[i] -= f * x[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        HiComplex acc = x[i];
        for (int j = i + 1; j < n; ++j) acc -= W(i, j) * x[j];
        x[i] = acc / W(i, i);
    }
    return x;
}

}  // namespace sogkit
