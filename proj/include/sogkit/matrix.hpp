#pragma once

#include <vector>

#include "sogkit/hiprec.hpp"

namespace sogkit {

///
/// Dense real matrix of HiPrec entries, row-major. Dimensions are fixed at
/// construction; entries are created at a single working precision.
///
class DenseMatrix {
public:
    DenseMatrix(int rows, int cols, mpfr_prec_t prec)
        : rows_(rows), cols_(cols), prec_(prec) {
        if (rows < 1 || cols < 1) throw InvalidParameter("matrix dimensions must be positive");
        data_.assign(static_cast<std::size_t>(rows) * cols, HiPrec(prec));
    }

    static DenseMatrix identity(int n, mpfr_prec_t prec) {
        DenseMatrix m(n, n, prec);
        for (int i = 0; i < n; ++i) m(i, i) = HiPrec(1.0, prec);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpfr_prec_t prec() const { return prec_; }

    HiPrec& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const HiPrec& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_, prec_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Largest entry magnitude.
    HiPrec max_abs() const {
        HiPrec m(0.0, prec_);
        for (const auto& x : data_) {
            HiPrec a = abs(x);
            if (a > m) m = a;
        }
        return m;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw LengthMismatch("matrix product dimension mismatch");
        mpfr_prec_t p = a.prec_ > b.prec_ ? a.prec_ : b.prec_;
        DenseMatrix r(a.rows_, b.cols_, p);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) {
                HiPrec& acc = r(i, j);
                for (int k = 0; k < a.cols_; ++k) acc.fma_accum(a(i, k), b(k, j));
            }
        return r;
    }

    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw LengthMismatch("matrix difference dimension mismatch");
        mpfr_prec_t p = a.prec_ > b.prec_ ? a.prec_ : b.prec_;
        DenseMatrix r(a.rows_, a.cols_, p);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j) - b(i, j);
        return r;
    }

private:
    int rows_;
    int cols_;
    mpfr_prec_t prec_;
    std::vector<HiPrec> data_;
};

/// Dense complex matrix; used by the eigendecomposition and the inverse
/// Laplace stage of the reduction.
class CMatrix {
public:
    CMatrix(int rows, int cols, mpfr_prec_t prec)
        : rows_(rows), cols_(cols), prec_(prec) {
        if (rows < 1 || cols < 1) throw InvalidParameter("matrix dimensions must be positive");
        data_.assign(static_cast<std::size_t>(rows) * cols, HiComplex(prec));
    }

    static CMatrix identity(int n, mpfr_prec_t prec) {
        CMatrix m(n, n, prec);
        for (int i = 0; i < n; ++i) m(i, i).re = HiPrec(1.0, prec);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpfr_prec_t prec() const { return prec_; }

    HiComplex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const HiComplex& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

private:
    int rows_;
    int cols_;
    mpfr_prec_t prec_;
    std::vector<HiComplex> data_;
};

}  // namespace sogkit
