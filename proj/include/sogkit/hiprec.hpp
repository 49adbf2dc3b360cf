#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace sogkit {

/// Base class for all numerical failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct IndefiniteMatrix : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct DefectiveMatrix : Error { using Error::Error; };
struct NonDecayingKernel : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct TargetUnreachable : Error { using Error::Error; };
struct UnstablePole : Error { using Error::Error; };

///
/// Arbitrary-precision real scalar backed by MPFR.
///
/// Every value carries its own mantissa width in bits. Binary operations
/// round once, to nearest, at the larger of the two operand precisions;
/// mixed operations with `double` and integers treat the native operand
/// as exact. Conversion to `double` is exact rounding-to-nearest.
///
class HiPrec {
public:
    HiPrec() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }

    explicit HiPrec(mpfr_prec_t prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_zero(v_, 1);
    }

    HiPrec(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }

    HiPrec(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }

    HiPrec(const HiPrec& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    HiPrec(HiPrec&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }

    HiPrec& operator=(const HiPrec& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    HiPrec& operator=(HiPrec&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~HiPrec() { mpfr_clear(v_); }

    /// Parse a decimal string (fixed or scientific notation) at `prec` bits.
    static HiPrec from_string(const std::string& s, mpfr_prec_t prec) {
        HiPrec r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw InvalidParameter("unparsable decimal value: " + s);
        return r;
    }

    /// 2^e as an exact value at `prec` bits.
    static HiPrec two_pow(long e, mpfr_prec_t prec) {
        HiPrec r(prec);
        mpfr_set_ui_2exp(r.v_, 1u, e, MPFR_RNDN);
        return r;
    }

    static HiPrec pi(mpfr_prec_t prec) {
        HiPrec r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    static HiPrec ln2(mpfr_prec_t prec) {
        HiPrec r(prec);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }

    static HiPrec euler_gamma(mpfr_prec_t prec) {
        HiPrec r(prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    /// Copy rounded to a different working precision.
    HiPrec round_to(mpfr_prec_t prec) const {
        HiPrec r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Shortest decimal string that parses back to the identical value
    /// at the same precision.
    std::string str() const {
        if (mpfr_zero_p(v_)) return "0";
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
        mpfr_exp_t e = 0;
        char* raw = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
        std::string digits(raw);
        mpfr_free_str(raw);
        std::string sign;
        if (!digits.empty() && digits[0] == '-') {
            sign = "-";
            digits.erase(digits.begin());
        }
        // strip trailing zeros of the mantissa, keep at least one digit
        std::size_t last = digits.find_last_not_of('0');
        digits.erase(last + 1);
        std::string mant = digits.substr(0, 1);
        if (digits.size() > 1) mant += "." + digits.substr(1);
        return sign + mant + "e" + std::to_string(static_cast<long>(e - 1));
    }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // ---- arithmetic ----------------------------------------------------

    friend HiPrec operator+(const HiPrec& a, const HiPrec& b) {
        HiPrec r(joint_prec(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator-(const HiPrec& a, const HiPrec& b) {
        HiPrec r(joint_prec(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator*(const HiPrec& a, const HiPrec& b) {
        HiPrec r(joint_prec(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator/(const HiPrec& a, const HiPrec& b) {
        HiPrec r(joint_prec(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    HiPrec operator-() const {
        HiPrec r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    HiPrec& operator+=(const HiPrec& o) { ensure_prec(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    HiPrec& operator-=(const HiPrec& o) { ensure_prec(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    HiPrec& operator*=(const HiPrec& o) { ensure_prec(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    HiPrec& operator/=(const HiPrec& o) { ensure_prec(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend HiPrec operator*(const HiPrec& a, long k) {
        HiPrec r(a.prec());
        mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator*(long k, const HiPrec& a) { return a * k; }
    friend HiPrec operator/(const HiPrec& a, long k) {
        HiPrec r(a.prec());
        mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator+(const HiPrec& a, double x) {
        HiPrec r(a.prec());
        mpfr_add_d(r.v_, a.v_, x, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator-(const HiPrec& a, double x) {
        HiPrec r(a.prec());
        mpfr_sub_d(r.v_, a.v_, x, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator*(const HiPrec& a, double x) {
        HiPrec r(a.prec());
        mpfr_mul_d(r.v_, a.v_, x, MPFR_RNDN);
        return r;
    }
    friend HiPrec operator/(double x, const HiPrec& a) {
        HiPrec r(a.prec());
        mpfr_d_div(r.v_, x, a.v_, MPFR_RNDN);
        return r;
    }

    /// In-place this += a*b with a single rounding; the accumulator keeps
    /// its own precision (callers size it to the widest operand).
    void fma_accum(const HiPrec& a, const HiPrec& b) {
        mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
    }
    void fms_accum(const HiPrec& a, const HiPrec& b) {
        mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
        mpfr_neg(v_, v_, MPFR_RNDN);
    }

    // ---- comparisons (exact, precision-independent) ---------------------

    friend bool operator==(const HiPrec& a, const HiPrec& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const HiPrec& a, const HiPrec& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const HiPrec& a, const HiPrec& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const HiPrec& a, const HiPrec& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const HiPrec& a, const HiPrec& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const HiPrec& a, const HiPrec& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend bool operator<(const HiPrec& a, double x) { return mpfr_cmp_d(a.v_, x) < 0; }
    friend bool operator>(const HiPrec& a, double x) { return mpfr_cmp_d(a.v_, x) > 0; }
    friend bool operator<=(const HiPrec& a, double x) { return mpfr_cmp_d(a.v_, x) <= 0; }
    friend bool operator>=(const HiPrec& a, double x) { return mpfr_cmp_d(a.v_, x) >= 0; }

    // ---- elementary functions -------------------------------------------

    friend HiPrec abs(const HiPrec& a) { return a.map1(mpfr_abs); }
    friend HiPrec sqrt(const HiPrec& a) { return a.map1(mpfr_sqrt); }
    friend HiPrec exp(const HiPrec& a) { return a.map1(mpfr_exp); }
    friend HiPrec log(const HiPrec& a) { return a.map1(mpfr_log); }
    friend HiPrec cos(const HiPrec& a) { return a.map1(mpfr_cos); }
    friend HiPrec sin(const HiPrec& a) { return a.map1(mpfr_sin); }
    friend HiPrec acos(const HiPrec& a) { return a.map1(mpfr_acos); }
    friend HiPrec erf(const HiPrec& a) { return a.map1(mpfr_erf); }
    friend HiPrec cosh(const HiPrec& a) { return a.map1(mpfr_cosh); }
    friend HiPrec sinh(const HiPrec& a) { return a.map1(mpfr_sinh); }
    friend HiPrec tgamma(const HiPrec& a) { return a.map1(mpfr_gamma); }

    friend HiPrec pow(const HiPrec& a, const HiPrec& b) {
        HiPrec r(joint_prec(a, b));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend HiPrec hypot(const HiPrec& a, const HiPrec& b) {
        HiPrec r(joint_prec(a, b));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend HiPrec atan2(const HiPrec& y, const HiPrec& x) {
        HiPrec r(joint_prec(y, x));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend HiPrec fma(const HiPrec& a, const HiPrec& b, const HiPrec& c) {
        mpfr_prec_t p = joint_prec(a, b);
        if (c.prec() > p) p = c.prec();
        HiPrec r(p);
        mpfr_fma(r.v_, a.v_, b.v_, c.v_, MPFR_RNDN);
        return r;
    }
    friend HiPrec mul_2si(const HiPrec& a, long e) {
        HiPrec r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }

    friend const HiPrec& max(const HiPrec& a, const HiPrec& b) { return a < b ? b : a; }
    friend const HiPrec& min(const HiPrec& a, const HiPrec& b) { return a < b ? a : b; }

    friend void swap(HiPrec& a, HiPrec& b) noexcept { mpfr_swap(a.v_, b.v_); }

    /// Raw handle for tight inner loops; use sparingly.
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    using unary_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    HiPrec map1(unary_fn f) const {
        HiPrec r(prec());
        f(r.v_, v_, MPFR_RNDN);
        return r;
    }

    static mpfr_prec_t joint_prec(const HiPrec& a, const HiPrec& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }

    void ensure_prec(const HiPrec& o) {
        if (o.prec() > prec()) {
            mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
        }
    }

    static mpfr_prec_t check_prec(mpfr_prec_t p) {
        if (p < MPFR_PREC_MIN) throw InvalidParameter("precision too small");
        return p;
    }

    mpfr_t v_;
};

///
/// Complex value over HiPrec. Kept as an explicit pair; the reduction
/// stage is the only heavy consumer.
///
struct HiComplex {
    HiPrec re;
    HiPrec im;

    HiComplex() = default;
    explicit HiComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
    HiComplex(HiPrec r, HiPrec i) : re(std::move(r)), im(std::move(i)) {}
    explicit HiComplex(HiPrec r) : re(std::move(r)), im(HiPrec(0.0, re.prec())) {}

    mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }

    friend HiComplex operator+(const HiComplex& a, const HiComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend HiComplex operator-(const HiComplex& a, const HiComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend HiComplex operator*(const HiComplex& a, const HiComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend HiComplex operator*(const HiComplex& a, const HiPrec& s) {
        return {a.re * s, a.im * s};
    }
    friend HiComplex operator/(const HiComplex& a, const HiComplex& b) {
        // Smith's formula keeps intermediate magnitudes tame.
        if (abs(b.re) >= abs(b.im)) {
            HiPrec r = b.im / b.re;
            HiPrec d = b.re + b.im * r;
            return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
        }
        HiPrec r = b.re / b.im;
        HiPrec d = b.re * r + b.im;
        return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
    }
    HiComplex operator-() const { return {-re, -im}; }

    HiComplex& operator+=(const HiComplex& o) { re += o.re; im += o.im; return *this; }
    HiComplex& operator-=(const HiComplex& o) { re -= o.re; im -= o.im; return *this; }

    friend HiComplex conj(const HiComplex& a) { return {a.re, -a.im}; }
    friend HiPrec abs(const HiComplex& a) { return hypot(a.re, a.im); }

    friend HiComplex sqrt(const HiComplex& a) {
        if (a.im.is_zero()) {
            if (a.re.sign() >= 0) return HiComplex(sqrt(a.re));
            return {HiPrec(0.0, a.re.prec()), sqrt(-a.re)};
        }
        HiPrec m = abs(a);
        HiPrec u = sqrt(mul_2si(m + a.re, -1));
        HiPrec v = mul_2si(a.im, -1) / u;
        return {u, v};
    }

    friend HiComplex exp(const HiComplex& a) {
        HiPrec m = exp(a.re);
        return {m * cos(a.im), m * sin(a.im)};
    }
};

/// Default working precision for a VP build of half-order n. Theorem-1
/// combinatorics grow like 2^{8n} with near-total cancellation, so the
/// width scales linearly in n with a safety margin.
inline mpfr_prec_t default_precision(int n) {
    if (n < 1) throw InvalidParameter("VP half-order must be >= 1");
    mpfr_prec_t p = 12 * static_cast<mpfr_prec_t>(n) + 256;
    return p < 256 ? 256 : p;
}

}  // namespace sogkit
