#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "cm3/error.hpp"

namespace cm3 {

// Explicit working precision threaded through every numeric call.
struct PrecisionContext {
    long bits;

    explicit PrecisionContext(long b) : bits(b) {
        if (b < 53)
            throw Error(ErrorCode::ConfigError, "precision below 53 bits");
    }
};

// RAII wrapper around mpfr_t.  Every value carries its own precision;
// binary operations allocate the result at the larger operand precision.
class BigReal {
public:
    BigReal() { mpfr_init2(v_, 53); mpfr_set_zero(v_, 1); }
    explicit BigReal(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigReal(double x, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigReal(long x, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    BigReal(const mpz_class& x, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    BigReal(const mpq_class& x, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }
    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, 53);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }

    static BigReal pi(long prec) {
        BigReal r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e at the given precision (exact)
    static BigReal pow2(long e, long prec) {
        BigReal r(prec);
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigReal operator-() const {
        BigReal r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigReal& operator+=(const BigReal& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator-=(const BigReal& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator*=(const BigReal& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator/=(const BigReal& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const BigReal& a, const BigReal& b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator>(const BigReal& a, const BigReal& b) {
        return mpfr_cmp(a.v_, b.v_) > 0;
    }
    friend bool operator<=(const BigReal& a, const BigReal& b) {
        return mpfr_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>=(const BigReal& a, const BigReal& b) {
        return mpfr_cmp(a.v_, b.v_) >= 0;
    }

    friend BigReal abs(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal sqrt(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal exp(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal log(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal cos(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal sin(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpz_class nearest_integer() const {
        BigReal t(prec());
        mpfr_round(t.v_, v_);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
        return z;
    }

    // Decimal string with enough digits for the carried precision.
    std::string str() const;

private:
    mpfr_t v_;
};

class BigComplex {
public:
    BigReal re, im;

    BigComplex() = default;
    explicit BigComplex(long prec) : re(prec), im(prec) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, long prec) : re(r, prec), im(i, prec) {}

    long prec() const { return std::max(re.prec(), im.prec()); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigReal& s, const BigComplex& a) {
        return {s * a.re, s * a.im};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d,
                (a.im * b.re - a.re * b.im) / d};
    }
    BigComplex operator-() const { return {-re, -im}; }
    BigComplex& operator+=(const BigComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
    friend BigReal abs2(const BigComplex& a) {
        return a.re * a.re + a.im * a.im;
    }
    friend BigReal abs(const BigComplex& a) { return sqrt(abs2(a)); }
    // exp(a) = e^re (cos im + i sin im)
    friend BigComplex cexp(const BigComplex& a) {
        BigReal m = exp(a.re);
        return {m * cos(a.im), m * sin(a.im)};
    }

    bool is_finite() const { return re.is_finite() && im.is_finite(); }
};

}  // namespace cm3
