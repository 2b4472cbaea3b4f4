#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace qe {

/// Correctly rounded arbitrary-precision binary float (RAII wrapper over MPFR).
///
/// Every mutating operation is a function of (inputs, precision, rounding
/// mode); there is no ambient global precision state. The minimum working
/// precision is 16 bits.
class BigFloat {
public:
    static constexpr mpfr_prec_t min_prec = 16;

    BigFloat() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_zero(v_, 1); }

    BigFloat(const BigFloat &o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat &&o) noexcept {
        mpfr_init2(v_, min_prec);
        mpfr_swap(v_, o.v_);
    }
    BigFloat &operator=(const BigFloat &o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat &operator=(BigFloat &&o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_si(long x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_d(double x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    // Rounded conversion; *inexact reports whether rounding occurred.
    static BigFloat from_mpz(const mpz_class &z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN, bool *inexact = nullptr) {
        BigFloat r(prec);
        int t = mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
        if (inexact) *inexact = (t != 0);
        return r;
    }
    static BigFloat from_mpq(const mpq_class &q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN, bool *inexact = nullptr) {
        BigFloat r(prec);
        int t = mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        if (inexact) *inexact = (t != 0);
        return r;
    }
    static BigFloat from_str(const std::string &s, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_set_str(r.v_, s.c_str(), 10, rnd);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    int cmp(const BigFloat &o) const { return mpfr_cmp(v_, o.v_); }
    int cmp_si(long x) const { return mpfr_cmp_si(v_, x); }
    bool operator<(const BigFloat &o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat &o) const { return cmp(o) <= 0; }
    bool operator>(const BigFloat &o) const { return cmp(o) > 0; }
    bool operator>=(const BigFloat &o) const { return cmp(o) >= 0; }
    bool equal(const BigFloat &o) const { return mpfr_equal_p(v_, o.v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Decimal string, round-trip safe for the stored precision when digits==0.
    std::string to_string(std::size_t digits = 0) const;

    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    // Scalar helpers, used mostly by tests and oracles. Ball arithmetic calls
    // MPFR directly on raw() for tight control of rounding directions.
    static BigFloat add(const BigFloat &a, const BigFloat &b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_add(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat sub(const BigFloat &a, const BigFloat &b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_sub(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat mul(const BigFloat &a, const BigFloat &b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_mul(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat div(const BigFloat &a, const BigFloat &b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_div(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat neg(const BigFloat &a) {
        BigFloat r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat abs(const BigFloat &a) {
        BigFloat r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat log(const BigFloat &a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_log(r.v_, a.v_, rnd);
        return r;
    }
    static BigFloat exp(const BigFloat &a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_exp(r.v_, a.v_, rnd);
        return r;
    }
    static BigFloat sqrt(const BigFloat &a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        BigFloat r(prec);
        mpfr_sqrt(r.v_, a.v_, rnd);
        return r;
    }

    static mpfr_prec_t clamp(mpfr_prec_t p) { return p < min_prec ? min_prec : p; }

private:
    mpfr_t v_;
};

} // namespace qe
