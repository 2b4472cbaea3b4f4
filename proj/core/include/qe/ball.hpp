#pragma once

#include "qe/bigfloat.hpp"
#include "qe/errors.hpp"

#include <string>

namespace qe {

/// Real midpoint-radius ball: the represented set is [mid - rad, mid + rad].
///
/// Inclusion monotonicity: whenever the operand balls contain the exact
/// operand values, the result ball contains the exact result. Midpoints are
/// rounded to nearest at the working precision; radii are kept at a small
/// fixed precision and always rounded upward.
class BallReal {
public:
    static constexpr mpfr_prec_t radius_prec = 32;

    BallReal() : mid_(64), rad_(radius_prec) {}
    explicit BallReal(mpfr_prec_t prec) : mid_(BigFloat::clamp(prec)), rad_(radius_prec) {}

    static BallReal from_si(long x, mpfr_prec_t prec);
    static BallReal from_mpz(const mpz_class &z, mpfr_prec_t prec);
    static BallReal from_mpq(const mpq_class &q, mpfr_prec_t prec);
    static BallReal from_d(double x, mpfr_prec_t prec);
    /// Decimal string midpoint; radius one ulp unless the conversion is exact.
    static BallReal from_str(const std::string &s, mpfr_prec_t prec);
    static BallReal from_midrad(const BigFloat &mid, const BigFloat &rad);
    static BallReal pi(mpfr_prec_t prec);
    /// Ball [lo, hi] from certified endpoints.
    static BallReal from_endpoints(const BigFloat &lo, const BigFloat &hi, mpfr_prec_t prec);

    const BigFloat &mid() const { return mid_; }
    const BigFloat &rad() const { return rad_; }
    mpfr_prec_t prec() const { return mid_.prec(); }

    bool is_exact() const { return rad_.is_zero(); }
    bool is_finite() const { return mid_.is_finite() && rad_.is_finite(); }
    bool contains_zero() const;
    bool contains(const BigFloat &x) const;
    bool contains(const mpq_class &x) const;
    /// True when every point of the ball is > 0 (resp. < 0).
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool certainly_nonzero() const { return certainly_positive() || certainly_negative(); }
    /// True when this ball lies strictly below the other one.
    bool certainly_less(const BallReal &o) const;
    bool certainly_le(const BallReal &o) const;
    /// True when the two balls intersect.
    bool overlaps(const BallReal &o) const;

    BigFloat upper() const; // mid + rad, rounded up
    BigFloat lower() const; // mid - rad, rounded down
    BigFloat abs_ub() const;
    BigFloat abs_lb() const; // 0 when the ball contains 0

    BallReal round_to(mpfr_prec_t prec) const;
    /// Enlarges the radius by |e|.
    BallReal widened(const BigFloat &e) const;
    static BallReal hull(const BallReal &a, const BallReal &b);

    friend BallReal operator+(const BallReal &a, const BallReal &b);
    friend BallReal operator-(const BallReal &a, const BallReal &b);
    friend BallReal operator*(const BallReal &a, const BallReal &b);
    friend BallReal operator/(const BallReal &a, const BallReal &b); // throws DivisionByZero
    friend BallReal operator-(const BallReal &a);

    BallReal add_si(long x) const;
    BallReal mul_si(long x) const;
    BallReal div_si(long x) const;
    BallReal mul_2si(long e) const; // exact scaling by 2^e
    BallReal abs() const;
    BallReal sqrt() const;   // domain [0, inf); lower endpoint clamped to 0
    BallReal exp() const;
    BallReal expm1() const;
    BallReal log() const;    // requires certainly_positive
    BallReal log1p() const;  // requires lower() > -1
    BallReal sin() const;
    BallReal cos() const;
    BallReal pow_si(long e) const;

    std::string to_string() const;

private:
    BigFloat mid_;
    BigFloat rad_;

    friend class BallComplex;
};

/// Complex disc ball: the represented set is { z : |z - (re + i*im)| <= rad }.
class BallComplex {
public:
    BallComplex() : re_(64), im_(64), rad_(BallReal::radius_prec) {}
    explicit BallComplex(mpfr_prec_t prec)
        : re_(BigFloat::clamp(prec)), im_(BigFloat::clamp(prec)), rad_(BallReal::radius_prec) {}

    static BallComplex from_real(const BallReal &re);
    static BallComplex from_parts(const BallReal &re, const BallReal &im);
    static BallComplex from_si(long re, long im, mpfr_prec_t prec);
    static BallComplex from_mpq(const mpq_class &re, const mpq_class &im, mpfr_prec_t prec);
    static BallComplex i_unit(mpfr_prec_t prec);

    const BigFloat &re_mid() const { return re_; }
    const BigFloat &im_mid() const { return im_; }
    const BigFloat &rad() const { return rad_; }
    mpfr_prec_t prec() const { return re_.prec() > im_.prec() ? re_.prec() : im_.prec(); }

    BallReal real() const; // projection ball
    BallReal imag() const;

    bool is_exact() const { return rad_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite() && rad_.is_finite(); }
    bool contains_zero() const;
    bool certainly_nonzero() const;

    /// Certified |z| enclosure.
    BallReal abs() const;
    BigFloat abs_ub() const;
    BigFloat abs_lb() const;

    /// Midpoint principal argument; not a certified enclosure.
    double arg_approx() const;

    BallComplex round_to(mpfr_prec_t prec) const;
    BallComplex widened(const BigFloat &e) const;
    BallComplex conj() const;

    friend BallComplex operator+(const BallComplex &a, const BallComplex &b);
    friend BallComplex operator-(const BallComplex &a, const BallComplex &b);
    friend BallComplex operator*(const BallComplex &a, const BallComplex &b);
    friend BallComplex operator/(const BallComplex &a, const BallComplex &b);
    friend BallComplex operator-(const BallComplex &a);

    BallComplex inv() const; // throws DivisionByZero when the ball meets 0
    BallComplex mul_real(const BallReal &x) const;
    BallComplex mul_si(long x) const;
    BallComplex div_si(long x) const;
    BallComplex mul_2si(long e) const;
    BallComplex mul_i() const; // exact rotation by i
    BallComplex exp() const;
    BallComplex pow_si(long e) const;

    std::string to_string() const;

private:
    BigFloat re_, im_;
    BigFloat rad_;
};

} // namespace qe
