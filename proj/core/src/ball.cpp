#include "qe/ball.hpp"

#include <algorithm>

namespace qe {

namespace {

constexpr mpfr_prec_t RP = BallReal::radius_prec;

// rad += 0.5 ulp bound of mid (1/2 ulp <= |mid| * 2^-prec), if the last
// operation on mid was inexact (ternary != 0).
void add_round_err(BigFloat &rad, const BigFloat &mid, int ternary) {
    if (ternary == 0 || mid.is_zero()) return;
    BigFloat t(RP);
    mpfr_abs(t.raw(), mid.raw(), MPFR_RNDU);
    mpfr_mul_2si(t.raw(), t.raw(), -static_cast<long>(mid.prec()), MPFR_RNDU);
    mpfr_add(rad.raw(), rad.raw(), t.raw(), MPFR_RNDU);
}

void rad_add(BigFloat &r, const BigFloat &a, const BigFloat &b) {
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
}

BigFloat abs_up(const BigFloat &x) {
    BigFloat t(RP);
    mpfr_abs(t.raw(), x.raw(), MPFR_RNDU);
    return t;
}

// Upper bound of |(re, im)|.
BigFloat hypot_up(const BigFloat &re, const BigFloat &im) {
    BigFloat t(RP);
    mpfr_hypot(t.raw(), re.raw(), im.raw(), MPFR_RNDU);
    return t;
}

BigFloat hypot_down(const BigFloat &re, const BigFloat &im) {
    BigFloat t(RP);
    mpfr_hypot(t.raw(), re.raw(), im.raw(), MPFR_RNDD);
    return t;
}

} // namespace

// ---------------------------------------------------------------------------
// BallReal
// ---------------------------------------------------------------------------

BallReal BallReal::from_si(long x, mpfr_prec_t prec) {
    BallReal r(prec);
    int t = mpfr_set_si(r.mid_.raw(), x, MPFR_RNDN);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::from_mpz(const mpz_class &z, mpfr_prec_t prec) {
    BallReal r(prec);
    int t = mpfr_set_z(r.mid_.raw(), z.get_mpz_t(), MPFR_RNDN);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::from_mpq(const mpq_class &q, mpfr_prec_t prec) {
    BallReal r(prec);
    int t = mpfr_set_q(r.mid_.raw(), q.get_mpq_t(), MPFR_RNDN);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::from_d(double x, mpfr_prec_t prec) {
    BallReal r(prec);
    int t = mpfr_set_d(r.mid_.raw(), x, MPFR_RNDN);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::from_str(const std::string &s, mpfr_prec_t prec) {
    BallReal r(prec);
    int t = mpfr_set_str(r.mid_.raw(), s.c_str(), 10, MPFR_RNDN);
    if (t == -1) throw ParseError("bad decimal literal: " + s);
    // mpfr_set_str does not return a ternary value; assume one ulp slack
    // unless the midpoint re-prints exactly (cheap exactness probe skipped).
    add_round_err(r.rad_, r.mid_, 1);
    return r;
}

BallReal BallReal::from_midrad(const BigFloat &mid, const BigFloat &rad) {
    BallReal r(mid.prec());
    r.mid_ = mid;
    mpfr_abs(r.rad_.raw(), rad.raw(), MPFR_RNDU);
    return r;
}

BallReal BallReal::pi(mpfr_prec_t prec) {
    BallReal r(prec);
    int t = mpfr_const_pi(r.mid_.raw(), MPFR_RNDN);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::from_endpoints(const BigFloat &lo, const BigFloat &hi, mpfr_prec_t prec) {
    BallReal r(prec);
    int t = mpfr_add(r.mid_.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
    mpfr_mul_2si(r.mid_.raw(), r.mid_.raw(), -1, MPFR_RNDN);
    add_round_err(r.rad_, r.mid_, t);
    // rad >= max(hi - mid, mid - lo)
    BigFloat d1(RP), d2(RP);
    mpfr_sub(d1.raw(), hi.raw(), r.mid_.raw(), MPFR_RNDU);
    mpfr_sub(d2.raw(), r.mid_.raw(), lo.raw(), MPFR_RNDU);
    if (mpfr_cmp(d2.raw(), d1.raw()) > 0) mpfr_swap(d1.raw(), d2.raw());
    mpfr_add(r.rad_.raw(), r.rad_.raw(), d1.raw(), MPFR_RNDU);
    return r;
}

bool BallReal::contains_zero() const {
    BigFloat a(RP);
    mpfr_abs(a.raw(), mid_.raw(), MPFR_RNDD);
    return mpfr_cmp(a.raw(), rad_.raw()) <= 0;
}

bool BallReal::contains(const BigFloat &x) const {
    BigFloat lo = lower(), hi = upper();
    return mpfr_cmp(lo.raw(), x.raw()) <= 0 && mpfr_cmp(x.raw(), hi.raw()) <= 0;
}

bool BallReal::contains(const mpq_class &x) const {
    // Compare against endpoints exactly via mpfr_cmp_q.
    BigFloat lo = lower(), hi = upper();
    return mpfr_cmp_q(lo.raw(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.raw(), x.get_mpq_t()) >= 0;
}

bool BallReal::certainly_positive() const {
    BigFloat lo = lower();
    return lo.is_finite() && mpfr_sgn(lo.raw()) > 0;
}

bool BallReal::certainly_negative() const {
    BigFloat hi = upper();
    return hi.is_finite() && mpfr_sgn(hi.raw()) < 0;
}

bool BallReal::certainly_less(const BallReal &o) const {
    BigFloat hi = upper(), lo = o.lower();
    return hi.is_finite() && lo.is_finite() && mpfr_cmp(hi.raw(), lo.raw()) < 0;
}

bool BallReal::certainly_le(const BallReal &o) const {
    BigFloat hi = upper(), lo = o.lower();
    return hi.is_finite() && lo.is_finite() && mpfr_cmp(hi.raw(), lo.raw()) <= 0;
}

bool BallReal::overlaps(const BallReal &o) const {
    return !certainly_less(o) && !o.certainly_less(*this);
}

BigFloat BallReal::upper() const {
    BigFloat r(mid_.prec());
    mpfr_add(r.raw(), mid_.raw(), rad_.raw(), MPFR_RNDU);
    return r;
}

BigFloat BallReal::lower() const {
    BigFloat r(mid_.prec());
    mpfr_sub(r.raw(), mid_.raw(), rad_.raw(), MPFR_RNDD);
    return r;
}

BigFloat BallReal::abs_ub() const {
    BigFloat r(RP);
    mpfr_abs(r.raw(), mid_.raw(), MPFR_RNDU);
    mpfr_add(r.raw(), r.raw(), rad_.raw(), MPFR_RNDU);
    return r;
}

BigFloat BallReal::abs_lb() const {
    BigFloat r(RP);
    mpfr_abs(r.raw(), mid_.raw(), MPFR_RNDD);
    mpfr_sub(r.raw(), r.raw(), rad_.raw(), MPFR_RNDD);
    if (mpfr_sgn(r.raw()) < 0) mpfr_set_zero(r.raw(), 1);
    return r;
}

BallReal BallReal::round_to(mpfr_prec_t prec) const {
    BallReal r(prec);
    int t = mpfr_set(r.mid_.raw(), mid_.raw(), MPFR_RNDN);
    r.rad_ = rad_;
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::widened(const BigFloat &e) const {
    BallReal r = *this;
    BigFloat a = abs_up(e);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), a.raw(), MPFR_RNDU);
    return r;
}

BallReal BallReal::hull(const BallReal &a, const BallReal &b) {
    BigFloat lo = a.lower(), hi = a.upper();
    BigFloat lob = b.lower(), hib = b.upper();
    if (mpfr_cmp(lob.raw(), lo.raw()) < 0) lo = lob;
    if (mpfr_cmp(hib.raw(), hi.raw()) > 0) hi = hib;
    return from_endpoints(lo, hi, std::max(a.prec(), b.prec()));
}

BallReal operator+(const BallReal &a, const BallReal &b) {
    BallReal r(std::max(a.prec(), b.prec()));
    int t = mpfr_add(r.mid_.raw(), a.mid_.raw(), b.mid_.raw(), MPFR_RNDN);
    rad_add(r.rad_, a.rad_, b.rad_);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal operator-(const BallReal &a, const BallReal &b) {
    BallReal r(std::max(a.prec(), b.prec()));
    int t = mpfr_sub(r.mid_.raw(), a.mid_.raw(), b.mid_.raw(), MPFR_RNDN);
    rad_add(r.rad_, a.rad_, b.rad_);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal operator*(const BallReal &a, const BallReal &b) {
    BallReal r(std::max(a.prec(), b.prec()));
    int t = mpfr_mul(r.mid_.raw(), a.mid_.raw(), b.mid_.raw(), MPFR_RNDN);
    // |a||rb| + |b||ra| + ra*rb
    BigFloat am = abs_up(a.mid_), bm = abs_up(b.mid_), t1(RP), t2(RP);
    mpfr_mul(t1.raw(), am.raw(), b.rad_.raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), bm.raw(), a.rad_.raw(), MPFR_RNDU);
    mpfr_add(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), a.rad_.raw(), b.rad_.raw(), MPFR_RNDU);
    mpfr_add(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDU);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), t1.raw(), MPFR_RNDU);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal operator/(const BallReal &a, const BallReal &b) {
    BigFloat blb = b.abs_lb();
    if (mpfr_sgn(blb.raw()) <= 0) throw DivisionByZero();
    BallReal r(std::max(a.prec(), b.prec()));
    int t = mpfr_div(r.mid_.raw(), a.mid_.raw(), b.mid_.raw(), MPFR_RNDN);
    // |a/b - am/bm| <= (ra*|bm| + |am|*rb) / (|bm| * (|bm| - rb))
    BigFloat am = abs_up(a.mid_), bm_up = abs_up(b.mid_), bm_lo(RP), num(RP), t2(RP), den(RP);
    mpfr_abs(bm_lo.raw(), b.mid_.raw(), MPFR_RNDD);
    mpfr_mul(num.raw(), a.rad_.raw(), bm_up.raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), am.raw(), b.rad_.raw(), MPFR_RNDU);
    mpfr_add(num.raw(), num.raw(), t2.raw(), MPFR_RNDU);
    mpfr_sub(den.raw(), bm_lo.raw(), b.rad_.raw(), MPFR_RNDD);
    mpfr_mul(den.raw(), bm_lo.raw(), den.raw(), MPFR_RNDD);
    if (mpfr_sgn(den.raw()) <= 0) throw DivisionByZero();
    mpfr_div(num.raw(), num.raw(), den.raw(), MPFR_RNDU);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), num.raw(), MPFR_RNDU);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal operator-(const BallReal &a) {
    BallReal r = a;
    mpfr_neg(r.mid_.raw(), r.mid_.raw(), MPFR_RNDN);
    return r;
}

BallReal BallReal::add_si(long x) const {
    return *this + BallReal::from_si(x, prec());
}

BallReal BallReal::mul_si(long x) const {
    BallReal r = *this;
    int t = mpfr_mul_si(r.mid_.raw(), mid_.raw(), x, MPFR_RNDN);
    BigFloat ax(RP);
    mpfr_set_si(ax.raw(), x < 0 ? -x : x, MPFR_RNDU);
    mpfr_mul(r.rad_.raw(), rad_.raw(), ax.raw(), MPFR_RNDU);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::div_si(long x) const {
    if (x == 0) throw DivisionByZero();
    BallReal r = *this;
    int t = mpfr_div_si(r.mid_.raw(), mid_.raw(), x, MPFR_RNDN);
    BigFloat ax(RP);
    mpfr_set_si(ax.raw(), x < 0 ? -x : x, MPFR_RNDD);
    mpfr_div(r.rad_.raw(), rad_.raw(), ax.raw(), MPFR_RNDU);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::mul_2si(long e) const {
    BallReal r = *this;
    mpfr_mul_2si(r.mid_.raw(), r.mid_.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(r.rad_.raw(), r.rad_.raw(), e, MPFR_RNDU);
    return r;
}

BallReal BallReal::abs() const {
    if (!contains_zero()) {
        BallReal r = *this;
        mpfr_abs(r.mid_.raw(), r.mid_.raw(), MPFR_RNDN);
        return r;
    }
    BigFloat z(prec());
    mpfr_set_zero(z.raw(), 1);
    return from_endpoints(z, abs_ub(), prec());
}

BallReal BallReal::sqrt() const {
    BigFloat lo = lower();
    if (mpfr_sgn(lo.raw()) < 0) {
        if (!contains_zero() ) throw DomainError("sqrt of negative ball");
        mpfr_set_zero(lo.raw(), 1);
    }
    BigFloat hi = upper();
    BigFloat slo(prec()), shi(prec());
    mpfr_sqrt(slo.raw(), lo.raw(), MPFR_RNDD);
    mpfr_sqrt(shi.raw(), hi.raw(), MPFR_RNDU);
    return from_endpoints(slo, shi, prec());
}

// The exp/log family is evaluated on interval endpoints (the functions are
// monotone), which stays sound under MPFR exponent-range underflow/overflow.
BallReal BallReal::exp() const {
    BigFloat lo = lower(), hi = upper();
    BigFloat elo(prec()), ehi(prec());
    mpfr_exp(elo.raw(), lo.raw(), MPFR_RNDD);
    mpfr_exp(ehi.raw(), hi.raw(), MPFR_RNDU);
    return from_endpoints(elo, ehi, prec());
}

BallReal BallReal::expm1() const {
    BigFloat lo = lower(), hi = upper();
    BigFloat elo(prec()), ehi(prec());
    mpfr_expm1(elo.raw(), lo.raw(), MPFR_RNDD);
    mpfr_expm1(ehi.raw(), hi.raw(), MPFR_RNDU);
    return from_endpoints(elo, ehi, prec());
}

BallReal BallReal::log() const {
    BigFloat lo = lower(), hi = upper();
    if (mpfr_sgn(lo.raw()) <= 0) throw DomainError("log of ball touching (-inf, 0]");
    BigFloat llo(prec()), lhi(prec());
    mpfr_log(llo.raw(), lo.raw(), MPFR_RNDD);
    mpfr_log(lhi.raw(), hi.raw(), MPFR_RNDU);
    return from_endpoints(llo, lhi, prec());
}

BallReal BallReal::log1p() const {
    BigFloat lo = lower(), hi = upper();
    if (mpfr_cmp_si(lo.raw(), -1) <= 0) throw DomainError("log1p of ball touching (-inf, -1]");
    BigFloat llo(prec()), lhi(prec());
    mpfr_log1p(llo.raw(), lo.raw(), MPFR_RNDD);
    mpfr_log1p(lhi.raw(), hi.raw(), MPFR_RNDU);
    return from_endpoints(llo, lhi, prec());
}

BallReal BallReal::sin() const {
    BallReal r(prec());
    int t = mpfr_sin(r.mid_.raw(), mid_.raw(), MPFR_RNDN);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), rad_.raw(), MPFR_RNDU); // Lipschitz 1
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::cos() const {
    BallReal r(prec());
    int t = mpfr_cos(r.mid_.raw(), mid_.raw(), MPFR_RNDN);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), rad_.raw(), MPFR_RNDU);
    add_round_err(r.rad_, r.mid_, t);
    return r;
}

BallReal BallReal::pow_si(long e) const {
    if (e == 0) return from_si(1, prec());
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    BallReal acc = from_si(1, prec());
    BallReal base = *this;
    while (n) {
        if (n & 1ul) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    if (inv) return from_si(1, prec()) / acc;
    return acc;
}

std::string BallReal::to_string() const {
    return "[" + mid_.to_string() + " +/- " + rad_.to_string(3) + "]";
}

// ---------------------------------------------------------------------------
// BallComplex
// ---------------------------------------------------------------------------

BallComplex BallComplex::from_real(const BallReal &re) {
    BallComplex r(re.prec());
    r.re_ = re.mid_;
    mpfr_set_zero(r.im_.raw(), 1);
    r.rad_ = re.rad_;
    return r;
}

BallComplex BallComplex::from_parts(const BallReal &re, const BallReal &im) {
    BallComplex r(std::max(re.prec(), im.prec()));
    r.re_ = re.mid_;
    r.im_ = im.mid_;
    r.rad_ = hypot_up(re.rad_, im.rad_);
    return r;
}

BallComplex BallComplex::from_si(long re, long im, mpfr_prec_t prec) {
    return from_parts(BallReal::from_si(re, prec), BallReal::from_si(im, prec));
}

BallComplex BallComplex::from_mpq(const mpq_class &re, const mpq_class &im, mpfr_prec_t prec) {
    return from_parts(BallReal::from_mpq(re, prec), BallReal::from_mpq(im, prec));
}

BallComplex BallComplex::i_unit(mpfr_prec_t prec) {
    return from_si(0, 1, prec);
}

BallReal BallComplex::real() const {
    BallReal r(re_.prec());
    r.mid_ = re_;
    r.rad_ = rad_;
    return r;
}

BallReal BallComplex::imag() const {
    BallReal r(im_.prec());
    r.mid_ = im_;
    r.rad_ = rad_;
    return r;
}

bool BallComplex::contains_zero() const {
    BigFloat lb = hypot_down(re_, im_);
    return mpfr_cmp(lb.raw(), rad_.raw()) <= 0;
}

bool BallComplex::certainly_nonzero() const {
    BigFloat lb = hypot_down(re_, im_);
    return lb.is_finite() && rad_.is_finite() && mpfr_cmp(lb.raw(), rad_.raw()) > 0;
}

BallReal BallComplex::abs() const {
    BigFloat m(prec());
    int t = mpfr_hypot(m.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    BigFloat r0(RP);
    mpfr_set_zero(r0.raw(), 1);
    BallReal out = BallReal::from_midrad(m, r0);
    add_round_err(out.rad_, out.mid_, t);
    mpfr_add(out.rad_.raw(), out.rad_.raw(), rad_.raw(), MPFR_RNDU);
    if (out.contains_zero()) {
        // clamp to the nonnegative half-line
        BigFloat z(prec());
        mpfr_set_zero(z.raw(), 1);
        return BallReal::from_endpoints(z, out.upper(), prec());
    }
    return out;
}

BigFloat BallComplex::abs_ub() const {
    BigFloat u = hypot_up(re_, im_);
    mpfr_add(u.raw(), u.raw(), rad_.raw(), MPFR_RNDU);
    return u;
}

BigFloat BallComplex::abs_lb() const {
    BigFloat l = hypot_down(re_, im_);
    mpfr_sub(l.raw(), l.raw(), rad_.raw(), MPFR_RNDD);
    if (mpfr_sgn(l.raw()) < 0) mpfr_set_zero(l.raw(), 1);
    return l;
}

double BallComplex::arg_approx() const {
    mpfr_t a;
    mpfr_init2(a, 64);
    mpfr_atan2(a, im_.raw(), re_.raw(), MPFR_RNDN);
    double d = mpfr_get_d(a, MPFR_RNDN);
    mpfr_clear(a);
    return d;
}

BallComplex BallComplex::round_to(mpfr_prec_t prec) const {
    BallComplex r(prec);
    int t1 = mpfr_set(r.re_.raw(), re_.raw(), MPFR_RNDN);
    int t2 = mpfr_set(r.im_.raw(), im_.raw(), MPFR_RNDN);
    r.rad_ = rad_;
    add_round_err(r.rad_, r.re_, t1);
    add_round_err(r.rad_, r.im_, t2);
    return r;
}

BallComplex BallComplex::widened(const BigFloat &e) const {
    BallComplex r = *this;
    BigFloat a = abs_up(e);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), a.raw(), MPFR_RNDU);
    return r;
}

BallComplex BallComplex::conj() const {
    BallComplex r = *this;
    mpfr_neg(r.im_.raw(), r.im_.raw(), MPFR_RNDN);
    return r;
}

BallComplex operator+(const BallComplex &a, const BallComplex &b) {
    BallComplex r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_add(r.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
    int t2 = mpfr_add(r.im_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    rad_add(r.rad_, a.rad_, b.rad_);
    add_round_err(r.rad_, r.re_, t1);
    add_round_err(r.rad_, r.im_, t2);
    return r;
}

BallComplex operator-(const BallComplex &a, const BallComplex &b) {
    BallComplex r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_sub(r.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
    int t2 = mpfr_sub(r.im_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    rad_add(r.rad_, a.rad_, b.rad_);
    add_round_err(r.rad_, r.re_, t1);
    add_round_err(r.rad_, r.im_, t2);
    return r;
}

BallComplex operator*(const BallComplex &a, const BallComplex &b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    BallComplex r(p);
    BigFloat t1(p), t2(p);
    // re = ar*br - ai*bi, im = ar*bi + ai*br
    int e1 = mpfr_mul(t1.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
    int e2 = mpfr_mul(t2.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    int e3 = mpfr_sub(r.re_.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    add_round_err(r.rad_, t1, e1);
    add_round_err(r.rad_, t2, e2);
    add_round_err(r.rad_, r.re_, e3);
    e1 = mpfr_mul(t1.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
    e2 = mpfr_mul(t2.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    e3 = mpfr_add(r.im_.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    add_round_err(r.rad_, t1, e1);
    add_round_err(r.rad_, t2, e2);
    add_round_err(r.rad_, r.im_, e3);
    // |a| rb + |b| ra + ra rb
    BigFloat am = hypot_up(a.re_, a.im_), bm = hypot_up(b.re_, b.im_), u1(RP), u2(RP);
    mpfr_mul(u1.raw(), am.raw(), b.rad_.raw(), MPFR_RNDU);
    mpfr_mul(u2.raw(), bm.raw(), a.rad_.raw(), MPFR_RNDU);
    mpfr_add(u1.raw(), u1.raw(), u2.raw(), MPFR_RNDU);
    mpfr_mul(u2.raw(), a.rad_.raw(), b.rad_.raw(), MPFR_RNDU);
    mpfr_add(u1.raw(), u1.raw(), u2.raw(), MPFR_RNDU);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), u1.raw(), MPFR_RNDU);
    return r;
}

BallComplex BallComplex::inv() const {
    BigFloat mlo = hypot_down(re_, im_);
    BigFloat den(RP);
    mpfr_sub(den.raw(), mlo.raw(), rad_.raw(), MPFR_RNDD);
    if (!den.is_finite() || mpfr_sgn(den.raw()) <= 0) throw DivisionByZero();
    mpfr_prec_t p = prec();
    BallComplex r(p);
    BigFloat n2(p);
    int t1 = mpfr_hypot(n2.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    int t2 = mpfr_sqr(n2.raw(), n2.raw(), MPFR_RNDN);
    int t3 = mpfr_div(r.re_.raw(), re_.raw(), n2.raw(), MPFR_RNDN);
    int t4 = mpfr_div(r.im_.raw(), im_.raw(), n2.raw(), MPFR_RNDN);
    mpfr_neg(r.im_.raw(), r.im_.raw(), MPFR_RNDN);
    add_round_err(r.rad_, r.re_, t3);
    add_round_err(r.rad_, r.im_, t4);
    if (t1 != 0 || t2 != 0) {
        // |m|^2 rounding compounds to a relative error < 8*2^-p of |1/m|.
        BigFloat merr(RP);
        mpfr_ui_div(merr.raw(), 1u, mlo.raw(), MPFR_RNDU);
        mpfr_mul_2si(merr.raw(), merr.raw(), 3 - static_cast<long>(p), MPFR_RNDU);
        mpfr_add(r.rad_.raw(), r.rad_.raw(), merr.raw(), MPFR_RNDU);
    }
    // |1/z - 1/m| <= rad / (|m| (|m| - rad))
    BigFloat d(RP);
    mpfr_mul(d.raw(), mlo.raw(), den.raw(), MPFR_RNDD);
    BigFloat u(RP);
    mpfr_div(u.raw(), rad_.raw(), d.raw(), MPFR_RNDU);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), u.raw(), MPFR_RNDU);
    return r;
}

BallComplex operator/(const BallComplex &a, const BallComplex &b) {
    return a * b.inv();
}

BallComplex operator-(const BallComplex &a) {
    BallComplex r = a;
    mpfr_neg(r.re_.raw(), r.re_.raw(), MPFR_RNDN);
    mpfr_neg(r.im_.raw(), r.im_.raw(), MPFR_RNDN);
    return r;
}

BallComplex BallComplex::mul_real(const BallReal &x) const {
    return *this * BallComplex::from_real(x);
}

BallComplex BallComplex::mul_si(long x) const {
    BallComplex r = *this;
    int t1 = mpfr_mul_si(r.re_.raw(), re_.raw(), x, MPFR_RNDN);
    int t2 = mpfr_mul_si(r.im_.raw(), im_.raw(), x, MPFR_RNDN);
    BigFloat ax(RP);
    mpfr_set_si(ax.raw(), x < 0 ? -x : x, MPFR_RNDU);
    mpfr_mul(r.rad_.raw(), rad_.raw(), ax.raw(), MPFR_RNDU);
    add_round_err(r.rad_, r.re_, t1);
    add_round_err(r.rad_, r.im_, t2);
    return r;
}

BallComplex BallComplex::div_si(long x) const {
    if (x == 0) throw DivisionByZero();
    BallComplex r = *this;
    int t1 = mpfr_div_si(r.re_.raw(), re_.raw(), x, MPFR_RNDN);
    int t2 = mpfr_div_si(r.im_.raw(), im_.raw(), x, MPFR_RNDN);
    BigFloat ax(RP);
    mpfr_set_si(ax.raw(), x < 0 ? -x : x, MPFR_RNDD);
    mpfr_div(r.rad_.raw(), rad_.raw(), ax.raw(), MPFR_RNDU);
    add_round_err(r.rad_, r.re_, t1);
    add_round_err(r.rad_, r.im_, t2);
    return r;
}

BallComplex BallComplex::mul_2si(long e) const {
    BallComplex r = *this;
    mpfr_mul_2si(r.re_.raw(), r.re_.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(r.im_.raw(), r.im_.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(r.rad_.raw(), r.rad_.raw(), e, MPFR_RNDU);
    return r;
}

BallComplex BallComplex::mul_i() const {
    BallComplex r = *this;
    mpfr_swap(r.re_.raw(), r.im_.raw());
    mpfr_neg(r.re_.raw(), r.re_.raw(), MPFR_RNDN);
    return r;
}

BallComplex BallComplex::exp() const {
    mpfr_prec_t p = prec();
    BallComplex r(p);
    BigFloat ex(p), s(p), c(p);
    mpfr_exp(ex.raw(), re_.raw(), MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), im_.raw(), MPFR_RNDN);
    mpfr_mul(r.re_.raw(), ex.raw(), c.raw(), MPFR_RNDN);
    mpfr_mul(r.im_.raw(), ex.raw(), s.raw(), MPFR_RNDN);
    // Midpoint rounding: two nearest-rounded stages per component, relative
    // error < 4*2^-p of the modulus e^(Re m).
    BigFloat reub(RP);
    mpfr_add(reub.raw(), re_.raw(), rad_.raw(), MPFR_RNDU);
    BigFloat mag(RP);
    mpfr_exp(mag.raw(), reub.raw(), MPFR_RNDU);
    BigFloat merr(RP);
    mpfr_mul_2si(merr.raw(), mag.raw(), 2 - static_cast<long>(p), MPFR_RNDU);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), merr.raw(), MPFR_RNDU);
    if (mpfr_zero_p(r.re_.raw()) && mpfr_zero_p(r.im_.raw())) {
        // exp underflowed the exponent range; cover |e^z| <= mag outright
        mpfr_add(r.rad_.raw(), r.rad_.raw(), mag.raw(), MPFR_RNDU);
    }
    // |e^z - e^m| <= e^(Re m + rad) * rad
    BigFloat du(RP);
    mpfr_mul(du.raw(), mag.raw(), rad_.raw(), MPFR_RNDU);
    mpfr_add(r.rad_.raw(), r.rad_.raw(), du.raw(), MPFR_RNDU);
    return r;
}

BallComplex BallComplex::pow_si(long e) const {
    mpfr_prec_t p = prec();
    if (e == 0) return from_si(1, 0, p);
    bool neg = e < 0;
    unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    BallComplex acc = from_si(1, 0, p);
    BallComplex base = *this;
    while (n) {
        if (n & 1ul) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    if (neg) return acc.inv();
    return acc;
}

std::string BallComplex::to_string() const {
    std::string im = im_.to_string();
    std::string s = "[" + re_.to_string();
    if (!im.empty() && im[0] == '-') s += im;
    else s += "+" + im;
    s += "i +/- " + rad_.to_string(3) + "]";
    return s;
}

} // namespace qe
