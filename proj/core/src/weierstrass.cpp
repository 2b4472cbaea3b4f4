#include "qe/weierstrass.hpp"

#include <algorithm>

namespace qe {

namespace detail {

namespace {
constexpr mpfr_prec_t RP = BallReal::radius_prec;
}

SeriesCore::SeriesCore(const BallComplex &g2, const BallComplex &g3, const BallReal &lambda_min,
                       const BallReal &abs4_sum, mpfr_prec_t work_prec)
    : wp_(work_prec),
      g2_(g2.round_to(work_prec)),
      lambda_(lambda_min),
      abs4_(abs4_sum) {
    // Terms to push the geometric tail (ratio <= 0.09 + slack) below 2^-(wp+16).
    std::size_t K = static_cast<std::size_t>((work_prec + 16) / 3.4) + 6;
    coeff_.reserve(K);
    coeff_.push_back(g2.round_to(wp_).div_si(20));
    coeff_.push_back(g3.round_to(wp_).div_si(28));
    for (std::size_t k = 3; k <= K; ++k) {
        BallComplex s(wp_);
        for (std::size_t j = 1; j + 1 < k; ++j) s = s + coeff_[j - 1] * coeff_[k - 2 - j];
        long den = static_cast<long>((2 * k + 3) * (k - 2));
        coeff_.push_back(s.mul_si(3).div_si(den));
    }
    BigFloat lo = lambda_.lower();
    if (!(lo.is_finite() && mpfr_sgn(lo.raw()) > 0))
        throw PrecisionUnreachable("lattice minimum not certifiably positive");
    halving_threshold_ = BigFloat(RP);
    mpfr_mul_d(halving_threshold_.raw(), lo.raw(), 0.3, MPFR_RNDD);
    safe_radius_ = lambda_.mul_si(3).div_si(10);
}

CoreValues SeriesCore::eval(const BallComplex &w, bool need_pole) const {
    BigFloat wub = w.abs_ub();
    if (!wub.is_finite()) throw PrecisionUnreachable("argument ball is unbounded");
    int j = 0;
    BigFloat t(RP);
    mpfr_set(t.raw(), wub.raw(), MPFR_RNDU);
    while (mpfr_cmp(t.raw(), halving_threshold_.raw()) > 0) {
        mpfr_mul_2si(t.raw(), t.raw(), -1, MPFR_RNDU);
        if (++j > 64) throw PrecisionUnreachable("argument too far from the origin");
    }
    BallComplex y = w.round_to(wp_).mul_2si(-j);
    CoreValues v = eval_series(y, need_pole || j > 0);
    for (int s = 0; s < j; ++s) v = duplicate(v, g2_);
    return v;
}

CoreValues SeriesCore::eval_series(const BallComplex &y, bool need_pole) const {
    if (need_pole && !y.certainly_nonzero()) throw PoleAtLatticePoint();

    const std::size_t K = coeff_.size();
    BallComplex y2 = y * y;
    BallComplex sumS(wp_), sumZ(wp_), sumP(wp_), sumQ(wp_);
    BallComplex epow = y2;      // y^(2k)
    BallComplex opow = y;       // y^(2k-1)
    for (std::size_t k = 1; k <= K; ++k) {
        const BallComplex &p = coeff_[k - 1];
        BallComplex te = p * epow;
        sumP = sumP + te;
        sumZ = sumZ + (te * y).div_si(static_cast<long>(2 * k + 1));
        sumS = sumS + (te * y2).div_si(static_cast<long>((2 * k + 1) * (2 * k + 2)));
        sumQ = sumQ + (p * opow).mul_si(static_cast<long>(2 * k));
        if (k < K) {
            epow = epow * y2;
            opow = opow * y2;
        }
    }

    // Analytic tails from |p_k| <= (2k+1) * abs4_sum * lambda^(2-2k), valid
    // for every k >= 1, with x = (|y|/lambda)^2 <= ~0.09 by construction.
    BigFloat yub = y.abs_ub();
    BigFloat lam_lo = lambda_.lower(), lam_hi = lambda_.upper();
    BigFloat x(RP);
    mpfr_div(x.raw(), yub.raw(), lam_lo.raw(), MPFR_RNDU);
    mpfr_sqr(x.raw(), x.raw(), MPFR_RNDU);
    if (mpfr_cmp_d(x.raw(), 0.25) >= 0) throw PrecisionUnreachable("series argument outside the safe disk");
    BigFloat one_mx(RP);
    mpfr_ui_sub(one_mx.raw(), 1u, x.raw(), MPFR_RNDD);
    BigFloat pref = abs4_.upper();
    {
        BigFloat l2(RP);
        mpfr_sqr(l2.raw(), lam_hi.raw(), MPFR_RNDU);
        mpfr_mul(pref.raw(), pref.raw(), l2.raw(), MPFR_RNDU);
    }
    BigFloat xK(RP);
    mpfr_pow_ui(xK.raw(), x.raw(), static_cast<unsigned long>(K), MPFR_RNDU);

    auto udiv = [](BigFloat &a, const BigFloat &b) { mpfr_div(a.raw(), a.raw(), b.raw(), MPFR_RNDU); };

    // wp tail: pref * x^K * ((2K+1)/(1-x) + 2x/(1-x)^2)
    BigFloat tP(RP), tmp(RP);
    mpfr_set_ui(tP.raw(), static_cast<unsigned long>(2 * K + 1), MPFR_RNDU);
    udiv(tP, one_mx);
    mpfr_mul_2si(tmp.raw(), x.raw(), 1, MPFR_RNDU);
    udiv(tmp, one_mx);
    udiv(tmp, one_mx);
    mpfr_add(tP.raw(), tP.raw(), tmp.raw(), MPFR_RNDU);
    mpfr_mul(tP.raw(), tP.raw(), xK.raw(), MPFR_RNDU);
    mpfr_mul(tP.raw(), tP.raw(), pref.raw(), MPFR_RNDU);

    // zeta tail: pref * |y| * x^K / (1-x)
    BigFloat tZ(RP);
    mpfr_mul(tZ.raw(), pref.raw(), yub.raw(), MPFR_RNDU);
    mpfr_mul(tZ.raw(), tZ.raw(), xK.raw(), MPFR_RNDU);
    udiv(tZ, one_mx);

    // sigma-log tail: pref * |y|^2 * x^K / ((2K+1)(2K+2)(1-x))
    BigFloat tS(RP);
    mpfr_sqr(tS.raw(), yub.raw(), MPFR_RNDU);
    mpfr_mul(tS.raw(), tS.raw(), pref.raw(), MPFR_RNDU);
    mpfr_mul(tS.raw(), tS.raw(), xK.raw(), MPFR_RNDU);
    mpfr_div_ui(tS.raw(), tS.raw(), static_cast<unsigned long>((2 * K + 1) * (2 * K + 2)), MPFR_RNDU);
    udiv(tS, one_mx);

    CoreValues out;
    // sigma = y * exp(-sum_k p_k y^(2k+2)/((2k+1)(2k+2)))
    BallComplex S = (-sumS).widened(tS);
    out.sigma = y * S.exp();

    if (need_pole) {
        // wp' tail: (pref/|y|) * x^K * (2K+1)(2K+2)(1+x)/(1-x)^3
        BigFloat ylb = y.abs_lb();
        BigFloat tQ(RP);
        mpfr_set_ui(tQ.raw(), static_cast<unsigned long>((2 * K + 1) * (2 * K + 2)), MPFR_RNDU);
        mpfr_add_ui(tmp.raw(), x.raw(), 1u, MPFR_RNDU);
        mpfr_mul(tQ.raw(), tQ.raw(), tmp.raw(), MPFR_RNDU);
        udiv(tQ, one_mx);
        udiv(tQ, one_mx);
        udiv(tQ, one_mx);
        mpfr_mul(tQ.raw(), tQ.raw(), xK.raw(), MPFR_RNDU);
        mpfr_mul(tQ.raw(), tQ.raw(), pref.raw(), MPFR_RNDU);
        udiv(tQ, ylb);

        BallComplex invy = y.inv();
        BallComplex invy2 = invy * invy;
        out.zeta = invy - sumZ.widened(tZ);
        out.wp = invy2 + sumP.widened(tP);
        out.wp_prime = -(invy2 * invy).mul_si(2) + sumQ.widened(tQ);
    } else {
        out.zeta = BallComplex(wp_);
        out.wp = BallComplex(wp_);
        out.wp_prime = BallComplex(wp_);
    }
    return out;
}

CoreValues SeriesCore::duplicate(const CoreValues &v, const BallComplex &g2) {
    if (!v.wp_prime.certainly_nonzero())
        throw PrecisionUnreachable("duplication step hit a zero of wp'");
    BallComplex A = v.wp.pow_si(2).mul_si(6) - g2.mul_2si(-1); // wp''
    BallComplex h = A / v.wp_prime.mul_si(2);
    CoreValues out;
    out.wp = h * h - v.wp.mul_si(2);
    out.zeta = v.zeta.mul_si(2) + h;
    out.sigma = -(v.sigma.pow_si(4) * v.wp_prime);
    BallComplex num = v.wp * v.wp_prime.pow_si(2).mul_si(12) - A.pow_si(2);
    out.wp_prime = -v.wp_prime + (A * num) / v.wp_prime.pow_si(3).mul_si(4);
    return out;
}

} // namespace detail

WeierstrassContext::WeierstrassContext(const Lattice &lat, mpfr_prec_t prec)
    : lat_(lat),
      prec_(prec == 0 ? lat.prec() : std::min(prec, lat.prec())),
      core_(lat.g2(), lat.g3(), lat.lambda_min(), lat.abs4_sum(), prec_ + 64) {}

WeierstrassContext::Recentered WeierstrassContext::recenter(const BallComplex &z) const {
    const BallComplex &r1 = lat_.red_omega1();
    const BallComplex &r2 = lat_.red_omega2();
    BallComplex zz = z.round_to(core_.work_prec());
    BallReal d = (r1 * r2.conj()).imag();
    BallReal x = (zz * r2.conj()).imag() / d;
    BallReal y = (zz * r1.conj()).imag() / -d;
    auto round_mid = [](const BallReal &v) {
        if (!v.is_finite()) throw PrecisionUnreachable("cannot locate the argument in the lattice");
        mpfr_t t;
        mpfr_init2(t, 64);
        mpfr_round(t, v.mid().raw());
        if (!mpfr_fits_slong_p(t, MPFR_RNDN)) {
            mpfr_clear(t);
            throw PrecisionUnreachable("argument too far from the origin");
        }
        long r = mpfr_get_si(t, MPFR_RNDN);
        mpfr_clear(t);
        return r;
    };
    long a = round_mid(x), b = round_mid(y);
    BallComplex z0 = zz - r1.mul_si(a) - r2.mul_si(b);
    Recentered best;
    bool first = true;
    BigFloat best_ub;
    for (long c1 = -1; c1 <= 2; ++c1) {
        for (long c2 = -1; c2 <= 2; ++c2) {
            BallComplex w = z0 - r1.mul_si(c1) - r2.mul_si(c2);
            BigFloat ub = w.abs_ub();
            if (first || mpfr_cmp(ub.raw(), best_ub.raw()) < 0) {
                best.w = w;
                best.m = a + c1;
                best.n = b + c2;
                best_ub = ub;
                first = false;
            }
        }
    }
    return best;
}

detail::CoreValues WeierstrassContext::eval_raw(const BallComplex &z, bool need_pole, Recentered *rec) const {
    Recentered r = recenter(z);
    if (rec) *rec = r;
    return core_.eval(r.w, need_pole);
}

BallComplex WeierstrassContext::sigma(const BallComplex &z) const {
    Recentered rec;
    detail::CoreValues v = eval_raw(z, false, &rec);
    if (rec.m == 0 && rec.n == 0) return v.sigma.round_to(prec_);
    BallComplex omega = lat_.red_omega1().mul_si(rec.m) + lat_.red_omega2().mul_si(rec.n);
    BallComplex eta = lat_.red_eta1().mul_si(rec.m) + lat_.red_eta2().mul_si(rec.n);
    BallComplex factor = (eta * (rec.w + omega.mul_2si(-1))).exp();
    BallComplex s = v.sigma * factor;
    if (Lattice::epsilon(rec.m, rec.n) < 0) s = -s;
    return s.round_to(prec_);
}

BallComplex WeierstrassContext::zeta(const BallComplex &z) const {
    Recentered rec;
    detail::CoreValues v = eval_raw(z, true, &rec);
    BallComplex eta = lat_.red_eta1().mul_si(rec.m) + lat_.red_eta2().mul_si(rec.n);
    return (v.zeta + eta).round_to(prec_);
}

BallComplex WeierstrassContext::wp(const BallComplex &z) const {
    return eval_raw(z, true, nullptr).wp.round_to(prec_);
}

BallComplex WeierstrassContext::wp_prime(const BallComplex &z) const {
    return eval_raw(z, true, nullptr).wp_prime.round_to(prec_);
}

WeierstrassContext::Values WeierstrassContext::eval_all(const BallComplex &z) const {
    Recentered rec;
    detail::CoreValues v = eval_raw(z, true, &rec);
    BallComplex omega = lat_.red_omega1().mul_si(rec.m) + lat_.red_omega2().mul_si(rec.n);
    BallComplex eta = lat_.red_eta1().mul_si(rec.m) + lat_.red_eta2().mul_si(rec.n);
    Values out;
    out.zeta = (v.zeta + eta).round_to(prec_);
    out.wp = v.wp.round_to(prec_);
    out.wp_prime = v.wp_prime.round_to(prec_);
    if (rec.m == 0 && rec.n == 0) {
        out.sigma = v.sigma.round_to(prec_);
    } else {
        BallComplex factor = (eta * (rec.w + omega.mul_2si(-1))).exp();
        BallComplex s = v.sigma * factor;
        if (Lattice::epsilon(rec.m, rec.n) < 0) s = -s;
        out.sigma = s.round_to(prec_);
    }
    return out;
}

} // namespace qe
