#include "qe/riemann.hpp"

#include <cmath>

namespace qe {

namespace {

// Smallest N with N^(1-sigma)/(sigma-1) <= 2^-(prec+2).
unsigned long truncation_point(double sigma_lo, mpfr_prec_t prec) {
    double target_log2 = -(static_cast<double>(prec) + 2.0);
    double log2N = (target_log2 + std::log2(sigma_lo - 1.0)) / (1.0 - sigma_lo);
    if (log2N < 3.0) log2N = 3.0;
    if (log2N > 22.0) throw PrecisionUnreachable("Dirichlet tail cannot meet the requested precision");
    return static_cast<unsigned long>(std::ldexp(1.0, static_cast<int>(log2N) + 1));
}

} // namespace

BallComplex zeta_r(const ZetaDomainPoint &s, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 16;
    BallComplex sp = s.s.round_to(wp);
    double sigma_lo = sp.real().lower().to_double();
    unsigned long N = truncation_point(sigma_lo, prec);

    BallComplex sum = BallComplex::from_si(1, 0, wp);
    for (unsigned long n = 2; n <= N; ++n) {
        BallReal ln_n = BallReal::from_si(static_cast<long>(n), wp).log();
        sum = sum + (-(sp.mul_real(ln_n))).exp();
    }
    // tail <= N^(1-sigma)/(sigma-1)
    BigFloat tail(BallReal::radius_prec);
    {
        BigFloat sl = sp.real().lower();
        BigFloat one_m_sigma(BallReal::radius_prec), lognf(BallReal::radius_prec);
        mpfr_ui_sub(one_m_sigma.raw(), 1u, sl.raw(), MPFR_RNDU); // 1 - sigma (negative)
        mpfr_set_ui(lognf.raw(), N, MPFR_RNDD);
        mpfr_log(lognf.raw(), lognf.raw(), MPFR_RNDD);
        mpfr_mul(tail.raw(), one_m_sigma.raw(), lognf.raw(), MPFR_RNDU);
        mpfr_exp(tail.raw(), tail.raw(), MPFR_RNDU); // N^(1-sigma)
        BigFloat den(BallReal::radius_prec);
        mpfr_sub_ui(den.raw(), sl.raw(), 1u, MPFR_RNDD);
        mpfr_div(tail.raw(), tail.raw(), den.raw(), MPFR_RNDU);
    }
    return sum.widened(tail).round_to(prec);
}

ZetaTailReport tail_inequality_check(const ZetaDomainPoint &s, mpfr_prec_t prec) {
    BigFloat lo = s.s.real().lower();
    if (!(lo.is_finite() && mpfr_cmp_si(lo.raw(), 3) >= 0)) throw DomainError("sigma >= 3 required");

    ZetaTailReport rep;
    BallComplex one = BallComplex::from_si(1, 0, prec);
    // 2^(1-sigma), monotone in sigma: evaluate on endpoints.
    BallReal sigma = s.s.real();
    BallReal rhs = ((BallReal::from_si(1, prec) - sigma) * BallReal::from_si(2, prec).log()).exp();
    rep.rhs = rhs;
    for (mpfr_prec_t p = 8;; p *= 2) {
        rep.zeta = zeta_r(s, p);
        rep.lhs = (rep.zeta - one).abs();
        if (rep.lhs.certainly_less(rhs)) {
            rep.verdict = Verdict::Pass;
            return rep;
        }
        if (rhs.certainly_le(rep.lhs)) {
            rep.verdict = Verdict::Fail;
            return rep;
        }
        if (p >= prec) {
            rep.verdict = Verdict::Unknown;
            return rep;
        }
    }
}

} // namespace qe
