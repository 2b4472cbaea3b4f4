#pragma once

#include "qe/ball.hpp"
#include "qe/verdict.hpp"

namespace qe {

/// Point of the half-plane Re(s) >= 2 where the Dirichlet series converges
/// fast enough for elementary tail bounds.
struct ZetaDomainPoint {
    BallComplex s;

    explicit ZetaDomainPoint(const BallComplex &point) : s(point) {
        BigFloat lo = s.real().lower();
        if (!(lo.is_finite() && mpfr_cmp_si(lo.raw(), 2) >= 0))
            throw DomainError("Re(s) >= 2 required");
    }
};

/// Partial Dirichlet sum with the integral tail N^(1-sigma)/(sigma-1) folded
/// into the radius; the truncation point is chosen to push the tail below
/// 2^-(prec+2). Throws PrecisionUnreachable when that needs too many terms.
BallComplex zeta_r(const ZetaDomainPoint &s, mpfr_prec_t prec);

struct ZetaTailReport {
    BallComplex zeta;
    BallReal lhs; // |zeta(s) - 1|
    BallReal rhs; // 2^(1-sigma)
    Verdict verdict;
};

/// Certifies |zeta(s) - 1| < 2^(1-sigma) for sigma >= 3 (the form the
/// appendix argument actually uses). Throws DomainError when sigma < 3.
ZetaTailReport tail_inequality_check(const ZetaDomainPoint &s, mpfr_prec_t prec);

} // namespace qe
