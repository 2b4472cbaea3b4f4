#pragma once

#include <gmpxx.h>

#include "qe/ball.hpp"
#include "qe/errors.hpp"

namespace qe {

enum class Cmp { Less, Greater, Equal, Unknown };

/// Signed magnitude stored at one of three nesting levels:
///   level 0: exact rational value,
///   level 1: certified ball for log|x|,
///   level 2: certified ball for log log|x|  (requires |x| > e).
///
/// This is the representation needed to manipulate doubly exponential
/// quantities such as q = 3^(3^324) and e^(-q^4) without materializing them.
class TowerMagnitude {
public:
    TowerMagnitude() : sign_(0), level_(0), exact_(0) {}

    static TowerMagnitude from_rational(const mpq_class &q);
    static TowerMagnitude from_si(long v) { return from_rational(mpq_class(v)); }
    /// sign * exp(log_abs)
    static TowerMagnitude from_log(int sign, const BallReal &log_abs);
    /// sign * exp(exp(loglog_abs)); requires the represented |x| > e,
    /// i.e. loglog_abs is the log of a quantity > 1.
    static TowerMagnitude from_loglog(int sign, const BallReal &loglog_abs);

    int sign() const { return sign_; }
    int level() const { return level_; }
    bool is_zero() const { return sign_ == 0; }
    const mpq_class &exact() const { return exact_; }
    /// Payload ball: log|x| at level 1, log log|x| at level 2.
    const BallReal &payload() const { return payload_; }

    /// Representation of the same value at a higher level.
    /// Throws PromotionUndefined when level 2 is requested but |x| > e cannot
    /// be certified, and InvalidInput when demotion is requested.
    TowerMagnitude promote(int level, mpfr_prec_t prec) const;

    TowerMagnitude negated() const;
    TowerMagnitude abs() const;

    std::string to_string() const;

    friend Cmp tower_compare(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec);
    friend TowerMagnitude tower_mul(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec);
    friend TowerMagnitude tower_div(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec);

private:
    int sign_;   // -1, 0, +1
    int level_;  // 0, 1, 2
    mpq_class exact_;   // level 0 payload (signed value)
    BallReal payload_;  // level 1: log|x|; level 2: log log|x|

    // Compares |a| and |b|, both nonzero.
    static Cmp compare_magnitudes(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec);
};

/// Certified three-way comparison. Less/Greater only when the certifying
/// balls separate; Equal only for identical exact level-0 values.
Cmp tower_compare(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec);

TowerMagnitude tower_mul(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec);
TowerMagnitude tower_div(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec);

} // namespace qe
