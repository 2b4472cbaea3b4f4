#include "qe/tower.hpp"

#include <algorithm>

namespace qe {

namespace {

// exp of a payload ball on endpoints; may return an infinite/NaN ball when the
// value overflows the float exponent range. Callers must check finiteness.
BallReal exp_ball(const BallReal &x, mpfr_prec_t prec) {
    return x.round_to(prec).exp();
}

int sign_of(const mpq_class &q) { return sgn(q); }

} // namespace

TowerMagnitude TowerMagnitude::from_rational(const mpq_class &q) {
    TowerMagnitude t;
    t.sign_ = sign_of(q);
    t.level_ = 0;
    t.exact_ = q;
    return t;
}

TowerMagnitude TowerMagnitude::from_log(int sign, const BallReal &log_abs) {
    if (sign == 0) return TowerMagnitude();
    TowerMagnitude t;
    t.sign_ = sign > 0 ? 1 : -1;
    t.level_ = 1;
    t.payload_ = log_abs;
    return t;
}

TowerMagnitude TowerMagnitude::from_loglog(int sign, const BallReal &loglog_abs) {
    if (sign == 0) return TowerMagnitude();
    TowerMagnitude t;
    t.sign_ = sign > 0 ? 1 : -1;
    t.level_ = 2;
    t.payload_ = loglog_abs;
    return t;
}

TowerMagnitude TowerMagnitude::promote(int level, mpfr_prec_t prec) const {
    if (level < level_) throw InvalidInput("tower demotion requested");
    if (level > 2) throw InvalidInput("tower level out of range");
    if (level == level_ || sign_ == 0) {
        TowerMagnitude t = *this;
        t.level_ = level;
        return t;
    }
    TowerMagnitude t = *this;
    if (t.level_ == 0) {
        mpq_class a = ::abs(t.exact_);
        t.payload_ = BallReal::from_mpq(a, prec).log();
        t.level_ = 1;
        t.exact_ = 0;
    }
    if (level == 2 && t.level_ == 1) {
        // |x| > e must be certified before taking the second log.
        BigFloat lo = t.payload_.lower();
        if (!(lo.is_finite() && lo.cmp_si(1) > 0))
            throw PromotionUndefined("level 2 requires |x| > e certifiably");
        t.payload_ = t.payload_.round_to(prec).log();
        t.level_ = 2;
    }
    return t;
}

TowerMagnitude TowerMagnitude::negated() const {
    TowerMagnitude t = *this;
    t.sign_ = -t.sign_;
    if (t.level_ == 0) t.exact_ = -t.exact_;
    return t;
}

TowerMagnitude TowerMagnitude::abs() const {
    TowerMagnitude t = *this;
    if (t.sign_ < 0) return t.negated();
    return t;
}

std::string TowerMagnitude::to_string() const {
    std::string s = sign_ < 0 ? "-" : (sign_ == 0 ? "0" : "+");
    if (sign_ == 0) return "0";
    switch (level_) {
        case 0: return s + exact_.get_str();
        case 1: return s + "exp(" + payload_.to_string() + ")";
        default: return s + "exp(exp(" + payload_.to_string() + "))";
    }
}

Cmp TowerMagnitude::compare_magnitudes(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec) {
    if (a.level_ == 0 && b.level_ == 0) {
        mpq_class aa = ::abs(a.exact_), ab = ::abs(b.exact_);
        int c = cmp(aa, ab);
        return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
    }
    TowerMagnitude x = a.level_ == 0 ? a.promote(1, prec) : a;
    TowerMagnitude y = b.level_ == 0 ? b.promote(1, prec) : b;
    if (x.level_ == y.level_) {
        const BallReal &px = x.payload_, &py = y.payload_;
        if (px.certainly_less(py)) return Cmp::Less;
        if (py.certainly_less(px)) return Cmp::Greater;
        return Cmp::Unknown;
    }
    if (x.level_ > y.level_) {
        Cmp c = compare_magnitudes(b, a, prec);
        if (c == Cmp::Less) return Cmp::Greater;
        if (c == Cmp::Greater) return Cmp::Less;
        return c;
    }
    // x at level 1, y at level 2: log|y| = exp(payload_y).
    BallReal log_y = exp_ball(y.payload_, prec);
    if (log_y.is_finite()) {
        if (x.payload_.certainly_less(log_y)) return Cmp::Less;
        if (log_y.certainly_less(x.payload_)) return Cmp::Greater;
        return Cmp::Unknown;
    }
    // log|y| overflows the exponent range, so it exceeds any finite payload.
    BigFloat hix = x.payload_.upper();
    if (hix.is_finite()) return Cmp::Less;
    return Cmp::Unknown;
}

Cmp tower_compare(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec) {
    if (a.sign_ == 0 && b.sign_ == 0) return Cmp::Equal;
    if (a.sign_ < b.sign_) return Cmp::Less;
    if (a.sign_ > b.sign_) return Cmp::Greater;
    Cmp mag = TowerMagnitude::compare_magnitudes(a, b, prec);
    if (a.sign_ > 0) return mag;
    if (mag == Cmp::Less) return Cmp::Greater;
    if (mag == Cmp::Greater) return Cmp::Less;
    return mag;
}

TowerMagnitude tower_mul(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec) {
    if (a.sign_ == 0 || b.sign_ == 0) return TowerMagnitude();
    int sign = a.sign_ * b.sign_;
    if (a.level_ == 0 && b.level_ == 0) {
        mpq_class p = a.exact_ * b.exact_;
        return TowerMagnitude::from_rational(p);
    }
    TowerMagnitude x = a.level_ == 0 ? a.promote(1, prec) : a;
    TowerMagnitude y = b.level_ == 0 ? b.promote(1, prec) : b;
    if (x.level_ < y.level_) std::swap(x, y);
    if (x.level_ == 1) {
        return TowerMagnitude::from_log(sign, x.payload_.round_to(prec) + y.payload_.round_to(prec));
    }
    // x at level 2. log|xy| = exp(Mx) + log|y|.
    BallReal log_y = y.level_ == 2 ? exp_ball(y.payload_, prec) : y.payload_.round_to(prec);
    if (y.level_ == 2 && !log_y.is_finite()) {
        // Both factors astronomically large: use the symmetric level-2 form
        // M = Mx + log1p(exp(My - Mx)) with Mx the larger payload.
        BallReal mx = x.payload_.round_to(prec), my = y.payload_.round_to(prec);
        if (my.mid() > mx.mid()) std::swap(mx, my);
        BallReal t = (my - mx).exp();
        if (!t.is_finite()) throw PrecisionUnreachable("level-2 product not certifiable");
        return TowerMagnitude::from_loglog(sign, mx + t.log1p());
    }
    // exp(-Mx) underflows harmlessly to a [0, tiny] enclosure.
    BallReal t = ((-x.payload_).round_to(prec)).exp() * log_y;
    return TowerMagnitude::from_loglog(sign, x.payload_.round_to(prec) + t.log1p());
}

TowerMagnitude tower_div(const TowerMagnitude &a, const TowerMagnitude &b, mpfr_prec_t prec) {
    if (b.sign_ == 0) throw DivisionByZero("tower division by zero");
    if (a.sign_ == 0) return TowerMagnitude();
    int sign = a.sign_ * b.sign_;
    if (a.level_ == 0 && b.level_ == 0) {
        mpq_class q = a.exact_ / b.exact_;
        return TowerMagnitude::from_rational(q);
    }
    TowerMagnitude x = a.level_ == 0 ? a.promote(1, prec) : a;
    TowerMagnitude y = b.level_ == 0 ? b.promote(1, prec) : b;
    if (x.level_ == 1 && y.level_ == 1)
        return TowerMagnitude::from_log(sign, x.payload_.round_to(prec) - y.payload_.round_to(prec));
    if (x.level_ == 2 && y.level_ == 1) {
        BallReal t = ((-x.payload_).round_to(prec)).exp() * y.payload_.round_to(prec);
        return TowerMagnitude::from_loglog(sign, x.payload_.round_to(prec) + (-t).log1p());
    }
    // Divisor at level 2: the quotient is representable only if log of the
    // divisor fits the level-1 range, or the dividend dominates at level 2.
    BallReal log_y = exp_ball(y.payload_, prec);
    if (x.level_ == 2) {
        BallReal mx = x.payload_.round_to(prec), my = y.payload_.round_to(prec);
        if (my.certainly_less(mx)) {
            BallReal t = (my - mx).exp();
            return TowerMagnitude::from_loglog(sign, mx + (-t).log1p());
        }
        BallReal log_x = exp_ball(x.payload_, prec);
        if (log_x.is_finite() && log_y.is_finite())
            return TowerMagnitude::from_log(sign, log_x - log_y);
        throw PrecisionUnreachable("level-2 quotient not representable");
    }
    if (!log_y.is_finite())
        throw PrecisionUnreachable("quotient magnitude below level-1 range");
    return TowerMagnitude::from_log(sign, x.payload_.round_to(prec) - log_y);
}

} // namespace qe
