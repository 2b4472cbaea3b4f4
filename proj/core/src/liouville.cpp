#include "qe/liouville.hpp"

#include <algorithm>

#include "qe/rational.hpp"

namespace qe {

// ---------------------------------------------------------------------------
// TowerInt
// ---------------------------------------------------------------------------

TowerInt TowerInt::literal(const mpz_class &v) {
    TowerInt t;
    t.is_power_ = false;
    t.literal_ = v;
    return t;
}

TowerInt TowerInt::power_of_3(const mpz_class &exponent) {
    if (exponent < 0) throw InvalidInput("negative exponent");
    TowerInt t;
    t.is_power_ = true;
    t.exponent_ = exponent;
    return t;
}

const mpz_class &TowerInt::exponent() const {
    if (!is_power_) throw InvalidInput("literal TowerInt has no exponent");
    return exponent_;
}

mpz_class TowerInt::to_mpz() const {
    if (!is_power_) return literal_;
    if (exponent_ > 1048576) throw DepthUnrepresentable("3^e too large to materialize");
    return pow_z(3, exponent_.get_ui());
}

BallReal TowerInt::log(mpfr_prec_t prec) const {
    if (!is_power_) {
        if (literal_ <= 0) throw DomainError("log of nonpositive integer");
        return BallReal::from_mpz(literal_, prec).log();
    }
    return BallReal::from_mpz(exponent_, prec) * BallReal::from_si(3, prec).log();
}

TowerMagnitude TowerInt::magnitude(mpfr_prec_t prec) const {
    if (!is_power_) return TowerMagnitude::from_rational(mpq_class(literal_));
    if (exponent_ == 0) return TowerMagnitude::from_si(1);
    return TowerMagnitude::from_log(1, log(prec));
}

std::string TowerInt::to_string() const {
    if (!is_power_) return literal_.get_str();
    return "3^" + exponent_.get_str();
}

TowerInt qk_sequence(int k) {
    switch (k) {
        case 0: return TowerInt::literal(1);
        case 1: return TowerInt::power_of_3(1);
        case 2: return TowerInt::power_of_3(81);
        case 3: return TowerInt::power_of_3(pow_z(3, 324)); // q_2^4 = (3^81)^4
        default: break;
    }
    if (k < 0) throw InvalidInput("negative index");
    throw DepthUnrepresentable("q_k exponent no longer exactly representable for k >= 4");
}

// ---------------------------------------------------------------------------
// tuple construction
// ---------------------------------------------------------------------------

namespace {

// (4(l-1))^(n-i) with the 0^0 = 1 convention at l = 1.
mpz_class weight_coeff(int l, int e) {
    if (e == 0) return 1;
    if (l == 1) return 0;
    return pow_z(mpz_class(4 * (l - 1)), static_cast<unsigned long>(e));
}

} // namespace

LiouvilleTuple build_tuple(int n, const std::vector<std::vector<int>> &signs, int depth) {
    if (n < 1 || depth < 2) throw InvalidShape("need n >= 1 and depth >= 2");
    if (signs.size() != static_cast<std::size_t>(n)) throw InvalidShape("sign matrix must have n rows");
    for (const auto &row : signs) {
        if (row.size() != static_cast<std::size_t>(depth)) throw InvalidShape("sign row must have depth entries");
        for (int s : row)
            if (s != 1 && s != -1) throw InvalidShape("signs must be +-1");
    }
    LiouvilleTuple t;
    t.n = n;
    t.depth = depth;
    t.signs = signs;
    mpz_class q1 = qk_sequence(1).to_mpz();
    mpz_class q2 = qk_sequence(2).to_mpz();
    for (int i = 1; i <= n; ++i) {
        int e = n - i;
        mpq_class s1 = mpq_class(t.sign(i, 1) * weight_coeff(1, e)) / q1;
        mpq_class s2 = s1 + mpq_class(t.sign(i, 2) * weight_coeff(2, e)) / q2;
        t.s1.push_back(s1);
        t.s2.push_back(s2);
        mpq_class p1q = s1 * q1, p2q = s2 * q2;
        if (p1q.get_den() != 1 || p2q.get_den() != 1)
            throw InvalidShape("partial sums failed the integrality invariant");
        t.p1.push_back(p1q.get_num());
        t.p2.push_back(p2q.get_num());
    }
    return t;
}

// ---------------------------------------------------------------------------
// certified distances
// ---------------------------------------------------------------------------

namespace {

// log(2 (4m)^e / q_{m+1}): certified bound for the tail sum_{l > m} of
// (4(l-1))^e / q_l. The geometric domination uses q_l >= q_{m+1}^(l-m)
// (valid since q_{l+1} = 3^(q_l^4) >= q_l * q_{m+1}: log_3 q_l + log_3 q_{m+1}
// <= 2 q_l <= q_l^4 for q_l >= 2) and (4(l-1))^e <= (4m)^e 2^(e(l-m-1)),
// and needs q_{m+1} >= 2^(e+1), certified by the caller.
BallReal log_tail_bound(int m, int e, mpfr_prec_t prec) {
    BallReal ln2 = BallReal::from_si(2, prec).log();
    BallReal lq = qk_sequence(m + 1).log(prec);
    BallReal lw = BallReal::from_mpz(mpz_class(4 * m), prec).log().mul_si(e);
    return ln2 + lw - lq;
}

// Certifies q_{m+1} >= 2^(e+1) (the geometric-ratio condition).
void certify_ratio(int m, int e, mpfr_prec_t prec) {
    if (m + 1 <= 3) {
        BallReal lq = qk_sequence(m + 1).log(prec);
        BallReal need = BallReal::from_si(2, prec).log().mul_si(e + 1);
        if (!need.certainly_less(lq)) throw PrecisionUnreachable("tail ratio condition not certified");
        return;
    }
    // m + 1 == 4: compare through one more log level.
    // log q_4 = q_3^4 ln 3, so log log q_4 = 4 log q_3 + log ln 3, and
    // log q_4 > e+1 > (e+1) ln 2 suffices.
    BallReal ln3 = BallReal::from_si(3, prec).log();
    BallReal loglog_q4 = qk_sequence(3).log(prec).mul_si(4) + ln3.log();
    TowerMagnitude lq4 = TowerMagnitude::from_log(1, loglog_q4); // the magnitude log(q_4)
    TowerMagnitude rhs = TowerMagnitude::from_rational(mpq_class(e + 1));
    if (tower_compare(lq4, rhs, prec) != Cmp::Greater)
        throw PrecisionUnreachable("tail ratio condition not certified at depth 4");
}

// Certified upper bound for tau/d expressed through log q_4 when the tail
// denominator is q_4; returns log1p-ready delta as a ball in [0, bound].
BallReal delta_from_q4(const BallReal &log_d_minus_extras, mpfr_prec_t prec) {
    // Caller provides R = log(2 (4m)^e q_k) - log d + 64 ln 2 and we certify
    // log q_4 >= R, giving tau/d <= 2^-64.
    BallReal ln3 = BallReal::from_si(3, prec).log();
    BallReal loglog_q4 = qk_sequence(3).log(prec).mul_si(4) + ln3.log();
    TowerMagnitude lq4 = TowerMagnitude::from_log(1, loglog_q4);
    const BallReal &R = log_d_minus_extras;
    TowerMagnitude rmag;
    if (R.certainly_positive()) {
        rmag = TowerMagnitude::from_log(1, R.log());
    } else {
        // R <= 0 < log q_4 trivially certified.
        rmag = TowerMagnitude::from_si(0);
    }
    if (!(rmag.is_zero() || tower_compare(lq4, rmag, prec) == Cmp::Greater))
        throw PrecisionUnreachable("q_4 tail certification failed");
    BigFloat hi(BallReal::radius_prec);
    mpfr_set_ui_2exp(hi.raw(), 1u, -64, MPFR_RNDU);
    BigFloat lo(BallReal::radius_prec);
    mpfr_set_zero(lo.raw(), 1);
    return BallReal::from_endpoints(lo, hi, prec);
}

struct LogInterval {
    BallReal lo, hi;
};

// Endpoints of log(d (1 +- delta)) for a positive dominant magnitude with
// log-ball log_d and a certified delta enclosure in [0, 1).
LogInterval widen_log(const BallReal &log_d, const BallReal &delta) {
    LogInterval out;
    out.hi = log_d + delta.log1p();
    out.lo = log_d + (-delta).log1p();
    return out;
}

} // namespace

DistanceInterval nearest_int_distance(const LiouvilleTuple &t, int k, int i, mpfr_prec_t prec) {
    if (i < 1 || i > t.n) throw InvalidShape("component index out of range");
    if (k < 0 || k > 2 || k > t.depth - 1) throw DepthExceeded();
    // Depth 2 manipulates log q_3 = 3^324 ln 3; the exponent alone takes 514
    // bits, and the sandwich comparisons resolve O(1) margins on top of it.
    if (k == 2 && prec < 520 + 64) prec = 520 + 64;
    int e = t.n - i;
    DistanceInterval out;

    if (k == 0) {
        // ||x_i||: exact S_2 plus the tail after l = 2.
        certify_ratio(2, e, prec);
        BallReal log_tail = log_tail_bound(2, e, prec);
        mpq_class s2 = abs(t.s2[static_cast<std::size_t>(i - 1)]);
        if (s2 == 0) throw PrecisionUnreachable("vanishing partial sum at k = 0");
        BallReal log_s2 = BallReal::from_mpq(s2, prec).log();
        BallReal delta = (log_tail - log_s2).exp(); // tail/|S_2|, certified upper
        auto iv = widen_log(log_s2, delta);
        out.log_lo = iv.lo;
        out.log_hi = iv.hi;
        // nearest integer is 0 iff |x_i| < 1/2
        BallReal log_half = -BallReal::from_si(2, prec).log();
        out.is_nearest = out.log_hi.certainly_less(log_half) ? Verdict::Pass : Verdict::Unknown;
        if (e == 0) {
            // dominant term is 1/3; sandwich [d/2, 2d]
            BallReal log_d = -BallReal::from_si(3, prec).log();
            BallReal ln2 = BallReal::from_si(2, prec).log();
            bool ok = (log_d - ln2).certainly_le(out.log_lo) && out.log_hi.certainly_le(log_d + ln2);
            out.sandwich = ok ? Verdict::Pass : Verdict::Unknown;
        } else {
            out.sandwich = Verdict::Unknown; // dominant weight (4*0)^e vanishes
        }
        return out;
    }

    // k in {1, 2}: dominant eps_{k+1} (4k)^e q_k / q_{k+1}, sub-tail after l = k+1.
    BallReal log_qk = qk_sequence(k).log(prec);
    BallReal log_qk1 = qk_sequence(k + 1).log(prec);
    BallReal log_d = BallReal::from_mpz(weight_coeff(k + 1, e), prec).log() + log_qk - log_qk1;

    certify_ratio(k + 1, e, prec);
    BallReal delta(prec);
    if (k + 2 <= 3) {
        BallReal log_tau = log_tail_bound(k + 1, e, prec) + log_qk;
        delta = (log_tau - log_d).exp();
    } else {
        // tau = 2 (4(k+1))^e q_k / q_4; certify tau/d <= 2^-64 through log q_4.
        BallReal ln2 = BallReal::from_si(2, prec).log();
        BallReal lw = BallReal::from_mpz(mpz_class(4 * (k + 1)), prec).log().mul_si(e);
        BallReal R = ln2 + lw + log_qk - log_d + ln2.mul_si(64);
        delta = delta_from_q4(R, prec);
    }
    auto iv = widen_log(log_d, delta);
    out.log_lo = iv.lo;
    out.log_hi = iv.hi;

    BallReal ln2 = BallReal::from_si(2, prec).log();
    out.is_nearest = out.log_hi.certainly_less(-ln2) ? Verdict::Pass : Verdict::Unknown;
    bool sandwich_ok = (log_d - ln2).certainly_le(out.log_lo) && out.log_hi.certainly_le(log_d + ln2);
    out.sandwich = sandwich_ok ? Verdict::Pass : Verdict::Unknown;
    return out;
}

// ---------------------------------------------------------------------------
// chain verification
// ---------------------------------------------------------------------------

ChainRecord verify_chain(const LiouvilleTuple &t, int k, mpfr_prec_t prec) {
    if (k < 1 || k > 2) throw DepthExceeded("chain verification supports k in {1, 2}");
    if (t.depth < k + 1) throw DepthExceeded("sign depth too small for this k");
    if (k == 2 && prec < 520 + 64) prec = 520 + 64;

    ChainRecord rec;
    rec.k = k;
    rec.qk = qk_sequence(k);
    rec.pk = k == 1 ? t.p1 : t.p2;
    for (int i = 1; i <= t.n; ++i) rec.distances.push_back(nearest_int_distance(t, k, i, prec));

    BallReal ln_k = BallReal::from_si(k, prec).log(); // 0 for k = 1
    auto weighted_hi = [&](int i) { return rec.distances[static_cast<std::size_t>(i - 1)].log_hi + ln_k.mul_si(i - 1); };
    auto weighted_lo = [&](int i) { return rec.distances[static_cast<std::size_t>(i - 1)].log_lo + ln_k.mul_si(i - 1); };

    bool all_pass = true;

    {
        InequalityRecord pos;
        pos.lhs = "0";
        pos.rhs = "k^(n-1) ||q_k x_n||";
        pos.verdict = rec.distances.back().log_lo.is_finite() ? Verdict::Pass : Verdict::Unknown;
        pos.log_margin = weighted_lo(t.n);
        all_pass = all_pass && pos.verdict == Verdict::Pass;
        rec.inequalities.push_back(pos);
    }
    for (int i = t.n; i >= 2; --i) {
        InequalityRecord step;
        step.lhs = "k^" + std::to_string(i - 1) + " ||q_k x_" + std::to_string(i) + "||";
        step.rhs = "k^" + std::to_string(i - 2) + " ||q_k x_" + std::to_string(i - 1) + "||";
        BallReal lhs_hi = weighted_hi(i), rhs_lo = weighted_lo(i - 1);
        step.log_margin = rhs_lo - lhs_hi;
        if (lhs_hi.certainly_le(rhs_lo)) step.verdict = Verdict::Pass;
        else if (rhs_lo.certainly_less(lhs_hi)) step.verdict = Verdict::Fail;
        else step.verdict = Verdict::Unknown;
        all_pass = all_pass && step.verdict == Verdict::Pass;
        rec.inequalities.push_back(step);
    }
    {
        // strict ||q_k x_1|| < e^(-q_k^4)
        InequalityRecord psi;
        psi.lhs = "||q_k x_1||";
        psi.rhs = "exp(-q_k^4)";
        mpz_class q4 = k == 1 ? mpz_class(81) : pow_z(3, 324);
        BallReal log_psi = -BallReal::from_mpz(q4, prec);
        BallReal lhs_hi = rec.distances.front().log_hi;
        psi.log_margin = log_psi - lhs_hi;
        if (lhs_hi.certainly_less(log_psi)) psi.verdict = Verdict::Pass;
        else if (log_psi.certainly_le(lhs_hi)) psi.verdict = Verdict::Fail;
        else psi.verdict = Verdict::Unknown;
        all_pass = all_pass && psi.verdict == Verdict::Pass;
        rec.inequalities.push_back(psi);
    }
    rec.overall = all_pass ? Verdict::Pass : Verdict::Unknown;
    for (const auto &iq : rec.inequalities)
        if (iq.verdict == Verdict::Fail) rec.overall = Verdict::Fail;
    return rec;
}

LiouvilleCertificate make_certificate(const LiouvilleTuple &t, int kmax, mpfr_prec_t prec) {
    if (kmax < 1 || kmax > 2) throw DepthExceeded("kmax must be 1 or 2");
    LiouvilleCertificate cert;
    cert.n = t.n;
    cert.depth = t.depth;
    for (int i = 1; i <= t.n; ++i)
        for (int l = 1; l <= t.depth; ++l) cert.signs_row_major += t.sign(i, l) > 0 ? '+' : '-';
    cert.all_pass = true;
    for (int k = 1; k <= kmax; ++k) {
        cert.records.push_back(verify_chain(t, k, prec));
        cert.all_pass = cert.all_pass && cert.records.back().overall == Verdict::Pass;
    }
    return cert;
}

DurandRecord verify_durand(const std::vector<BallReal> &x, long q, long k, mpfr_prec_t prec) {
    if (q < 1 || k < 1) throw InvalidInput("need q >= 1 and k >= 1");
    if (x.empty()) throw InvalidShape("need at least one component");
    const int n = static_cast<int>(x.size());
    DurandRecord rec;

    // ||q x_i|| as certified balls
    std::vector<BallReal> dist;
    for (const auto &xi : x) {
        BallReal qx = xi.mul_si(q);
        if (!qx.is_finite()) throw InvalidInput("unbounded enclosure");
        mpfr_t r;
        mpfr_init2(r, 64);
        mpfr_round(r, qx.mid().raw());
        long m = mpfr_get_si(r, MPFR_RNDN);
        mpfr_clear(r);
        dist.push_back((qx.add_si(-m)).abs());
    }

    bool all_pass = true;
    auto weight = [&](int i) { // k^(i-1) as a ball
        return BallReal::from_mpz(pow_z(mpz_class(k), static_cast<unsigned long>(i - 1)), prec);
    };
    {
        InequalityRecord pos;
        pos.lhs = "0";
        pos.rhs = "k^(n-1) ||q x_n||";
        pos.verdict = dist.back().certainly_positive() ? Verdict::Pass : Verdict::Fail;
        all_pass = all_pass && pos.verdict == Verdict::Pass;
        rec.inequalities.push_back(pos);
    }
    for (int i = n; i >= 2; --i) {
        InequalityRecord step;
        step.lhs = "k^" + std::to_string(i - 1) + " ||q x_" + std::to_string(i) + "||";
        step.rhs = "k^" + std::to_string(i - 2) + " ||q x_" + std::to_string(i - 1) + "||";
        BallReal lhs = dist[static_cast<std::size_t>(i - 1)] * weight(i);
        BallReal rhs = dist[static_cast<std::size_t>(i - 2)] * weight(i - 1);
        if (lhs.certainly_le(rhs)) step.verdict = Verdict::Pass;
        else if (rhs.certainly_less(lhs)) step.verdict = Verdict::Fail;
        else step.verdict = Verdict::Unknown;
        all_pass = all_pass && step.verdict == Verdict::Pass;
        rec.inequalities.push_back(step);
    }
    {
        InequalityRecord bound;
        bound.lhs = "||q x_1||";
        bound.rhs = "q^-k";
        mpq_class qmk = pow_q(mpq_class(q), -k);
        BallReal rhs = BallReal::from_mpq(qmk, prec);
        if (dist.front().certainly_le(rhs)) bound.verdict = Verdict::Pass;
        else if (rhs.certainly_less(dist.front())) bound.verdict = Verdict::Fail;
        else bound.verdict = Verdict::Unknown;
        all_pass = all_pass && bound.verdict == Verdict::Pass;
        rec.inequalities.push_back(bound);
    }
    rec.overall = all_pass ? Verdict::Pass : Verdict::Unknown;
    for (const auto &iq : rec.inequalities)
        if (iq.verdict == Verdict::Fail) rec.overall = Verdict::Fail;
    return rec;
}

} // namespace qe
