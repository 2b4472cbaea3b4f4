#include "qe/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "qe/polyroots.hpp"
#include "qe/rational.hpp"

namespace qe {

int IntPolynomial::degree() const {
    for (std::size_t i = coeffs.size(); i-- > 0;)
        if (coeffs[i] != 0) return static_cast<int>(i);
    return -1;
}

mpz_class IntPolynomial::height() const {
    mpz_class h = 0;
    for (const auto &c : coeffs) h = std::max(h, mpz_class(abs(c)));
    return h;
}

IntPolynomial IntPolynomial::parse(const std::string &csv) {
    IntPolynomial p;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // tolerate spaces and unicode minus
        std::string clean;
        for (char c : tok)
            if (!isspace(static_cast<unsigned char>(c))) clean += c;
        if (clean.empty()) throw ParseError("empty polynomial coefficient");
        p.coeffs.emplace_back(clean);
    }
    if (p.degree() < 0) throw InvalidInput("zero polynomial");
    return p;
}

BallComplex IntPolynomial::eval(const BallComplex &x, mpfr_prec_t prec) const {
    BallComplex acc(prec);
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * x + BallComplex::from_mpq(mpq_class(coeffs[i]), 0, prec);
    return acc;
}

BallReal log_height_rational(const mpz_class &p, const mpz_class &q, mpfr_prec_t prec) {
    if (q == 0) throw ZeroDenominator();
    mpq_class r(p, q);
    r.canonicalize();
    mpz_class num = abs(r.get_num()), den = r.get_den();
    mpz_class m = std::max(num, den);
    if (m == 0) m = 1; // h(0) = 0
    return BallReal::from_mpz(m, prec).log();
}

BakerReport baker_lower_bound(const mpq_class &alpha, const mpq_class &beta, int D, mpfr_prec_t prec) {
    if (alpha == 0 || beta == 0 || D < 1) throw InvalidInput("need alpha != 0, beta != 0, D >= 1");
    BakerReport rep;

    BallReal h_alpha = log_height_rational(alpha.get_num(), alpha.get_den(), prec);
    BallReal h_beta = log_height_rational(beta.get_num(), beta.get_den(), prec);
    BallReal pi = BallReal::pi(prec);

    // principal log: log alpha = ln|alpha| + i*pi for alpha < 0
    BallReal ln_abs = BallReal::from_mpq(abs(alpha), prec).log();
    BallReal abs_log = alpha < 0 ? (ln_abs.pow_si(2) + pi.pow_si(2)).sqrt() : ln_abs.abs();

    auto ball_max = [prec](const BallReal &a, const BallReal &b) {
        BigFloat lo = a.lower(), hi = a.upper();
        BigFloat lob = b.lower(), hib = b.upper();
        if (mpfr_cmp(lob.raw(), lo.raw()) > 0) lo = lob;
        if (mpfr_cmp(hib.raw(), hi.raw()) > 0) hi = hib;
        return BallReal::from_endpoints(lo, hi, prec);
    };
    BallReal one = BallReal::from_si(1, prec);
    rep.log_A = ball_max(one, ball_max(h_alpha, abs_log));
    BallReal e = one.exp();
    rep.B = ball_max(e, ball_max(h_beta, rep.log_A.mul_si(D)));

    // bound = exp(-2^26 D^3 log A log B), held in log space
    BallReal log_B = rep.B.log();
    rep.log_bound = -(rep.log_A * log_B).mul_si(D).mul_si(D).mul_si(D).mul_2si(26);
    rep.bound = TowerMagnitude::from_log(1, rep.log_bound);

    // |beta - log alpha|
    BallReal beta_ball = BallReal::from_mpq(beta, prec);
    if (alpha < 0) {
        rep.lhs = ((beta_ball - ln_abs).pow_si(2) + pi.pow_si(2)).sqrt();
    } else {
        rep.lhs = (beta_ball - ln_abs).abs();
    }

    if (!rep.lhs.certainly_positive()) {
        rep.verdict = Verdict::Unknown;
        return rep;
    }
    BallReal log_lhs = rep.lhs.log();
    if (rep.log_bound.certainly_le(log_lhs)) rep.verdict = Verdict::Pass;
    else if (log_lhs.certainly_less(rep.log_bound)) rep.verdict = Verdict::Fail;
    else rep.verdict = Verdict::Unknown;
    return rep;
}

FeldmanReport feldman_check(const IntPolynomial &F, const BallComplex &theta, mpfr_prec_t prec) {
    int D = F.degree();
    if (D < 1) throw InvalidInput("polynomial must have degree >= 1");
    FeldmanReport rep;

    auto factors = detail::squarefree_decomposition(F.coeffs);
    struct Root {
        BallComplex alpha;
        int mult;
        BallReal dist;
    };
    std::vector<Root> roots;
    for (int attempt = 0;; ++attempt) {
        roots.clear();
        mpfr_prec_t wp = prec + 64 * attempt;
        for (const auto &[g, mult] : factors) {
            for (const auto &alpha : detail::isolate_roots_squarefree(g, wp)) {
                Root r;
                r.alpha = alpha;
                r.mult = mult;
                r.dist = (theta.round_to(wp) - alpha).abs();
                roots.push_back(r);
            }
        }
        if (roots.empty()) throw InvalidInput("polynomial has no roots");
        // Certified nearest: the candidate set is every root whose distance
        // ball meets the smallest upper bound.
        std::size_t best = 0;
        for (std::size_t i = 1; i < roots.size(); ++i)
            if (mpfr_cmp(roots[i].dist.upper().raw(), roots[best].dist.upper().raw()) < 0) best = i;
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (!roots[best].dist.certainly_less(roots[i].dist) || i == best) candidates.push_back(i);

        // rhs = D^(3D-2) H^(2D) |F(theta)|
        mpz_class scale = pow_z(mpz_class(D), static_cast<unsigned long>(3 * D - 2)) *
                          pow_z(F.height(), static_cast<unsigned long>(2 * D));
        BallReal rhs = F.eval(theta.round_to(wp), wp).abs() * BallReal::from_mpz(scale, wp);

        bool all_pass = true, any_fail = false;
        for (std::size_t i : candidates) {
            BallReal lhs = roots[i].dist.pow_si(roots[i].mult);
            if (!lhs.certainly_le(rhs)) {
                all_pass = false;
                if (rhs.certainly_less(lhs)) any_fail = true;
            }
        }
        rep.nearest = roots[best].alpha;
        rep.multiplicity = roots[best].mult;
        rep.lhs = roots[best].dist.pow_si(roots[best].mult);
        rep.rhs = rhs;
        if (all_pass) {
            rep.verdict = Verdict::Pass;
            return rep;
        }
        if (any_fail && candidates.size() == 1) {
            rep.verdict = Verdict::Fail;
            return rep;
        }
        if (attempt >= 3) {
            if (candidates.size() > 1) throw TieUnresolved();
            rep.verdict = Verdict::Unknown;
            return rep;
        }
    }
}

} // namespace qe
