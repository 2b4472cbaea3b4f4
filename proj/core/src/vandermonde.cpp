#include "qe/vandermonde.hpp"

#include <algorithm>

#include "qe/errors.hpp"

namespace qe {

mpz_class superfactorial_k(unsigned long t) {
    mpz_class r = 1;
    for (unsigned long j = 1; j + 1 <= t; ++j) r *= factorial_z(j);
    return r;
}

mpz_class k_multi(const std::vector<int> &ts) {
    mpz_class r = 1;
    for (int t : ts) {
        if (t < 1) throw InvalidShape("block multiplicity must be >= 1");
        r *= superfactorial_k(static_cast<unsigned long>(t));
    }
    return r;
}

int ConfluentSystem::dimension() const {
    int d = 0;
    for (const auto &[w, t] : blocks) {
        (void)w;
        if (t < 1) throw InvalidShape("block multiplicity must be >= 1");
        d += t;
    }
    return d;
}

namespace {

// r_t(a) for the default sequence (A+T)^t or a custom coefficient row.
BallComplex poly_value(const ConfluentSystem &sys, int t, long a) {
    if (sys.poly.empty()) {
        BallReal base = sys.shift.add_si(a);
        return BallComplex::from_real(base.pow_si(t));
    }
    const auto &c = sys.poly.at(static_cast<std::size_t>(t));
    BallComplex x = BallComplex::from_si(a, 0, sys.prec);
    BallComplex acc(sys.prec);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

} // namespace

std::vector<std::vector<BallComplex>> build_matrix(const ConfluentSystem &sys) {
    int D = sys.dimension();
    std::vector<std::vector<BallComplex>> m(static_cast<std::size_t>(D));
    for (long a = 0; a < D; ++a) {
        auto &row = m[static_cast<std::size_t>(a)];
        row.reserve(static_cast<std::size_t>(D));
        for (const auto &[w, tj] : sys.blocks) {
            BallComplex wa = w.pow_si(a);
            for (int t = 0; t < tj; ++t) row.push_back(poly_value(sys, t, a) * wa);
        }
    }
    return m;
}

BallComplex det_closed_form(const ConfluentSystem &sys) {
    std::vector<int> ts;
    for (const auto &[w, t] : sys.blocks) {
        (void)w;
        ts.push_back(t);
    }
    BallComplex det = BallComplex::from_real(BallReal::from_mpz(k_multi(ts), sys.prec));
    for (std::size_t j = 0; j < sys.blocks.size(); ++j) {
        long tj = sys.blocks[j].second;
        det = det * sys.blocks[j].first.pow_si(tj * (tj - 1) / 2);
        for (std::size_t i = 0; i < j; ++i) {
            long ti = sys.blocks[i].second;
            det = det * (sys.blocks[j].first - sys.blocks[i].first).pow_si(ti * tj);
        }
    }
    return det;
}

BallComplex det_direct(std::vector<std::vector<BallComplex>> m, mpfr_prec_t prec) {
    std::size_t n = m.size();
    BallComplex det = BallComplex::from_si(1, 0, prec);
    for (std::size_t k = 0; k < n; ++k) {
        // Pivot with the largest certified lower bound on |entry|.
        std::size_t piv = k;
        BigFloat best(BallReal::radius_prec);
        mpfr_set_si(best.raw(), -1, MPFR_RNDN);
        for (std::size_t r = k; r < n; ++r) {
            BigFloat lb = m[r][k].abs_lb();
            if (mpfr_cmp(lb.raw(), best.raw()) > 0) {
                best = lb;
                piv = r;
            }
        }
        if (mpfr_sgn(best.raw()) <= 0) {
            // No certified pivot: bound the remaining minor by Hadamard.
            BigFloat h(BallReal::radius_prec);
            mpfr_set_ui(h.raw(), 1u, MPFR_RNDU);
            for (std::size_t r = k; r < n; ++r) {
                BigFloat s(BallReal::radius_prec);
                mpfr_set_zero(s.raw(), 1);
                for (std::size_t c = k; c < n; ++c) {
                    BigFloat e = m[r][c].abs_ub();
                    mpfr_sqr(e.raw(), e.raw(), MPFR_RNDU);
                    mpfr_add(s.raw(), s.raw(), e.raw(), MPFR_RNDU);
                }
                mpfr_sqrt(s.raw(), s.raw(), MPFR_RNDU);
                mpfr_mul(h.raw(), h.raw(), s.raw(), MPFR_RNDU);
            }
            mpfr_mul(h.raw(), h.raw(), det.abs_ub().raw(), MPFR_RNDU);
            BallComplex out(prec);
            return out.widened(h);
        }
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det = det * m[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            BallComplex f = m[r][k] / m[k][k];
            for (std::size_t c = k + 1; c < n; ++c) m[r][c] = m[r][c] - f * m[k][c];
        }
    }
    return det;
}

int ExactConfluentSystem::dimension() const {
    int d = 0;
    for (const auto &[w, t] : blocks) {
        (void)w;
        if (t < 1) throw InvalidShape("block multiplicity must be >= 1");
        d += t;
    }
    return d;
}

std::vector<std::vector<RatComplex>> build_matrix_exact(const ExactConfluentSystem &sys) {
    int D = sys.dimension();
    std::vector<std::vector<RatComplex>> m(static_cast<std::size_t>(D));
    for (long a = 0; a < D; ++a) {
        auto &row = m[static_cast<std::size_t>(a)];
        for (const auto &[w, tj] : sys.blocks) {
            RatComplex wa = w.pow(a);
            mpq_class base = sys.shift + a;
            for (int t = 0; t < tj; ++t) row.push_back(RatComplex(pow_q(base, t)) * wa);
        }
    }
    return m;
}

RatComplex det_closed_form_exact(const ExactConfluentSystem &sys) {
    std::vector<int> ts;
    for (const auto &[w, t] : sys.blocks) {
        (void)w;
        ts.push_back(t);
    }
    RatComplex det{mpq_class(k_multi(ts))};
    for (std::size_t j = 0; j < sys.blocks.size(); ++j) {
        long tj = sys.blocks[j].second;
        det = det * sys.blocks[j].first.pow(tj * (tj - 1) / 2);
        for (std::size_t i = 0; i < j; ++i) {
            long ti = sys.blocks[i].second;
            det = det * (sys.blocks[j].first - sys.blocks[i].first).pow(ti * tj);
        }
    }
    return det;
}

RatComplex det_direct_exact(std::vector<std::vector<RatComplex>> m) {
    std::size_t n = m.size();
    RatComplex det = RatComplex::from_si(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t r = k; r < n; ++r) {
            if (!m[r][k].is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv == n) return RatComplex::from_si(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det = det * m[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            RatComplex f = m[r][k] / m[k][k];
            for (std::size_t c = k + 1; c < n; ++c) m[r][c] = m[r][c] - f * m[k][c];
        }
    }
    return det;
}

XiBoundReport xi_lower_bound_check(const std::vector<BallComplex> &w,
                                   const std::vector<std::vector<BallComplex>> &q,
                                   int T, const BallReal &A, mpfr_prec_t prec) {
    const std::size_t m = w.size();
    if (m == 0 || T < 0) throw InvalidShape("need at least one node and T >= 0");
    if (q.size() != static_cast<std::size_t>(T + 1)) throw InvalidShape("coefficient rows must cover t = 0..T");
    for (const auto &row : q)
        if (row.size() != m) throw InvalidShape("coefficient row width must equal the node count");
    for (std::size_t i = 0; i < m; ++i) {
        if (!w[i].certainly_nonzero()) throw NotDistinct("node not certifiably nonzero");
        for (std::size_t j = i + 1; j < m; ++j)
            if (!(w[i] - w[j]).certainly_nonzero()) throw NotDistinct();
    }
    bool any_nonzero = false;
    for (const auto &row : q)
        for (const auto &c : row) any_nonzero = any_nonzero || c.certainly_nonzero();
    if (!any_nonzero) throw ZeroInput("coefficients are not certifiably nonzero");

    const long D = static_cast<long>(m) * (T + 1);

    // xi_a for 0 <= a <= m(T+1), one more row than the square system.
    BigFloat max_lo(BallReal::radius_prec), max_hi(BallReal::radius_prec);
    mpfr_set_si(max_lo.raw(), 0, MPFR_RNDN);
    mpfr_set_si(max_hi.raw(), 0, MPFR_RNDN);
    for (long a = 0; a <= D; ++a) {
        BallComplex xi(prec);
        BallReal base = A.add_si(a);
        for (int t = 0; t <= T; ++t) {
            BallReal rt = base.pow_si(t);
            for (std::size_t j = 0; j < m; ++j) xi = xi + q[static_cast<std::size_t>(t)][j].mul_real(rt) * w[j].pow_si(a);
        }
        BallReal ab = xi.abs();
        BigFloat lo = ab.lower(), hi = ab.upper();
        if (mpfr_cmp(lo.raw(), max_lo.raw()) > 0) mpfr_set(max_lo.raw(), lo.raw(), MPFR_RNDD);
        if (mpfr_cmp(hi.raw(), max_hi.raw()) > 0) mpfr_set(max_hi.raw(), hi.raw(), MPFR_RNDU);
    }

    ConfluentSystem sys;
    for (const auto &wi : w) sys.blocks.emplace_back(wi, T + 1);
    sys.shift = A;
    sys.prec = prec;
    auto M = build_matrix(sys);

    // Gauss-Jordan inverse with certified pivots.
    std::size_t n = M.size();
    std::vector<std::vector<BallComplex>> inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        inv[i].assign(n, BallComplex(prec));
        inv[i][i] = BallComplex::from_si(1, 0, prec);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        BigFloat best(BallReal::radius_prec);
        mpfr_set_si(best.raw(), -1, MPFR_RNDN);
        for (std::size_t r = k; r < n; ++r) {
            BigFloat lb = M[r][k].abs_lb();
            if (mpfr_cmp(lb.raw(), best.raw()) > 0) {
                best = lb;
                piv = r;
            }
        }
        if (mpfr_sgn(best.raw()) <= 0)
            throw PrecisionUnreachable("confluent matrix could not be certifiably inverted");
        if (piv != k) {
            std::swap(M[piv], M[k]);
            std::swap(inv[piv], inv[k]);
        }
        BallComplex d = M[k][k];
        for (std::size_t c = 0; c < n; ++c) {
            M[k][c] = M[k][c] / d;
            inv[k][c] = inv[k][c] / d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k) continue;
            BallComplex f = M[r][k];
            if (f.contains_zero() && f.rad().is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) {
                M[r][c] = M[r][c] - f * M[k][c];
                inv[r][c] = inv[r][c] - f * inv[k][c];
            }
        }
    }
    BigFloat norm_lo(BallReal::radius_prec), norm_hi(BallReal::radius_prec);
    mpfr_set_si(norm_lo.raw(), 0, MPFR_RNDN);
    mpfr_set_si(norm_hi.raw(), 0, MPFR_RNDN);
    for (std::size_t r = 0; r < n; ++r) {
        BigFloat slo(BallReal::radius_prec), shi(BallReal::radius_prec);
        mpfr_set_zero(slo.raw(), 1);
        mpfr_set_zero(shi.raw(), 1);
        for (std::size_t c = 0; c < n; ++c) {
            BallReal ab = inv[r][c].abs();
            mpfr_add(slo.raw(), slo.raw(), ab.lower().raw(), MPFR_RNDD);
            mpfr_add(shi.raw(), shi.raw(), ab.upper().raw(), MPFR_RNDU);
        }
        if (mpfr_cmp(slo.raw(), norm_lo.raw()) > 0) mpfr_set(norm_lo.raw(), slo.raw(), MPFR_RNDD);
        if (mpfr_cmp(shi.raw(), norm_hi.raw()) > 0) mpfr_set(norm_hi.raw(), shi.raw(), MPFR_RNDU);
    }

    XiBoundReport rep;
    rep.max_xi = BallReal::from_endpoints(max_lo, max_hi, prec);
    rep.inv_norm = BallReal::from_endpoints(norm_lo, norm_hi, prec);

    BigFloat qlo(BallReal::radius_prec), qhi(BallReal::radius_prec);
    mpfr_set_zero(qlo.raw(), 1);
    mpfr_set_zero(qhi.raw(), 1);
    for (const auto &row : q) {
        for (const auto &c : row) {
            BallReal ab = c.abs();
            BigFloat lo = ab.lower(), hi = ab.upper();
            if (mpfr_cmp(lo.raw(), qlo.raw()) > 0) mpfr_set(qlo.raw(), lo.raw(), MPFR_RNDD);
            if (mpfr_cmp(hi.raw(), qhi.raw()) > 0) mpfr_set(qhi.raw(), hi.raw(), MPFR_RNDU);
        }
    }
    BallReal qn = BallReal::from_endpoints(qlo, qhi, prec);

    // max{1, A} on endpoints
    BigFloat alo = A.lower(), ahi = A.upper();
    if (mpfr_cmp_si(alo.raw(), 1) < 0) mpfr_set_si(alo.raw(), 1, MPFR_RNDN);
    if (mpfr_cmp_si(ahi.raw(), 1) < 0) mpfr_set_si(ahi.raw(), 1, MPFR_RNDN);
    BallReal amax = BallReal::from_endpoints(alo, ahi, prec);
    long e = static_cast<long>(m) * T * (T + 1);
    BallReal scale = amax.pow_si(e);
    rep.eta = qn * scale / rep.inv_norm;
    rep.bound = rep.eta * amax.pow_si(-e);
    // The inequality can hold with equality (e.g. m=1, T=0, |w| <= 1), where
    // no strict ball comparison certifies. Fail only on a certified
    // violation; Pass needs at least the halved bound to certify.
    if (rep.max_xi.certainly_less(rep.bound)) rep.verdict = Verdict::Fail;
    else if (rep.bound.certainly_le(rep.max_xi) || rep.bound.mul_2si(-1).certainly_le(rep.max_xi))
        rep.verdict = Verdict::Pass;
    else rep.verdict = Verdict::Unknown;
    return rep;
}

} // namespace qe
