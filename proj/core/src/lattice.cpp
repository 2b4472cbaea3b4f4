#include "qe/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "qe/weierstrass.hpp"

namespace qe {

namespace {

constexpr mpfr_prec_t GUARD = 64;

long round_mid_to_long(const BigFloat &x) {
    if (!x.is_finite()) throw PrecisionUnreachable("non-finite coordinate");
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_round(t, x.raw());
    if (!mpfr_fits_slong_p(t, MPFR_RNDN)) {
        mpfr_clear(t);
        throw PrecisionUnreachable("coordinate out of integer range");
    }
    long r = mpfr_get_si(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

BallReal imag_of_conj_product(const BallComplex &a, const BallComplex &b) {
    // Im(a * conj(b))
    return (a * b.conj()).imag();
}

// Smallest eigenvalue of the Gram matrix of (w1, w2); lower bounds |m w1 + n w2|^2 / (m^2 + n^2).
BallReal gram_min_eigenvalue(const BallComplex &w1, const BallComplex &w2) {
    BallReal a = w1.abs().pow_si(2);
    BallReal c = w2.abs().pow_si(2);
    BallReal b = (w1 * w2.conj()).real();
    BallReal disc = ((a - c).pow_si(2) + b.pow_si(2).mul_si(4)).sqrt();
    return (a + c - disc).mul_2si(-1);
}

struct Invariants {
    BallComplex g2, g3;
};

// Eisenstein invariants of Z + Z*tau via the normalized series
//   E4 = 1 + 240 sum n^3 q^n/(1-q^n),  E6 = 1 - 504 sum n^5 q^n/(1-q^n),
// q = e^(2 pi i tau), with geometric tail bounds folded into the radii;
// then g2 = (4/3) pi^4 E4 / w1^4, g3 = (8/27) pi^6 E6 / w1^6.
Invariants eisenstein_q_series(const BallComplex &w1, const BallComplex &w2, mpfr_prec_t pw) {
    BallComplex tau = (w2 / w1).round_to(pw);
    BallReal two_pi = BallReal::pi(pw).mul_2si(1);
    BallComplex q = tau.mul_real(two_pi).mul_i().exp();
    BigFloat x = q.abs_ub();
    if (!x.is_finite() || x.cmp_si(0) < 0 || mpfr_cmp_d(x.raw(), 0.05) >= 0)
        throw PrecisionUnreachable("reduced tau has too small imaginary part");

    // Tail of sum_{n>N} n^d q^n / (1 - q^n), d in {3, 5}:
    //   <= x^(N+1) (N+1)^d P_d(x) / ((1-x)^(d+1) (1-x))
    // with the Eulerian polynomials P_3 = 1 + 4x + x^2 and
    // P_5 = 1 + 26x + 66x^2 + 26x^3 + x^4, both increasing in x and
    // evaluated at the gate value 0.05 that |q| was checked against.
    auto tail_bound = [&](unsigned long N, int d) {
        BigFloat t(BallReal::radius_prec), u(BallReal::radius_prec), one_mx(BallReal::radius_prec);
        mpfr_ui_sub(one_mx.raw(), 1u, x.raw(), MPFR_RNDD);
        mpfr_set_ui(t.raw(), N + 1, MPFR_RNDU);
        mpfr_pow_ui(t.raw(), t.raw(), static_cast<unsigned long>(d), MPFR_RNDU);
        mpfr_pow_ui(u.raw(), x.raw(), N + 1, MPFR_RNDU);
        mpfr_mul(t.raw(), t.raw(), u.raw(), MPFR_RNDU);
        double p = d == 3 ? (1.0 + 4.0 * 0.05 + 0.0025) : (1.0 + 26.0 * 0.05 + 66.0 * 0.0025 + 26.0 * 0.000125 + 1e-5);
        mpfr_mul_d(t.raw(), t.raw(), p, MPFR_RNDU);
        mpfr_pow_ui(u.raw(), one_mx.raw(), static_cast<unsigned long>(d + 2), MPFR_RNDD);
        mpfr_div(t.raw(), t.raw(), u.raw(), MPFR_RNDU);
        return t;
    };

    BigFloat eps(BallReal::radius_prec);
    mpfr_set_ui_2exp(eps.raw(), 1u, -static_cast<long>(pw + 8), MPFR_RNDN);
    unsigned long N = 16;
    while (mpfr_cmp(tail_bound(N, 5).raw(), eps.raw()) > 0) {
        N *= 2;
        if (N > (1ul << 20)) throw PrecisionUnreachable("Eisenstein series will not converge fast enough");
    }

    BallComplex one = BallComplex::from_si(1, 0, pw);
    BallComplex s4(pw), s6(pw), qn = one;
    for (unsigned long n = 1; n <= N; ++n) {
        qn = qn * q;
        BallComplex den = one - qn;
        BallComplex base = qn / den;
        long n3 = static_cast<long>(n * n * n);
        s4 = s4 + base.mul_si(n3);
        s6 = s6 + base.mul_si(n3 * static_cast<long>(n * n));
    }
    BallComplex e4 = one + s4.mul_si(240);
    BallComplex e6 = one - s6.mul_si(504);
    {
        BigFloat t4 = tail_bound(N, 3), t6 = tail_bound(N, 5);
        mpfr_mul_ui(t4.raw(), t4.raw(), 240u, MPFR_RNDU);
        mpfr_mul_ui(t6.raw(), t6.raw(), 504u, MPFR_RNDU);
        e4 = e4.widened(t4);
        e6 = e6.widened(t6);
    }

    BallReal pi = BallReal::pi(pw);
    BallReal pi4 = pi.pow_si(4);
    BallComplex g2_tau = e4.mul_real(pi4).mul_si(4).div_si(3);
    BallComplex g3_tau = e6.mul_real(pi4 * pi.pow_si(2)).mul_si(8).div_si(27);
    Invariants inv;
    inv.g2 = g2_tau / w1.pow_si(4);
    inv.g3 = g3_tau / w1.pow_si(6);
    return inv;
}

} // namespace

Lattice Lattice::make(const BallComplex &omega1, const BallComplex &omega2, mpfr_prec_t prec) {
    if (prec < BigFloat::min_prec) prec = BigFloat::min_prec;
    mpfr_prec_t pw = prec + GUARD;

    BallComplex w1 = omega1.round_to(pw), w2 = omega2.round_to(pw);
    if (!w1.certainly_nonzero()) throw DegenerateLattice("omega1 is not certifiably nonzero");
    BallComplex tau = w2 / w1;
    BallReal im = tau.imag();
    if (im.contains_zero()) throw DegenerateLattice("omega2/omega1 is not certifiably non-real");
    if (im.certainly_negative()) {
        w2 = -w2;
        tau = w2 / w1;
    }

    Lattice lat;
    lat.prec_ = prec;
    lat.omega1_ = w1;
    lat.omega2_ = w2;
    lat.tau_ = tau;

    // Gauss reduction of the basis; U tracks (r1, r2) = U * (w1, w2), det U = +1.
    BallComplex r1 = w1, r2 = w2;
    long U[2][2] = {{1, 0}, {0, 1}};
    for (int it = 0;; ++it) {
        if (it > 128) throw PrecisionUnreachable("basis reduction did not terminate");
        BallComplex t = r2 / r1;
        // shift only when clearly off-center, so boundary cases cannot cycle
        BigFloat re_abs(64);
        mpfr_abs(re_abs.raw(), t.re_mid().raw(), MPFR_RNDN);
        if (mpfr_cmp_d(re_abs.raw(), 0.52) > 0) {
            long k = round_mid_to_long(t.re_mid());
            if (k != 0) {
                r2 = r2 - r1.mul_si(k);
                U[1][0] -= k * U[0][0];
                U[1][1] -= k * U[0][1];
                continue;
            }
        }
        BigFloat ab = t.abs_ub();
        if (mpfr_cmp_d(ab.raw(), 0.98) < 0) {
            BallComplex n1 = r2, n2 = -r1;
            r1 = n1;
            r2 = n2;
            long a = U[0][0], b = U[0][1];
            U[0][0] = U[1][0];
            U[0][1] = U[1][1];
            U[1][0] = -a;
            U[1][1] = -b;
            continue;
        }
        break;
    }
    {
        BallReal rim = (r2 / r1).imag();
        BigFloat lo = rim.lower();
        if (!(lo.is_finite() && mpfr_cmp_d(lo.raw(), 0.70) > 0))
            throw DegenerateLattice("reduced basis still too skew; lattice may be degenerate");
    }
    lat.red_omega1_ = r1;
    lat.red_omega2_ = r2;
    lat.U_[0] = {U[0][0], U[0][1]};
    lat.U_[1] = {U[1][0], U[1][1]};
    // det U = +1, so the inverse is the adjugate.
    lat.V_[0] = {U[1][1], -U[0][1]};
    lat.V_[1] = {-U[1][0], U[0][0]};

    // Lattice minimum over a window, certified globally via the Gram bound.
    BallReal eig = gram_min_eigenvalue(r1, r2);
    if (!eig.certainly_positive()) throw DegenerateLattice("Gram matrix not certifiably positive definite");
    {
        BigFloat lo_min(pw), ub_min(pw);
        bool first = true;
        for (long m = -2; m <= 2; ++m) {
            for (long n = -2; n <= 2; ++n) {
                if (m == 0 && n == 0) continue;
                BallReal a = (r1.mul_si(m) + r2.mul_si(n)).abs();
                BigFloat lo = a.lower(), hi = a.upper();
                if (first || mpfr_cmp(lo.raw(), lo_min.raw()) < 0) mpfr_set(lo_min.raw(), lo.raw(), MPFR_RNDD);
                if (first || mpfr_cmp(hi.raw(), ub_min.raw()) < 0) mpfr_set(ub_min.raw(), hi.raw(), MPFR_RNDU);
                first = false;
            }
        }
        // Points outside the window have m^2+n^2 >= 9.
        BallReal outside = (eig.mul_si(9)).sqrt();
        BigFloat out_lo = outside.lower();
        if (mpfr_cmp(out_lo.raw(), ub_min.raw()) < 0)
            throw PrecisionUnreachable("could not certify the lattice minimum");
        lat.lambda_min_ = BallReal::from_endpoints(lo_min, ub_min, pw);
    }

    // Upper-bounding ball for sum' |w|^-4 (used only in series tail constants).
    {
        const long N = 24;
        BallReal s(64);
        for (long m = -N; m <= N; ++m) {
            for (long n = -N; n <= N; ++n) {
                if (m == 0 && n == 0) continue;
                BallReal a2 = (r1.mul_si(m) + r2.mul_si(n)).abs().pow_si(2);
                s = s + BallReal::from_si(1, 64) / a2.pow_si(2);
            }
        }
        // tail <= 4 / (eig^2 N^2)
        BigFloat tail(BallReal::radius_prec);
        BigFloat el = eig.lower();
        mpfr_sqr(tail.raw(), el.raw(), MPFR_RNDD);
        mpfr_mul_ui(tail.raw(), tail.raw(), static_cast<unsigned long>(N * N), MPFR_RNDD);
        mpfr_ui_div(tail.raw(), 4u, tail.raw(), MPFR_RNDU);
        BigFloat half_tail(BallReal::radius_prec);
        mpfr_mul_2si(half_tail.raw(), tail.raw(), -1, MPFR_RNDU);
        s = s + BallReal::from_midrad(half_tail, half_tail);
        lat.abs4_sum_ = s;
    }

    Invariants inv = eisenstein_q_series(r1, r2, pw);
    lat.g2_ = inv.g2;
    lat.g3_ = inv.g3;

    // Quasi-periods of the reduced basis from zeta at the half-periods,
    // eta(w) = 2*zeta(w/2); then back to the user basis by Z-linearity.
    detail::SeriesCore core(lat.g2_, lat.g3_, lat.lambda_min_, lat.abs4_sum_, pw);
    lat.red_eta1_ = core.eval(r1.mul_2si(-1), true).zeta.mul_si(2);
    lat.red_eta2_ = core.eval(r2.mul_2si(-1), true).zeta.mul_si(2);
    lat.eta1_ = lat.red_eta1_.mul_si(lat.V_[0][0]) + lat.red_eta2_.mul_si(lat.V_[0][1]);
    lat.eta2_ = lat.red_eta1_.mul_si(lat.V_[1][0]) + lat.red_eta2_.mul_si(lat.V_[1][1]);

    // Legendre relation is the construction cross-check.
    BallComplex two_pi_i = BallComplex::from_parts(BallReal(pw), BallReal::pi(pw).mul_2si(1));
    lat.legendre_residual_ = lat.omega2_ * lat.eta1_ - lat.omega1_ * lat.eta2_ - two_pi_i;
    {
        BigFloat bound(BallReal::radius_prec);
        mpfr_set_ui_2exp(bound.raw(), 1u, -static_cast<long>(prec - 16), MPFR_RNDN);
        if (!lat.legendre_residual_.contains_zero() ||
            mpfr_cmp(lat.legendre_residual_.rad().raw(), bound.raw()) > 0)
            throw PrecisionUnreachable("Legendre relation could not be certified at the working precision");
    }
    return lat;
}

Lattice Lattice::preset(const std::string &name, mpfr_prec_t prec) {
    mpfr_prec_t pw = prec + GUARD;
    if (name == "square") {
        Lattice lat = make(BallComplex::from_si(1, 0, pw), BallComplex::from_si(0, 1, pw), prec);
        return lat.with_cm_multiplier(BallComplex::from_si(0, 1, pw));
    }
    if (name == "hexagonal") {
        BallReal half = BallReal::from_mpq(mpq_class(1, 2), pw);
        BallReal s3h = BallReal::from_si(3, pw).sqrt().mul_2si(-1);
        BallComplex w2 = BallComplex::from_parts(half, s3h);
        Lattice lat = make(BallComplex::from_si(1, 0, pw), w2, prec);
        return lat.with_cm_multiplier(w2);
    }
    if (name == "rectangular-2") {
        return make(BallComplex::from_si(1, 0, pw), BallComplex::from_si(0, 2, pw), prec);
    }
    throw InvalidInput("unknown lattice preset: " + name);
}

std::vector<std::string> Lattice::preset_names() {
    return {"square", "hexagonal", "rectangular-2"};
}

LatticePoint Lattice::point(long a, long b) const {
    LatticePoint p;
    p.a = a;
    p.b = b;
    p.value = omega1_.mul_si(a) + omega2_.mul_si(b);
    return p;
}

BallComplex Lattice::quasi_period(long a, long b) const {
    return eta1_.mul_si(a) + eta2_.mul_si(b);
}

long Lattice::legendre_pairing(std::pair<long, long> p1, std::pair<long, long> p2) const {
    long det = p1.first * p2.second - p2.first * p1.second;
    if (det == 0) throw DependentPeriods();
    BallComplex w1p = point(p1.first, p1.second).value;
    BallComplex w2p = point(p2.first, p2.second).value;
    BallComplex e1p = quasi_period(p1.first, p1.second);
    BallComplex e2p = quasi_period(p2.first, p2.second);
    BallComplex two_pi_i = BallComplex::from_parts(BallReal(prec_ + GUARD), BallReal::pi(prec_ + GUARD).mul_2si(1));
    BallComplex k = (w2p * e1p - w1p * e2p) / two_pi_i;
    BallReal kr = k.real();
    BigFloat half(BallReal::radius_prec);
    mpfr_set_d(half.raw(), 0.5, MPFR_RNDN);
    if (mpfr_cmp(k.rad().raw(), half.raw()) >= 0)
        throw CertificationFailed("pairing ball radius >= 1/2");
    if (!kr.contains(mpq_class(det)) || !k.imag().contains_zero())
        throw CertificationFailed("pairing does not round to the coordinate determinant");
    return det;
}

std::pair<BallReal, BallReal> Lattice::coordinates(const BallComplex &z) const {
    BallReal d1 = imag_of_conj_product(omega1_, omega2_);
    BallReal x = imag_of_conj_product(z, omega2_) / d1;
    BallReal y = imag_of_conj_product(z, omega1_) / -d1;
    return {x, y};
}

Lattice::Reduction Lattice::reduce_mod_lattice(const BallComplex &z) const {
    auto [x, y] = coordinates(z);
    auto certified_floor = [](const BallReal &v) {
        BigFloat lo = v.lower(), hi = v.upper();
        mpfr_t fl, fh;
        mpfr_init2(fl, 64);
        mpfr_init2(fh, 64);
        mpfr_floor(fl, lo.raw());
        mpfr_floor(fh, hi.raw());
        bool same = mpfr_equal_p(fl, fh) != 0;
        bool fits = mpfr_fits_slong_p(fh, MPFR_RNDN) != 0;
        long r = fits ? mpfr_get_si(fh, MPFR_RNDN) : 0;
        mpfr_clear(fl);
        mpfr_clear(fh);
        if (!fits) throw AmbiguousReduction();
        if (same) return r;
        // The ball touches a cell wall. A tight ball around the integer snaps
        // to it (the wall belongs to the cell); a wide one is ambiguous.
        BigFloat w(32);
        mpfr_sub(w.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
        if (mpfr_cmp_d(w.raw(), 1.52587890625e-05) > 0 || !v.contains(BigFloat::from_si(r, 64)))
            throw AmbiguousReduction(); // width above 2^-16 or no integer inside
        return r;
    };
    Reduction red;
    red.a = certified_floor(x);
    red.b = certified_floor(y);
    red.z0 = z - omega1_.mul_si(red.a) - omega2_.mul_si(red.b);
    return red;
}

std::optional<std::pair<long, long>> Lattice::recover_integer_coords(const BallComplex &z) const {
    auto [x, y] = coordinates(z);
    if (!x.is_finite() || !y.is_finite()) return std::nullopt;
    long a = round_mid_to_long(x.mid());
    long b = round_mid_to_long(y.mid());
    BallReal rx = x.add_si(-a), ry = y.add_si(-b);
    BigFloat q(BallReal::radius_prec);
    mpfr_set_d(q.raw(), 0.25, MPFR_RNDN);
    if (mpfr_cmp(rx.abs_ub().raw(), q.raw()) < 0 && mpfr_cmp(ry.abs_ub().raw(), q.raw()) < 0)
        return std::make_pair(a, b);
    return std::nullopt;
}

Lattice Lattice::with_cm_multiplier(const BallComplex &alpha) const {
    CmMultiplier cm;
    cm.alpha = alpha;
    for (int i = 0; i < 2; ++i) {
        BallComplex w = i == 0 ? omega1_ : omega2_;
        auto coords = recover_integer_coords(alpha * w);
        if (!coords) throw InvalidMultiplier("alpha*omega does not have certified integer coordinates");
        cm.m[static_cast<std::size_t>(i)] = {coords->first, coords->second};
    }
    Lattice out = *this;
    out.cm_.push_back(cm);
    return out;
}

std::pair<BallComplex, BallComplex> eisenstein_invariants(const Lattice &lat, mpfr_prec_t prec) {
    Invariants inv = eisenstein_q_series(lat.red_omega1(), lat.red_omega2(), prec + GUARD);
    return {inv.g2.round_to(prec), inv.g3.round_to(prec)};
}

} // namespace qe
