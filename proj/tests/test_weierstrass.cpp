#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qe/rng.hpp"
#include "qe/suites.hpp"
#include "qe/weierstrass.hpp"

using namespace qe;

namespace {

// Truncated canonical product z prod (1 - z/w) exp(z/w + z^2/(2w^2)) over
// |m|,|n| <= N with a cubic tail bound: independent low-precision oracle for
// sigma. The omitted factors for |w| > R satisfy
//   |log factor| <= |z|^3/(3 |w|^3) / (1 - |z|/|w|),
// summed over shells as in the invariant computation.
BallComplex sigma_product_oracle(const Lattice &lat, const BallComplex &z, long N, mpfr_prec_t p) {
    BallComplex acc = z.round_to(p);
    for (long m = -N; m <= N; ++m) {
        for (long n = -N; n <= N; ++n) {
            if (m == 0 && n == 0) continue;
            BallComplex w = lat.omega1().round_to(p).mul_si(m) + lat.omega2().round_to(p).mul_si(n);
            BallComplex q = z.round_to(p) / w;
            BallComplex factor = (BallComplex::from_si(1, 0, p) - q) * (q + (q * q).mul_2si(-1)).exp();
            acc = acc * factor;
        }
    }
    // Tail: shells s > N hold 8s points with |w| >= s * lambda_ratio where
    // the preset bases give |m w1 + n w2| >= max(|m|,|n|) * min period scale.
    double zabs = std::hypot(z.re_mid().to_double(), z.im_mid().to_double());
    double lam = lat.lambda_min().lower().to_double();
    double tail = 0;
    for (long s = N + 1; s < N + 2000; ++s) {
        double wmin = lam * static_cast<double>(s);
        tail += 8.0 * s * (zabs * zabs * zabs) / (3.0 * wmin * wmin * wmin) / (1.0 - zabs / wmin);
    }
    tail *= 1.5; // slack for the truncated shell sum
    // |acc| * (e^tail - 1) bounds the multiplicative tail error
    BigFloat widen(32);
    mpfr_set_d(widen.raw(), std::expm1(tail) * 1.01, MPFR_RNDU);
    mpfr_mul(widen.raw(), widen.raw(), acc.abs_ub().raw(), MPFR_RNDU);
    return acc.widened(widen);
}

} // namespace

TEST_CASE("sigma normalization, zero set and oddness") {
    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("square", p);
    WeierstrassContext ctx(lat);

    // sigma(z)/z -> 1 for tiny z (deviation O(z^4) below the ball radius)
    BallComplex z = BallComplex::from_si(1, 0, p).mul_2si(-40);
    CHECK(((ctx.sigma(z) / z) - BallComplex::from_si(1, 0, p)).contains_zero());

    // sigma vanishes on the lattice
    CHECK(ctx.sigma(lat.omega1()).contains_zero());
    CHECK(ctx.sigma(lat.omega1().mul_si(2) + lat.omega2().mul_si(-3)).contains_zero());

    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        BallComplex w = random_cell_point(lat, rng, p);
        CHECK((ctx.sigma(-w) + ctx.sigma(w)).contains_zero());
    }
}

TEST_CASE("sigma agrees with the canonical product oracle") {
    mpfr_prec_t p = 64;
    Rng rng(23);
    for (const char *name : {"square", "hexagonal"}) {
        Lattice lat = Lattice::preset(name, 128);
        WeierstrassContext ctx(lat, 128);
        for (int t = 0; t < 3; ++t) {
            BallComplex z = random_cell_point(lat, rng, p);
            BallComplex oracle = sigma_product_oracle(lat, z, 40, p);
            CHECK((ctx.sigma(z).round_to(p) - oracle).contains_zero());
        }
    }
}

TEST_CASE("zeta pole normalization and quasi-periodicity") {
    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("square", p);
    WeierstrassContext ctx(lat);

    BallComplex z = BallComplex::from_si(1, 0, p).mul_2si(-40);
    CHECK(((ctx.zeta(z) * z) - BallComplex::from_si(1, 0, p)).contains_zero());

    Rng rng(29);
    BallComplex w = random_cell_point(lat, rng, p);
    CHECK((ctx.zeta(w + lat.omega1()) - ctx.zeta(w) - lat.eta1()).contains_zero());

    // zeta(w1/2) = eta1/2, forced by oddness + quasi-periodicity
    BallComplex half = lat.omega1().mul_2si(-1);
    CHECK((ctx.zeta(half) - lat.eta1().mul_2si(-1)).contains_zero());

    CHECK_THROWS_AS(ctx.zeta(BallComplex::from_si(0, 0, p)), PoleAtLatticePoint);
    CHECK_THROWS_AS(ctx.wp(lat.omega2()), PoleAtLatticePoint);
}

TEST_CASE("wp evenness, periodicity and the half-period critical point") {
    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("rectangular-2", p);
    WeierstrassContext ctx(lat);
    Rng rng(41);
    for (int t = 0; t < 5; ++t) {
        BallComplex z = random_cell_point(lat, rng, p);
        CHECK((ctx.wp(-z) - ctx.wp(z)).contains_zero());
        CHECK((ctx.wp(z + lat.omega1()) - ctx.wp(z)).contains_zero());
    }

    BallComplex half = lat.omega1().mul_2si(-1);
    CHECK(ctx.wp_prime(half).contains_zero());
    // finite-difference oracle on wp around the half-period: the centered
    // difference must also vanish to O(h^2)
    BallComplex h = BallComplex::from_si(1, 0, p).mul_2si(-40);
    BallComplex fd = (ctx.wp(half + h) - ctx.wp(half - h)) / h.mul_si(2);
    BigFloat tol(32);
    mpfr_set_ui_2exp(tol.raw(), 1u, -60, MPFR_RNDN);
    CHECK(mpfr_cmp(fd.abs_ub().raw(), tol.raw()) <= 0);
}

TEST_CASE("laurent normalization along a shrinking sequence") {
    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("square", p);
    WeierstrassContext ctx(lat);
    BigFloat prev_wp(32), prev_zeta(32);
    for (int k = 6; k <= 18; k += 4) {
        BallComplex z = BallComplex::from_si(1, 0, p).mul_2si(-k);
        BallComplex rp = ctx.wp(z) - (z * z).inv();
        BallComplex rz = ctx.zeta(z) - z.inv();
        BigFloat up = rp.abs_ub(), uz = rz.abs_ub();
        if (k > 6) {
            CHECK(mpfr_cmp(up.raw(), prev_wp.raw()) < 0);
            CHECK(mpfr_cmp(uz.raw(), prev_zeta.raw()) < 0);
        }
        prev_wp = up;
        prev_zeta = uz;
    }
}

TEST_CASE("series coefficients reproduce g2/20 and g3/28") {
    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("rectangular-2", p);
    WeierstrassContext ctx(lat);
    // wp(z) - z^-2 ~ (g2/20) z^2 + (g3/28) z^4: recover the first
    // coefficient with two tiny evaluation points.
    BallComplex z = BallComplex::from_si(1, 0, p).mul_2si(-20);
    BallComplex lead = (ctx.wp(z) - (z * z).inv()) / (z * z);
    // the difference from g2/20 is O(z^2)
    BallComplex diff = lead - lat.g2().div_si(20);
    BigFloat tol(32);
    mpfr_set_ui_2exp(tol.raw(), 1u, -36, MPFR_RNDN);
    CHECK(mpfr_cmp(diff.abs_ub().raw(), tol.raw()) <= 0);
}

TEST_CASE("differential equation residual at random points and precisions") {
    for (mpfr_prec_t p : {128, 256}) {
        Lattice lat = Lattice::preset("hexagonal", p);
        WeierstrassContext ctx(lat);
        Rng rng(p + 1);
        for (int t = 0; t < 5; ++t) {
            BallComplex z = random_cell_point(lat, rng, p);
            auto v = ctx.eval_all(z);
            BallComplex r = v.wp_prime.pow_si(2) - v.wp.pow_si(3).mul_si(4) + lat.g2() * v.wp + lat.g3();
            CHECK(r.contains_zero());
        }
    }
}

TEST_CASE("values are consistent across forced halving depths") {
    // A point within the raw series disk must give the same values whether or
    // not the argument is first halved and duplicated back.
    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("square", p);
    WeierstrassContext ctx(lat);
    BallReal t = BallReal::from_mpq(mpq_class(1, 5), p);
    BallComplex z_small = lat.omega1().mul_real(t); // |z| = 0.2 < safe radius
    BallComplex z_double = z_small.mul_si(2);       // forces one duplication
    auto direct = ctx.eval_all(z_double);

    auto small = ctx.eval_all(z_small);
    // duplication identities evaluated manually from the small point
    BallComplex A = small.wp.pow_si(2).mul_si(6) - lat.g2().mul_2si(-1);
    BallComplex h = A / small.wp_prime.mul_si(2);
    CHECK((direct.wp - (h * h - small.wp.mul_si(2))).contains_zero());
    CHECK((direct.zeta - (small.zeta.mul_si(2) + h)).contains_zero());
    CHECK((direct.sigma + small.sigma.pow_si(4) * small.wp_prime).contains_zero());
    BallComplex num = small.wp * small.wp_prime.pow_si(2).mul_si(12) - A.pow_si(2);
    BallComplex wpp2 = -small.wp_prime + (A * num) / small.wp_prime.pow_si(3).mul_si(4);
    CHECK((direct.wp_prime - wpp2).contains_zero());
}
