#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qe/lattice.hpp"
#include "qe/rng.hpp"
#include "qe/suites.hpp"

using namespace qe;

TEST_CASE("construction normalizes orientation and rejects degenerate bases") {
    mpfr_prec_t p = 128;
    Lattice sq = Lattice::make(BallComplex::from_si(1, 0, p), BallComplex::from_si(0, 1, p), p);
    CHECK(sq.tau().imag().certainly_positive());

    // omega2 = -i gets negated so that Im(tau) > 0
    Lattice sq2 = Lattice::make(BallComplex::from_si(1, 0, p), BallComplex::from_si(0, -1, p), p);
    CHECK(sq2.tau().imag().certainly_positive());

    CHECK_THROWS_AS(Lattice::make(BallComplex::from_si(1, 0, p), BallComplex::from_si(2, 0, p), p),
                    DegenerateLattice);
    CHECK_THROWS_AS(Lattice::make(BallComplex::from_si(0, 0, p), BallComplex::from_si(0, 1, p), p),
                    DegenerateLattice);
}

TEST_CASE("symmetric lattices force vanishing invariants") {
    mpfr_prec_t p = 128;
    Lattice sq = Lattice::preset("square", p);
    CHECK(sq.g3().contains_zero());
    CHECK(!sq.g2().contains_zero());

    Lattice hex = Lattice::preset("hexagonal", p);
    CHECK(hex.g2().contains_zero());
    CHECK(!hex.g3().contains_zero());
}

TEST_CASE("invariant homogeneity g2(c Omega) = c^-4 g2(Omega)") {
    mpfr_prec_t p = 128;
    Rng rng(31);
    Lattice lat = random_lattice(rng, p);
    BallComplex c = BallComplex::from_parts(BallReal::from_d(1.3, p), BallReal::from_d(0.4, p));
    Lattice scaled = Lattice::make(lat.omega1() * c, lat.omega2() * c, p);
    CHECK((scaled.g2() - lat.g2() * c.pow_si(-4)).contains_zero());
    CHECK((scaled.g3() - lat.g3() * c.pow_si(-6)).contains_zero());

    // c = 2 per the worked example
    Lattice doubled = Lattice::make(lat.omega1().mul_si(2), lat.omega2().mul_si(2), p);
    CHECK((doubled.g2().mul_si(16) - lat.g2()).contains_zero());
}

TEST_CASE("recomputed invariants agree with the cached ones") {
    Lattice lat = Lattice::preset("rectangular-2", 128);
    auto [g2, g3] = eisenstein_invariants(lat, 192);
    CHECK((g2 - lat.g2()).contains_zero());
    CHECK((g3 - lat.g3()).contains_zero());
}

TEST_CASE("direct lattice sum oracle for the invariants") {
    // Low-precision Eisenstein sums 60 sum' w^-4 and 140 sum' w^-6 with the
    // crude O(1/N^2) shell tail must enclose the q-series values.
    mpfr_prec_t p = 64;
    for (const char *name : {"square", "rectangular-2"}) {
        Lattice lat = Lattice::preset(name, 128);
        const long N = 60;
        BallComplex s4(p), s6(p);
        for (long m = -N; m <= N; ++m) {
            for (long n = -N; n <= N; ++n) {
                if (m == 0 && n == 0) continue;
                BallComplex w = lat.omega1().round_to(p).mul_si(m) + lat.omega2().round_to(p).mul_si(n);
                BallComplex w2 = (w * w).inv();
                BallComplex w4 = w2 * w2;
                s4 = s4 + w4;
                s6 = s6 + w4 * w2;
            }
        }
        // |w| >= max(|m|,|n|) for these bases; shells have 8s points
        // tail_4 <= 8 sum_{s>N} s^-3 <= 4/N^2, tail_6 <= 8/(4 N^4)
        BigFloat t4(32), t6(32);
        mpfr_set_d(t4.raw(), 4.0 / (N * N), MPFR_RNDU);
        mpfr_set_d(t6.raw(), 2.0 / (static_cast<double>(N) * N * N * N), MPFR_RNDU);
        BallComplex g2_direct = s4.widened(t4).mul_si(60);
        BallComplex g3_direct = s6.widened(t6).mul_si(140);
        CHECK((g2_direct - lat.g2().round_to(p)).contains_zero());
        CHECK((g3_direct - lat.g3().round_to(p)).contains_zero());
    }
}

TEST_CASE("quasi-period map is Z-linear and satisfies Legendre") {
    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("square", p);
    CHECK(lat.quasi_period(0, 0).contains_zero());
    BallComplex lhs = lat.quasi_period(2, 3);
    BallComplex rhs = lat.quasi_period(1, 0).mul_si(2) + lat.quasi_period(0, 1).mul_si(3);
    CHECK((lhs - rhs).contains_zero());

    BallComplex two_pi_i = BallComplex::from_parts(BallReal(p), BallReal::pi(p).mul_2si(1));
    BallComplex leg = lat.omega2() * lat.quasi_period(1, 0) - lat.omega1() * lat.quasi_period(0, 1);
    CHECK((leg - two_pi_i).contains_zero());
}

TEST_CASE("legendre residual meets tolerance on presets and random lattices") {
    for (mpfr_prec_t p : {128, 256}) {
        BigFloat tol(32);
        mpfr_set_ui_2exp(tol.raw(), 1u, -static_cast<long>(p - 16), MPFR_RNDN);
        for (const auto &name : Lattice::preset_names()) {
            Lattice lat = Lattice::preset(name, p);
            CHECK(lat.legendre_residual().contains_zero());
            CHECK(mpfr_cmp(lat.legendre_residual().rad().raw(), tol.raw()) <= 0);
        }
        Rng rng(p);
        for (int t = 0; t < 20; ++t) {
            Lattice lat = random_lattice(rng, p);
            CHECK(lat.legendre_residual().contains_zero());
            CHECK(mpfr_cmp(lat.legendre_residual().rad().raw(), tol.raw()) <= 0);
        }
    }
}

TEST_CASE("epsilon is +1 exactly on doubled lattice points") {
    CHECK(Lattice::epsilon(2, 0) == 1);
    CHECK(Lattice::epsilon(1, 0) == -1);
    CHECK(Lattice::epsilon(1, 1) == -1);
    CHECK(Lattice::epsilon(0, 0) == 1);
    CHECK(Lattice::epsilon(-2, 4) == 1);
    CHECK(Lattice::epsilon(-1, 2) == -1);
}

TEST_CASE("legendre pairing equals the coordinate determinant") {
    mpfr_prec_t p = 128;
    Lattice sq = Lattice::preset("square", p);
    CHECK(sq.legendre_pairing({1, 0}, {0, 1}) == 1);
    CHECK(sq.legendre_pairing({0, 1}, {1, 0}) == -1);
    // multiplication by i maps (1,0) -> (0,1), (0,1) -> (-1,0)
    CHECK(sq.legendre_pairing({0, 1}, {-1, 0}) == 1);
    CHECK_THROWS_AS(sq.legendre_pairing({1, 2}, {2, 4}), DependentPeriods);

    Rng rng(99);
    Lattice lat = random_lattice(rng, p);
    for (int t = 0; t < 100; ++t) {
        long a1 = rng.uniform_int(-10, 10), b1 = rng.uniform_int(-10, 10);
        long a2 = rng.uniform_int(-10, 10), b2 = rng.uniform_int(-10, 10);
        if (a1 * b2 - a2 * b1 == 0) continue;
        CHECK(lat.legendre_pairing({a1, b1}, {a2, b2}) == a1 * b2 - a2 * b1);
    }
}

TEST_CASE("reduction into the fundamental cell") {
    mpfr_prec_t p = 128;
    Rng rng(5);
    Lattice lat = random_lattice(rng, p);
    BallReal tenth = BallReal::from_mpq(mpq_class(1, 10), p);

    auto red = lat.reduce_mod_lattice(lat.omega1() + lat.omega2() + lat.omega1().mul_real(tenth));
    CHECK(red.a == 1);
    CHECK(red.b == 1);
    CHECK((red.z0 - lat.omega1().mul_real(tenth)).contains_zero());

    auto half = lat.reduce_mod_lattice(lat.omega1().mul_2si(-1));
    CHECK(half.a == 0);
    CHECK(half.b == 0);

    // floor convention: -0.25 w2 reduces to 0.75 w2 with b = -1
    BallReal mq = BallReal::from_mpq(mpq_class(-1, 4), p);
    auto neg = lat.reduce_mod_lattice(lat.omega2().mul_real(mq));
    CHECK(neg.a == 0);
    CHECK(neg.b == -1);
    BallReal tq = BallReal::from_mpq(mpq_class(3, 4), p);
    CHECK((neg.z0 - lat.omega2().mul_real(tq)).contains_zero());

    // an exact wall point snaps to the wall (closed side of the cell)
    auto wall = lat.reduce_mod_lattice(lat.omega1());
    CHECK(wall.a == 1);
    CHECK(wall.b == 0);
    CHECK(wall.z0.contains_zero());

    // a genuinely wide ball straddling the wall is ambiguous
    BallComplex wide = lat.omega1().mul_2si(-1).widened(BigFloat::from_d(0.6, 32));
    CHECK_THROWS_AS(lat.reduce_mod_lattice(wide), AmbiguousReduction);
}

TEST_CASE("cm multiplier verification") {
    mpfr_prec_t p = 128;
    Lattice sq = Lattice::preset("square", p);
    REQUIRE(sq.cm_multipliers().size() == 1);
    const auto &m = sq.cm_multipliers()[0].m;
    CHECK(m[0][0] == 0);
    CHECK(m[0][1] == 1);
    CHECK(m[1][0] == -1);
    CHECK(m[1][1] == 0);

    // a non-multiplier is rejected
    CHECK_THROWS_AS(sq.with_cm_multiplier(BallComplex::from_parts(BallReal::from_d(0.5, p),
                                                                  BallReal::from_d(0.25, p))),
                    InvalidMultiplier);

    Lattice hex = Lattice::preset("hexagonal", p);
    REQUIRE(hex.cm_multipliers().size() == 1);
    long det = hex.cm_multipliers()[0].m[0][0] * hex.cm_multipliers()[0].m[1][1] -
               hex.cm_multipliers()[0].m[0][1] * hex.cm_multipliers()[0].m[1][0];
    CHECK(det == 1); // |e^(i pi/3)|^2 = 1
}
