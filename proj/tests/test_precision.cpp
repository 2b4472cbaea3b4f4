#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qe/ball.hpp"
#include "qe/json_io.hpp"
#include "qe/rng.hpp"
#include "qe/tower.hpp"

using namespace qe;

namespace {

mpq_class random_rational(Rng &rng) {
    mpq_class q(rng.uniform_int(-1000, 1000), rng.uniform_int(1, 1000));
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("exact integer inputs carry zero radius") {
    CHECK(BallReal::from_si(7, 128).is_exact());
    CHECK(BallReal::from_mpz(mpz_class("123456789123456789"), 128).is_exact());
    CHECK(BallComplex::from_si(3, -4, 128).is_exact());
    // 1/3 is not a binary float: the conversion must report an enclosure
    BallReal third = BallReal::from_mpq(mpq_class(1, 3), 128);
    CHECK(!third.is_exact());
    CHECK(third.contains(mpq_class(1, 3)));
}

TEST_CASE("inclusion: exact rational arithmetic lies inside ball results") {
    Rng rng(20240811);
    for (int trial = 0; trial < 1000; ++trial) {
        mpq_class a = random_rational(rng), b = random_rational(rng);
        mpfr_prec_t prec = 32 + 32 * (trial % 4);
        BallReal ba = BallReal::from_mpq(a, prec), bb = BallReal::from_mpq(b, prec);
        CHECK((ba + bb).contains(a + b));
        CHECK((ba - bb).contains(a - b));
        CHECK((ba * bb).contains(a * b));
        if (b != 0 && bb.certainly_nonzero()) CHECK((ba / bb).contains(mpq_class(a / b)));
    }
}

TEST_CASE("precision refinement shrinks radii") {
    mpq_class x(355, 113);
    for (mpfr_prec_t p : {32, 64, 128}) {
        BallReal lo = BallReal::from_mpq(x, p).exp();
        BallReal hi = BallReal::from_mpq(x, 2 * p).exp();
        CHECK(mpfr_cmp(hi.rad().raw(), lo.rad().raw()) <= 0);
        // nested: the refined ball stays inside the coarse one
        CHECK(lo.contains(hi.mid()));
    }
}

TEST_CASE("complex ball arithmetic basics") {
    BallComplex i = BallComplex::i_unit(128);
    CHECK((i * i + BallComplex::from_si(1, 0, 128)).contains_zero());
    BallComplex z = BallComplex::from_parts(BallReal::from_d(0.5, 128), BallReal::from_d(-1.25, 128));
    CHECK((z * z.inv() - BallComplex::from_si(1, 0, 128)).contains_zero());
    // e^(i pi) = -1
    BallComplex ipi = BallComplex::from_parts(BallReal(128), BallReal::pi(128));
    CHECK((ipi.exp() + BallComplex::from_si(1, 0, 128)).contains_zero());
    CHECK((z.pow_si(5) - z * z * z * z * z).contains_zero());
}

TEST_CASE("division by a ball containing zero is rejected") {
    BallReal tiny = BallReal::from_midrad(BigFloat::from_d(0.0, 64), BigFloat::from_d(1e-9, 32));
    CHECK_THROWS_AS(BallReal::from_si(1, 64) / tiny, DivisionByZero);
    BallComplex ztiny = BallComplex::from_si(0, 0, 64).widened(BigFloat::from_d(1e-9, 32));
    CHECK_THROWS_AS(ztiny.inv(), DivisionByZero);
}

// --- tower magnitudes -------------------------------------------------------

TEST_CASE("tower promotion examples") {
    mpfr_prec_t p = 128;
    // promote(8, level 1) -> log payload contains ln 8
    TowerMagnitude eight = TowerMagnitude::from_rational(mpq_class(8)).promote(1, p);
    CHECK(eight.level() == 1);
    CHECK(eight.payload().contains(BigFloat::log(BigFloat::from_si(8, 256), 256)));

    // promote(0, level 1): sign 0, payload irrelevant
    TowerMagnitude zero = TowerMagnitude::from_si(0).promote(1, p);
    CHECK(zero.sign() == 0);

    // promote(3^81 as level-1 log, level 2): payload contains ln(81 ln 3)
    BallReal ln3 = BallReal::from_si(3, p).log();
    TowerMagnitude q2 = TowerMagnitude::from_log(1, ln3.mul_si(81)).promote(2, p);
    // independent scalar oracle at higher precision
    BigFloat oracle = BigFloat::log(BigFloat::mul(BigFloat::from_si(81, 256),
                                                  BigFloat::log(BigFloat::from_si(3, 256), 256), 256),
                                    256);
    CHECK(q2.payload().contains(oracle));

    // promotion to level 2 requires |x| > e
    CHECK_THROWS_AS(TowerMagnitude::from_rational(mpq_class(2)).promote(2, p), PromotionUndefined);
}

TEST_CASE("tower comparison examples") {
    mpfr_prec_t p = 128;
    BallReal ln3 = BallReal::from_si(3, p).log();
    // 3^-80 < e^-81 since -80 ln 3 < -81
    TowerMagnitude a = TowerMagnitude::from_log(1, ln3.mul_si(-80));
    TowerMagnitude b = TowerMagnitude::from_log(1, BallReal::from_si(-81, p));
    CHECK(tower_compare(a, b, p) == Cmp::Less);

    // identical exact values compare Equal
    TowerMagnitude x = TowerMagnitude::from_rational(mpq_class(7, 3));
    CHECK(tower_compare(x, x, p) == Cmp::Equal);

    // level dominance: loglog = 10^6 beats log = 10^6
    TowerMagnitude big2 = TowerMagnitude::from_loglog(1, BallReal::from_si(1000000, p));
    TowerMagnitude big1 = TowerMagnitude::from_log(1, BallReal::from_si(1000000, p));
    CHECK(tower_compare(big2, big1, p) == Cmp::Greater);

    // signs dominate magnitudes
    CHECK(tower_compare(TowerMagnitude::from_si(-5), TowerMagnitude::from_si(2), p) == Cmp::Less);
    CHECK(tower_compare(big2.negated(), big1.negated(), p) == Cmp::Less);

    // overlapping balls: Unknown
    BallReal wide = BallReal::from_midrad(BigFloat::from_si(10, 64), BigFloat::from_si(1, 32));
    CHECK(tower_compare(TowerMagnitude::from_log(1, wide), TowerMagnitude::from_log(1, wide), p) ==
          Cmp::Unknown);
}

TEST_CASE("tower multiplication and division examples") {
    mpfr_prec_t p = 128;
    BallReal ln3 = BallReal::from_si(3, p).log();
    // 3^81 * 3^81 = 3^162 at level 1
    TowerMagnitude q = TowerMagnitude::from_log(1, ln3.mul_si(81));
    TowerMagnitude sq = tower_mul(q, q, p);
    CHECK(sq.level() == 1);
    CHECK(sq.payload().contains(BigFloat::mul(BigFloat::from_si(162, 256),
                                              BigFloat::log(BigFloat::from_si(3, 256), 256), 256)));
    // 3 / 3^81 = 3^-80
    TowerMagnitude d = tower_div(TowerMagnitude::from_si(3), q, p);
    CHECK(d.level() == 1);
    CHECK(d.payload().contains(BigFloat::mul(BigFloat::from_si(-80, 256),
                                             BigFloat::log(BigFloat::from_si(3, 256), 256), 256)));
    CHECK_THROWS_AS(tower_div(q, TowerMagnitude::from_si(0), p), DivisionByZero);

    // level-2 absorption: multiplying a level-2 magnitude by a level-1 one
    // widens the log-log payload by at most ln(1 + log y * exp(-loglog x)),
    // checked against direct computation on a representable stand-in.
    // x = e^(e^30), y = e^(10): loglog(x*y) = log(e^30 + 10)
    TowerMagnitude x2 = TowerMagnitude::from_loglog(1, BallReal::from_si(30, p));
    TowerMagnitude y1 = TowerMagnitude::from_log(1, BallReal::from_si(10, p));
    TowerMagnitude prod = tower_mul(x2, y1, p);
    CHECK(prod.level() == 2);
    BigFloat e30 = BigFloat::exp(BigFloat::from_si(30, 256), 256);
    BigFloat direct = BigFloat::log(BigFloat::add(e30, BigFloat::from_si(10, 256), 256), 256);
    CHECK(prod.payload().contains(direct));
    // and the widening is within the stated increment
    BigFloat incr = BigFloat::sub(direct, BigFloat::log(e30, 256), 256);
    BigFloat upper = prod.payload().upper();
    BigFloat base_upper = BallReal::from_si(30, p).upper();
    CHECK(mpfr_cmp(BigFloat::sub(upper, base_upper, 256).raw(),
                   BigFloat::mul(incr, BigFloat::from_d(1.001, 64), 64).raw()) <= 0);
}

TEST_CASE("tower consistency: two-level representations compare alike") {
    mpfr_prec_t p = 128;
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        long a = rng.uniform_int(2, 60), b = rng.uniform_int(2, 60);
        TowerMagnitude a0 = TowerMagnitude::from_rational(mpq_class(a));
        TowerMagnitude b0 = TowerMagnitude::from_rational(mpq_class(b));
        TowerMagnitude a1 = a0.promote(1, p), b1 = b0.promote(1, p);
        Cmp c0 = tower_compare(a0, b0, p);
        Cmp c1 = tower_compare(a1, b1, p);
        if (a != b) {
            CHECK(c0 == c1);
        } else {
            CHECK(c0 == Cmp::Equal);
            CHECK(c1 == Cmp::Unknown); // equality is only decidable at level 0
        }
        // mixed-level comparison agrees as well
        Cmp cm = tower_compare(a0, b1, p);
        if (a != b) CHECK(cm == c0);
    }
}

TEST_CASE("literal parsing accepts the documented grammar and rejects junk") {
    // the CLI and file formats share this parser
    CHECK(parse_complex("1.5-0.25i", 128).im_mid().to_double() == doctest::Approx(-0.25));
    CHECK(parse_complex("-0.25i", 128).re_mid().is_zero());
    CHECK(parse_complex("i", 128).im_mid().cmp_si(1) == 0);
    CHECK(parse_rational("6/4").value() == mpq_class(3, 2));
    CHECK(!parse_rational("1.5").has_value());
    CHECK_THROWS_AS(parse_complex("1.2.3", 128), ParseError);
    CHECK_THROWS_AS(parse_complex("", 128), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ZeroDenominator);
}
