#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qe/liouville.hpp"
#include "qe/rational.hpp"
#include "qe/rng.hpp"

using namespace qe;

namespace {

std::vector<std::vector<int>> all_plus(int n, int depth) {
    return std::vector<std::vector<int>>(static_cast<std::size_t>(n),
                                         std::vector<int>(static_cast<std::size_t>(depth), 1));
}

} // namespace

TEST_CASE("q_k sequence") {
    CHECK(qk_sequence(0).to_mpz() == 1);
    CHECK(qk_sequence(1).to_mpz() == 3);
    CHECK(qk_sequence(2).to_mpz() == pow_z(3, 81));
    CHECK(qk_sequence(3).exponent() == pow_z(3, 324));
    CHECK_THROWS_AS(qk_sequence(3).to_mpz(), DepthUnrepresentable);
    CHECK_THROWS_AS(qk_sequence(4), DepthUnrepresentable);
}

TEST_CASE("tuple construction: exact partial sums") {
    // n=1, all +: S_2 = 1/3 + 3^-81
    auto t = build_tuple(1, all_plus(1, 3), 3);
    mpq_class expect = mpq_class(1, 3) + mpq_class(1, pow_z(3, 81));
    CHECK(t.s2[0] == expect);
    CHECK(t.s1[0] == mpq_class(1, 3));

    // n=2: the l=1 term is 0^1 = 0 for i=1 and 0^0 = 1 for i=2
    auto t2 = build_tuple(2, all_plus(2, 3), 3);
    CHECK(t2.s1[0] == 0);
    CHECK(t2.s1[1] == mpq_class(1, 3));
    CHECK(t2.s2[0] == mpq_class(4, pow_z(3, 81)));

    // flipping the l=2 sign changes S_2 by exactly -2/3^81
    auto signs = all_plus(1, 3);
    signs[0][1] = -1;
    auto t3 = build_tuple(1, signs, 3);
    CHECK(t.s2[0] - t3.s2[0] == mpq_class(2, pow_z(3, 81)));

    CHECK_THROWS_AS(build_tuple(0, {}, 3), InvalidShape);
    CHECK_THROWS_AS(build_tuple(1, all_plus(1, 2), 3), InvalidShape);
}

TEST_CASE("p_k integrality holds for random sign patterns") {
    Rng rng(2024);
    for (int t = 0; t < 32; ++t) {
        int n = static_cast<int>(rng.uniform_int(1, 4));
        auto signs = all_plus(n, 3);
        for (auto &row : signs)
            for (auto &s : row) s = rng.sign();
        auto tuple = build_tuple(n, signs, 3);
        // integrality was already asserted inside; cross-check p_2 = q_2 S_2
        mpz_class q2 = pow_z(3, 81);
        for (int i = 0; i < n; ++i) {
            mpq_class lhs = tuple.s2[static_cast<std::size_t>(i)] * q2;
            CHECK(lhs.get_den() == 1);
            CHECK(lhs.get_num() == tuple.p2[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("nearest-integer distance: k=1 interval sits inside the sandwich") {
    mpfr_prec_t p = 192;
    auto t = build_tuple(1, all_plus(1, 3), 3);
    auto d = nearest_int_distance(t, 1, 1, p);
    CHECK(d.is_nearest == Verdict::Pass);
    CHECK(d.sandwich == Verdict::Pass);
    // certified interval collapses onto log(3^-80): neither endpoint can be
    // certifiably separated from it, and the interval is extremely narrow
    BallReal ln3 = BallReal::from_si(3, p).log();
    BallReal log_d = ln3.mul_si(-80);
    CHECK(!log_d.certainly_less(d.log_lo));
    CHECK(!d.log_hi.certainly_less(log_d));
    BigFloat width = BigFloat::sub(d.log_hi.upper(), d.log_lo.lower(), 64);
    CHECK(mpfr_cmp_d(width.raw(), 1e-30) < 0);
    // and the sandwich [d/2, 2d] strictly contains it
    BallReal ln2 = BallReal::from_si(2, p).log();
    CHECK((log_d - ln2).certainly_le(d.log_lo));
    CHECK(d.log_hi.certainly_le(log_d + ln2));
}

TEST_CASE("nearest-integer distance: k=0 gives ||x_1|| near 1/3") {
    mpfr_prec_t p = 192;
    auto t = build_tuple(1, all_plus(1, 3), 3);
    auto d = nearest_int_distance(t, 0, 1, p);
    CHECK(d.is_nearest == Verdict::Pass);
    BallReal log_third = -BallReal::from_si(3, p).log();
    // |x_1| = 1/3 + 3^-81 + tail: within [1/3, 1/3 + 2*3^-81]
    CHECK(d.log_lo.certainly_le(log_third + BallReal::from_d(1e-30, p)));
    CHECK(log_third.certainly_le(d.log_hi));
}

TEST_CASE("nearest-integer distance: n=2, k=1 dominant is 4 * 3^-80") {
    mpfr_prec_t p = 192;
    auto t = build_tuple(2, all_plus(2, 3), 3);
    auto d = nearest_int_distance(t, 1, 1, p);
    BallReal expect = BallReal::from_si(4, p).log() + BallReal::from_si(3, p).log().mul_si(-80);
    CHECK(!expect.certainly_less(d.log_lo));
    CHECK(!d.log_hi.certainly_less(expect));
    CHECK(d.sandwich == Verdict::Pass);
}

TEST_CASE("sign invariance: distances ignore sign flips at l <= k") {
    mpfr_prec_t p = 192;
    auto s1 = all_plus(2, 3);
    auto s2 = all_plus(2, 3);
    s2[0][0] = -1; // flip eps_1; p_1 changes for i = n, the distances do not
    s2[1][0] = -1;
    auto t1 = build_tuple(2, s1, 3), t2 = build_tuple(2, s2, 3);
    for (int i = 1; i <= 2; ++i) {
        auto d1 = nearest_int_distance(t1, 1, i, p);
        auto d2 = nearest_int_distance(t2, 1, i, p);
        CHECK(d1.log_lo.mid().equal(d2.log_lo.mid()));
        CHECK(d1.log_hi.mid().equal(d2.log_hi.mid()));
    }
    // the l=1 coefficient vanishes for i < n, so only the last row moves
    CHECK(t1.p1[1] != t2.p1[1]);
}

TEST_CASE("chain verification at k = 1 and k = 2") {
    mpfr_prec_t p = 192;
    for (int n : {1, 2, 3}) {
        auto t = build_tuple(n, all_plus(n, 3), 3);
        for (int k : {1, 2}) {
            auto rec = verify_chain(t, k, p);
            CHECK(rec.overall == Verdict::Pass);
            CHECK(rec.inequalities.size() == static_cast<std::size_t>(n + 1));
        }
    }
    auto t = build_tuple(1, all_plus(1, 3), 3);
    CHECK_THROWS_AS(verify_chain(t, 0, p), DepthExceeded);
    CHECK_THROWS_AS(verify_chain(t, 3, p), DepthExceeded);
}

TEST_CASE("the certified psi margin at k=1, n=1 is about 6.89 in logs") {
    mpfr_prec_t p = 192;
    auto t = build_tuple(1, all_plus(1, 3), 3);
    auto rec = verify_chain(t, 1, p);
    const auto &psi = rec.inequalities.back();
    CHECK(psi.verdict == Verdict::Pass);
    // margin = -81 - log(3^-80 (1 + tiny)) = 80 ln 3 - 81 ~ 6.8889831
    CHECK(psi.log_margin.lower().cmp_si(6) > 0);
    CHECK(psi.log_margin.upper().cmp_si(7) < 0);
    BigFloat approx = BigFloat::from_d(6.888983093448, 64);
    BigFloat dev = BigFloat::sub(psi.log_margin.mid(), approx, 64);
    CHECK(mpfr_cmp_d(BigFloat::abs(dev).raw(), 1e-9) < 0);
}

TEST_CASE("step-down property across sign patterns") {
    mpfr_prec_t p = 192;
    Rng rng(4242);
    for (int n : {2, 3, 4}) {
        // exhaustive when small, else 64 random patterns
        long patterns = n * 3 <= 12 ? (1l << (n * 3)) : 64;
        for (long pat = 0; pat < patterns; ++pat) {
            auto signs = all_plus(n, 3);
            if (n * 3 <= 12) {
                for (int i = 0; i < n; ++i)
                    for (int l = 0; l < 3; ++l)
                        signs[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] =
                            (pat >> (i * 3 + l)) & 1 ? 1 : -1;
            } else {
                for (auto &row : signs)
                    for (auto &s : row) s = rng.sign();
            }
            auto t = build_tuple(n, signs, 3);
            for (int k : {1, 2}) {
                auto rec = verify_chain(t, k, p);
                for (const auto &iq : rec.inequalities) CHECK(iq.verdict == Verdict::Pass);
            }
        }
    }
}

TEST_CASE("certificate aggregation") {
    auto t = build_tuple(2, all_plus(2, 3), 3);
    auto cert = make_certificate(t, 2, 192);
    CHECK(cert.all_pass);
    CHECK(cert.records.size() == 2);
    CHECK(cert.signs_row_major == "++++++");
    CHECK_THROWS_AS(make_certificate(t, 3, 192), DepthExceeded);
}

TEST_CASE("durand chain check at ordinary scale") {
    mpfr_prec_t p = 192;
    // x = 1/3 + 3^-81 (+ certified tail slack), q = 3, k = 1, n = 1
    mpq_class x = mpq_class(1, 3) + mpq_class(1, pow_z(3, 81));
    BallReal xb = BallReal::from_mpq(x, p).widened(BigFloat::from_d(1e-45, 32));
    auto rec = verify_durand({xb}, 3, 1, p);
    CHECK(rec.overall == Verdict::Pass);

    // an enclosure of an integer fails strict positivity
    BallReal half = BallReal::from_mpq(mpq_class(1, 2), p);
    auto rec2 = verify_durand({BallReal::from_si(1, p)}, 2, 1, p);
    CHECK(rec2.inequalities.front().verdict == Verdict::Fail);
    CHECK(rec2.overall == Verdict::Fail);

    // q = 1, k = 1, x = 1/2: ||x|| = 1/2 <= 1
    auto rec3 = verify_durand({half}, 1, 1, p);
    CHECK(rec3.overall == Verdict::Pass);
}

TEST_CASE("sandwich and nearest-integer certification at both depths") {
    mpfr_prec_t p = 192;
    for (int n : {1, 2, 3}) {
        auto t = build_tuple(n, all_plus(n, 3), 3);
        for (int k : {1, 2}) {
            for (int i = 1; i <= n; ++i) {
                auto d = nearest_int_distance(t, k, i, p);
                CHECK(d.sandwich == Verdict::Pass);
                CHECK(d.is_nearest == Verdict::Pass);
            }
        }
    }
}
