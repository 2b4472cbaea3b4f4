#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qe/rng.hpp"
#include "qe/vandermonde.hpp"

using namespace qe;

TEST_CASE("superfactorial table A000178") {
    const unsigned long expect[] = {1, 1, 1, 2, 12, 288, 34560, 24883200};
    for (unsigned long t = 0; t < 8; ++t) CHECK(superfactorial_k(t) == expect[t]);
    CHECK(k_multi({2, 3}) == 2);
    CHECK(k_multi({4, 4}) == 144);
}

TEST_CASE("matrix builder worked examples") {
    // blocks [(w,1),(v,1)], r_t = T^t -> plain Vandermonde
    ExactConfluentSystem plain;
    plain.blocks = {{RatComplex::from_si(5), 1}, {RatComplex::from_si(7), 1}};
    plain.shift = 0;
    auto m = build_matrix_exact(plain);
    CHECK(m[0][0] == RatComplex::from_si(1));
    CHECK(m[0][1] == RatComplex::from_si(1));
    CHECK(m[1][0] == RatComplex::from_si(5));
    CHECK(m[1][1] == RatComplex::from_si(7));

    // blocks [(w,2)], r_t = T^t -> [[1,0],[w,w]]
    ExactConfluentSystem conf;
    conf.blocks = {{RatComplex::from_si(3), 2}};
    conf.shift = 0;
    auto c = build_matrix_exact(conf);
    CHECK(c[0][0] == RatComplex::from_si(1));
    CHECK(c[0][1] == RatComplex::from_si(0));
    CHECK(c[1][0] == RatComplex::from_si(3));
    CHECK(c[1][1] == RatComplex::from_si(3));

    // with shift A: [[1,A],[w,(A+1)w]]
    conf.shift = 4;
    auto s = build_matrix_exact(conf);
    CHECK(s[0][1] == RatComplex::from_si(4));
    CHECK(s[1][1] == RatComplex::from_si(15));
}

TEST_CASE("closed form matches hand determinants") {
    // [(w1,1),(w2,1)] -> w2 - w1
    ExactConfluentSystem v2;
    v2.blocks = {{RatComplex::from_si(2), 1}, {RatComplex::from_si(9), 1}};
    v2.shift = 0;
    CHECK(det_closed_form_exact(v2) == RatComplex::from_si(7));

    // [(w,2)] -> w
    ExactConfluentSystem c1;
    c1.blocks = {{RatComplex::from_si(6), 2}};
    c1.shift = 0;
    CHECK(det_closed_form_exact(c1) == RatComplex::from_si(6));
    CHECK(det_direct_exact(build_matrix_exact(c1)) == RatComplex::from_si(6));

    // [(w1,2),(w2,1)] -> w1 (w2-w1)^2 against the direct 3x3 expansion
    ExactConfluentSystem c2;
    c2.blocks = {{RatComplex::from_si(2), 2}, {RatComplex::from_si(5), 1}};
    c2.shift = 0;
    CHECK(det_closed_form_exact(c2) == RatComplex::from_si(2 * 9));
    CHECK(det_direct_exact(build_matrix_exact(c2)) == RatComplex::from_si(18));
}

TEST_CASE("direct determinant basics") {
    mpfr_prec_t p = 128;
    std::vector<std::vector<BallComplex>> id(3, std::vector<BallComplex>(3, BallComplex(p)));
    for (int i = 0; i < 3; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = BallComplex::from_si(1, 0, p);
    CHECK((det_direct(id, p) - BallComplex::from_si(1, 0, p)).contains_zero());

    std::vector<std::vector<BallComplex>> m{
        {BallComplex::from_si(1, 0, p), BallComplex::from_si(1, 0, p)},
        {BallComplex::from_si(2, 0, p), BallComplex::from_si(3, 0, p)}};
    CHECK((det_direct(m, p) - BallComplex::from_si(1, 0, p)).contains_zero());
}

TEST_CASE("oracle equivalence on random systems, exact and ball paths") {
    Rng rng(20240808);
    for (int t = 0; t < 100; ++t) {
        ExactConfluentSystem sys;
        int m = static_cast<int>(rng.uniform_int(1, 4));
        for (int j = 0; j < m; ++j) {
            mpq_class re(rng.uniform_int(-12, 12), rng.uniform_int(1, 7));
            mpq_class im(rng.uniform_int(-12, 12), rng.uniform_int(1, 7));
            re.canonicalize();
            im.canonicalize();
            sys.blocks.emplace_back(RatComplex(re, im), static_cast<int>(rng.uniform_int(1, 4)));
        }
        sys.shift = mpq_class(rng.uniform_int(0, 6));
        CHECK(det_closed_form_exact(sys) == det_direct_exact(build_matrix_exact(sys)));
    }
    for (int t = 0; t < 200; ++t) {
        ConfluentSystem sys;
        sys.prec = 128;
        int m = static_cast<int>(rng.uniform_int(1, 4));
        for (int j = 0; j < m; ++j) {
            double r = rng.uniform(0.5, 2.0), th = rng.uniform(0.0, 6.28318);
            sys.blocks.emplace_back(
                BallComplex::from_parts(BallReal::from_d(r * std::cos(th), 128),
                                        BallReal::from_d(r * std::sin(th), 128)),
                static_cast<int>(rng.uniform_int(1, 4)));
        }
        sys.shift = BallReal::from_d(rng.uniform(0.0, 3.0), 128);
        CHECK((det_closed_form(sys) - det_direct(build_matrix(sys), 128)).contains_zero());
    }
}

TEST_CASE("determinant does not depend on the monic polynomial sequence") {
    Rng rng(99);
    for (int t = 0; t < 20; ++t) {
        ConfluentSystem sys;
        sys.prec = 128;
        int m = static_cast<int>(rng.uniform_int(1, 3));
        int dmax = 0;
        for (int j = 0; j < m; ++j) {
            int tj = static_cast<int>(rng.uniform_int(1, 3));
            dmax = std::max(dmax, tj);
            sys.blocks.emplace_back(
                BallComplex::from_parts(BallReal::from_d(rng.uniform(-2.0, 2.0), 128),
                                        BallReal::from_d(rng.uniform(0.3, 2.0), 128)),
                tj);
        }
        sys.shift = BallReal(128); // r_t = T^t
        BallComplex d0 = det_closed_form(sys);
        BallComplex d1 = det_direct(build_matrix(sys), 128);
        sys.shift = BallReal::from_d(rng.uniform(0.5, 20.0), 128); // r_t = (A+T)^t
        BallComplex d2 = det_direct(build_matrix(sys), 128);
        // random monic sequence: r_t = T^t + lower random coefficients
        sys.poly.clear();
        for (int deg = 0; deg < dmax; ++deg) {
            std::vector<BallComplex> row;
            for (int c = 0; c < deg; ++c)
                row.push_back(BallComplex::from_parts(BallReal::from_d(rng.uniform(-3.0, 3.0), 128),
                                                      BallReal::from_d(rng.uniform(-3.0, 3.0), 128)));
            row.push_back(BallComplex::from_si(1, 0, 128)); // monic
            sys.poly.push_back(row);
        }
        BallComplex d3 = det_direct(build_matrix(sys), 128);
        CHECK((d0 - d1).contains_zero());
        CHECK((d0 - d2).contains_zero());
        CHECK((d0 - d3).contains_zero());
    }
}

TEST_CASE("homogeneity of degree D(D-1)/2 in the nodes") {
    Rng rng(7);
    ConfluentSystem sys;
    sys.prec = 128;
    sys.blocks = {{BallComplex::from_parts(BallReal::from_d(1.1, 128), BallReal::from_d(0.3, 128)), 2},
                  {BallComplex::from_parts(BallReal::from_d(-0.7, 128), BallReal::from_d(0.9, 128)), 3}};
    sys.shift = BallReal(128);
    int D = sys.dimension();
    BallComplex c = BallComplex::from_parts(BallReal::from_d(0.8, 128), BallReal::from_d(-0.5, 128));
    ConfluentSystem scaled = sys;
    for (auto &[w, t] : scaled.blocks) w = w * c;
    BallComplex lhs = det_closed_form(scaled);
    BallComplex rhs = det_closed_form(sys) * c.pow_si(D * (D - 1) / 2);
    CHECK((lhs - rhs).contains_zero());
}

TEST_CASE("vanishing cases: shared node or zero node") {
    ExactConfluentSystem shared;
    shared.blocks = {{RatComplex::from_si(4), 2}, {RatComplex::from_si(4), 1}};
    shared.shift = 0;
    CHECK(det_closed_form_exact(shared).is_zero());
    CHECK(det_direct_exact(build_matrix_exact(shared)).is_zero());

    ExactConfluentSystem zero;
    zero.blocks = {{RatComplex::from_si(0), 2}, {RatComplex::from_si(3), 1}};
    zero.shift = 0;
    CHECK(det_closed_form_exact(zero).is_zero());
    CHECK(det_direct_exact(build_matrix_exact(zero)).is_zero());

    // ball path: the Hadamard fallback must keep 0 inside
    ConfluentSystem bshared;
    bshared.prec = 128;
    BallComplex w = BallComplex::from_parts(BallReal::from_d(1.25, 128), BallReal::from_d(0.5, 128));
    bshared.blocks = {{w, 2}, {w, 1}};
    bshared.shift = BallReal(128);
    CHECK(det_direct(build_matrix(bshared), 128).contains_zero());
    CHECK(det_closed_form(bshared).contains_zero());
}

TEST_CASE("coinciding nodes admit a nontrivial kernel vector") {
    // With w1 = w2 the columns of the two blocks coincide pairwise, so an
    // explicit signed pairing is a kernel vector of the linear system xi_a = 0.
    ExactConfluentSystem shared;
    shared.blocks = {{RatComplex::from_si(4), 2}, {RatComplex::from_si(4), 2}};
    shared.shift = 0;
    auto m = build_matrix_exact(shared);
    // columns: (j=1,t=0),(j=1,t=1),(j=2,t=0),(j=2,t=1); kernel (1,0,-1,0)
    for (std::size_t a = 0; a < m.size(); ++a) {
        RatComplex combo = m[a][0] - m[a][2];
        CHECK(combo.is_zero());
    }
}

TEST_CASE("xi lower bound: worked cases and validation") {
    mpfr_prec_t p = 128;
    // m=1, T=0, q=1, A=0: bound = 1, max |xi| = max(1, |w|) >= 1
    {
        std::vector<BallComplex> w{BallComplex::from_parts(BallReal::from_d(0.6, p), BallReal::from_d(0.1, p))};
        std::vector<std::vector<BallComplex>> q{{BallComplex::from_si(1, 0, p)}};
        auto rep = xi_lower_bound_check(w, q, 0, BallReal(p), p);
        CHECK(rep.verdict == Verdict::Pass);
    }
    // all-zero coefficients rejected
    {
        std::vector<BallComplex> w{BallComplex::from_si(2, 0, p)};
        std::vector<std::vector<BallComplex>> q{{BallComplex(p)}};
        CHECK_THROWS_AS(xi_lower_bound_check(w, q, 0, BallReal(p), p), ZeroInput);
    }
    // overlapping nodes rejected
    {
        BallComplex w0 = BallComplex::from_si(1, 1, p).widened(BigFloat::from_d(0.5, 32));
        std::vector<BallComplex> w{w0, BallComplex::from_si(1, 1, p)};
        std::vector<std::vector<BallComplex>> q{{BallComplex::from_si(1, 0, p), BallComplex::from_si(1, 0, p)}};
        CHECK_THROWS_AS(xi_lower_bound_check(w, q, 0, BallReal(p), p), NotDistinct);
    }
    // random m=2, T=1, A=10
    Rng rng(55);
    for (int t = 0; t < 10; ++t) {
        std::vector<BallComplex> w;
        for (int j = 0; j < 2; ++j) {
            double r = rng.uniform(0.5, 2.0), th = rng.uniform(0.0, 6.28318);
            w.push_back(BallComplex::from_parts(BallReal::from_d(r * std::cos(th), p),
                                                BallReal::from_d(r * std::sin(th), p)));
        }
        if (!(w[0] - w[1]).certainly_nonzero()) continue;
        std::vector<std::vector<BallComplex>> q(2);
        for (auto &row : q)
            for (int j = 0; j < 2; ++j)
                row.push_back(BallComplex::from_parts(BallReal::from_d(rng.uniform(-2.0, 2.0), p),
                                                      BallReal::from_d(rng.uniform(-2.0, 2.0), p)));
        auto rep = xi_lower_bound_check(w, q, 1, BallReal::from_si(10, p), p);
        CHECK(rep.verdict == Verdict::Pass);
    }
}

TEST_CASE("plain random matrices: exact elimination equals the ball path") {
    Rng rng(515151);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 5;
        std::vector<std::vector<RatComplex>> ex(n, std::vector<RatComplex>(n));
        std::vector<std::vector<BallComplex>> bl(n, std::vector<BallComplex>(n));
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                mpq_class re(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
                mpq_class im(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
                re.canonicalize();
                im.canonicalize();
                ex[r][c] = RatComplex(re, im);
                bl[r][c] = BallComplex::from_mpq(re, im, 128);
            }
        }
        RatComplex exact = det_direct_exact(ex);
        BallComplex ball = det_direct(bl, 128);
        CHECK((ball - exact.to_ball(128)).contains_zero());
    }
}
