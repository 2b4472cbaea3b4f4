// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qe/bounds.hpp"
#include "qe/dependence.hpp"
#include "qe/liouville.hpp"
#include "qe/rational.hpp"
#include "qe/riemann.hpp"
#include "qe/serre.hpp"
#include "qe/suites.hpp"
#include "qe/vandermonde.hpp"
#include "qe/weierstrass.hpp"

using namespace qe;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, bool pass, const std::string &what) {
    std::printf("criterion %2d: %s - %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

bool suite_all_pass(const SuiteResult &res, std::string *why = nullptr) {
    for (const auto &c : res.checks) {
        if (c.verdict != Verdict::Pass) {
            if (why) *why = c.name + " -> " + to_string(c.verdict);
            return false;
        }
    }
    return true;
}

// 1. Legendre relation residual at 128 and 256 bits, presets + 20 random.
void criterion_1() {
    Timer t;
    bool ok = true;
    std::string why;
    for (mpfr_prec_t p : {128, 256}) {
        SuiteOptions opt;
        opt.trials = 20;
        opt.prec = p;
        opt.seed = 1;
        SuiteResult res = run_suite("legendre", opt);
        ok = ok && suite_all_pass(res, &why);
    }
    double secs = t.seconds();
    ok = ok && secs < 30.0;
    report(1, ok, "Legendre residual <= 2^-(p-16) on presets + 20 random lattices at p=128,256 (" +
                      std::to_string(secs).substr(0, 5) + "s)" + (why.empty() ? "" : " [" + why + "]"));
}

// 2. Quasi-periodicity residuals for wp, zeta, sigma, f_u at p = 128.
void criterion_2() {
    bool ok = true;
    std::string why;
    for (const char *suite : {"periodicity", "sigma-monodromy", "lambda"}) {
        SuiteOptions opt;
        opt.trials = 50;
        opt.prec = 128;
        opt.seed = 2;
        SuiteResult res = run_suite(suite, opt);
        for (const auto &c : res.checks) {
            if (c.name.rfind("lambda-legendre", 0) == 0) continue; // criterion 3
            if (c.verdict != Verdict::Pass) {
                ok = false;
                why = c.name;
            }
        }
    }
    report(2, ok, "quasi-periodicity residuals (50 trials each for wp/zeta/sigma/f_u) <= 2^-112" +
                      (why.empty() ? std::string() : " [" + why + "]"));
}

// 3. lambda(u,w1) w2 - lambda(u,w2) w1 = 2 pi i u, 50 trials.
void criterion_3() {
    SuiteOptions opt;
    opt.trials = 50;
    opt.prec = 128;
    opt.seed = 3;
    SuiteResult res = run_suite("lambda", opt);
    bool ok = true;
    std::string why;
    int count = 0;
    for (const auto &c : res.checks) {
        if (c.name.rfind("lambda-legendre", 0) != 0) continue;
        ++count;
        if (c.verdict != Verdict::Pass) {
            ok = false;
            why = c.name;
        }
    }
    ok = ok && count == 50;
    report(3, ok, "2 pi i u consequence residual <= 2^-112, 50 trials" +
                      (why.empty() ? std::string() : " [" + why + "]"));
}

// 4. Confluent Vandermonde oracle equivalence + superfactorials.
void criterion_4() {
    Timer t;
    const unsigned long expect[] = {1, 1, 1, 2, 12, 288, 34560, 24883200};
    bool ok = true;
    for (unsigned long k = 0; k < 8; ++k) ok = ok && superfactorial_k(k) == expect[k];

    Rng rng(4);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        ExactConfluentSystem sys;
        int m = static_cast<int>(rng.uniform_int(1, 4));
        for (int j = 0; j < m; ++j) {
            mpq_class re(rng.uniform_int(-20, 20), rng.uniform_int(1, 9));
            mpq_class im(rng.uniform_int(-20, 20), rng.uniform_int(1, 9));
            re.canonicalize();
            im.canonicalize();
            sys.blocks.emplace_back(RatComplex(re, im), static_cast<int>(rng.uniform_int(1, 4)));
        }
        sys.shift = mpq_class(rng.uniform_int(0, 10));
        ok = det_closed_form_exact(sys) == det_direct_exact(build_matrix_exact(sys));
    }
    for (int trial = 0; trial < 200 && ok; ++trial) {
        ConfluentSystem sys;
        sys.prec = 128;
        int m = static_cast<int>(rng.uniform_int(1, 4));
        for (int j = 0; j < m; ++j) {
            double r = rng.uniform(0.5, 2.0), th = rng.uniform(0.0, 6.28318);
            sys.blocks.emplace_back(BallComplex::from_parts(BallReal::from_d(r * std::cos(th), 128),
                                                            BallReal::from_d(r * std::sin(th), 128)),
                                    static_cast<int>(rng.uniform_int(1, 4)));
        }
        sys.shift = BallReal::from_d(rng.uniform(0.0, 3.0), 128);
        ok = (det_closed_form(sys) - det_direct(build_matrix(sys), 128)).contains_zero();
    }
    double secs = t.seconds();
    ok = ok && secs < 60.0;
    report(4, ok, "Vandermonde closed form == direct determinant (100 exact + 200 ball) and k(0..7) (" +
                      std::to_string(secs).substr(0, 5) + "s)");
}

// 5. xi lower bound with the inverse-norm instantiation, 50 instances.
void criterion_5() {
    Rng rng(5);
    bool ok = true;
    int done = 0;
    while (done < 50) {
        int m = static_cast<int>(rng.uniform_int(1, 3));
        int T = static_cast<int>(rng.uniform_int(0, 2));
        std::vector<BallComplex> w;
        for (int j = 0; j < m; ++j) {
            double r = rng.uniform(0.4, 2.2), th = rng.uniform(0.0, 6.28318);
            w.push_back(BallComplex::from_parts(BallReal::from_d(r * std::cos(th), 128),
                                                BallReal::from_d(r * std::sin(th), 128)));
        }
        bool distinct = true;
        for (std::size_t i = 0; i < w.size() && distinct; ++i)
            for (std::size_t j = i + 1; j < w.size() && distinct; ++j)
                distinct = (w[i] - w[j]).certainly_nonzero();
        if (!distinct) continue;
        std::vector<std::vector<BallComplex>> q(static_cast<std::size_t>(T + 1));
        bool nonzero = false;
        for (auto &row : q) {
            for (int j = 0; j < m; ++j) {
                double re = rng.uniform(-3.0, 3.0), im = rng.uniform(-3.0, 3.0);
                row.push_back(BallComplex::from_parts(BallReal::from_d(re, 128), BallReal::from_d(im, 128)));
                nonzero = nonzero || std::abs(re) + std::abs(im) > 1e-6;
            }
        }
        if (!nonzero) continue;
        BallReal A = BallReal::from_d(rng.uniform(0.0, 100.0), 128);
        auto rep = xi_lower_bound_check(w, q, T, A, 128);
        if (rep.verdict != Verdict::Pass) ok = false;
        ++done;
    }
    report(5, ok, "max |xi_a| >= eta max(1,A)^(-mT(T+1)) on 50 instances (m<=3, T<=2, A in [0,100])");
}

// 6. Detector agreement + square-lattice torsion relation.
void criterion_6() {
    Rng rng(6);
    bool ok = true;
    std::string why;
    for (int t = 0; t < 100 && ok; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 3));
        long L = rng.uniform_int(1, 3);
        std::vector<mpq_class> v;
        for (std::size_t i = 0; i < n; ++i) {
            mpq_class q(rng.uniform_int(1, 12), rng.uniform_int(1, 12));
            q.canonicalize();
            v.push_back(q);
        }
        auto ex = find_multiplicative_relation(v, L, SearchStrategy::Exhaustive);
        auto red = find_multiplicative_relation(v, L, SearchStrategy::Reduction);
        if (ex.kind != red.kind || ex.relation != red.relation) {
            ok = false;
            why = "strategy mismatch";
        }
    }

    mpfr_prec_t p = 128;
    Lattice lat = Lattice::preset("square", p);
    WeierstrassContext ctx(lat);
    SerrePoint sp(ctx, lat.omega1().mul_2si(-1));
    auto verdict = check_condition_iv(lat, {}, {sp}, 4, p);
    if (verdict.kind != RelationKind::Dependent || verdict.relation != std::vector<long>{0, 1, 2}) {
        ok = false;
        why = "torsion relation not (0,1,2)";
    } else {
        BigFloat tol(32);
        mpfr_set_ui_2exp(tol.raw(), 1u, -static_cast<long>(p - 20), MPFR_RNDN);
        if (mpfr_cmp(verdict.residual.rad().raw(), tol.raw()) > 0) {
            ok = false;
            why = "torsion residual radius too large";
        }
    }
    report(6, ok, "LLL-path == exhaustive on 100 rational configs; torsion u=w1/2 gives 2*lambda+(0,2pi i)=0" +
                      (why.empty() ? std::string() : " [" + why + "]"));
}

// 7. Torsion periodicity for u in {w1/2, w1/3, (w1+w2)/2}.
void criterion_7() {
    SuiteOptions opt;
    opt.trials = 10;
    opt.prec = 128;
    opt.seed = 7;
    SuiteResult res = run_suite("torsion", opt);
    std::string why;
    bool ok = suite_all_pass(res, &why);
    report(7, ok, "f_u^h e^(t0 z) lattice-periodic at 10 random z, both periods, radius <= 2^-108" +
                      (why.empty() ? std::string() : " [" + why + "]"));
}

// 8. Liouville certificates for n in {1,2,3}, 16 sign patterns each.
void criterion_8() {
    Timer t;
    bool ok = true;
    std::string why;
    mpfr_prec_t p = 192;
    Rng rng(8);
    for (int n : {1, 2, 3}) {
        for (int pat = 0; pat < 16 && ok; ++pat) {
            std::vector<std::vector<int>> signs(static_cast<std::size_t>(n), std::vector<int>(3, 1));
            for (auto &row : signs)
                for (auto &s : row) s = rng.sign();
            auto tuple = build_tuple(n, signs, 3);
            for (int k : {1, 2}) {
                auto rec = verify_chain(tuple, k, p);
                if (rec.overall != Verdict::Pass) {
                    ok = false;
                    why = "n=" + std::to_string(n) + " pattern " + std::to_string(pat) + " k=" + std::to_string(k);
                }
            }
        }
    }
    // the specific margin check at n=1, k=1: >= 6.8 in log scale
    auto t1 = build_tuple(1, {{1, 1, 1}}, 3);
    auto rec = verify_chain(t1, 1, p);
    BigFloat margin_lb = rec.inequalities.back().log_margin.lower();
    if (!(rec.inequalities.back().verdict == Verdict::Pass && mpfr_cmp_d(margin_lb.raw(), 6.8) >= 0)) {
        ok = false;
        why = "psi margin below 6.8";
    }
    double secs = t.seconds();
    ok = ok && secs < 10.0;
    report(8, ok, "chain certified at k=1,2 for n=1..3 x 16 sign patterns; ||q_1 x_1|| vs e^-81 margin >= 6.8 (" +
                      std::to_string(secs).substr(0, 5) + "s)" + (why.empty() ? "" : " [" + why + "]"));
}

// 9. Fel'dman inequality on 100 random polynomials.
void criterion_9() {
    Rng rng(9);
    bool ok = true;
    int done = 0;
    while (done < 100) {
        int D = static_cast<int>(rng.uniform_int(1, 6));
        IntPolynomial F;
        for (int i = 0; i <= D; ++i) F.coeffs.emplace_back(rng.uniform_int(-50, 50));
        if (F.degree() < 1) continue;
        double re = rng.uniform(-10.0, 10.0), im = rng.uniform(-10.0, 10.0);
        auto rep = feldman_check(F, BallComplex::from_parts(BallReal::from_d(re, 128), BallReal::from_d(im, 128)),
                                 128);
        if (rep.verdict != Verdict::Pass) ok = false;
        ++done;
    }
    report(9, ok, "|theta-alpha|^l <= D^(3D-2) H^(2D) |F(theta)| on 100 random (F, theta)");
}

// 10. Baker one-logarithm bound on 50 random rational pairs.
void criterion_10() {
    Rng rng(10);
    bool ok = true;
    int done = 0;
    while (done < 50) {
        mpq_class alpha(rng.uniform_int(1, 400), rng.uniform_int(1, 400));
        mpq_class beta(rng.uniform_int(-400, 400), rng.uniform_int(1, 400));
        alpha.canonicalize();
        beta.canonicalize();
        if (alpha == 0 || beta == 0) continue;
        auto rep = baker_lower_bound(alpha, beta, 1, 128);
        if (rep.verdict != Verdict::Pass) ok = false;
        ++done;
    }
    report(10, ok, "|beta - log alpha| >= exp(-2^26 D^3 log A log B) on 50 rational pairs, log-space bound");
}

// 11. Riemann tail: zeta(3) value and 50 random points.
void criterion_11() {
    bool ok = true;
    std::string why;
    ZetaDomainPoint s3(BallComplex::from_si(3, 0, 64));
    BallComplex z3 = zeta_r(s3, 30);
    if (!z3.real().contains(BigFloat::from_d(1.2020569, 64))) {
        ok = false;
        why = "zeta(3) enclosure";
    }
    auto rep3 = tail_inequality_check(s3, 64);
    if (rep3.verdict != Verdict::Pass) {
        ok = false;
        why = "|zeta(3)-1| < 1/4";
    }
    Rng rng(11);
    for (int t = 0; t < 50 && ok; ++t) {
        double sigma = rng.uniform(3.0, 20.0);
        double im = rng.uniform(-100.0, 100.0);
        ZetaDomainPoint s(BallComplex::from_parts(BallReal::from_d(sigma, 64), BallReal::from_d(im, 64)));
        if (tail_inequality_check(s, 64).verdict != Verdict::Pass) {
            ok = false;
            why = "random point";
        }
    }
    report(11, ok, "zeta_R(3) contains 1.2020569 and |zeta_R(s)-1| < 2^(1-sigma) on 50 random s" +
                       (why.empty() ? std::string() : " [" + why + "]"));
}

// 12. Differential equation and finite-difference cross-checks.
void criterion_12() {
    SuiteOptions opt;
    opt.trials = 50;
    opt.prec = 128;
    opt.seed = 12;
    SuiteResult res = run_suite("ode", opt);
    std::string why;
    bool ok = suite_all_pass(res, &why);
    report(12, ok, "wp'^2 - 4 wp^3 + g2 wp + g3 residual at 50 points; FD zeta' ~ -wp within O(h^2)" +
                       (why.empty() ? std::string() : " [" + why + "]"));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures == 0) std::printf("acceptance: all 12 criteria PASS\n");
    else std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
