#include "qe/suites.hpp"

#include <algorithm>
#include <cmath>

#include "qe/dependence.hpp"
#include "qe/serre.hpp"
#include "qe/vandermonde.hpp"
#include "qe/weierstrass.hpp"

namespace qe {

void SuiteResult::add(const std::string &name, Verdict v, const std::string &residual) {
    checks.push_back({name, v, residual});
    ok = ok && v == Verdict::Pass;
}

std::vector<std::string> suite_names() {
    return {"legendre", "periodicity", "sigma-monodromy", "ode", "lambda", "torsion", "vandermonde", "all"};
}

Verdict residual_verdict(const BallReal &residual, mpfr_prec_t prec, int guard_bits) {
    if (!residual.is_finite()) return Verdict::Unknown;
    if (!residual.contains_zero()) return Verdict::Fail;
    BigFloat tol(BallReal::radius_prec);
    mpfr_set_ui_2exp(tol.raw(), 1u, -static_cast<long>(prec - guard_bits), MPFR_RNDN);
    BigFloat ub = residual.abs_ub();
    return mpfr_cmp(ub.raw(), tol.raw()) <= 0 ? Verdict::Pass : Verdict::Unknown;
}

Verdict residual_verdict(const BallComplex &residual, mpfr_prec_t prec, int guard_bits) {
    if (!residual.is_finite()) return Verdict::Unknown;
    if (!residual.contains_zero()) return Verdict::Fail;
    BigFloat tol(BallReal::radius_prec);
    mpfr_set_ui_2exp(tol.raw(), 1u, -static_cast<long>(prec - guard_bits), MPFR_RNDN);
    BigFloat ub = residual.abs_ub();
    return mpfr_cmp(ub.raw(), tol.raw()) <= 0 ? Verdict::Pass : Verdict::Unknown;
}

Lattice random_lattice(Rng &rng, mpfr_prec_t prec) {
    double r = rng.uniform(0.7, 1.3);
    double th = rng.uniform(-0.3, 0.3);
    double tx = rng.uniform(-0.45, 0.45);
    double ty = rng.uniform(0.85, 1.6);
    BallComplex w1 = BallComplex::from_parts(BallReal::from_d(r * std::cos(th), prec),
                                             BallReal::from_d(r * std::sin(th), prec));
    BallComplex tau = BallComplex::from_parts(BallReal::from_d(tx, prec), BallReal::from_d(ty, prec));
    return Lattice::make(w1, tau * w1, prec);
}

BallComplex random_cell_point(const Lattice &lat, Rng &rng, mpfr_prec_t prec) {
    double x = rng.uniform(0.08, 0.92);
    double y = rng.uniform(0.08, 0.92);
    return lat.omega1().mul_real(BallReal::from_d(x, prec)) +
           lat.omega2().mul_real(BallReal::from_d(y, prec));
}

namespace {

Lattice suite_lattice(const SuiteOptions &opt) {
    if (opt.omegas) return Lattice::make(opt.omegas->first, opt.omegas->second, opt.prec);
    return Lattice::preset(opt.preset, opt.prec);
}

std::pair<long, long> random_small_pair(Rng &rng, long bound) {
    long a = 0, b = 0;
    while (a == 0 && b == 0) {
        a = rng.uniform_int(-bound, bound);
        b = rng.uniform_int(-bound, bound);
    }
    return {a, b};
}

void suite_legendre(SuiteResult &res, const SuiteOptions &opt) {
    for (const auto &name : Lattice::preset_names()) {
        Lattice lat = Lattice::preset(name, opt.prec);
        res.add("legendre[" + name + "]", residual_verdict(lat.legendre_residual(), opt.prec),
                lat.legendre_residual().to_string());
    }
    Rng rng(opt.seed);
    for (long t = 0; t < opt.trials; ++t) {
        Lattice lat = random_lattice(rng, opt.prec);
        res.add("legendre[random#" + std::to_string(t) + "]",
                residual_verdict(lat.legendre_residual(), opt.prec), lat.legendre_residual().to_string());
    }
}

void suite_periodicity(SuiteResult &res, const SuiteOptions &opt) {
    Lattice lat = suite_lattice(opt);
    WeierstrassContext ctx(lat);
    Rng rng(opt.seed);
    for (long t = 0; t < opt.trials; ++t) {
        BallComplex z = random_cell_point(lat, rng, opt.prec);
        auto [a, b] = random_small_pair(rng, 5);
        BallComplex omega = lat.point(a, b).value;
        BallComplex rp = ctx.wp(z + omega) - ctx.wp(z);
        res.add("wp-periodic#" + std::to_string(t), residual_verdict(rp, opt.prec), rp.to_string());
        BallComplex rz = ctx.zeta(z + omega) - ctx.zeta(z) - lat.quasi_period(a, b);
        res.add("zeta-quasi#" + std::to_string(t), residual_verdict(rz, opt.prec), rz.to_string());
    }
}

double mid_abs(const BallComplex &z) {
    return std::hypot(z.re_mid().to_double(), z.im_mid().to_double());
}

// Extra bits required to keep absolute residual error below 2^-(prec-16)
// when intermediate values reach e^nats.
mpfr_prec_t exponent_boost(double nats) {
    if (!(nats > 0)) return 0;
    return static_cast<mpfr_prec_t>(nats * 1.4427) + 32;
}

Lattice suite_lattice_at(const SuiteOptions &opt, mpfr_prec_t prec) {
    if (opt.omegas) return Lattice::make(opt.omegas->first, opt.omegas->second, prec);
    return Lattice::preset(opt.preset, prec);
}

void suite_sigma_monodromy(SuiteResult &res, const SuiteOptions &opt) {
    Lattice base = suite_lattice(opt);
    struct Trial {
        double x, y;
        long a, b;
    };
    // Draw the trials first: sigma at z + a w1 + b w2 has magnitude around
    // e^(Re eta(w)(z + w/2)), and the working precision must absorb it.
    std::vector<Trial> trials;
    Rng rng(opt.seed);
    double max_nats = 0;
    for (long t = 0; t < opt.trials; ++t) {
        Trial tr;
        tr.x = rng.uniform(0.08, 0.92);
        tr.y = rng.uniform(0.08, 0.92);
        auto [a, b] = random_small_pair(rng, 5);
        tr.a = a;
        tr.b = b;
        trials.push_back(tr);
        double eta = mid_abs(base.quasi_period(a, b));
        double omega = mid_abs(base.point(a, b).value);
        double zabs = mid_abs(base.omega1()) + mid_abs(base.omega2());
        max_nats = std::max(max_nats, (eta + 1.0) * (zabs + omega / 2 + omega + 2.0));
    }
    mpfr_prec_t pw = opt.prec + exponent_boost(max_nats);
    Lattice lat = suite_lattice_at(opt, pw);
    WeierstrassContext ctx(lat);
    for (std::size_t t = 0; t < trials.size(); ++t) {
        const Trial &tr = trials[t];
        BallComplex z = lat.omega1().mul_real(BallReal::from_d(tr.x, pw)) +
                        lat.omega2().mul_real(BallReal::from_d(tr.y, pw));
        BallComplex omega = lat.point(tr.a, tr.b).value;
        BallComplex eta = lat.quasi_period(tr.a, tr.b);
        BallComplex factor = (eta * (z + omega.mul_2si(-1))).exp();
        BallComplex rhs = ctx.sigma(z) * factor;
        if (Lattice::epsilon(tr.a, tr.b) < 0) rhs = -rhs;
        BallComplex r = ctx.sigma(z + omega) - rhs;
        res.add("sigma-monodromy#" + std::to_string(t), residual_verdict(r, opt.prec), r.to_string());
    }
}

void suite_ode(SuiteResult &res, const SuiteOptions &opt) {
    // wp'^2 and wp^3 reach ~1/dist^6 near the cell corners; reserve headroom
    // so the absolute residual tolerance is met after rounding.
    mpfr_prec_t pw = opt.prec + 64;
    Lattice lat = suite_lattice_at(opt, pw);
    WeierstrassContext ctx(lat);
    Rng rng(opt.seed);
    for (long t = 0; t < opt.trials; ++t) {
        BallComplex z = random_cell_point(lat, rng, opt.prec);
        auto v = ctx.eval_all(z);
        BallComplex r = v.wp_prime.pow_si(2) - v.wp.pow_si(3).mul_si(4) + lat.g2() * v.wp + lat.g3();
        res.add("ode#" + std::to_string(t), residual_verdict(r, opt.prec), r.to_string());
    }
    // central finite differences, h = 2^-(prec/3)
    long hexp = -static_cast<long>(opt.prec / 3);
    BallComplex h = BallComplex::from_si(1, 0, opt.prec).mul_2si(hexp);
    for (long t = 0; t < std::max(1l, opt.trials / 5); ++t) {
        BallComplex z = random_cell_point(lat, rng, opt.prec);
        auto v = ctx.eval_all(z);
        // zeta' = -wp:  (zeta(z+h) - zeta(z-h)) / 2h + wp(z) = O(h^2) * wp''
        BallComplex fd = (ctx.zeta(z + h) - ctx.zeta(z - h)) / h.mul_si(2) + v.wp;
        BallComplex wpp = v.wp.pow_si(2).mul_si(6) - lat.g2().mul_2si(-1);
        BigFloat tol(BallReal::radius_prec);
        mpfr_add_ui(tol.raw(), wpp.abs_ub().raw(), 1u, MPFR_RNDU);
        mpfr_mul_2si(tol.raw(), tol.raw(), 2 * hexp + 2, MPFR_RNDU); // (|wp''|+1) h^2 * 4
        Verdict v1 = mpfr_cmp(fd.abs_ub().raw(), tol.raw()) <= 0 ? Verdict::Pass : Verdict::Fail;
        res.add("fd-zeta#" + std::to_string(t), v1, fd.to_string());
        // sigma' = zeta * sigma
        BallComplex fds = (ctx.sigma(z + h) - ctx.sigma(z - h)) / h.mul_si(2) - v.zeta * v.sigma;
        // |sigma'''| <= |sigma| (|zeta|^3 + 3|zeta||wp| + |wp'|), with slack
        BallReal bnd = v.sigma.abs() *
                       (v.zeta.abs().pow_si(3) + v.zeta.abs() * v.wp.abs().mul_si(3) + v.wp_prime.abs());
        BigFloat tol2(BallReal::radius_prec);
        mpfr_add_ui(tol2.raw(), bnd.upper().raw(), 1u, MPFR_RNDU);
        mpfr_mul_2si(tol2.raw(), tol2.raw(), 2 * hexp + 2, MPFR_RNDU);
        Verdict v2 = mpfr_cmp(fds.abs_ub().raw(), tol2.raw()) <= 0 ? Verdict::Pass : Verdict::Fail;
        res.add("fd-sigma#" + std::to_string(t), v2, fds.to_string());
    }
}

void suite_lambda(SuiteResult &res, const SuiteOptions &opt) {
    Lattice base = suite_lattice(opt);
    WeierstrassContext base_ctx(base);
    struct Trial {
        double zx, zy, ux, uy;
        long a, b;
    };
    std::vector<Trial> trials;
    Rng rng(opt.seed);
    double max_nats = 0;
    for (long t = 0; t < opt.trials; ++t) {
        Trial tr;
        for (int attempt = 0;; ++attempt) {
            try {
                tr.zx = rng.uniform(0.08, 0.92);
                tr.zy = rng.uniform(0.08, 0.92);
                tr.ux = rng.uniform(0.08, 0.92);
                tr.uy = rng.uniform(0.08, 0.92);
                auto [a, b] = random_small_pair(rng, 5);
                tr.a = a;
                tr.b = b;
                BallComplex u = base.omega1().mul_real(BallReal::from_d(tr.ux, opt.prec)) +
                                base.omega2().mul_real(BallReal::from_d(tr.uy, opt.prec));
                SerrePoint sp(base_ctx, u);
                // exponent scales: lambda(u, w) and the sigma monodromy of z+u+w
                double lam = mid_abs(lambda_qp(base, sp, tr.a, tr.b));
                double eta = mid_abs(base.quasi_period(tr.a, tr.b));
                double omega = mid_abs(base.point(tr.a, tr.b).value);
                double span = mid_abs(base.omega1()) + mid_abs(base.omega2());
                double zu = mid_abs(sp.zeta_u());
                double nats = lam + (eta + 1.0) * (2 * span + omega + 2.0) + zu * (span + omega + 1.0);
                max_nats = std::max(max_nats, nats);
                break;
            } catch (const PoleAtLatticePoint &) {
                if (attempt >= 8) throw;
            }
        }
        trials.push_back(tr);
    }
    mpfr_prec_t pw = opt.prec + exponent_boost(max_nats);
    Lattice lat = suite_lattice_at(opt, pw);
    WeierstrassContext ctx(lat);
    BallComplex two_pi_i = BallComplex::from_parts(BallReal(pw), BallReal::pi(pw).mul_2si(1));
    for (std::size_t t = 0; t < trials.size(); ++t) {
        const Trial &tr = trials[t];
        BallComplex z = lat.omega1().mul_real(BallReal::from_d(tr.zx, pw)) +
                        lat.omega2().mul_real(BallReal::from_d(tr.zy, pw));
        BallComplex uu = lat.omega1().mul_real(BallReal::from_d(tr.ux, pw)) +
                         lat.omega2().mul_real(BallReal::from_d(tr.uy, pw));
        SerrePoint sp(ctx, uu);
        BallComplex omega = lat.point(tr.a, tr.b).value;
        BallComplex r1 = serre_f(ctx, sp, z + omega) - serre_f(ctx, sp, z) * lambda_qp(lat, sp, tr.a, tr.b).exp();
        res.add("fu-quasi#" + std::to_string(t), residual_verdict(r1, opt.prec), r1.to_string());
        BallComplex r2 = lambda_qp(lat, sp, 1, 0) * lat.omega2() -
                         lambda_qp(lat, sp, 0, 1) * lat.omega1() - two_pi_i * uu;
        res.add("lambda-legendre#" + std::to_string(t), residual_verdict(r2, opt.prec), r2.to_string());
    }
}

void suite_torsion(SuiteResult &res, const SuiteOptions &opt) {
    struct Case {
        const char *name;
        long num1, num2, den;
        long h;
    };
    // u = (num1*omega1 + num2*omega2)/den, relation h*u in Omega
    const Case cases[] = {{"w1/2", 1, 0, 2, 2}, {"w1/3", 1, 0, 3, 3}, {"(w1+w2)/2", 1, 1, 2, 2}};

    // Working precision covering the F = f_u^h e^(t0 z) intermediates.
    mpfr_prec_t pw = opt.prec;
    {
        Lattice base = suite_lattice(opt);
        WeierstrassContext bctx(base);
        double span = mid_abs(base.omega1()) + mid_abs(base.omega2());
        double eta = mid_abs(base.eta1()) + mid_abs(base.eta2());
        double max_nats = 0;
        for (const auto &c : cases) {
            BallComplex u = (base.omega1().mul_si(c.num1) + base.omega2().mul_si(c.num2)).div_si(c.den);
            SerrePoint sp(bctx, u);
            auto td = torsion_t0(bctx, {c.h}, {sp});
            double lam = mid_abs(lambda_qp(base, sp, 1, 0)) + mid_abs(lambda_qp(base, sp, 0, 1));
            double nats = static_cast<double>(c.h) *
                              (lam + mid_abs(sp.zeta_u()) * (2 * span + 1) + (eta + 1) * (3 * span + 2)) +
                          mid_abs(td.t0) * (2 * span + 1);
            max_nats = std::max(max_nats, nats);
        }
        pw = opt.prec + exponent_boost(max_nats);
    }
    Lattice lat = suite_lattice_at(opt, pw);
    WeierstrassContext ctx(lat);
    Rng rng(opt.seed);
    for (const auto &c : cases) {
        BallComplex u = (lat.omega1().mul_si(c.num1) + lat.omega2().mul_si(c.num2)).div_si(c.den);
        SerrePoint sp(ctx, u);
        auto td = torsion_t0(ctx, {c.h}, {sp});
        auto F = [&](const BallComplex &z) {
            return serre_f(ctx, sp, z).pow_si(c.h) * (td.t0 * z).exp();
        };
        for (long t = 0; t < opt.trials; ++t) {
            BallComplex z = random_cell_point(lat, rng, opt.prec);
            BallComplex f0 = F(z);
            BallComplex rw1 = F(z + lat.omega1()) - f0;
            BallComplex rw2 = F(z + lat.omega2()) - f0;
            res.add(std::string("torsion[") + c.name + "]w1#" + std::to_string(t),
                    residual_verdict(rw1, opt.prec, 20), rw1.to_string());
            res.add(std::string("torsion[") + c.name + "]w2#" + std::to_string(t),
                    residual_verdict(rw2, opt.prec, 20), rw2.to_string());
        }
        // lambda-check: (t0 w + h lambda(u, w)) / 2 pi i is an integer, both periods
        BallComplex two_pi_i =
            BallComplex::from_parts(BallReal(opt.prec), BallReal::pi(opt.prec + 32).mul_2si(1));
        for (int per = 0; per < 2; ++per) {
            BallComplex w = per == 0 ? lat.omega1() : lat.omega2();
            BallComplex lam = per == 0 ? lambda_qp(lat, sp, 1, 0) : lambda_qp(lat, sp, 0, 1);
            BallComplex kball = (td.t0 * w + lam.mul_si(c.h)) / two_pi_i;
            // must round to an integer with certified error < 1/2
            BigFloat half(BallReal::radius_prec);
            mpfr_set_d(half.raw(), 0.5, MPFR_RNDN);
            Verdict v = Verdict::Unknown;
            if (kball.is_finite() && mpfr_cmp(kball.rad().raw(), half.raw()) < 0) {
                mpfr_t r;
                mpfr_init2(r, 64);
                mpfr_round(r, kball.re_mid().raw());
                long kk = mpfr_get_si(r, MPFR_RNDN);
                mpfr_clear(r);
                BallComplex dev = kball - BallComplex::from_si(kk, 0, opt.prec);
                v = dev.contains_zero() ? Verdict::Pass : Verdict::Fail;
            }
            res.add(std::string("torsion[") + c.name + "]lambda-int-w" + std::to_string(per + 1), v,
                    kball.to_string());
        }
    }
}

void suite_vandermonde(SuiteResult &res, const SuiteOptions &opt) {
    // superfactorial table (A000178)
    const unsigned long expect[] = {1, 1, 1, 2, 12, 288, 34560, 24883200};
    bool table_ok = true;
    for (unsigned long t = 0; t < 8; ++t) table_ok = table_ok && superfactorial_k(t) == expect[t];
    res.add("superfactorials[0..7]", table_ok ? Verdict::Pass : Verdict::Fail);

    Rng rng(opt.seed);
    long exact_trials = std::min<long>(opt.trials, 100);
    for (long t = 0; t < exact_trials; ++t) {
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
        RatComplex closed = det_closed_form_exact(sys);
        RatComplex direct = det_direct_exact(build_matrix_exact(sys));
        res.add("vdm-exact#" + std::to_string(t), closed == direct ? Verdict::Pass : Verdict::Fail);
    }
    long ball_trials = std::min<long>(2 * opt.trials, 200);
    for (long t = 0; t < ball_trials; ++t) {
        ConfluentSystem sys;
        sys.prec = opt.prec;
        int m = static_cast<int>(rng.uniform_int(1, 4));
        for (int j = 0; j < m; ++j) {
            double r = rng.uniform(0.5, 2.0), th = rng.uniform(0.0, 6.28318);
            sys.blocks.emplace_back(BallComplex::from_parts(BallReal::from_d(r * std::cos(th), opt.prec),
                                                            BallReal::from_d(r * std::sin(th), opt.prec)),
                                    static_cast<int>(rng.uniform_int(1, 4)));
        }
        sys.shift = BallReal::from_d(rng.uniform(0.0, 3.0), opt.prec);
        BallComplex closed = det_closed_form(sys);
        BallComplex direct = det_direct(build_matrix(sys), opt.prec);
        BallComplex diff = closed - direct;
        res.add("vdm-ball#" + std::to_string(t),
                diff.contains_zero() ? Verdict::Pass : Verdict::Fail, diff.to_string());
    }
}

} // namespace

SuiteResult run_suite(const std::string &name, const SuiteOptions &opt) {
    SuiteResult res;
    res.suite = name;
    if (name == "legendre") suite_legendre(res, opt);
    else if (name == "periodicity") suite_periodicity(res, opt);
    else if (name == "sigma-monodromy") suite_sigma_monodromy(res, opt);
    else if (name == "ode") suite_ode(res, opt);
    else if (name == "lambda") suite_lambda(res, opt);
    else if (name == "torsion") suite_torsion(res, opt);
    else if (name == "vandermonde") suite_vandermonde(res, opt);
    else if (name == "all") {
        for (const auto &s : suite_names()) {
            if (s == "all") continue;
            SuiteResult sub = run_suite(s, opt);
            for (auto &c : sub.checks) {
                c.name = s + "/" + c.name;
                res.checks.push_back(c);
            }
            res.ok = res.ok && sub.ok;
        }
    } else {
        throw InvalidInput("unknown suite: " + name);
    }
    return res;
}

} // namespace qe
