#include "qe/polyroots.hpp"

#include <complex>

#include "qe/errors.hpp"

namespace qe::detail {

namespace {

using QPoly = std::vector<mpq_class>; // ascending degree

int deg(const QPoly &p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

void trim(QPoly &p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly derivative(const QPoly &p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

QPoly sub(const QPoly &a, const QPoly &b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// a mod b (b nonzero), Euclidean remainder over Q.
QPoly rem(QPoly a, const QPoly &b) {
    trim(a);
    int db = deg(b);
    while (deg(a) >= db && deg(a) >= 0) {
        mpq_class f = a[static_cast<std::size_t>(deg(a))] / b[static_cast<std::size_t>(db)];
        int shift = deg(a) - db;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
        trim(a);
    }
    return a;
}

QPoly quot(QPoly a, const QPoly &b) {
    trim(a);
    int db = deg(b);
    QPoly q(a.size(), 0);
    while (deg(a) >= db && deg(a) >= 0) {
        mpq_class f = a[static_cast<std::size_t>(deg(a))] / b[static_cast<std::size_t>(db)];
        int shift = deg(a) - db;
        q[static_cast<std::size_t>(shift)] = f;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
        trim(a);
    }
    trim(q);
    return q;
}

QPoly monic_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (deg(b) >= 0) {
        QPoly r = rem(a, b);
        a = b;
        b = r;
    }
    if (deg(a) < 0) return a;
    mpq_class lead = a[static_cast<std::size_t>(deg(a))];
    for (auto &c : a) c /= lead;
    return a;
}

std::vector<mpz_class> to_primitive_int(const QPoly &p) {
    mpz_class lcm_den = 1;
    for (const auto &c : p) {
        mpz_class d = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        lcm_den = lcm_den / g * d;
    }
    std::vector<mpz_class> out;
    mpz_class content = 0;
    for (const auto &c : p) {
        mpq_class scaled = c * lcm_den;
        out.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
    }
    if (content > 1)
        for (auto &c : out) c /= content;
    if (!out.empty() && out.back() < 0)
        for (auto &c : out) c = -c;
    return out;
}

} // namespace

std::vector<std::pair<std::vector<mpz_class>, int>> squarefree_decomposition(const std::vector<mpz_class> &f) {
    QPoly F;
    for (const auto &c : f) F.push_back(mpq_class(c));
    trim(F);
    if (deg(F) < 0) throw InvalidInput("zero polynomial");
    std::vector<std::pair<std::vector<mpz_class>, int>> out;
    if (deg(F) == 0) return out;

    // Yun's algorithm.
    QPoly Fp = derivative(F);
    QPoly d = monic_gcd(F, Fp);
    QPoly b = quot(F, d);
    QPoly c = quot(Fp, d);
    QPoly z = sub(c, derivative(b));
    int i = 1;
    while (deg(b) > 0) {
        QPoly a = monic_gcd(b, z);
        if (deg(a) > 0) out.emplace_back(to_primitive_int(a), i);
        b = quot(b, a);
        c = quot(z, a);
        z = sub(c, derivative(b));
        ++i;
        if (i > 64) throw InvalidInput("square-free decomposition did not terminate");
    }
    return out;
}

std::vector<BallComplex> isolate_roots_squarefree(const std::vector<mpz_class> &f, mpfr_prec_t prec) {
    int n = -1;
    for (std::size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) {
            n = static_cast<int>(i);
            break;
        }
    if (n < 1) return {};
    if (n == 1) {
        // exact rational root -b/a
        mpq_class r(-f[0], f[1]);
        r.canonicalize();
        return {BallComplex::from_mpq(r, 0, prec)};
    }

    for (int attempt = 0; attempt < 4; ++attempt) {
        mpfr_prec_t wp = prec + 64 * (attempt + 1);
        // Midpoint iteration in double-double-ish MPFR complex via BallComplex
        // midpoints would be wasteful; plain std::complex<double> converges
        // well for the low degrees used here, then high-precision polish.
        std::vector<std::complex<double>> zs(static_cast<std::size_t>(n));
        double radius = 0;
        double an = std::abs(mpq_class(f[static_cast<std::size_t>(n)]).get_d());
        for (int i = 0; i < n; ++i)
            radius = std::max(radius, std::abs(mpq_class(f[static_cast<std::size_t>(i)]).get_d()) / an);
        radius = 1.0 + radius;
        for (int i = 0; i < n; ++i) {
            double a = 6.2831853071795864769 * i / n + 0.41;
            zs[static_cast<std::size_t>(i)] = std::polar(radius * (0.5 + 0.5 * (i % 3) / 3.0), a);
        }
        auto evald = [&](std::complex<double> x) {
            std::complex<double> acc = 0;
            for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + mpq_class(f[i]).get_d();
            return acc;
        };
        for (int it = 0; it < 400; ++it) {
            double worst = 0;
            for (int i = 0; i < n; ++i) {
                std::complex<double> denom = an;
                for (int j = 0; j < n; ++j)
                    if (j != i) denom *= zs[static_cast<std::size_t>(i)] - zs[static_cast<std::size_t>(j)];
                std::complex<double> w = evald(zs[static_cast<std::size_t>(i)]) / denom;
                zs[static_cast<std::size_t>(i)] -= w;
                worst = std::max(worst, std::abs(w));
            }
            if (worst < 1e-14) break;
        }
        // High-precision Newton polish per root, then Weierstrass inclusion
        // disks computed in ball arithmetic.
        std::vector<BigFloat> re(static_cast<std::size_t>(n), BigFloat(wp)), im(static_cast<std::size_t>(n), BigFloat(wp));
        for (int i = 0; i < n; ++i) {
            mpfr_set_d(re[static_cast<std::size_t>(i)].raw(), zs[static_cast<std::size_t>(i)].real(), MPFR_RNDN);
            mpfr_set_d(im[static_cast<std::size_t>(i)].raw(), zs[static_cast<std::size_t>(i)].imag(), MPFR_RNDN);
        }
        auto eval_ball = [&](const BallComplex &x) {
            BallComplex acc(wp);
            for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + BallComplex::from_mpq(mpq_class(f[i]), 0, wp);
            return acc;
        };
        auto evalp_ball = [&](const BallComplex &x) {
            BallComplex acc(wp);
            for (std::size_t i = f.size(); i-- > 1;)
                acc = acc * x + BallComplex::from_mpq(mpq_class(f[i]) * static_cast<long>(i), 0, wp);
            return acc;
        };
        int newton_steps = 2 + static_cast<int>(wp / 40);
        for (int i = 0; i < n; ++i) {
            BallComplex x = BallComplex::from_parts(
                BallReal::from_midrad(re[static_cast<std::size_t>(i)], BigFloat(BallReal::radius_prec)),
                BallReal::from_midrad(im[static_cast<std::size_t>(i)], BigFloat(BallReal::radius_prec)));
            for (int s = 0; s < newton_steps; ++s) {
                BallComplex fp = evalp_ball(x);
                if (!fp.certainly_nonzero()) break;
                x = x - eval_ball(x) / fp;
                // keep midpoints only; the certification happens below
                x = BallComplex::from_parts(
                    BallReal::from_midrad(x.re_mid(), BigFloat(BallReal::radius_prec)),
                    BallReal::from_midrad(x.im_mid(), BigFloat(BallReal::radius_prec)));
            }
            re[static_cast<std::size_t>(i)] = x.re_mid();
            im[static_cast<std::size_t>(i)] = x.im_mid();
        }
        std::vector<BallComplex> disks;
        bool ok = true;
        BallComplex lead = BallComplex::from_mpq(mpq_class(f[static_cast<std::size_t>(n)]), 0, wp);
        for (int i = 0; i < n && ok; ++i) {
            BallComplex zi = BallComplex::from_parts(
                BallReal::from_midrad(re[static_cast<std::size_t>(i)], BigFloat(BallReal::radius_prec)),
                BallReal::from_midrad(im[static_cast<std::size_t>(i)], BigFloat(BallReal::radius_prec)));
            BallComplex denom = lead;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                BallComplex zj = BallComplex::from_parts(
                    BallReal::from_midrad(re[static_cast<std::size_t>(j)], BigFloat(BallReal::radius_prec)),
                    BallReal::from_midrad(im[static_cast<std::size_t>(j)], BigFloat(BallReal::radius_prec)));
                denom = denom * (zi - zj);
            }
            if (!denom.certainly_nonzero()) {
                ok = false;
                break;
            }
            BallComplex w = eval_ball(zi) / denom;
            BigFloat rad = w.abs_ub();
            mpfr_mul_ui(rad.raw(), rad.raw(), static_cast<unsigned long>(n), MPFR_RNDU);
            disks.push_back(zi.widened(rad));
        }
        if (!ok) continue;
        // pairwise disjoint => each disk contains exactly one root
        bool disjoint = true;
        for (int i = 0; i < n && disjoint; ++i)
            for (int j = i + 1; j < n && disjoint; ++j)
                if (!(disks[static_cast<std::size_t>(i)] - disks[static_cast<std::size_t>(j)]).certainly_nonzero())
                    disjoint = false;
        if (disjoint) return disks;
    }
    throw PrecisionUnreachable("root isolation failed to certify disjoint enclosures");
}

} // namespace qe::detail
