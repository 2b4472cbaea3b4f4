#pragma once

#include <gmpxx.h>

#include "qe/ball.hpp"
#include "qe/errors.hpp"

namespace qe {

/// Exact Gaussian rational a + b*i, used on the exact code paths.
struct RatComplex {
    mpq_class re, im;

    RatComplex() : re(0), im(0) {}
    RatComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
    static RatComplex from_si(long r, long i = 0) { return RatComplex(mpq_class(r), mpq_class(i)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const RatComplex &o) const { return re == o.re && im == o.im; }

    RatComplex operator+(const RatComplex &o) const { return {re + o.re, im + o.im}; }
    RatComplex operator-(const RatComplex &o) const { return {re - o.re, im - o.im}; }
    RatComplex operator-() const { return {-re, -im}; }
    RatComplex operator*(const RatComplex &o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    RatComplex operator/(const RatComplex &o) const {
        mpq_class n = o.re * o.re + o.im * o.im;
        if (n == 0) throw DivisionByZero("exact complex division by zero");
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }

    RatComplex pow(long e) const {
        if (e == 0) return from_si(1);
        bool inv = e < 0;
        unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        RatComplex acc = from_si(1), base = *this;
        while (n) {
            if (n & 1ul) acc = acc * base;
            n >>= 1;
            if (n) base = base * base;
        }
        if (inv) return from_si(1) / acc;
        return acc;
    }

    BallComplex to_ball(mpfr_prec_t prec) const { return BallComplex::from_mpq(re, im, prec); }
};

inline mpq_class pow_q(const mpq_class &q, long e) {
    if (e == 0) return 1;
    mpq_class r;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num().get_mpz_t(), n);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den().get_mpz_t(), n);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw DivisionByZero("0 to a negative power");
        r = 1 / r;
    }
    return r;
}

inline mpz_class pow_z(const mpz_class &b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline mpz_class factorial_z(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace qe
