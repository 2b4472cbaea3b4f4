#include "qe/lll.hpp"

#include <cstddef>

namespace qe::detail {

namespace {

mpq_class dot(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return mpq_class(s);
}

// Nearest integer to a rational (ties toward +inf).
mpz_class round_q(const mpq_class &q) {
    mpz_class two_num = 2 * q.get_num() + q.get_den();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), two_num.get_mpz_t(), mpz_class(2 * q.get_den()).get_mpz_t());
    return r;
}

struct Gs {
    std::vector<std::vector<mpq_class>> mu;
    std::vector<mpq_class> norm; // |b*_i|^2
};

Gs gram_schmidt(const std::vector<std::vector<mpz_class>> &B) {
    std::size_t n = B.size();
    Gs g;
    g.mu.assign(n, std::vector<mpq_class>(n, 0));
    g.norm.assign(n, 0);
    // b*_i = b_i - sum_{j<i} mu_ij b*_j; everything expressed through dot
    // products of the integer rows, so rationals stay exact.
    std::vector<std::vector<mpq_class>> bstar_dot(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        // dot(b_i, b*_j) for j < i, computed recursively.
        for (std::size_t j = 0; j < i; ++j) {
            mpq_class d = dot(B[i], B[j]);
            for (std::size_t k = 0; k < j; ++k) d -= g.mu[j][k] * bstar_dot[i][k];
            bstar_dot[i][j] = d;
            g.mu[i][j] = g.norm[j] == 0 ? mpq_class(0) : d / g.norm[j];
        }
        mpq_class nn = dot(B[i], B[i]);
        for (std::size_t j = 0; j < i; ++j) nn -= g.mu[i][j] * bstar_dot[i][j];
        g.norm[i] = nn;
        bstar_dot[i][i] = nn;
    }
    return g;
}

} // namespace

void lll_reduce(std::vector<std::vector<mpz_class>> &B) {
    const std::size_t n = B.size();
    if (n < 2) return;
    const mpq_class delta(3, 4);
    Gs g = gram_schmidt(B);
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < n) {
        if (++guard > 100000) break; // termination safety; never hit in practice
        bool changed = false;
        for (std::size_t j = k; j-- > 0;) {
            mpz_class q = round_q(g.mu[k][j]);
            if (q != 0) {
                for (std::size_t c = 0; c < B[k].size(); ++c) B[k][c] -= q * B[j][c];
                changed = true;
            }
        }
        if (changed) g = gram_schmidt(B);
        mpq_class lhs = g.norm[k];
        mpq_class rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(B[k], B[k - 1]);
            g = gram_schmidt(B);
            k = k > 1 ? k - 1 : 1;
        }
    }
}

} // namespace qe::detail
