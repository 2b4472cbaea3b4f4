#pragma once

#include <string>
#include <vector>

#include "qe/ball.hpp"
#include "qe/tower.hpp"
#include "qe/verdict.hpp"

namespace qe {

/// Nonzero polynomial over Z, ascending-degree coefficients.
struct IntPolynomial {
    std::vector<mpz_class> coeffs;

    int degree() const;
    mpz_class height() const; // max |coefficient|
    static IntPolynomial parse(const std::string &comma_separated);
    BallComplex eval(const BallComplex &x, mpfr_prec_t prec) const;
};

/// Absolute logarithmic height of p/q: log max(|p|, |q|) after reduction.
BallReal log_height_rational(const mpz_class &p, const mpz_class &q, mpfr_prec_t prec);

struct BakerReport {
    BallReal log_A, B;
    BallReal log_bound;      // -2^26 D^3 log A log B
    TowerMagnitude bound;    // exp(log_bound), kept in log space
    BallReal lhs;            // |beta - log alpha|
    Verdict verdict;         // certified lhs >= bound
};

/// One-logarithm lower bound check for rational alpha, beta (principal log):
/// |beta - log alpha| >= exp(-2^26 D^3 log A log B) with
/// log A >= max(1, h(alpha), |log alpha|), B >= max(e, h(beta), D log A).
BakerReport baker_lower_bound(const mpq_class &alpha, const mpq_class &beta, int D, mpfr_prec_t prec);

struct FeldmanReport {
    BallComplex nearest;
    int multiplicity = 1;
    BallReal lhs;  // |theta - alpha|^l
    BallReal rhs;  // D^(3D-2) H(F)^(2D) |F(theta)|
    Verdict verdict;
};

/// Root-distance bound check: finds the root of F nearest to theta (certified
/// disjoint enclosures; exact roots for linear factors), its multiplicity by
/// exact square-free decomposition, and verifies
/// |theta - alpha|^l <= D^(3D-2) H(F)^(2D) |F(theta)|.
FeldmanReport feldman_check(const IntPolynomial &F, const BallComplex &theta, mpfr_prec_t prec);

} // namespace qe
