#pragma once

#include <utility>
#include <vector>

#include "qe/ball.hpp"
#include "qe/rational.hpp"
#include "qe/verdict.hpp"

namespace qe {

/// k(t) = prod_{j=1}^{t-1} j!  (OEIS A000178).
mpz_class superfactorial_k(unsigned long t);
mpz_class k_multi(const std::vector<int> &ts);

/// Node/multiplicity blocks (w_j, t_j) together with the monic polynomial
/// sequence r_t. By default r_t(T) = (shift + T)^t; a custom monic sequence
/// may be supplied as ascending-degree coefficient rows.
struct ConfluentSystem {
    std::vector<std::pair<BallComplex, int>> blocks;
    BallReal shift;                               // A
    std::vector<std::vector<BallComplex>> poly;   // optional custom r_t
    mpfr_prec_t prec = 128;

    int dimension() const;
};

/// Entry at row a, column (j, t): r_t(a) * w_j^a. Blocks in given order,
/// derivative index t ascending within a block.
std::vector<std::vector<BallComplex>> build_matrix(const ConfluentSystem &sys);

/// k(t_1..t_m) * prod_j w_j^(t_j(t_j-1)/2) * prod_{i<j} (w_j - w_i)^(t_i t_j).
BallComplex det_closed_form(const ConfluentSystem &sys);

/// Determinant by partial-pivot elimination with ball propagation. When no
/// pivot can be certified nonzero, returns a zero-centered ball bounded by a
/// Hadamard estimate (this happens exactly in the degenerate cases).
BallComplex det_direct(std::vector<std::vector<BallComplex>> m, mpfr_prec_t prec);

/// Exact mirror over Gaussian rationals.
struct ExactConfluentSystem {
    std::vector<std::pair<RatComplex, int>> blocks;
    mpq_class shift;

    int dimension() const;
};
std::vector<std::vector<RatComplex>> build_matrix_exact(const ExactConfluentSystem &sys);
RatComplex det_closed_form_exact(const ExactConfluentSystem &sys);
RatComplex det_direct_exact(std::vector<std::vector<RatComplex>> m);

struct XiBoundReport {
    BallReal max_xi;    // max_a |xi_a| over 0 <= a <= m(T+1)
    BallReal inv_norm;  // ||M^-1||_inf of the confluent matrix
    BallReal eta;       // ||q||_inf * max(1,A)^(mT(T+1)) / ||M^-1||_inf
    BallReal bound;     // eta * max(1,A)^(-mT(T+1))
    Verdict verdict;    // certified max_xi >= bound
};

/// Quantitative lower bound check for xi_a = sum_{t<=T} sum_j q[t][j] (A+a)^t w_j^a.
/// Throws NotDistinct when the w balls do not certify pairwise-distinct
/// nonzero nodes, ZeroInput when no coefficient is certifiably nonzero.
XiBoundReport xi_lower_bound_check(const std::vector<BallComplex> &w,
                                   const std::vector<std::vector<BallComplex>> &q,
                                   int T, const BallReal &A, mpfr_prec_t prec);

} // namespace qe
