#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "qe/ball.hpp"

namespace qe::detail {

/// Yun square-free decomposition over Q: returns (g_j, j) with F = c * prod g_j^j,
/// g_j primitive integer polynomials (ascending coefficients).
std::vector<std::pair<std::vector<mpz_class>, int>> squarefree_decomposition(const std::vector<mpz_class> &f);

/// Certified root enclosures of a square-free integer polynomial: Weierstrass
/// (Durand-Kerner) iteration on midpoints, then inclusion disks from the
/// Weierstrass corrections, refined until pairwise disjoint so that each disk
/// contains exactly one simple root.
std::vector<BallComplex> isolate_roots_squarefree(const std::vector<mpz_class> &f, mpfr_prec_t prec);

} // namespace qe::detail
