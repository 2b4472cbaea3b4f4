#pragma once

#include <utility>
#include <vector>

#include "qe/ball.hpp"
#include "qe/lattice.hpp"
#include "qe/serre.hpp"
#include "qe/verdict.hpp"

namespace qe {

enum class RelationKind { Dependent, NoRelationUpTo };
enum class Certainty { Exact, Heuristic };
enum class SearchStrategy { Auto, Exhaustive, Reduction };

/// Outcome of a bounded dependence search. Dependent+Exact is only produced
/// on exact rational inputs where the relation holds identically;
/// Dependent+Heuristic carries the certified residual ball. NoRelationUpTo
/// means no exponent vector with max-norm <= bound had a residual ball
/// containing zero at the stated precision.
struct RelationVerdict {
    RelationKind kind = RelationKind::NoRelationUpTo;
    std::vector<long> relation;
    Certainty certainty = Certainty::Heuristic;
    long bound = 0;
    mpfr_prec_t precision_bits = 0;
    BallReal residual;
};

/// Searches h != 0, max|h_i| <= L, with v_1^h_1 ... v_n^h_n = 1.
RelationVerdict find_multiplicative_relation(const std::vector<mpq_class> &v, long L,
                                             SearchStrategy strategy = SearchStrategy::Auto,
                                             mpfr_prec_t prec = 128);
RelationVerdict find_multiplicative_relation(const std::vector<BallComplex> &v, long L,
                                             SearchStrategy strategy = SearchStrategy::Auto,
                                             mpfr_prec_t prec = 128);

/// Searches h != 0 with prod v_i^h_i = prod w_i^h_i = 1 simultaneously.
RelationVerdict find_relation_two_params(const std::vector<std::pair<mpq_class, mpq_class>> &vw, long L,
                                         SearchStrategy strategy = SearchStrategy::Auto,
                                         mpfr_prec_t prec = 128);
RelationVerdict find_relation_two_params(const std::vector<std::pair<BallComplex, BallComplex>> &vw, long L,
                                         SearchStrategy strategy = SearchStrategy::Auto,
                                         mpfr_prec_t prec = 128);

/// Q-linear dependence test for the 2+r+s vectors
///   (2*pi*i, 0), (0, 2*pi*i), (t_i*omega1, t_i*omega2),
///   (lambda(u_j, omega1), lambda(u_j, omega2))
/// in C^2, searching integer coefficients with max-norm <= H.
RelationVerdict check_condition_iv(const Lattice &lat, const std::vector<BallComplex> &t,
                                   const std::vector<SerrePoint> &u, long H, mpfr_prec_t prec);

struct CmRelationReport {
    RelationVerdict verdict;
    /// Pairing integers k_j with a_j w2' eta(a_j w1') - ... = 2 pi i k_j for
    /// the multiplier images, used by the elimination step.
    std::vector<long> pairing_integers;
};

/// check_condition_iv extended with the vectors
/// (lambda(u_j, alpha_j omega1), lambda(u_j, alpha_j omega2)) for the lattice's
/// verified multipliers alpha_j (one per Serre point; throws InvalidMultiplier
/// when fewer multipliers than points are attached).
CmRelationReport check_cm_condition(const Lattice &lat, const std::vector<BallComplex> &t,
                                    const std::vector<SerrePoint> &u, long H, mpfr_prec_t prec);

struct ZetaRelationReport {
    bool in_lattice = false;        // sum a_i u_i recovered as a lattice point
    Verdict zeta_equation = Verdict::Unknown; // sum a_i zeta(u_i) = eta(omega0)
    Verdict periodicity = Verdict::Unknown;   // prod f_{u_i}^{a_i} lattice-periodic at a probe z
    LatticePoint omega0;
    BallComplex equation_residual;
    BallReal periodicity_residual;
    bool holds = false;
};

/// Checks sum a_i u_i in Omega together with
/// sum a_i zeta(u_i) = eta(sum a_i u_i), and witnesses the consequence by the
/// lattice-periodicity of prod f_{u_i}(z)^{a_i} at a seeded random z.
ZetaRelationReport check_zeta_relation(const WeierstrassContext &ctx, const std::vector<long> &a,
                                       const std::vector<SerrePoint> &u, std::uint64_t seed, mpfr_prec_t prec);

} // namespace qe
