#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qe/ball.hpp"
#include "qe/errors.hpp"

namespace qe {

struct LatticePoint {
    long a = 0, b = 0;
    BallComplex value; // a*omega1 + b*omega2
};

/// Verified complex-multiplication datum: alpha with alpha*omega_i in the
/// lattice, together with the recovered integer coordinate matrix.
struct CmMultiplier {
    BallComplex alpha;
    // alpha*omega1 = m[0][0]*omega1 + m[0][1]*omega2, alpha*omega2 likewise.
    std::array<std::array<long, 2>, 2> m{};
};

/// Period lattice Z*omega1 + Z*omega2 with Im(omega2/omega1) > 0, cached
/// elliptic invariants g2, g3 and quasi-periods eta1, eta2.
///
/// Internally a Gauss-reduced basis of the same lattice is kept for series
/// evaluation and summation; the user-facing basis defines eta1/eta2 and the
/// fundamental cell.
class Lattice {
public:
    /// Normalizes the basis orientation, reduces it, computes invariants and
    /// quasi-periods, and certifies the Legendre relation.
    /// Throws DegenerateLattice when omega2/omega1 is not certifiably non-real.
    static Lattice make(const BallComplex &omega1, const BallComplex &omega2, mpfr_prec_t prec);
    /// "square", "hexagonal" or "rectangular-2".
    static Lattice preset(const std::string &name, mpfr_prec_t prec);
    static std::vector<std::string> preset_names();

    mpfr_prec_t prec() const { return prec_; }
    const BallComplex &omega1() const { return omega1_; }
    const BallComplex &omega2() const { return omega2_; }
    const BallComplex &tau() const { return tau_; }
    const BallComplex &g2() const { return g2_; }
    const BallComplex &g3() const { return g3_; }
    const BallComplex &eta1() const { return eta1_; }
    const BallComplex &eta2() const { return eta2_; }
    /// Certified residual ball of omega2*eta1 - omega1*eta2 - 2*pi*i.
    const BallComplex &legendre_residual() const { return legendre_residual_; }

    LatticePoint point(long a, long b) const;

    /// eta(a*omega1 + b*omega2) = a*eta1 + b*eta2.
    BallComplex quasi_period(long a, long b) const;

    /// +1 iff omega/2 is again a lattice point, i.e. a and b both even.
    static int epsilon(long a, long b) { return (a % 2 == 0 && b % 2 == 0) ? 1 : -1; }

    /// Integer k with w2'*eta(w1') - w1'*eta(w2') = 2*pi*i*k for the two
    /// independent points (a1,b1), (a2,b2); equals a1*b2 - a2*b1.
    /// Throws DependentPeriods / CertificationFailed.
    long legendre_pairing(std::pair<long, long> p1, std::pair<long, long> p2) const;

    struct Reduction {
        BallComplex z0;
        long a = 0, b = 0;
    };
    /// z = z0 + a*omega1 + b*omega2 with z0 in [0,1)omega1 + [0,1)omega2.
    /// Throws AmbiguousReduction near the cell boundary.
    Reduction reduce_mod_lattice(const BallComplex &z) const;

    /// Real coordinate balls (x, y) with z = x*omega1 + y*omega2.
    std::pair<BallReal, BallReal> coordinates(const BallComplex &z) const;

    /// Nearest-integer coordinates of z when z is a lattice point within
    /// certified coordinate residual < 1/4 in each coordinate.
    std::optional<std::pair<long, long>> recover_integer_coords(const BallComplex &z) const;

    /// Copy of this lattice with a verified multiplier attached.
    /// Throws InvalidMultiplier when alpha*Omega is not certifiably in Omega.
    Lattice with_cm_multiplier(const BallComplex &alpha) const;
    const std::vector<CmMultiplier> &cm_multipliers() const { return cm_; }

    // Reduced-basis data used by the evaluator.
    const BallComplex &red_omega1() const { return red_omega1_; }
    const BallComplex &red_omega2() const { return red_omega2_; }
    const BallComplex &red_eta1() const { return red_eta1_; }
    const BallComplex &red_eta2() const { return red_eta2_; }
    const BallReal &lambda_min() const { return lambda_min_; }
    /// Upper-bounding ball for sum over nonzero lattice points of |w|^-4.
    const BallReal &abs4_sum() const { return abs4_sum_; }

private:
    Lattice() = default;

    mpfr_prec_t prec_ = 0;
    BallComplex omega1_, omega2_, tau_;
    BallComplex g2_, g3_, eta1_, eta2_;
    BallComplex legendre_residual_;
    BallComplex red_omega1_, red_omega2_, red_eta1_, red_eta2_;
    // (red_omega1, red_omega2) = U * (omega1, omega2); V = U^-1, det = +1.
    std::array<std::array<long, 2>, 2> U_{}, V_{};
    BallReal lambda_min_;
    BallReal abs4_sum_;
    std::vector<CmMultiplier> cm_;
};

/// Recomputed invariant balls at the given working precision (limited by the
/// accuracy of the stored basis balls).
std::pair<BallComplex, BallComplex> eisenstein_invariants(const Lattice &lat, mpfr_prec_t prec);

} // namespace qe
