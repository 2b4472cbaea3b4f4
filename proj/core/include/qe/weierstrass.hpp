#pragma once

#include <vector>

#include "qe/ball.hpp"
#include "qe/lattice.hpp"

namespace qe {

namespace detail {

struct CoreValues {
    BallComplex sigma, zeta, wp, wp_prime;
};

/// Series evaluator around the origin, independent of any lattice reduction.
///
/// wp(y) = y^-2 + sum_{k>=1} p_k y^(2k) with p_1 = g2/20, p_2 = g3/28 and
/// p_k given by the standard quadratic recursion (DLMF 23.9.3); zeta, sigma
/// and wp' come from the same coefficients. Valid on |y| < lambda_min; the
/// evaluator halves the argument into |y| <= 0.3*lambda_min and walks back up
/// with exact duplication formulas.
class SeriesCore {
public:
    SeriesCore(const BallComplex &g2, const BallComplex &g3, const BallReal &lambda_min,
               const BallReal &abs4_sum, mpfr_prec_t work_prec);

    /// sigma/zeta/wp/wp' at w (no lattice reduction). When need_pole is false
    /// and w may be 0, only sigma is meaningful in the result.
    CoreValues eval(const BallComplex &w, bool need_pole) const;

    int terms() const { return static_cast<int>(coeff_.size()) + 1; }
    mpfr_prec_t work_prec() const { return wp_; }
    const BallReal &safe_radius() const { return safe_radius_; }

private:
    mpfr_prec_t wp_;
    BallComplex g2_;
    std::vector<BallComplex> coeff_; // p_1, p_2, ...
    BallReal lambda_;
    BallReal abs4_;
    BallReal safe_radius_; // 0.3 * lambda lower bound
    BigFloat halving_threshold_;

    CoreValues eval_series(const BallComplex &y, bool need_pole) const;
    static CoreValues duplicate(const CoreValues &v, const BallComplex &g2);
};

} // namespace detail

/// Certified evaluation of the Weierstrass functions sigma, zeta, wp, wp' for
/// a fixed lattice at a fixed precision. Immutable and safe for concurrent
/// use; every evaluation is a pure function of (z, context).
class WeierstrassContext {
public:
    explicit WeierstrassContext(const Lattice &lat, mpfr_prec_t prec = 0);

    const Lattice &lattice() const { return lat_; }
    mpfr_prec_t prec() const { return prec_; }
    int series_order() const { return core_.terms(); }
    /// Radius of the disk in which the raw series meets tolerance.
    const BallReal &convergence_radius() const { return core_.safe_radius(); }

    /// Entire function; a ball containing 0 is returned at lattice points.
    BallComplex sigma(const BallComplex &z) const;
    /// Throws PoleAtLatticePoint when z is not certifiably outside the lattice.
    BallComplex zeta(const BallComplex &z) const;
    BallComplex wp(const BallComplex &z) const;
    BallComplex wp_prime(const BallComplex &z) const;

    struct Values {
        BallComplex sigma, zeta, wp, wp_prime;
    };
    Values eval_all(const BallComplex &z) const;

private:
    Lattice lat_;
    mpfr_prec_t prec_;
    detail::SeriesCore core_;

    struct Recentered {
        BallComplex w;
        long m = 0, n = 0; // z = w + m*red_omega1 + n*red_omega2
    };
    Recentered recenter(const BallComplex &z) const;
    detail::CoreValues eval_raw(const BallComplex &z, bool need_pole, Recentered *rec) const;
};

} // namespace qe
