#pragma once

#include <vector>

#include "qe/ball.hpp"
#include "qe/lattice.hpp"
#include "qe/weierstrass.hpp"

namespace qe {

/// Parameter point u of a Serre function f_u, with zeta(u) and sigma(u)
/// cached. Requires u certifiably outside the lattice.
class SerrePoint {
public:
    SerrePoint(const WeierstrassContext &ctx, const BallComplex &u);

    const BallComplex &u() const { return u_; }
    const BallComplex &zeta_u() const { return zeta_u_; }
    const BallComplex &sigma_u() const { return sigma_u_; }

private:
    BallComplex u_, zeta_u_, sigma_u_;
};

/// lambda(u, a*omega1 + b*omega2) = eta(omega)*u - omega*zeta(u).
BallComplex lambda_qp(const Lattice &lat, const SerrePoint &sp, long a, long b);

/// f_u(z) = sigma(z+u) / (sigma(z) sigma(u)) * exp(-zeta(u) z).
/// z in the lattice is a pole (throws PoleAtLatticePoint); z+u in the lattice
/// is an allowed zero.
BallComplex serre_f(const WeierstrassContext &ctx, const SerrePoint &sp, const BallComplex &z);

struct TorsionData {
    BallComplex t0;
    LatticePoint omega0;
};

/// For integers k_i and points u_i with sum k_i u_i certifiably a lattice
/// point omega0, returns t0 = sum k_i zeta(u_i) - eta(omega0); the function
/// e^(t0 z) * prod f_{u_i}(z)^{k_i} is then lattice-periodic.
/// Throws NotALatticeRelation otherwise.
TorsionData torsion_t0(const WeierstrassContext &ctx, const std::vector<long> &k,
                       const std::vector<SerrePoint> &u);

} // namespace qe
