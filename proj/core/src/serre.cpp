#include "qe/serre.hpp"

namespace qe {

SerrePoint::SerrePoint(const WeierstrassContext &ctx, const BallComplex &u) : u_(u) {
    sigma_u_ = ctx.sigma(u);
    if (!sigma_u_.certainly_nonzero())
        throw PoleAtLatticePoint("Serre parameter u is not certifiably outside the lattice");
    zeta_u_ = ctx.zeta(u);
}

BallComplex lambda_qp(const Lattice &lat, const SerrePoint &sp, long a, long b) {
    BallComplex omega = lat.point(a, b).value;
    BallComplex eta = lat.quasi_period(a, b);
    return eta * sp.u() - omega * sp.zeta_u();
}

BallComplex serre_f(const WeierstrassContext &ctx, const SerrePoint &sp, const BallComplex &z) {
    BallComplex sz = ctx.sigma(z);
    if (!sz.certainly_nonzero()) throw PoleAtLatticePoint("z is not certifiably outside the lattice");
    BallComplex szu = ctx.sigma(z + sp.u());
    BallComplex expf = (-(sp.zeta_u() * z)).exp();
    return szu / (sz * sp.sigma_u()) * expf;
}

TorsionData torsion_t0(const WeierstrassContext &ctx, const std::vector<long> &k,
                       const std::vector<SerrePoint> &u) {
    if (k.size() != u.size() || k.empty()) throw InvalidShape("coefficient/point count mismatch");
    mpfr_prec_t p = ctx.prec();
    BallComplex s(p), t0(p);
    for (std::size_t i = 0; i < k.size(); ++i) {
        s = s + u[i].u().mul_si(k[i]);
        t0 = t0 + u[i].zeta_u().mul_si(k[i]);
    }
    auto coords = ctx.lattice().recover_integer_coords(s);
    if (!coords) throw NotALatticeRelation("sum k_i u_i is not certifiably a lattice point");
    TorsionData out;
    out.omega0 = ctx.lattice().point(coords->first, coords->second);
    out.t0 = t0 - ctx.lattice().quasi_period(coords->first, coords->second);
    return out;
}

} // namespace qe
