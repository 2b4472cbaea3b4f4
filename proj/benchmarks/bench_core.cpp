#include <benchmark/benchmark.h>

#include "qe/liouville.hpp"
#include "qe/riemann.hpp"
#include "qe/suites.hpp"
#include "qe/vandermonde.hpp"
#include "qe/weierstrass.hpp"

using namespace qe;

namespace {

const Lattice &square_lattice(mpfr_prec_t prec) {
    static Lattice lat128 = Lattice::preset("square", 128);
    static Lattice lat256 = Lattice::preset("square", 256);
    return prec == 256 ? lat256 : lat128;
}

void BM_lattice_construction(benchmark::State &state) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
    Rng rng(1);
    for (auto _ : state) {
        Lattice lat = random_lattice(rng, prec);
        benchmark::DoNotOptimize(lat.eta1());
    }
}
BENCHMARK(BM_lattice_construction)->Arg(128)->Arg(256);

void BM_sigma_eval(benchmark::State &state) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
    const Lattice &lat = square_lattice(prec);
    WeierstrassContext ctx(lat, prec);
    Rng rng(2);
    BallComplex z = random_cell_point(lat, rng, prec);
    for (auto _ : state) benchmark::DoNotOptimize(ctx.sigma(z));
}
BENCHMARK(BM_sigma_eval)->Arg(128)->Arg(256);

void BM_eval_all(benchmark::State &state) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
    const Lattice &lat = square_lattice(prec);
    WeierstrassContext ctx(lat, prec);
    Rng rng(3);
    BallComplex z = random_cell_point(lat, rng, prec);
    for (auto _ : state) benchmark::DoNotOptimize(ctx.eval_all(z));
}
BENCHMARK(BM_eval_all)->Arg(128)->Arg(256);

void BM_vandermonde_det(benchmark::State &state) {
    ConfluentSystem sys;
    sys.prec = 128;
    sys.blocks = {{BallComplex::from_si(1, 2, 128), 3},
                  {BallComplex::from_si(-2, 1, 128), 3},
                  {BallComplex::from_si(3, -1, 128), 3}};
    sys.shift = BallReal::from_si(1, 128);
    for (auto _ : state) benchmark::DoNotOptimize(det_direct(build_matrix(sys), 128));
}
BENCHMARK(BM_vandermonde_det);

void BM_liouville_chain(benchmark::State &state) {
    auto tuple = build_tuple(3, std::vector<std::vector<int>>(3, std::vector<int>(3, 1)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_chain(tuple, 2, 192));
    }
}
BENCHMARK(BM_liouville_chain);

void BM_zeta_r(benchmark::State &state) {
    ZetaDomainPoint s(BallComplex::from_si(3, 0, 64));
    for (auto _ : state) benchmark::DoNotOptimize(zeta_r(s, static_cast<mpfr_prec_t>(state.range(0))));
}
BENCHMARK(BM_zeta_r)->Arg(16)->Arg(24);

} // namespace

BENCHMARK_MAIN();
