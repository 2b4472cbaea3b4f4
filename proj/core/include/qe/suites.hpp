#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qe/lattice.hpp"
#include "qe/rng.hpp"
#include "qe/verdict.hpp"

namespace qe {

struct SuiteOptions {
    std::string preset = "square";
    std::optional<std::pair<BallComplex, BallComplex>> omegas; // overrides preset
    long trials = 20;
    mpfr_prec_t prec = 128;
    std::uint64_t seed = 1;
};

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::Unknown;
    std::string residual; // printable enclosure or note
};

struct SuiteResult {
    std::string suite;
    bool ok = true;
    std::vector<CheckResult> checks;

    void add(const std::string &name, Verdict v, const std::string &residual = "");
};

std::vector<std::string> suite_names();

/// Runs one of: legendre, periodicity, sigma-monodromy, ode, lambda, torsion,
/// vandermonde, all. Deterministic for fixed options.
SuiteResult run_suite(const std::string &name, const SuiteOptions &opt);

/// Residual acceptance rule used across the suites: the ball contains zero
/// and its radius is at most 2^-(prec-guard_bits).
Verdict residual_verdict(const BallComplex &residual, mpfr_prec_t prec, int guard_bits = 16);
Verdict residual_verdict(const BallReal &residual, mpfr_prec_t prec, int guard_bits = 16);

/// Seeded random lattice with a comfortably reduced tau.
Lattice random_lattice(Rng &rng, mpfr_prec_t prec);
/// Seeded point in the open fundamental cell, away from the boundary.
BallComplex random_cell_point(const Lattice &lat, Rng &rng, mpfr_prec_t prec);

} // namespace qe
