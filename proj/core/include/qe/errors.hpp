#pragma once

#include <stdexcept>
#include <string>

namespace qe {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string &msg = "division by a quantity whose ball contains zero") : Error(msg) {}
};
struct PromotionUndefined : Error {
    explicit PromotionUndefined(const std::string &msg = "tower promotion undefined") : Error(msg) {}
};
struct PrecisionUnreachable : Error {
    explicit PrecisionUnreachable(const std::string &msg = "requested precision unreachable") : Error(msg) {}
};
struct DegenerateLattice : Error {
    explicit DegenerateLattice(const std::string &msg = "degenerate lattice") : Error(msg) {}
};
struct AmbiguousReduction : Error {
    explicit AmbiguousReduction(const std::string &msg = "point too close to cell boundary") : Error(msg) {}
};
struct PoleAtLatticePoint : Error {
    explicit PoleAtLatticePoint(const std::string &msg = "evaluation point is (or may be) a lattice point") : Error(msg) {}
};
struct DependentPeriods : Error {
    explicit DependentPeriods(const std::string &msg = "periods are linearly dependent") : Error(msg) {}
};
struct CertificationFailed : Error {
    explicit CertificationFailed(const std::string &msg = "could not certify result at working precision") : Error(msg) {}
};
struct NotALatticeRelation : Error {
    explicit NotALatticeRelation(const std::string &msg = "combination is not certifiably a lattice point") : Error(msg) {}
};
struct NotDistinct : Error {
    explicit NotDistinct(const std::string &msg = "nodes are not certifiably distinct") : Error(msg) {}
};
struct ZeroInput : Error {
    explicit ZeroInput(const std::string &msg = "input value is (or may be) zero") : Error(msg) {}
};
struct InvalidMultiplier : Error {
    explicit InvalidMultiplier(const std::string &msg = "multiplier does not map the lattice into itself") : Error(msg) {}
};
struct DepthUnrepresentable : Error {
    explicit DepthUnrepresentable(const std::string &msg = "tower depth not exactly representable") : Error(msg) {}
};
struct DepthExceeded : Error {
    explicit DepthExceeded(const std::string &msg = "verification depth exceeded") : Error(msg) {}
};
struct InvalidShape : Error {
    explicit InvalidShape(const std::string &msg = "invalid input shape") : Error(msg) {}
};
struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string &msg = "zero denominator") : Error(msg) {}
};
struct InvalidInput : Error {
    explicit InvalidInput(const std::string &msg = "invalid input") : Error(msg) {}
};
struct TieUnresolved : Error {
    explicit TieUnresolved(const std::string &msg = "two roots at indistinguishable minimal distance; refine precision") : Error(msg) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string &msg = "argument outside the supported domain") : Error(msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string &msg = "unparseable input") : Error(msg) {}
};

} // namespace qe
