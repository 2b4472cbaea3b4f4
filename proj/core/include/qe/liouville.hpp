#pragma once

#include <string>
#include <vector>

#include "qe/ball.hpp"
#include "qe/tower.hpp"
#include "qe/verdict.hpp"

namespace qe {

/// Integer of the shape 3^exponent (or a small literal), the only integers
/// appearing in the q_0 = 1, q_{k+1} = 3^(q_k^4) sequence at checkable depth.
class TowerInt {
public:
    static TowerInt literal(const mpz_class &v);
    static TowerInt power_of_3(const mpz_class &exponent);

    bool is_power() const { return is_power_; }
    const mpz_class &exponent() const; // power form only
    /// Materializes the integer; DepthUnrepresentable when too large.
    mpz_class to_mpz() const;
    /// log of the (positive) integer.
    BallReal log(mpfr_prec_t prec) const;
    TowerMagnitude magnitude(mpfr_prec_t prec) const;
    std::string to_string() const;

private:
    bool is_power_ = false;
    mpz_class literal_ = 0;
    mpz_class exponent_ = 0;
};

/// q_0 = 1, q_{k+1} = 3^(q_k^4); exponents stay exact through k = 3.
/// Throws DepthUnrepresentable for k >= 4.
TowerInt qk_sequence(int k);

/// The tuple x_i = sum_l eps_l^(i) (4(l-1))^(n-i) / q_l with exact partial
/// sums through l = 2 and certified tail data beyond. Convention:
/// (4*0)^0 = 1 (the i = n case), (4*0)^m = 0 for m > 0.
struct LiouvilleTuple {
    int n = 0;
    int depth = 0;
    std::vector<std::vector<int>> signs; // signs[i][l-1] in {-1, +1}
    std::vector<mpq_class> s1, s2;       // S_1^(i), S_2^(i), exact
    std::vector<mpz_class> p1, p2;       // p_k^(i) = q_k S_k^(i), exact integers

    int sign(int i, int l) const { return signs.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(l - 1)); }
};

/// Throws InvalidShape unless signs is n x depth with entries +-1, n >= 1,
/// depth >= 2.
LiouvilleTuple build_tuple(int n, const std::vector<std::vector<int>> &signs, int depth);

/// Certified log-space interval for ||q_k x_i|| = |q_k x_i - p_k^(i)|,
/// together with the sandwich and nearest-integer certifications.
struct DistanceInterval {
    BallReal log_lo, log_hi;   // endpoints of log ||q_k x_i||
    Verdict is_nearest = Verdict::Unknown;  // |q_k x_i - p_k| < 1/2 certified
    Verdict sandwich = Verdict::Unknown;    // within [d/2, 2d] for the dominant d
};
DistanceInterval nearest_int_distance(const LiouvilleTuple &t, int k, int i, mpfr_prec_t prec);

struct InequalityRecord {
    std::string lhs, rhs;
    Verdict verdict = Verdict::Unknown;
    /// log(rhs) - log(lhs) lower bound when certified (>= 0 for Pass).
    BallReal log_margin;
};

struct ChainRecord {
    int k = 0;
    TowerInt qk = TowerInt::literal(1);
    std::vector<mpz_class> pk;                 // exact p_k^(i)
    std::vector<DistanceInterval> distances;   // per i
    std::vector<InequalityRecord> inequalities;
    Verdict overall = Verdict::Unknown;
};

/// Certifies 0 < k^(n-1)||q_k x_n|| <= ... <= ||q_k x_1|| <= e^(-q_k^4)
/// at k in {1, 2}. Throws DepthExceeded outside that range or beyond the
/// tuple's sign depth.
ChainRecord verify_chain(const LiouvilleTuple &t, int k, mpfr_prec_t prec);

struct LiouvilleCertificate {
    int n = 0;
    int depth = 0;
    std::string signs_row_major; // '+'/'-' per (i, l), row-major
    std::vector<ChainRecord> records;
    bool all_pass = false;
};
LiouvilleCertificate make_certificate(const LiouvilleTuple &t, int kmax, mpfr_prec_t prec);

/// The finite-q chain check: 0 < k^(n-1)||q x_n|| <= ... <= ||q x_1|| <= q^-k
/// for certified real enclosures x_i at ordinary scale.
struct DurandRecord {
    std::vector<InequalityRecord> inequalities;
    Verdict overall = Verdict::Unknown;
};
DurandRecord verify_durand(const std::vector<BallReal> &x, long q, long k, mpfr_prec_t prec);

} // namespace qe
