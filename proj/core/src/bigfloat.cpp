#include "qe/bigfloat.hpp"

#include <cstdlib>
#include <vector>

namespace qe {

std::string BigFloat::to_string(std::size_t digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    if (digits == 0) {
        // Enough decimal digits for exact binary->decimal->binary round trip.
        digits = static_cast<std::size_t>(mpfr_get_prec(v_) * 0.30103) + 3;
    }
    mpfr_exp_t e;
    char *s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    bool negative = !m.empty() && m[0] == '-';
    std::string mant = negative ? m.substr(1) : m;
    // Trim trailing zeros but keep at least one digit.
    std::size_t last = mant.find_last_not_of('0');
    if (last != std::string::npos) mant = mant.substr(0, last + 1);
    if (mant.empty()) mant = "0";
    std::string out = negative ? "-" : "";
    // mpfr convention: value = 0.mant * 10^e
    long exp10 = static_cast<long>(e);
    if (exp10 >= 1 && exp10 <= static_cast<long>(mant.size())) {
        out += mant.substr(0, static_cast<std::size_t>(exp10));
        if (static_cast<std::size_t>(exp10) < mant.size()) out += "." + mant.substr(static_cast<std::size_t>(exp10));
    } else if (exp10 <= 0 && exp10 > -6) {
        out += "0.";
        out.append(static_cast<std::size_t>(-exp10), '0');
        out += mant;
    } else {
        out += mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(exp10 - 1);
    }
    return out;
}

} // namespace qe
