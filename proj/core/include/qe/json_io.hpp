#pragma once

#include <optional>
#include <string>

#include "qe/ball.hpp"

namespace qe {

/// Complex literal grammar: [-]a[.b][(+|-)c[.d]i], with pure-imaginary and
/// bare "i"/"-i" forms accepted. Throws ParseError.
BallComplex parse_complex(const std::string &text, mpfr_prec_t prec);

BallReal parse_real(const std::string &text, mpfr_prec_t prec);

/// "p", "p/q" or a plain integer; nullopt when the text is not an exact
/// rational (e.g. contains a decimal point).
std::optional<mpq_class> parse_rational(const std::string &text);

/// Midpoint as a complex-string "a+bi" (decimal components).
std::string complex_mid_string(const BallComplex &z);
std::string ball_rad_string(const BallComplex &z);
std::string ball_rad_string(const BallReal &x);

} // namespace qe
