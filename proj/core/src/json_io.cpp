#include "qe/json_io.hpp"

#include <algorithm>
#include <cctype>

namespace qe {

namespace {

bool is_number_body(const std::string &s) {
    if (s.empty()) return false;
    bool dot = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '-' && i == 0) continue;
        if (c == '.') {
            if (dot) return false;
            dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return s != "-" && s != "." && s != "-.";
}

std::string strip_spaces(const std::string &s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

} // namespace

BallReal parse_real(const std::string &text, mpfr_prec_t prec) {
    std::string s = strip_spaces(text);
    if (auto q = parse_rational(s)) return BallReal::from_mpq(*q, prec);
    if (!is_number_body(s)) throw ParseError("bad real literal: " + text);
    return BallReal::from_str(s, prec);
}

std::optional<mpq_class> parse_rational(const std::string &text) {
    std::string s = strip_spaces(text);
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    auto is_int = [](const std::string &t) {
        if (t.empty()) return false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == '-' && i == 0 && t.size() > 1) continue;
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        }
        return true;
    };
    if (slash == std::string::npos) {
        if (!is_int(s)) return std::nullopt;
        return mpq_class(mpz_class(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class d(den);
    if (d == 0) throw ZeroDenominator();
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

BallComplex parse_complex(const std::string &text, mpfr_prec_t prec) {
    std::string s = strip_spaces(text);
    if (s.empty()) throw ParseError("empty complex literal");

    auto parse_part = [&](std::string t) {
        if (!t.empty() && t[0] == '+') t = t.substr(1);
        if (t.empty()) t = "1";
        else if (t == "-") t = "-1";
        if (!is_number_body(t)) throw ParseError("bad complex literal: " + text);
        return BallReal::from_str(t, prec);
    };

    // split at the sign that separates real and imaginary parts
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') split = i; // rightmost separator

    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        if (split == std::string::npos || split >= body.size()) {
            // pure imaginary
            return BallComplex::from_parts(BallReal(prec), parse_part(body));
        }
        std::string re = s.substr(0, split);
        std::string im = body.substr(split);
        return BallComplex::from_parts(parse_part(re), parse_part(im));
    }
    return BallComplex::from_real(parse_real(s, prec));
}

std::string complex_mid_string(const BallComplex &z) {
    std::string re = z.re_mid().to_string();
    std::string im = z.im_mid().to_string();
    if (!im.empty() && im[0] == '-') return re + im + "i";
    return re + "+" + im + "i";
}

std::string ball_rad_string(const BallComplex &z) { return z.rad().to_string(4); }
std::string ball_rad_string(const BallReal &x) { return x.rad().to_string(4); }

} // namespace qe
