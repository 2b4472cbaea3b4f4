#pragma once

#include <string>

namespace qe {

/// Outcome of a certified check: Pass/Fail only when the comparison is
/// certified, Unknown when the certifying balls overlap.
enum class Verdict { Pass, Fail, Unknown };

inline const char *to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "unknown";
    }
}

} // namespace qe
