#pragma once

#include <string>

namespace monop {

enum class Verdict { Unbounded, BoundedNotCompact, Compact, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Unbounded: return "Unbounded";
        case Verdict::BoundedNotCompact: return "BoundedNotCompact";
        case Verdict::Compact: return "Compact";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s);

}  // namespace monop
