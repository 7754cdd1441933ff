#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mge {

// Floating-point comparison contract: relative tolerance 1e-9 with an
// absolute floor of 1e-12. Rational-mode code paths bypass these.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline bool approx_eq(double a, double b) {
    return std::abs(a - b) <=
           std::max(kAbsTol, kRelTol * std::max(std::abs(a), std::abs(b)));
}

inline bool approx_le(double a, double b) { return a <= b || approx_eq(a, b); }

// Thrown when an exact search exceeds its node budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mge
