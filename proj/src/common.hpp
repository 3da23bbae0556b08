#ifndef TAILKIT_COMMON_HPP
#define TAILKIT_COMMON_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace tailkit {

// Error taxonomy kept deliberately small: everything a caller can mishandle
// is an InvalidArgument (bad parameters, broken preconditions), everything
// else is an internal failure.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kMassTol = 1e-12;          // normalization tolerance
inline constexpr double kDenominatorFloor = 1e-280; // underflow floor for tail ratios

// Index of the lattice cell containing x, with snap-up when x sits within
// 1e-9 (relative) of the next lattice point. Negative x maps to -1.
inline long lattice_index(double x, double step) {
    if (x < 0.0)
        return -1;
    const double r = x / step;
    long i = static_cast<long>(std::floor(r));
    const double next = static_cast<double>(i) + 1.0;
    if (next - r <= 1e-9 * std::max(1.0, next))
        ++i;
    return i;
}

// True when x is (numerically) a multiple of step.
inline bool on_lattice(double x, double step) {
    const double r = x / step;
    const double n = std::nearbyint(r);
    return std::fabs(r - n) <= 1e-9 * std::max(1.0, std::fabs(r));
}

inline bool nearly_equal(double a, double b, double tol) {
    return std::fabs(a - b) <= tol;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale == 0.0)
        return 0.0;
    return std::fabs(a - b) / scale;
}

// Shortest decimal representation that round-trips the double.
inline std::string to_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace tailkit

#endif
