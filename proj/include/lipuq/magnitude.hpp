#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>

namespace lipuq {

/// A nonnegative quantity carried in both linear and log10 form.
///
/// Bounds in this library routinely reach 10^26 and beyond (eps^-p blows up
/// fast), so every such quantity keeps an authoritative log10 field; the
/// linear `value` is filled in whenever it fits a double, otherwise it is
/// +inf (or 0 for underflow).
struct Magnitude {
    double value = 0.0;   ///< linear value, +inf if too large for a double
    double log10 = -std::numeric_limits<double>::infinity(); ///< log10(value), -inf for 0

    static Magnitude zero() { return {}; }

    static Magnitude from_value(double v) {
        Magnitude m;
        m.value = v;
        m.log10 = v > 0.0 ? std::log10(v) : -std::numeric_limits<double>::infinity();
        return m;
    }

    static Magnitude from_log10(double l) {
        Magnitude m;
        m.log10 = l;
        if (l == -std::numeric_limits<double>::infinity()) {
            m.value = 0.0;
        } else if (l > 307.0) {
            m.value = std::numeric_limits<double>::infinity();
        } else {
            m.value = std::pow(10.0, l);
        }
        return m;
    }

    bool is_zero() const { return log10 == -std::numeric_limits<double>::infinity(); }
    bool fits_double() const { return std::isfinite(value); }
};

/// log10(a - b) for magnitudes with a > b, computed without leaving the log domain.
inline double log10_diff(double log10_a, double log10_b) {
    // a - b = a * (1 - 10^(log b - log a))
    const double delta = log10_b - log10_a; // <= 0
    if (delta == -std::numeric_limits<double>::infinity()) return log10_a;
    return log10_a + std::log1p(-std::pow(10.0, delta)) / std::numbers::ln10;
}

/// A count that may be astronomically large: exact integer when it fits,
/// always with a log10 companion.
struct BigCount {
    std::optional<std::uint64_t> exact; ///< engaged when the count fits exactly
    double log10 = 0.0;                 ///< log10 of the count (0 => count 1)

    static BigCount one() {
        BigCount c;
        c.exact = 1;
        c.log10 = 0.0;
        return c;
    }

    static BigCount from_exact(std::uint64_t n) {
        BigCount c;
        c.exact = n;
        c.log10 = std::log10(static_cast<double>(n));
        return c;
    }

    static BigCount from_log10(double l) {
        BigCount c;
        c.log10 = l;
        return c;
    }
};

/// Integer x^n by repeated squaring; overflow yields +inf like pow would.
inline double ipow(double x, int n) {
    double r = 1.0;
    double b = x;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

} // namespace lipuq
