#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "lipuq/errors.hpp"

namespace lipuq {

namespace detail {

// c[0..7] ascending, c[7] multiplies r^7.
inline double poly7(const double* c, double r) {
    double s = c[7];
    for (int i = 6; i >= 0; --i) s = s * r + c[i];
    return s;
}

} // namespace detail

/// Inverse standard normal CDF (Wichura's PPND16 rational approximation,
/// accurate to ~1e-16 over (0, 1)).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
    static constexpr double A[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2,  1.9715909503065514427e3,
        1.3731693765509461125e4,  4.5921953931549871457e4,  6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static constexpr double B[8] = {
        1.0,                      4.2313330701600911252e1,  6.8718700749205790830e2,
        5.3941960214247511077e3,  2.1213794301586595867e4,  3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static constexpr double C[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double D[8] = {
        1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr double E[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double F[8] = {
        1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * detail::poly7(A, r) / detail::poly7(B, r);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = detail::poly7(C, r) / detail::poly7(D, r);
    } else {
        r -= 5.0;
        val = detail::poly7(E, r) / detail::poly7(F, r);
    }
    return (q < 0.0) ? -val : val;
}

inline double log_binom_coeff(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

inline double log_binomial_pmf(std::uint64_t n, std::uint64_t i, double q) {
    return log_binom_coeff(n, i) + static_cast<double>(i) * std::log(q) +
           static_cast<double>(n - i) * std::log1p(-q);
}

/// P(X >= k) for X ~ Binomial(n, q), exact up to rounding. Each term is
/// formed in the log domain so tails far from the mode never underflow, and
/// the side with fewer terms is the one summed. Absolute error ~1e-15.
inline double binomial_upper_tail(std::uint64_t n, double q, std::uint64_t k) {
    if (k == 0) return 1.0;
    if (k > n) return 0.0;
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("binomial_upper_tail: q must lie in [0, 1]");
    if (q == 0.0) return 0.0;
    if (q == 1.0) return 1.0;
    const bool direct = (n - k + 1) <= k;
    const std::uint64_t lo = direct ? k : 0;
    const std::uint64_t hi = direct ? n : k - 1;
    const double mode = (static_cast<double>(n) + 1.0) * q;
    double sum = 0.0;
    for (std::uint64_t i = lo; i <= hi; ++i) {
        const double t = std::exp(log_binomial_pmf(n, i, q));
        sum += t;
        // pmf decays monotonically past the mode; later terms cannot matter
        if (static_cast<double>(i) > mode && t < sum * 1e-18) break;
    }
    if (sum > 1.0) sum = 1.0;
    return direct ? sum : 1.0 - sum;
}

/// log10 of sum_i 10^{x[i]}. Entries of -inf contribute nothing; an empty or
/// all -inf input yields -inf.
inline double log10_sum(const double* xs, std::size_t n) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (xs[i] > top) top = xs[i];
    if (!std::isfinite(top)) return top;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::pow(10.0, xs[i] - top);
    return top + std::log10(acc);
}

} // namespace lipuq
