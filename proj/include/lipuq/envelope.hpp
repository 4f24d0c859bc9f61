#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "lipuq/dataset.hpp"
#include "lipuq/errors.hpp"
#include "lipuq/magnitude.hpp"
#include "lipuq/metric.hpp"
#include "lipuq/parallel.hpp"
#include "lipuq/stats.hpp"

namespace lipuq {

/// Exact maximum of |f(x)-f(y)| / d(x,y) over all observation pairs; 0 when
/// n = 1 or all values are equal. The scan is chunked over the first index
/// and the chunk maxima merged in order, so the result is thread-count
/// independent.
inline double empirical_lipschitz(const Dataset& ds, const Metric& metric, int threads = 1) {
    if (metric.dim != ds.dim)
        throw DimensionMismatch("empirical_lipschitz: metric dimension does not match dataset");
    const std::size_t n = ds.size();
    if (n < 2) return 0.0;
    const std::size_t d = static_cast<std::size_t>(ds.dim);
    const double* x = ds.coords.data();
    const double* f = ds.values.data();

    std::vector<double> chunk_best(static_cast<std::size_t>(std::max(threads, 1)), 0.0);
    parallel_chunks(n - 1, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        double best = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double num = std::fabs(f[i] - f[j]);
                if (num == 0.0) continue;
                const double ratio = num / distance(metric, x + i * d, x + j * d);
                if (ratio > best) best = ratio;
            }
        }
        chunk_best[chunk] = best;
    });
    double best = 0.0;
    for (const double b : chunk_best) best = std::fmax(best, b);
    return best;
}

/// Sample mean of the observed values.
inline double gamma_hat(const Dataset& ds) {
    double acc = 0.0;
    for (const double v : ds.values) acc += v;
    return acc / static_cast<double>(ds.size());
}

namespace detail {

// Minimizes a convex objective on [lo, hi] to absolute tolerance tol.
template <typename Obj>
double golden_section(double lo, double hi, double tol, Obj&& obj) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = obj(x1);
    double f2 = obj(x2);
    for (int iter = 0; iter < 300 && b - a > tol; ++iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = obj(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = obj(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

/// gamma-bar: the minimizer over [min f, max f] of sum_x |f(x) - g|^p with
/// p the dimension. p = 1 and p = 2 have closed forms (median-interval
/// midpoint and mean). For p >= 3 the objective is strictly convex and
/// golden-section search shrinks the bracket to 1e-10 of the value range
/// (the comparison noise floor caps attainable accuracy near sqrt(eps));
/// it switches to a log-domain accumulation when |f - g|^p would leave
/// double range.
inline double gamma_bar(const Dataset& ds) {
    const auto& f = ds.values;
    const int p = ds.dim;
    const auto [lo_it, hi_it] = std::minmax_element(f.begin(), f.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) return lo;

    if (p == 1) {
        std::vector<double> sorted(f);
        std::sort(sorted.begin(), sorted.end());
        const std::size_t n = sorted.size();
        if (n % 2 == 1) return sorted[n / 2];
        return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    }
    if (p == 2) return gamma_hat(ds);

    const double range = hi - lo;
    const bool log_domain = std::fabs(static_cast<double>(p) * std::log10(range)) > 250.0;
    std::vector<double> scratch(log_domain ? f.size() : 0);
    const auto objective = [&](double g) {
        if (!log_domain) {
            double acc = 0.0;
            for (const double v : f) acc += ipow(std::fabs(v - g), p);
            return acc;
        }
        for (std::size_t i = 0; i < f.size(); ++i)
            scratch[i] = static_cast<double>(p) * std::log10(std::fabs(f[i] - g));
        return log10_sum(scratch.data(), scratch.size()); // log10 is monotone: comparisons agree
    };
    return detail::golden_section(lo, hi, 1e-10 * range, objective);
}

struct EnvelopeValues {
    double e_plus;
    double e_minus;
    double e_star;
};

/// Precomputed envelope state: the empirical constant, the regularity budget
/// kappa (default: the empirical constant), both centering constants, and
/// the partition of observations by value relative to gamma_bar.
struct EnvelopeModel {
    Dataset dataset;
    Metric metric;
    double kappa = 0.0;
    double khat = 0.0;
    double gamma_bar = 0.0;
    double gamma_hat = 0.0;
    std::vector<std::size_t> plus_index;  // f(x) >= gamma_bar
    std::vector<std::size_t> minus_index; // f(x) < gamma_bar
    std::vector<double> q_radius;         // |f(x) - gamma_bar| / khat; empty when khat = 0

    std::size_t size() const { return dataset.size(); }
};

inline EnvelopeModel build_envelope_model(Dataset ds, Metric metric, std::optional<double> kappa = std::nullopt,
                                          int threads = 1) {
    if (metric.dim != ds.dim)
        throw DimensionMismatch("envelope: metric dimension does not match dataset");
    EnvelopeModel m;
    m.khat = empirical_lipschitz(ds, metric, threads);
    m.kappa = kappa.value_or(m.khat);
    if (m.kappa < 0.0 || !std::isfinite(m.kappa)) throw DomainError("--kappa: must be a finite value >= 0");
    m.gamma_bar = gamma_bar(ds);
    m.gamma_hat = gamma_hat(ds);
    const std::size_t n = ds.size();
    for (std::size_t i = 0; i < n; ++i)
        (ds.values[i] >= m.gamma_bar ? m.plus_index : m.minus_index).push_back(i);
    if (m.khat > 0.0) {
        m.q_radius.resize(n);
        for (std::size_t i = 0; i < n; ++i) m.q_radius[i] = std::fabs(ds.values[i] - m.gamma_bar) / m.khat;
    }
    m.dataset = std::move(ds);
    m.metric = metric;
    return m;
}

/// e+ = min_x [f(x) + kappa d(x,w)], e- = max_x [f(x) - kappa d(x,w)],
/// e* = (e+ - e-)/2. Ties in the min/max keep the lowest observation index.
/// e* can be negative only when kappa < khat (empty function class).
inline EnvelopeValues envelope_at(const EnvelopeModel& m, const double* w) {
    const std::size_t n = m.size();
    const std::size_t d = static_cast<std::size_t>(m.dataset.dim);
    const double* x = m.dataset.coords.data();
    const double* f = m.dataset.values.data();
    const double kappa = m.kappa;
    double e_plus = std::numeric_limits<double>::infinity();
    double e_minus = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dist = distance(m.metric, x + i * d, w);
        const double up = f[i] + kappa * dist;
        const double down = f[i] - kappa * dist;
        if (up < e_plus) e_plus = up;
        if (down > e_minus) e_minus = down;
    }
    return {e_plus, e_minus, 0.5 * (e_plus - e_minus)};
}

inline EnvelopeValues envelope_at(const EnvelopeModel& m, const std::vector<double>& w) {
    if (w.size() != static_cast<std::size_t>(m.dataset.dim))
        throw DimensionMismatch("envelope_at: query point must have dimension " + std::to_string(m.dataset.dim));
    return envelope_at(m, w.data());
}

/// Midpoint of the envelopes; interpolates the observations. Requires the
/// class F_kappa to be nonempty, i.e. kappa >= khat up to roundoff.
inline double minimax_emulator_at(const EnvelopeModel& m, const double* w) {
    if (m.kappa < m.khat * (1.0 - 1e-12))
        throw EmptyClass("minimax emulator: kappa < empirical Lipschitz constant, no admissible function");
    const EnvelopeValues e = envelope_at(m, w);
    return 0.5 * (e.e_plus + e.e_minus);
}

inline double minimax_emulator_at(const EnvelopeModel& m, const std::vector<double>& w) {
    if (w.size() != static_cast<std::size_t>(m.dataset.dim))
        throw DimensionMismatch("minimax_emulator_at: query point must have dimension " +
                                std::to_string(m.dataset.dim));
    return minimax_emulator_at(m, w.data());
}

namespace detail {

inline EnvelopeValues envelope_at_kappa(const EnvelopeModel& m, const double* w, double kappa) {
    const std::size_t n = m.size();
    const std::size_t d = static_cast<std::size_t>(m.dataset.dim);
    const double* x = m.dataset.coords.data();
    const double* f = m.dataset.values.data();
    double e_plus = std::numeric_limits<double>::infinity();
    double e_minus = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dist = distance(m.metric, x + i * d, w);
        const double up = f[i] + kappa * dist;
        const double down = f[i] - kappa * dist;
        if (up < e_plus) e_plus = up;
        if (down > e_minus) e_minus = down;
    }
    return {e_plus, e_minus, 0.5 * (e_plus - e_minus)};
}

} // namespace detail

/// The adversarial admissible function: e- of the khat-envelope on Q+ (open
/// balls around the above-gamma_bar observations), e+ on Q-, gamma_bar on
/// the rest. Always evaluated at kappa = khat; the open balls with radius
/// |f(x) - gamma_bar| / khat are pairwise disjoint across the two classes.
inline double fbar_at(const EnvelopeModel& m, const double* w) {
    if (m.khat <= 0.0)
        throw DegenerateError("fbar: empirical Lipschitz constant is 0, the Q regions are undefined");
    const std::size_t d = static_cast<std::size_t>(m.dataset.dim);
    const double* x = m.dataset.coords.data();
    bool in_plus = false;
    for (const std::size_t i : m.plus_index) {
        if (distance(m.metric, x + i * d, w) < m.q_radius[i]) {
            in_plus = true;
            break;
        }
    }
    bool in_minus = false;
    if (!in_plus) {
        for (const std::size_t i : m.minus_index) {
            if (distance(m.metric, x + i * d, w) < m.q_radius[i]) {
                in_minus = true;
                break;
            }
        }
    }
    if (!in_plus && !in_minus) return m.gamma_bar;
    const EnvelopeValues e = detail::envelope_at_kappa(m, w, m.khat);
    return in_plus ? e.e_minus : e.e_plus;
}

inline double fbar_at(const EnvelopeModel& m, const std::vector<double>& w) {
    if (w.size() != static_cast<std::size_t>(m.dataset.dim))
        throw DimensionMismatch("fbar_at: query point must have dimension " + std::to_string(m.dataset.dim));
    return fbar_at(m, w.data());
}

} // namespace lipuq
