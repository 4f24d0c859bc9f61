#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "lipuq/errors.hpp"

namespace lipuq {

enum class MetricKind { Euclidean, Supremum };

inline std::string_view metric_kind_token(MetricKind kind) {
    return kind == MetricKind::Euclidean ? "l2" : "linf";
}

inline MetricKind parse_metric_kind(std::string_view token) {
    if (token == "l2" || token == "euclidean") return MetricKind::Euclidean;
    if (token == "linf" || token == "supremum") return MetricKind::Supremum;
    throw DomainError("--metric: expected l2 or linf, got '" + std::string(token) + "'");
}

/// Distance configuration on [0,1]^dim. Only l2 and linf are supported; the
/// burden bound has closed-form ball constants for exactly these two.
struct Metric {
    MetricKind kind = MetricKind::Supremum;
    int dim = 1;
};

/// Unchecked fast path: v and w must each hold dim doubles.
inline double distance(const Metric& m, const double* v, const double* w) {
    if (m.kind == MetricKind::Supremum) {
        double best = 0.0;
        for (int j = 0; j < m.dim; ++j) {
            const double diff = std::fabs(v[j] - w[j]);
            if (diff > best) best = diff;
        }
        return best;
    }
    double acc = 0.0;
    for (int j = 0; j < m.dim; ++j) {
        const double diff = v[j] - w[j];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

inline double distance(const Metric& m, const std::vector<double>& v, const std::vector<double>& w) {
    if (v.size() != static_cast<std::size_t>(m.dim) || w.size() != static_cast<std::size_t>(m.dim))
        throw DimensionMismatch("distance: points must have dimension " + std::to_string(m.dim));
    return distance(m, v.data(), w.data());
}

/// log10 of the unit-ball volume: C_2 = pi^{p/2}/Gamma(p/2+1), C_inf = 2^p.
/// Computed through lgamma so it stays finite for dimensions in the hundreds.
inline double log10_ball_volume_constant(const Metric& m) {
    if (m.dim < 1) throw DomainError("ball_volume_constant: dim must be >= 1");
    const double p = static_cast<double>(m.dim);
    if (m.kind == MetricKind::Supremum) return p * std::numbers::ln2 / std::numbers::ln10;
    const double half_p = 0.5 * p;
    const double ln_c = half_p * std::log(std::numbers::pi) - std::lgamma(half_p + 1.0);
    return ln_c / std::numbers::ln10;
}

inline double ball_volume_constant(const Metric& m) {
    if (m.dim < 1) throw DomainError("ball_volume_constant: dim must be >= 1");
    if (m.kind == MetricKind::Supremum) return std::ldexp(1.0, m.dim);
    const double half_p = 0.5 * static_cast<double>(m.dim);
    return std::exp(half_p * std::log(std::numbers::pi) - std::lgamma(half_p + 1.0));
}

/// d~(v): the sup-norm distance from v to the farthest point of the cube,
/// equal to max(d(v, 0), d(v, 1)). Specific to linf; no ell-2 analogue is
/// implemented because the corner bounds it feeds are linf results.
inline double corner_distance_bound(const Metric& m, const double* v) {
    if (m.kind != MetricKind::Supremum)
        throw UnsupportedMetric("corner_distance_bound: defined for linf only");
    double best = 0.0;
    for (int j = 0; j < m.dim; ++j) {
        const double far = std::fmax(v[j], 1.0 - v[j]);
        if (far > best) best = far;
    }
    return best;
}

inline double corner_distance_bound(const Metric& m, const std::vector<double>& v) {
    if (v.size() != static_cast<std::size_t>(m.dim))
        throw DimensionMismatch("corner_distance_bound: point must have dimension " + std::to_string(m.dim));
    return corner_distance_bound(m, v.data());
}

} // namespace lipuq
