#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lipuq/envelope.hpp"
#include "lipuq/errors.hpp"
#include "lipuq/parallel.hpp"
#include "lipuq/rng.hpp"
#include "lipuq/stats.hpp"

namespace lipuq {

enum class ErrorUnits { Absolute, KhatOver2, GammaHat };

inline std::string_view error_units_token(ErrorUnits u) {
    switch (u) {
        case ErrorUnits::Absolute: return "abs";
        case ErrorUnits::KhatOver2: return "khat2";
        case ErrorUnits::GammaHat: return "gammahat";
    }
    return "abs";
}

inline ErrorUnits parse_error_units(std::string_view token) {
    if (token == "abs" || token == "absolute") return ErrorUnits::Absolute;
    if (token == "khat2" || token == "khat-over-2") return ErrorUnits::KhatOver2;
    if (token == "gammahat") return ErrorUnits::GammaHat;
    throw DomainError("--units: expected abs, khat2 or gammahat, got '" + std::string(token) + "'");
}

/// n_samples sorted draws of e*(W) for W uniform on the cube. Sample j's
/// coordinate c consumes counter j*p + c of stream 0, so any chunking of the
/// index range reproduces the same values.
inline std::vector<double> sample_error(const EnvelopeModel& m, std::size_t n_samples, std::uint64_t seed,
                                        int threads = 1) {
    if (n_samples < 1) throw DomainError("--samples: must be >= 1");
    const auto p = static_cast<std::size_t>(m.dataset.dim);
    std::vector<double> out(n_samples);
    const CounterRng rng(seed, 0);
    parallel_chunks(n_samples, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<double> w(p);
        for (std::size_t j = begin; j < end; ++j) {
            const std::uint64_t base = static_cast<std::uint64_t>(j) * p;
            for (std::size_t c = 0; c < p; ++c) w[c] = rng.uniform(base + c);
            out[j] = envelope_at(m, w.data()).e_star;
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Largest order-statistic rank k (1-based) with P(Binomial(n, q) >= k) >=
/// confidence, or 0 when even the sample minimum fails: the k-th smallest of
/// n samples then lower-bounds the q-quantile with the stated confidence.
inline std::uint64_t quantile_lcb_rank(std::size_t n, double q, double confidence) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("--quantiles: values must lie strictly between 0 and 1");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DomainError("--confidence: must lie strictly between 0 and 1");
    const auto nn = static_cast<std::uint64_t>(n);
    if (nn == 0 || binomial_upper_tail(nn, q, 1) < confidence) return 0;
    std::uint64_t lo = 1, hi = nn; // tail(lo) >= confidence; invariant kept below
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (binomial_upper_tail(nn, q, mid) >= confidence)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

/// One-sided lower confidence bound for the q-quantile by binomial test
/// inversion. Input must be sorted ascending; returns -inf when no order
/// statistic qualifies ("no nontrivial bound").
inline double quantile_lcb(const std::vector<double>& sorted_values, double q, double confidence) {
    const std::uint64_t k = quantile_lcb_rank(sorted_values.size(), q, confidence);
    if (k == 0) return -std::numeric_limits<double>::infinity();
    return sorted_values[static_cast<std::size_t>(k - 1)];
}

/// z-test lower confidence bound for the mean, floored at 0 (e* >= 0 when
/// kappa >= khat). Relies on the CLT, so coverage is approximate.
inline double mean_lcb(const std::vector<double>& values, double confidence) {
    if (values.size() < 2) throw DegenerateError("mean bound needs at least 2 samples");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DomainError("--confidence: must lie strictly between 0 and 1");
    const auto n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const double z = normal_quantile(confidence);
    return std::fmax(0.0, mean - z * sd / std::sqrt(n));
}

struct McConfig {
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    double confidence = 0.95;
    std::vector<double> quantiles = {0.25, 0.5, 0.75};
    std::vector<ErrorUnits> units = {ErrorUnits::KhatOver2};
    std::vector<MetricKind> metrics = {MetricKind::Euclidean, MetricKind::Supremum};
    std::optional<double> kappa; // per-metric khat when unset
    int threads = 1;
};

struct QuantileLcb {
    double q = 0.0;
    double lcb = 0.0; // -inf when no order statistic qualifies
};

/// One row of the error-distribution table: one metric in one unit system.
/// Values are the absolute-unit results divided by unit_divisor, so
/// multiplying back recovers the absolute floats up to one rounding.
struct ErrorDistributionReport {
    MetricKind metric = MetricKind::Supremum;
    ErrorUnits units = ErrorUnits::Absolute;
    double unit_divisor = 1.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    double confidence = 0.0;
    double khat = 0.0;
    double kappa = 0.0;
    std::vector<QuantileLcb> quantile_lcbs;
    double mean = 0.0;
    double mean_lcb = 0.0;
    double max_observed = 0.0;
};

namespace detail {

inline double unit_divisor_for(ErrorUnits units, double khat, double gamma_hat_value) {
    switch (units) {
        case ErrorUnits::Absolute:
            return 1.0;
        case ErrorUnits::KhatOver2:
            if (khat <= 0.0) throw DegenerateError("--units: khat2 needs a positive empirical constant");
            return 0.5 * khat;
        case ErrorUnits::GammaHat:
            if (gamma_hat_value <= 0.0) throw DegenerateError("--units: gammahat needs a positive value mean");
            return gamma_hat_value;
    }
    return 1.0;
}

} // namespace detail

/// Error-distribution table: one report per requested metric x unit system
/// (the paper-style table is 2 metrics x 2 unit systems). All rows of one
/// metric share a single set of draws; units differ only by rescaling.
inline std::vector<ErrorDistributionReport> build_report(const EnvelopeModel& model, const McConfig& config) {
    if (config.metrics.empty()) throw DomainError("--metric: at least one metric required");
    if (config.units.empty()) throw DomainError("--units: at least one unit system required");
    for (const double q : config.quantiles)
        if (!(q > 0.0 && q < 1.0))
            throw DomainError("--quantiles: values must lie strictly between 0 and 1");
    if (!(config.confidence > 0.0 && config.confidence < 1.0))
        throw DomainError("--confidence: must lie strictly between 0 and 1");

    std::vector<ErrorDistributionReport> rows;
    rows.reserve(config.metrics.size() * config.units.size());
    for (const MetricKind kind : config.metrics) {
        const EnvelopeModel* m = &model;
        EnvelopeModel sibling;
        if (kind != model.metric.kind) {
            sibling = build_envelope_model(model.dataset, Metric{kind, model.dataset.dim}, config.kappa,
                                           config.threads);
            m = &sibling;
        }
        const std::vector<double> abs_samples = sample_error(*m, config.samples, config.seed, config.threads);
        const double abs_mean =
            std::accumulate(abs_samples.begin(), abs_samples.end(), 0.0) / static_cast<double>(abs_samples.size());
        const double abs_mean_lcb = mean_lcb(abs_samples, config.confidence);

        for (const ErrorUnits units : config.units) {
            ErrorDistributionReport row;
            row.metric = kind;
            row.units = units;
            row.unit_divisor = detail::unit_divisor_for(units, m->khat, m->gamma_hat);
            row.n_samples = config.samples;
            row.seed = config.seed;
            row.confidence = config.confidence;
            row.khat = m->khat;
            row.kappa = m->kappa;
            row.quantile_lcbs.reserve(config.quantiles.size());
            for (const double q : config.quantiles)
                row.quantile_lcbs.push_back({q, quantile_lcb(abs_samples, q, config.confidence) / row.unit_divisor});
            row.mean = abs_mean / row.unit_divisor;
            row.mean_lcb = abs_mean_lcb / row.unit_divisor;
            row.max_observed = abs_samples.back() / row.unit_divisor;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace lipuq
