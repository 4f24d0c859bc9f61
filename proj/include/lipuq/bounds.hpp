#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "lipuq/envelope.hpp"
#include "lipuq/errors.hpp"
#include "lipuq/magnitude.hpp"
#include "lipuq/metric.hpp"
#include "lipuq/parallel.hpp"
#include "lipuq/rng.hpp"
#include "lipuq/stats.hpp"

namespace lipuq {

enum class EpsilonUnit { Absolute, FractionOfKhat, FractionOfGammaHat };

/// Accuracy targets arrive in three calibrations: absolute units of f, a
/// fraction of the empirical Lipschitz constant, or a fraction of the value
/// mean. Reports echo both the original spec and the resolved absolute value.
struct EpsilonSpec {
    EpsilonUnit unit = EpsilonUnit::Absolute;
    double amount = 0.0;

    std::string text() const {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), amount);
        std::string s(buf, res.ptr);
        if (unit == EpsilonUnit::FractionOfKhat) s += ":khat";
        if (unit == EpsilonUnit::FractionOfGammaHat) s += ":gammahat";
        return s;
    }
};

inline EpsilonSpec parse_epsilon_spec(std::string_view token) {
    EpsilonSpec spec;
    std::string_view num = token;
    const auto colon = token.find(':');
    if (colon != std::string_view::npos) {
        num = token.substr(0, colon);
        const std::string_view unit = token.substr(colon + 1);
        if (unit == "khat") {
            spec.unit = EpsilonUnit::FractionOfKhat;
        } else if (unit == "gammahat") {
            spec.unit = EpsilonUnit::FractionOfGammaHat;
        } else if (unit == "abs") {
            spec.unit = EpsilonUnit::Absolute;
        } else {
            throw DomainError("--epsilon: unknown unit '" + std::string(unit) + "' (want abs, khat or gammahat)");
        }
    }
    const auto res = std::from_chars(num.data(), num.data() + num.size(), spec.amount);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size() || !(spec.amount > 0.0))
        throw DomainError("--epsilon: '" + std::string(token) + "' is not a positive number");
    return spec;
}

inline double resolve_epsilon(const EpsilonSpec& spec, double khat, double gamma_hat_value) {
    switch (spec.unit) {
        case EpsilonUnit::Absolute:
            return spec.amount;
        case EpsilonUnit::FractionOfKhat:
            if (khat <= 0.0) throw DegenerateError("--epsilon: khat units need a positive empirical constant");
            return spec.amount * khat;
        case EpsilonUnit::FractionOfGammaHat:
            if (gamma_hat_value <= 0.0)
                throw DegenerateError("--epsilon: gammahat units need a positive value mean");
            return spec.amount * gamma_hat_value;
    }
    throw DomainError("--epsilon: bad unit");
}

/// The observation-count lower bound ceil(eps^-p (khat^p / C_q - sum_x
/// |f(x) - gamma_bar|^p)) clamped below at 1, with its intermediates. All
/// arithmetic runs in log10; the count is materialized exactly when it fits
/// an integer and kept as log10 otherwise.
struct BurdenBound {
    double epsilon = 0.0; // absolute units of f
    EpsilonSpec spec;
    MetricKind q = MetricKind::Euclidean;
    Magnitude term_k;   // khat^p / C_q
    Magnitude term_sum; // sum_x |f(x) - gamma_bar|^p
    BigCount bound = BigCount::one();
};

inline BurdenBound burden_from_terms(double khat, int p, MetricKind q, Magnitude term_sum, double epsilon,
                                     EpsilonSpec spec = {}) {
    if (p < 1) throw DomainError("burden: dimension must be >= 1");
    if (khat <= 0.0) throw DegenerateError("burden: empirical Lipschitz constant is 0, the bound is vacuous");
    if (!(epsilon > 0.0)) throw DomainError("--epsilon: must be > 0");

    BurdenBound out;
    out.epsilon = epsilon;
    out.spec = spec;
    out.q = q;
    out.term_sum = term_sum;
    const double log10_k =
        static_cast<double>(p) * std::log10(khat) - log10_ball_volume_constant(Metric{q, p});
    out.term_k = Magnitude::from_log10(log10_k);

    if (!term_sum.is_zero() && term_sum.log10 >= log10_k) return out; // nonpositive difference: clamp to 1

    const double log10_gap = term_sum.is_zero() ? log10_k : log10_diff(log10_k, term_sum.log10);
    const double log10_bound = log10_gap - static_cast<double>(p) * std::log10(epsilon);
    if (log10_bound < 15.9) {
        double v = std::pow(10.0, log10_bound);
        const double snapped = std::round(v);
        if (std::fabs(v - snapped) <= 1e-9 * std::fmax(1.0, v)) v = snapped; // absorb roundoff at integers
        const double c = std::fmax(1.0, std::ceil(v));
        out.bound = BigCount::from_exact(static_cast<std::uint64_t>(c));
    } else {
        out.bound = BigCount::from_log10(log10_bound);
    }
    return out;
}

inline BurdenBound burden_lower_bound(const EnvelopeModel& m, double epsilon, EpsilonSpec spec = {}) {
    const int p = m.dataset.dim;
    std::vector<double> logs(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        logs[i] = static_cast<double>(p) * std::log10(std::fabs(m.dataset.values[i] - m.gamma_bar));
    const double log10_sum_terms = log10_sum(logs.data(), logs.size());
    const Magnitude term_sum =
        std::isfinite(log10_sum_terms) ? Magnitude::from_log10(log10_sum_terms) : Magnitude::zero();
    if (spec.amount == 0.0) spec = EpsilonSpec{EpsilonUnit::Absolute, epsilon};
    return burden_from_terms(m.khat, p, m.metric.kind, term_sum, epsilon, spec);
}

/// ceil(k_plus / 2 eps)^p: the number of sup-norm balls that certainly
/// suffice to cover the cube at accuracy eps if the true constant is k_plus.
inline BigCount covering_upper_bound(double k_plus, double epsilon, int dim) {
    if (!(k_plus > 0.0)) throw DomainError("--kplus: must be > 0");
    if (!(epsilon > 0.0)) throw DomainError("--epsilon: must be > 0");
    if (dim < 1) throw DomainError("--dim: must be >= 1");
    double r = k_plus / (2.0 * epsilon);
    const double snapped = std::round(r);
    if (std::fabs(r - snapped) <= 1e-9 * std::fmax(1.0, r)) r = snapped;
    const double m = std::fmax(1.0, std::ceil(r));
    const double log10_count = static_cast<double>(dim) * std::log10(m);
    if (log10_count < 15.9) return BigCount::from_exact(static_cast<std::uint64_t>(ipow(m, dim)));
    return BigCount::from_log10(log10_count);
}

enum class CornerMode { Exhaustive, Heuristic };
enum class CornerOrder { GrayCode, Lexicographic };
enum class CornerObjective { MaxEstar, MaxEplus, MinEminus };

inline std::string_view corner_mode_token(CornerMode m) {
    return m == CornerMode::Exhaustive ? "exhaustive" : "heuristic";
}

inline CornerMode parse_corner_mode(std::string_view token) {
    if (token == "exhaustive") return CornerMode::Exhaustive;
    if (token == "heuristic") return CornerMode::Heuristic;
    throw DomainError("--mode: expected exhaustive or heuristic, got '" + std::string(token) + "'");
}

struct CornerSearchResult {
    double best = 0.0;
    std::vector<std::uint8_t> corner; // the first-visited argbest, as 0/1 bits
    std::uint64_t evaluated = 0;
    CornerMode mode = CornerMode::Exhaustive;
};

namespace detail {

// Shared precomputation for corner work: coordinate-major distances of every
// observation to the 0 and 1 faces. dist1 = 1 - dist0 coordinate-wise.
struct CornerContext {
    const EnvelopeModel* model;
    CornerObjective objective;
    int p;
    std::size_t n;
    std::vector<double> dist0; // [j * n + i] = x_i[j]
    std::vector<double> dist1; // [j * n + i] = 1 - x_i[j]

    CornerContext(const EnvelopeModel& m, CornerObjective obj)
        : model(&m), objective(obj), p(m.dataset.dim), n(m.size()), dist0(n * static_cast<std::size_t>(p)),
          dist1(n * static_cast<std::size_t>(p)) {
        for (std::size_t i = 0; i < n; ++i) {
            const double* x = m.dataset.point(i);
            for (int j = 0; j < p; ++j) {
                dist0[static_cast<std::size_t>(j) * n + i] = x[j];
                dist1[static_cast<std::size_t>(j) * n + i] = 1.0 - x[j];
            }
        }
    }

    double evaluate(const double* dist) const {
        const double* f = model->dataset.values.data();
        const double kappa = model->kappa;
        switch (objective) {
            case CornerObjective::MaxEstar: {
                double up = std::numeric_limits<double>::infinity();
                double down = -std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < n; ++i) {
                    const double kd = kappa * dist[i];
                    if (f[i] + kd < up) up = f[i] + kd;
                    if (f[i] - kd > down) down = f[i] - kd;
                }
                return 0.5 * (up - down);
            }
            case CornerObjective::MaxEplus: {
                double up = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < n; ++i) {
                    const double v = f[i] + kappa * dist[i];
                    if (v < up) up = v;
                }
                return up;
            }
            case CornerObjective::MinEminus: {
                double down = -std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < n; ++i) {
                    const double v = f[i] - kappa * dist[i];
                    if (v > down) down = v;
                }
                return down;
            }
        }
        return 0.0;
    }

    bool improves(double candidate, double incumbent) const {
        return objective == CornerObjective::MinEminus ? candidate < incumbent : candidate > incumbent;
    }

    double worst() const {
        return objective == CornerObjective::MinEminus ? std::numeric_limits<double>::infinity()
                                                       : -std::numeric_limits<double>::infinity();
    }
};

struct CornerBest {
    double value;
    std::vector<std::uint8_t> corner;
};

// Depth-first enumeration of a corner subtree. levels is a (p+1) x n scratch
// of prefix sup-distances; row `depth` is valid on entry. Visitation order is
// the binary-reflected Gray code (child order flips in reversed mode) or
// plain lexicographic; ties keep the first corner visited.
class ExhaustiveScan {
  public:
    ExhaustiveScan(const CornerContext& ctx, CornerOrder order)
        : ctx_(ctx), order_(order), bits_(static_cast<std::size_t>(ctx.p), 0),
          levels_((static_cast<std::size_t>(ctx.p) + 1) * ctx.n, 0.0),
          best_{ctx.worst(), {}} {}

    void seed_prefix(const std::vector<std::uint8_t>& prefix_bits, const std::vector<double>& prefix_dist,
                     int depth) {
        std::copy(prefix_bits.begin(), prefix_bits.begin() + depth, bits_.begin());
        std::copy(prefix_dist.begin(), prefix_dist.end(),
                  levels_.begin() + static_cast<std::size_t>(depth) * ctx_.n);
    }

    void run(int depth, bool reversed) { dfs(depth, reversed); }

    const CornerBest& best() const { return best_; }

  private:
    void descend(int depth, std::uint8_t bit) {
        bits_[static_cast<std::size_t>(depth)] = bit;
        const double* src = levels_.data() + static_cast<std::size_t>(depth) * ctx_.n;
        double* dst = levels_.data() + (static_cast<std::size_t>(depth) + 1) * ctx_.n;
        const double* contrib =
            (bit ? ctx_.dist1.data() : ctx_.dist0.data()) + static_cast<std::size_t>(depth) * ctx_.n;
        for (std::size_t i = 0; i < ctx_.n; ++i) dst[i] = std::fmax(src[i], contrib[i]);
    }

    void dfs(int depth, bool reversed) {
        if (depth == ctx_.p) {
            const double v = ctx_.evaluate(levels_.data() + static_cast<std::size_t>(depth) * ctx_.n);
            if (ctx_.improves(v, best_.value) || best_.corner.empty()) best_ = {v, bits_};
            return;
        }
        if (order_ == CornerOrder::Lexicographic) {
            descend(depth, 0);
            dfs(depth + 1, false);
            descend(depth, 1);
            dfs(depth + 1, false);
        } else if (!reversed) {
            descend(depth, 0);
            dfs(depth + 1, false);
            descend(depth, 1);
            dfs(depth + 1, true);
        } else {
            descend(depth, 1);
            dfs(depth + 1, false);
            descend(depth, 0);
            dfs(depth + 1, true);
        }
    }

    const CornerContext& ctx_;
    CornerOrder order_;
    std::vector<std::uint8_t> bits_;
    std::vector<double> levels_;
    CornerBest best_;
};

struct SubtreeTask {
    std::vector<std::uint8_t> prefix_bits;
    std::vector<double> prefix_dist; // sup distances after fixing the prefix
    bool reversed = false;
};

// Lists the depth-`split` subtrees in global visitation order, so a parallel
// scan can merge per-task winners left to right and preserve first-visit ties.
inline void collect_subtrees(const CornerContext& ctx, CornerOrder order, int split,
                             std::vector<std::uint8_t>& bits, std::vector<double>& dist, int depth,
                             bool reversed, std::vector<SubtreeTask>& out) {
    if (depth == split) {
        out.push_back({bits, dist, reversed});
        return;
    }
    const auto child = [&](std::uint8_t bit, bool next_reversed) {
        std::vector<double> next(ctx.n);
        const double* contrib =
            (bit ? ctx.dist1.data() : ctx.dist0.data()) + static_cast<std::size_t>(depth) * ctx.n;
        for (std::size_t i = 0; i < ctx.n; ++i) next[i] = std::fmax(dist[i], contrib[i]);
        bits[static_cast<std::size_t>(depth)] = bit;
        std::swap(dist, next);
        collect_subtrees(ctx, order, split, bits, dist, depth + 1, next_reversed, out);
        std::swap(dist, next);
    };
    if (order == CornerOrder::Lexicographic) {
        child(0, false);
        child(1, false);
    } else if (!reversed) {
        child(0, false);
        child(1, true);
    } else {
        child(1, false);
        child(0, true);
    }
}

inline CornerSearchResult exhaustive_corner_search(const CornerContext& ctx, std::uint64_t budget,
                                                   CornerOrder order, int threads) {
    const int p = ctx.p;
    if (p >= 63 || (std::uint64_t{1} << p) > budget)
        throw BudgetExceeded("corners: 2^" + std::to_string(p) +
                             " corners exceed --budget " + std::to_string(budget) +
                             "; use heuristic mode");
    const std::uint64_t total = std::uint64_t{1} << p;

    int split = 0;
    if (threads > 1) {
        while ((1 << split) < 4 * threads && split < p && split < 8) ++split;
    }

    std::vector<SubtreeTask> tasks;
    {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(p), 0);
        std::vector<double> dist(ctx.n, 0.0);
        collect_subtrees(ctx, order, split, bits, dist, 0, false, tasks);
    }

    std::vector<CornerBest> winners(tasks.size(), {ctx.worst(), {}});
    parallel_chunks(tasks.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            ExhaustiveScan local(ctx, order);
            local.seed_prefix(tasks[t].prefix_bits, tasks[t].prefix_dist, split);
            local.run(split, tasks[t].reversed);
            winners[t] = local.best();
        }
    });

    CornerSearchResult res;
    res.mode = CornerMode::Exhaustive;
    res.evaluated = total;
    res.best = ctx.worst();
    for (const auto& w : winners) {
        if (res.corner.empty() || ctx.improves(w.value, res.best)) {
            res.best = w.value;
            res.corner = w.corner;
        }
    }
    return res;
}

struct LocalSearchOutcome {
    double best;
    std::vector<std::uint8_t> corner;
    std::uint64_t evals;
};

// Steepest-ascent single-bit-flip search. Each candidate corner evaluation
// costs O(n) thanks to per-observation top-two prefix maxima; recomputing
// them after an accepted move costs O(n p).
inline LocalSearchOutcome local_corner_search(const CornerContext& ctx, std::vector<std::uint8_t> bits,
                                              int step_cap) {
    const std::size_t n = ctx.n;
    const int p = ctx.p;
    std::vector<double> max1(n), max2(n), dist(n);
    std::vector<int> arg1(n);
    std::vector<double> flip_dist(n);

    const auto contribution = [&](int j, std::size_t i) {
        return (bits[static_cast<std::size_t>(j)] ? ctx.dist1 : ctx.dist0)[static_cast<std::size_t>(j) * n + i];
    };
    const auto rebuild = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            double m1 = -std::numeric_limits<double>::infinity();
            double m2 = -std::numeric_limits<double>::infinity();
            int a1 = -1;
            for (int j = 0; j < p; ++j) {
                const double c = contribution(j, i);
                if (c > m1) {
                    m2 = m1;
                    m1 = c;
                    a1 = j;
                } else if (c > m2) {
                    m2 = c;
                }
            }
            max1[i] = m1;
            max2[i] = m2;
            arg1[i] = a1;
            dist[i] = m1;
        }
    };

    rebuild();
    double current = ctx.evaluate(dist.data());
    std::uint64_t evals = 1;

    for (int step = 0; step < step_cap; ++step) {
        int best_flip = -1;
        double best_value = current;
        for (int j = 0; j < p; ++j) {
            // contribution of coordinate j after the flip, read from the
            // opposite table so the value matches a full rebuild bit for bit
            const double* other = (bits[static_cast<std::size_t>(j)] ? ctx.dist0 : ctx.dist1).data() +
                                  static_cast<std::size_t>(j) * n;
            for (std::size_t i = 0; i < n; ++i)
                flip_dist[i] = (arg1[i] == j) ? std::fmax(max2[i], other[i]) : std::fmax(max1[i], other[i]);
            const double v = ctx.evaluate(flip_dist.data());
            ++evals;
            if (ctx.improves(v, best_value)) {
                best_value = v;
                best_flip = j;
            }
        }
        if (best_flip < 0) break; // local optimum
        bits[static_cast<std::size_t>(best_flip)] ^= 1;
        current = best_value;
        rebuild();
    }
    return {current, std::move(bits), evals};
}

inline CornerSearchResult heuristic_corner_search(const CornerContext& ctx, std::uint64_t budget,
                                                  std::uint64_t seed, int threads) {
    const int p = ctx.p;
    const int step_cap = 100 + 4 * p;
    constexpr std::size_t kWave = 64; // fixed so results never depend on the thread count

    CornerSearchResult res;
    res.mode = CornerMode::Heuristic;
    res.best = ctx.worst();

    std::uint64_t next_restart = 0;
    bool done = false;
    std::vector<LocalSearchOutcome> wave(kWave);
    while (!done) {
        parallel_chunks(kWave, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                const std::uint64_t restart = next_restart + r;
                std::vector<std::uint8_t> bits(static_cast<std::size_t>(p), 0);
                if (restart == 1) {
                    std::fill(bits.begin(), bits.end(), std::uint8_t{1});
                } else if (restart >= 2) {
                    const CounterRng rng(seed, restart);
                    for (int j = 0; j < p; ++j)
                        bits[static_cast<std::size_t>(j)] = rng.coin(static_cast<std::uint64_t>(j)) ? 1 : 0;
                }
                wave[r] = local_corner_search(ctx, std::move(bits), step_cap);
            }
        });
        for (std::size_t r = 0; r < kWave; ++r) {
            const std::uint64_t restart = next_restart + r;
            if (res.corner.empty() || ctx.improves(wave[r].best, res.best)) {
                res.best = wave[r].best;
                res.corner = wave[r].corner;
            }
            res.evaluated += wave[r].evals;
            // the searches from the corners 0 and 1 always run in full
            if (restart >= 1 && res.evaluated >= budget) {
                done = true;
                break;
            }
        }
        next_restart += kWave;
    }
    return res;
}

} // namespace detail

/// Best objective value over hypercube corners. Exhaustive mode enumerates
/// all 2^p corners (requires 2^p <= budget); heuristic mode runs steepest
/// ascent from the corners 0 and 1 plus random restarts until roughly
/// `budget` corner evaluations have been spent. The heuristic result is a
/// valid one-sided bound regardless of convergence.
inline CornerSearchResult corner_search(const EnvelopeModel& m, CornerObjective objective, CornerMode mode,
                                        std::uint64_t budget = std::uint64_t{1} << 24, std::uint64_t seed = 0,
                                        CornerOrder order = CornerOrder::GrayCode, int threads = 1) {
    if (m.metric.kind != MetricKind::Supremum)
        throw UnsupportedMetric("corners: corner bounds are defined for linf only");
    const detail::CornerContext ctx(m, objective);
    if (mode == CornerMode::Exhaustive) return detail::exhaustive_corner_search(ctx, budget, order, threads);
    return detail::heuristic_corner_search(ctx, budget, seed, threads);
}

/// sup e* <= (min_x [f + kappa d~] - max_x [f - kappa d~]) / 2, using the
/// farthest-point bound d~ in place of actual distances.
inline double corner_upper_bound(const EnvelopeModel& m) {
    if (m.metric.kind != MetricKind::Supremum)
        throw UnsupportedMetric("corners: corner bounds are defined for linf only");
    double up = std::numeric_limits<double>::infinity();
    double down = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double dtil = corner_distance_bound(m.metric, m.dataset.point(i));
        up = std::fmin(up, m.dataset.values[i] + m.kappa * dtil);
        down = std::fmax(down, m.dataset.values[i] - m.kappa * dtil);
    }
    return 0.5 * (up - down);
}

struct CornerBoundReport {
    double upper = 0.0;
    double lower = 0.0;
    std::vector<std::uint8_t> argmax_corner;
    CornerMode mode = CornerMode::Exhaustive;
    std::uint64_t corners_evaluated = 0;
};

inline CornerBoundReport corner_lower_bound(const EnvelopeModel& m, CornerMode mode,
                                            std::uint64_t budget = std::uint64_t{1} << 24,
                                            std::uint64_t seed = 0, CornerOrder order = CornerOrder::GrayCode,
                                            int threads = 1) {
    const CornerSearchResult found = corner_search(m, CornerObjective::MaxEstar, mode, budget, seed, order, threads);
    return {corner_upper_bound(m), found.best, found.corner, mode, found.evaluated};
}

/// Theorem scaling: a lower bound L on sup e* under the empirical constant
/// transfers to (L / khat) * K for any hypothetical true constant K >= khat.
inline double scaled_error_bound(const EnvelopeModel& m, double k_hypothetical, double sup_estar_lower) {
    if (m.khat <= 0.0) throw DegenerateError("scaled bound: empirical Lipschitz constant is 0");
    if (k_hypothetical < m.khat * (1.0 - 1e-12))
        throw DomainError("scaled bound: hypothetical constant must be >= khat");
    return (sup_estar_lower / m.khat) * k_hypothetical;
}

struct Verdict {
    double sup_estar_lower = 0.0;
    double khat = 0.0;
    double threshold = 0.0; // khat / 2
    bool triggered = false;
    std::string implied_bound;
};

/// Compares a certified lower bound on sup e* against khat/2. When it
/// triggers, no emulator trained on these observations has smaller maximum
/// potential error than the constant emulator built from one centroid
/// observation. Certified means: only corners actually evaluated feed the
/// lower bound, never the d~ upper bracket.
inline Verdict centroid_verdict(const EnvelopeModel& m, double sup_estar_lower) {
    if (m.metric.kind != MetricKind::Supremum)
        throw UnsupportedMetric("verdict: the centroid comparison is defined for linf only");
    Verdict v;
    v.sup_estar_lower = sup_estar_lower;
    v.khat = m.khat;
    v.threshold = 0.5 * m.khat;
    if (m.khat <= 0.0) {
        v.triggered = false;
        v.implied_bound = "degenerate: khat = 0 (observations admit a constant function), comparison vacuous";
        return v;
    }
    v.triggered = sup_estar_lower >= v.threshold;
    v.implied_bound = v.triggered
                          ? "E_K(fhat) >= K/2 for every emulator fhat: no design of this size beats one "
                            "centroid observation"
                          : "lower bound below khat/2: the centroid comparison is inconclusive";
    return v;
}

struct GlobalFBounds {
    double max_upper = 0.0;  // min_x [f + kappa d~]: certified upper bound on sup f
    double min_lower = 0.0;  // max_x [f - kappa d~]: certified lower bound on inf f
    double max_corner = 0.0; // best e+ over searched corners (bracket from below)
    double min_corner = 0.0; // best e- over searched corners (bracket from above)
    bool max_certified = false;
    bool min_certified = false;
    std::uint64_t corners_evaluated = 0;
};

/// Global pointwise bounds on f: sup f <= sup e+ and inf f >= inf e-. The d~
/// bracket is always sound; the corner searches close the bracket, and the
/// certified flags record agreement within 1e-9.
inline GlobalFBounds global_f_bounds(const EnvelopeModel& m, CornerMode mode,
                                     std::uint64_t budget = std::uint64_t{1} << 24, std::uint64_t seed = 0,
                                     int threads = 1) {
    if (m.metric.kind != MetricKind::Supremum)
        throw UnsupportedMetric("global-f: corner machinery is defined for linf only");
    if (m.kappa < m.khat * (1.0 - 1e-12))
        throw EmptyClass("global-f: kappa < empirical Lipschitz constant, no admissible function");
    GlobalFBounds g;
    double up = std::numeric_limits<double>::infinity();
    double down = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double dtil = corner_distance_bound(m.metric, m.dataset.point(i));
        up = std::fmin(up, m.dataset.values[i] + m.kappa * dtil);
        down = std::fmax(down, m.dataset.values[i] - m.kappa * dtil);
    }
    g.max_upper = up;
    g.min_lower = down;
    const CornerSearchResult rmax = corner_search(m, CornerObjective::MaxEplus, mode, budget, seed, CornerOrder::GrayCode, threads);
    const CornerSearchResult rmin =
        corner_search(m, CornerObjective::MinEminus, mode, budget, seed + 1, CornerOrder::GrayCode, threads);
    g.max_corner = rmax.best;
    g.min_corner = rmin.best;
    g.max_certified = std::fabs(g.max_upper - g.max_corner) <= 1e-9 * std::fmax(1.0, std::fabs(g.max_upper));
    g.min_certified = std::fabs(g.min_lower - g.min_corner) <= 1e-9 * std::fmax(1.0, std::fabs(g.min_lower));
    g.corners_evaluated = rmax.evaluated + rmin.evaluated;
    return g;
}

} // namespace lipuq
