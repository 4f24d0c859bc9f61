#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lipuq/bounds.hpp"
#include "lipuq/dataset.hpp"
#include "lipuq/envelope.hpp"
#include "lipuq/errors.hpp"
#include "lipuq/montecarlo.hpp"

namespace lipuq::cli {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    std::string subcommand;
    std::string data_path;
    std::string value_column; // name or 0-based index; empty = last column
    std::string query_path;   // envelope: points to evaluate
    std::string out_path;     // empty = standard output
    std::string output = "text"; // text | json | csv

    MetricKind metric = MetricKind::Supremum;
    bool metric_given = false;    // mc defaults to both metrics unless set
    std::optional<double> kappa;  // unset = khat ("auto")

    std::vector<EpsilonSpec> epsilons;
    double kplus = 0.0; // cover
    int dim = 0;        // cover

    std::size_t samples = 10000;
    std::optional<std::uint64_t> seed;
    double confidence = 0.95;
    std::vector<double> quantiles = {0.25, 0.5, 0.75};
    std::vector<ErrorUnits> units; // default depends on subcommand

    std::optional<CornerMode> mode; // unset = exhaustive when 2^p fits the budget
    std::uint64_t budget = std::uint64_t{1} << 24;
    std::optional<double> khyp; // verdict: rescale to a hypothetical constant

    int threads = 0; // 0 = LIPUQ_THREADS or 1
    bool strict = false;
};

namespace detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LIPUQ_THREADS")) {
        const std::string s(env);
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            throw DomainError("LIPUQ_THREADS: '" + s + "' is not a positive integer");
        }
        if (pos != s.size() || v < 1)
            throw DomainError("LIPUQ_THREADS: '" + s + "' is not a positive integer");
        return v;
    }
    return 1;
}

inline CornerMode resolve_mode(const RunConfig& c, int p) {
    if (c.mode) return *c.mode;
    if (p < 63 && (std::uint64_t{1} << p) <= c.budget) return CornerMode::Exhaustive;
    return CornerMode::Heuristic;
}

// Text reports switch to log10 notation above 10^6, mirroring how the
// quantities are usually quoted.
inline std::string format_quantity(double v) {
    char buf[64];
    if (std::isfinite(v) && std::fabs(v) > 1e6) {
        std::snprintf(buf, sizeof(buf), "%s10^%.4f", v < 0.0 ? "-" : "", std::log10(std::fabs(v)));
    } else {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
    }
    return buf;
}

inline std::string format_count(const BigCount& c) {
    if (c.exact && *c.exact <= 1000000) return std::to_string(*c.exact);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "10^%.4f", c.log10);
    return buf;
}

inline std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string corner_bits(const std::vector<std::uint8_t>& corner) {
    std::string s;
    s.reserve(corner.size());
    for (const std::uint8_t b : corner) s.push_back(b ? '1' : '0');
    return s;
}

// -inf marks "no nontrivial bound"; JSON carries it as null.
inline ordered_json json_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline ordered_json json_count(const BigCount& c) {
    if (c.exact) return *c.exact;
    return nullptr;
}

struct CsvTableOut {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostream& out) const {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
    }
};

inline void require_data(const RunConfig& c) {
    if (c.data_path.empty()) throw DomainError("--data: a dataset CSV is required");
}

inline EnvelopeModel load_model(const RunConfig& c, int threads) {
    require_data(c);
    Dataset ds = load_csv(c.data_path, c.value_column);
    const Metric metric{c.metric, ds.dim};
    return build_envelope_model(std::move(ds), metric, c.kappa, threads);
}

inline void enforce_strict(const RunConfig& c, bool uses_randomness) {
    if (c.strict && uses_randomness && !c.seed)
        throw DomainError("--strict: --seed is required for randomized analyses");
}

inline std::uint64_t seed_of(const RunConfig& c) { return c.seed.value_or(0); }

} // namespace detail

inline int run_lipschitz(const RunConfig& c, std::ostream& out) {
    const int threads = detail::resolve_threads(c.threads);
    const EnvelopeModel m = detail::load_model(c, threads);
    ordered_json j;
    j["metric"] = metric_kind_token(c.metric);
    j["dim"] = m.dataset.dim;
    j["n"] = m.size();
    j["khat"] = m.khat;
    j["gamma_bar"] = m.gamma_bar;
    j["gamma_hat"] = m.gamma_hat;
    if (c.output == "json") {
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        detail::CsvTableOut t;
        t.header = {"metric", "dim", "n", "khat", "gamma_bar", "gamma_hat"};
        t.rows.push_back({std::string(metric_kind_token(c.metric)), std::to_string(m.dataset.dim),
                          std::to_string(m.size()), detail::format_cell(m.khat),
                          detail::format_cell(m.gamma_bar), detail::format_cell(m.gamma_hat)});
        t.print(out);
    } else {
        out << "metric " << metric_kind_token(c.metric) << ", dim " << m.dataset.dim << ", n " << m.size()
            << "\n";
        out << "khat      " << detail::format_quantity(m.khat) << "\n";
        out << "gamma_bar " << detail::format_quantity(m.gamma_bar) << "\n";
        out << "gamma_hat " << detail::format_quantity(m.gamma_hat) << "\n";
    }
    return 0;
}

inline int run_envelope(const RunConfig& c, std::ostream& out) {
    const int threads = detail::resolve_threads(c.threads);
    const EnvelopeModel m = detail::load_model(c, threads);
    if (c.query_path.empty()) throw DomainError("--query: a CSV of evaluation points is required");
    const PointSet queries = load_points_csv(c.query_path);
    if (queries.dim != m.dataset.dim)
        throw DimensionMismatch("--query: points have dimension " + std::to_string(queries.dim) +
                                ", dataset has " + std::to_string(m.dataset.dim));
    const bool admissible = m.kappa >= m.khat * (1.0 - 1e-12);

    ordered_json records = ordered_json::array();
    detail::CsvTableOut t;
    t.header = {"e_plus", "e_minus", "e_star", "f_star"};
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const EnvelopeValues e = envelope_at(m, queries.point(i));
        const double f_star = admissible ? minimax_emulator_at(m, queries.point(i)) : 0.0;
        ordered_json rec;
        rec["e_plus"] = e.e_plus;
        rec["e_minus"] = e.e_minus;
        rec["e_star"] = e.e_star;
        rec["f_star"] = admissible ? ordered_json(f_star) : ordered_json(nullptr);
        records.push_back(std::move(rec));
        t.rows.push_back({detail::format_cell(e.e_plus), detail::format_cell(e.e_minus),
                          detail::format_cell(e.e_star),
                          admissible ? detail::format_cell(f_star) : std::string()});
    }
    if (c.output == "json") {
        ordered_json j;
        j["metric"] = metric_kind_token(c.metric);
        j["kappa"] = m.kappa;
        j["khat"] = m.khat;
        if (!admissible) j["note"] = "kappa below the empirical constant: f_star undefined (diagnostic mode)";
        j["records"] = std::move(records);
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        t.print(out);
    } else {
        out << "kappa " << detail::format_quantity(m.kappa) << ", khat " << detail::format_quantity(m.khat)
            << "\n";
        for (const auto& row : t.rows)
            out << "e+ " << row[0] << "  e- " << row[1] << "  e* " << row[2] << "  f* "
                << (row[3].empty() ? "-" : row[3]) << "\n";
    }
    return 0;
}

inline int run_burden(const RunConfig& c, std::ostream& out) {
    const int threads = detail::resolve_threads(c.threads);
    const EnvelopeModel m = detail::load_model(c, threads);
    if (c.epsilons.empty()) throw DomainError("--epsilon: at least one accuracy target is required");

    ordered_json rows = ordered_json::array();
    detail::CsvTableOut t;
    t.header = {"metric", "epsilon", "epsilon_spec", "bound", "log10_bound"};
    for (const EpsilonSpec& spec : c.epsilons) {
        const double eps = resolve_epsilon(spec, m.khat, m.gamma_hat);
        const BurdenBound b = burden_lower_bound(m, eps, spec);
        ordered_json row;
        row["epsilon"] = b.epsilon;
        row["epsilon_spec"] = spec.text();
        row["bound"] = detail::json_count(b.bound);
        row["log10_bound"] = b.bound.log10;
        row["term_k_log10"] = b.term_k.log10;
        row["term_sum_log10"] = b.term_sum.is_zero() ? ordered_json(nullptr) : ordered_json(b.term_sum.log10);
        rows.push_back(std::move(row));
        t.rows.push_back({std::string(metric_kind_token(c.metric)), detail::format_cell(b.epsilon),
                          spec.text(),
                          b.bound.exact ? std::to_string(*b.bound.exact) : std::string(),
                          detail::format_cell(b.bound.log10)});
    }
    if (c.output == "json") {
        ordered_json j;
        j["metric"] = metric_kind_token(c.metric);
        j["khat"] = m.khat;
        j["gamma_bar"] = m.gamma_bar;
        j["rows"] = std::move(rows);
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        t.print(out);
    } else {
        out << "metric " << metric_kind_token(c.metric) << ", khat " << detail::format_quantity(m.khat)
            << ", gamma_bar " << detail::format_quantity(m.gamma_bar) << "\n";
        for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
            const auto& row = rows[i];
            out << "epsilon " << c.epsilons[i].text() << " (= "
                << detail::format_quantity(row["epsilon"].get<double>()) << "): bound >= ";
            if (row["bound"].is_null())
                out << "10^" << detail::format_quantity(row["log10_bound"].get<double>());
            else
                out << row["bound"].get<std::uint64_t>();
            out << "\n";
        }
    }
    return 0;
}

inline int run_corners(const RunConfig& c, std::ostream& out) {
    const int threads = detail::resolve_threads(c.threads);
    const EnvelopeModel m = detail::load_model(c, threads);
    const CornerMode mode = detail::resolve_mode(c, m.dataset.dim);
    detail::enforce_strict(c, mode == CornerMode::Heuristic);
    const CornerBoundReport r =
        corner_lower_bound(m, mode, c.budget, detail::seed_of(c), CornerOrder::GrayCode, threads);

    ordered_json j;
    j["metric"] = metric_kind_token(c.metric);
    j["kappa"] = m.kappa;
    j["khat"] = m.khat;
    j["upper"] = r.upper;
    j["lower"] = r.lower;
    j["argmax_corner"] = detail::corner_bits(r.argmax_corner);
    j["mode"] = corner_mode_token(r.mode);
    j["corners_evaluated"] = r.corners_evaluated;
    j["budget"] = c.budget;
    j["seed"] = detail::seed_of(c);
    if (c.output == "json") {
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        detail::CsvTableOut t;
        t.header = {"upper", "lower", "argmax_corner", "mode", "corners_evaluated"};
        t.rows.push_back({detail::format_cell(r.upper), detail::format_cell(r.lower),
                          detail::corner_bits(r.argmax_corner), std::string(corner_mode_token(r.mode)),
                          std::to_string(r.corners_evaluated)});
        t.print(out);
    } else {
        out << "sup e* bracket: [" << detail::format_quantity(r.lower) << ", "
            << detail::format_quantity(r.upper) << "] (" << corner_mode_token(r.mode) << ", "
            << r.corners_evaluated << " corners)\n";
        out << "argmax corner: " << detail::corner_bits(r.argmax_corner) << "\n";
    }
    return 0;
}

inline int run_mc(const RunConfig& c, std::ostream& out) {
    const int threads = detail::resolve_threads(c.threads);
    detail::enforce_strict(c, true);
    const EnvelopeModel m = detail::load_model(c, threads);

    McConfig mc;
    mc.samples = c.samples;
    mc.seed = detail::seed_of(c);
    mc.confidence = c.confidence;
    mc.quantiles = c.quantiles;
    mc.units = c.units.empty() ? std::vector<ErrorUnits>{ErrorUnits::KhatOver2} : c.units;
    if (c.metric_given) mc.metrics = {c.metric};
    mc.kappa = c.kappa;
    mc.threads = threads;
    const auto rows = build_report(m, mc);

    if (c.output == "json") {
        ordered_json j;
        j["samples"] = mc.samples;
        j["seed"] = mc.seed;
        j["confidence"] = mc.confidence;
        ordered_json jrows = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json jr;
            jr["metric"] = metric_kind_token(r.metric);
            jr["units"] = error_units_token(r.units);
            jr["khat"] = r.khat;
            jr["kappa"] = r.kappa;
            ordered_json qs = ordered_json::array();
            for (const auto& ql : r.quantile_lcbs) {
                ordered_json q;
                q["q"] = ql.q;
                q["lcb"] = detail::json_or_null(ql.lcb);
                qs.push_back(std::move(q));
            }
            jr["quantile_lcbs"] = std::move(qs);
            jr["mean"] = r.mean;
            jr["mean_lcb"] = r.mean_lcb;
            jr["max_observed"] = r.max_observed;
            jrows.push_back(std::move(jr));
        }
        j["rows"] = std::move(jrows);
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        detail::CsvTableOut t;
        t.header = {"metric", "units", "khat", "kappa"};
        for (const double q : mc.quantiles) t.header.push_back("lcb_" + detail::format_cell(q));
        t.header.insert(t.header.end(), {"mean_lcb", "mean", "max_observed"});
        for (const auto& r : rows) {
            std::vector<std::string> row = {std::string(metric_kind_token(r.metric)),
                                            std::string(error_units_token(r.units)),
                                            detail::format_cell(r.khat), detail::format_cell(r.kappa)};
            for (const auto& ql : r.quantile_lcbs)
                row.push_back(std::isfinite(ql.lcb) ? detail::format_cell(ql.lcb) : std::string());
            row.push_back(detail::format_cell(r.mean_lcb));
            row.push_back(detail::format_cell(r.mean));
            row.push_back(detail::format_cell(r.max_observed));
            t.rows.push_back(std::move(row));
        }
        t.print(out);
    } else {
        out << mc.samples << " samples, confidence " << detail::format_quantity(mc.confidence) << ", seed "
            << mc.seed << "\n";
        for (const auto& r : rows) {
            out << metric_kind_token(r.metric) << " [" << error_units_token(r.units) << "]:";
            for (const auto& ql : r.quantile_lcbs) {
                out << "  q" << detail::format_quantity(ql.q) << " >= ";
                if (std::isfinite(ql.lcb))
                    out << detail::format_quantity(ql.lcb);
                else
                    out << "(no nontrivial bound)";
            }
            out << "  mean >= " << detail::format_quantity(r.mean_lcb) << "  max "
                << detail::format_quantity(r.max_observed) << "\n";
        }
    }
    return 0;
}

inline int run_verdict(const RunConfig& c, std::ostream& out) {
    const int threads = detail::resolve_threads(c.threads);
    const EnvelopeModel m = detail::load_model(c, threads);
    const CornerMode mode = detail::resolve_mode(c, m.dataset.dim);
    detail::enforce_strict(c, mode == CornerMode::Heuristic);
    const CornerSearchResult found = corner_search(m, CornerObjective::MaxEstar, mode, c.budget,
                                                   detail::seed_of(c), CornerOrder::GrayCode, threads);
    const Verdict v = centroid_verdict(m, found.best);

    ordered_json j;
    j["metric"] = metric_kind_token(c.metric);
    j["khat"] = v.khat;
    j["threshold"] = v.threshold;
    j["sup_estar_lower"] = v.sup_estar_lower;
    j["triggered"] = v.triggered;
    j["implied_bound"] = v.implied_bound;
    j["mode"] = corner_mode_token(mode);
    j["corners_evaluated"] = found.evaluated;
    j["seed"] = detail::seed_of(c);
    if (c.khyp) {
        j["khyp"] = *c.khyp;
        j["scaled_bound"] = scaled_error_bound(m, *c.khyp, found.best);
    } else {
        j["khyp"] = nullptr;
        j["scaled_bound"] = nullptr;
    }
    if (c.output == "json") {
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        detail::CsvTableOut t;
        t.header = {"khat", "threshold", "sup_estar_lower", "triggered"};
        t.rows.push_back({detail::format_cell(v.khat), detail::format_cell(v.threshold),
                          detail::format_cell(v.sup_estar_lower), v.triggered ? "true" : "false"});
        t.print(out);
    } else {
        out << "sup e* >= " << detail::format_quantity(v.sup_estar_lower) << " vs khat/2 = "
            << detail::format_quantity(v.threshold) << ": " << (v.triggered ? "TRIGGERED" : "not triggered")
            << "\n";
        out << v.implied_bound << "\n";
        if (c.khyp)
            out << "scaled to K = " << detail::format_quantity(*c.khyp) << ": bound "
                << detail::format_quantity(j["scaled_bound"].get<double>()) << "\n";
    }
    return 0;
}

inline int run_cover(const RunConfig& c, std::ostream& out) {
    if (!(c.kplus > 0.0)) throw DomainError("--kplus: a positive constant is required");
    if (c.dim < 1) throw DomainError("--dim: a dimension >= 1 is required");
    if (c.epsilons.size() != 1) throw DomainError("--epsilon: cover takes exactly one accuracy target");
    if (c.epsilons[0].unit != EpsilonUnit::Absolute)
        throw DomainError("--epsilon: cover has no dataset, only absolute units make sense");
    const double eps = c.epsilons[0].amount;
    const BigCount n = covering_upper_bound(c.kplus, eps, c.dim);

    ordered_json j;
    j["kplus"] = c.kplus;
    j["epsilon"] = eps;
    j["dim"] = c.dim;
    j["count"] = detail::json_count(n);
    j["log10_count"] = n.log10;
    if (c.output == "json") {
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        detail::CsvTableOut t;
        t.header = {"kplus", "epsilon", "dim", "count", "log10_count"};
        t.rows.push_back({detail::format_cell(c.kplus), detail::format_cell(eps), std::to_string(c.dim),
                          n.exact ? std::to_string(*n.exact) : std::string(),
                          detail::format_cell(n.log10)});
        t.print(out);
    } else {
        out << "covering count: " << detail::format_count(n) << "\n";
    }
    return 0;
}

inline int run_report(const RunConfig& c, std::ostream& out) {
    const int threads = detail::resolve_threads(c.threads);
    detail::enforce_strict(c, true); // monte carlo always runs
    const EnvelopeModel m = detail::load_model(c, threads);
    const bool sup_metric = c.metric == MetricKind::Supremum;
    const CornerMode mode = detail::resolve_mode(c, m.dataset.dim);
    const std::uint64_t seed = detail::seed_of(c);
    std::vector<std::string> notes;

    ordered_json j;
    j["khat"] = m.khat;
    j["gamma_bar"] = m.gamma_bar;
    j["gamma_hat"] = m.gamma_hat;

    double sup_lower = -std::numeric_limits<double>::infinity();
    ordered_json sup_upper = nullptr;
    ordered_json mode_used = nullptr;
    if (sup_metric) {
        const CornerBoundReport r = corner_lower_bound(m, mode, c.budget, seed, CornerOrder::GrayCode, threads);
        sup_lower = r.lower;
        sup_upper = r.upper;
        mode_used = std::string(corner_mode_token(r.mode));
    } else {
        notes.push_back("corner analyses skipped: defined for the sup metric only");
    }

    const std::vector<double> abs_samples = sample_error(m, c.samples, seed, threads);
    sup_lower = std::fmax(sup_lower, abs_samples.back());

    j["sup_estar_lower"] = sup_lower;
    j["sup_estar_upper"] = sup_upper;

    if (sup_metric) {
        const Verdict v = centroid_verdict(m, sup_lower);
        j["verdict"] = ordered_json{{"triggered", v.triggered}, {"threshold", v.threshold}};
        notes.push_back("verdict: " + v.implied_bound);
    } else {
        j["verdict"] = ordered_json{{"triggered", nullptr}, {"threshold", nullptr}};
        notes.push_back("verdict skipped: defined for the sup metric only");
    }

    ordered_json burden_rows = ordered_json::array();
    if (m.khat > 0.0) {
        std::vector<EpsilonSpec> specs = c.epsilons;
        if (specs.empty())
            for (const double f : {0.01, 0.05, 0.1, 0.5})
                specs.push_back(EpsilonSpec{EpsilonUnit::FractionOfKhat, f});
        for (const EpsilonSpec& spec : specs) {
            try {
                const double eps = resolve_epsilon(spec, m.khat, m.gamma_hat);
                const BurdenBound b = burden_lower_bound(m, eps, spec);
                ordered_json row;
                row["epsilon"] = b.epsilon;
                row["epsilon_spec"] = spec.text();
                row["bound"] = detail::json_count(b.bound);
                row["log10_bound"] = b.bound.log10;
                burden_rows.push_back(std::move(row));
            } catch (const Error& e) {
                notes.push_back("burden at " + spec.text() + " skipped: " + e.what());
            }
        }
    } else {
        notes.push_back("burden skipped: khat = 0 (observations admit a constant function)");
    }
    j["burden"] = std::move(burden_rows);

    ordered_json global = ordered_json{{"max_upper", nullptr}, {"min_lower", nullptr}};
    if (sup_metric) {
        try {
            const GlobalFBounds g = global_f_bounds(m, mode, c.budget, seed, threads);
            global["max_upper"] = g.max_upper;
            global["min_lower"] = g.min_lower;
            if (!g.max_certified || !g.min_certified)
                notes.push_back("global f bounds: corner search did not close the bracket");
        } catch (const Error& e) {
            notes.push_back(std::string("global f bounds skipped: ") + e.what());
        }
    } else {
        notes.push_back("global f bounds skipped: defined for the sup metric only");
    }
    j["global_f"] = std::move(global);

    j["mode"] = mode_used;
    j["seed"] = seed;

    ordered_json mc;
    mc["samples"] = c.samples;
    mc["confidence"] = c.confidence;
    ordered_json qs = ordered_json::array();
    for (const double q : c.quantiles) {
        ordered_json qrow;
        qrow["q"] = q;
        qrow["lcb"] = detail::json_or_null(quantile_lcb(abs_samples, q, c.confidence));
        qs.push_back(std::move(qrow));
    }
    mc["quantile_lcbs"] = std::move(qs);
    mc["mean_lcb"] = abs_samples.size() >= 2 ? ordered_json(mean_lcb(abs_samples, c.confidence))
                                             : ordered_json(nullptr);
    mc["max_observed"] = abs_samples.back();
    j["mc"] = std::move(mc);
    j["notes"] = notes;

    if (c.output == "json") {
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        detail::CsvTableOut t;
        t.header = {"khat", "gamma_bar", "gamma_hat", "sup_estar_lower", "sup_estar_upper", "triggered",
                    "mode", "seed"};
        t.rows.push_back({detail::format_cell(m.khat), detail::format_cell(m.gamma_bar),
                          detail::format_cell(m.gamma_hat), detail::format_cell(sup_lower),
                          sup_upper.is_null() ? std::string() : detail::format_cell(sup_upper.get<double>()),
                          j["verdict"]["triggered"].is_null()
                              ? std::string()
                              : (j["verdict"]["triggered"].get<bool>() ? "true" : "false"),
                          mode_used.is_null() ? std::string() : mode_used.get<std::string>(),
                          std::to_string(seed)});
        t.print(out);
    } else {
        out << "khat " << detail::format_quantity(m.khat) << ", gamma_bar "
            << detail::format_quantity(m.gamma_bar) << ", gamma_hat " << detail::format_quantity(m.gamma_hat)
            << "\n";
        out << "sup e* >= " << detail::format_quantity(sup_lower);
        if (!sup_upper.is_null()) out << ", <= " << detail::format_quantity(sup_upper.get<double>());
        out << "\n";
        if (!j["verdict"]["triggered"].is_null())
            out << "verdict: " << (j["verdict"]["triggered"].get<bool>() ? "TRIGGERED" : "not triggered")
                << " (threshold " << detail::format_quantity(j["verdict"]["threshold"].get<double>()) << ")\n";
        for (const auto& row : j["burden"]) {
            out << "burden at " << row["epsilon_spec"].get<std::string>() << ": >= ";
            if (row["bound"].is_null())
                out << "10^" << detail::format_quantity(row["log10_bound"].get<double>());
            else
                out << row["bound"].get<std::uint64_t>();
            out << "\n";
        }
        if (!j["global_f"]["max_upper"].is_null())
            out << "global f in [" << detail::format_quantity(j["global_f"]["min_lower"].get<double>())
                << ", " << detail::format_quantity(j["global_f"]["max_upper"].get<double>()) << "]\n";
        for (const auto& n : j["notes"]) out << "note: " << n.get<std::string>() << "\n";
    }
    return 0;
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
    if (c.output != "text" && c.output != "json" && c.output != "csv")
        throw DomainError("--output: expected text, json or csv, got '" + c.output + "'");
    if (c.subcommand == "lipschitz") return run_lipschitz(c, out);
    if (c.subcommand == "envelope") return run_envelope(c, out);
    if (c.subcommand == "burden") return run_burden(c, out);
    if (c.subcommand == "corners") return run_corners(c, out);
    if (c.subcommand == "mc") return run_mc(c, out);
    if (c.subcommand == "verdict") return run_verdict(c, out);
    if (c.subcommand == "cover") return run_cover(c, out);
    if (c.subcommand == "report") return run_report(c, out);
    throw DomainError("unknown subcommand '" + c.subcommand + "'");
}

/// Runs a parsed config. Exit code 0 on success, 2 on validation errors,
/// 3 on degenerate-data errors.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (!c.out_path.empty()) {
            std::ofstream file(c.out_path);
            if (!file) throw DomainError("--out: cannot open '" + c.out_path + "' for writing");
            return dispatch(c, file);
        }
        return dispatch(c, out);
    } catch (const DegenerateError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

namespace detail {

inline void add_common_options(CLI::App* sub, RunConfig& c, bool needs_data) {
    if (needs_data) {
        sub->add_option("--data", c.data_path, "dataset CSV (coordinates in [0,1] plus a value column)");
        sub->add_option("--value-column", c.value_column, "value column name or 0-based index (default: last)");
    }
    sub->add_option("--out", c.out_path, "write the report to a file instead of standard output");
    sub->add_option("--output", c.output, "output format: text, json or csv")->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads (default: LIPUQ_THREADS or 1)");
    sub->add_flag("--strict", c.strict, "require --seed for randomized analyses");
}

inline void add_metric_options(CLI::App* sub, RunConfig& c) {
    sub->add_option_function<std::string>(
           "--metric",
           [&c](const std::string& tok) {
               c.metric = parse_metric_kind(tok);
               c.metric_given = true;
           },
           "metric: linf (default) or l2")
        ->expected(1);
    sub->add_option_function<std::string>(
           "--kappa",
           [&c](const std::string& tok) {
               if (tok == "auto") {
                   c.kappa.reset();
                   return;
               }
               try {
                   std::size_t pos = 0;
                   const double v = std::stod(tok, &pos);
                   if (pos != tok.size()) throw std::invalid_argument(tok);
                   c.kappa = v;
               } catch (const std::exception&) {
                   throw CLI::ValidationError("--kappa: expected 'auto' or a number, got '" + tok + "'");
               }
           },
           "Lipschitz budget kappa: auto (= khat) or a number >= khat")
        ->expected(1);
}

inline void add_epsilon_option(CLI::App* sub, RunConfig& c) {
    sub->add_option_function<std::vector<std::string>>(
           "--epsilon",
           [&c](const std::vector<std::string>& toks) {
               c.epsilons.clear();
               for (const auto& t : toks) c.epsilons.push_back(parse_epsilon_spec(t));
           },
           "accuracy targets, e.g. 0.1 or 0.05:khat or 0.02:gammahat (comma separated)")
        ->delimiter(',');
}

inline void add_seed_option(CLI::App* sub, RunConfig& c) {
    sub->add_option("--seed", c.seed, "random seed (heuristic restarts, Monte Carlo draws)");
}

inline void add_corner_options(CLI::App* sub, RunConfig& c) {
    sub->add_option_function<std::string>(
           "--mode", [&c](const std::string& tok) { c.mode = parse_corner_mode(tok); },
           "corner search mode: exhaustive or heuristic (default: exhaustive when 2^p fits the budget)")
        ->expected(1);
    sub->add_option("--budget", c.budget, "corner evaluation budget")->capture_default_str();
}

inline void add_mc_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--samples", c.samples, "Monte Carlo sample count")->capture_default_str();
    sub->add_option("--confidence", c.confidence, "one-sided confidence level")->capture_default_str();
    sub->add_option("--quantiles", c.quantiles, "quantiles to bound, e.g. 0.25,0.5,0.75")->delimiter(',');
    sub->add_option_function<std::vector<std::string>>(
           "--units",
           [&c](const std::vector<std::string>& toks) {
               c.units.clear();
               for (const auto& t : toks) c.units.push_back(parse_error_units(t));
           },
           "unit systems: abs, khat2, gammahat (comma separated)")
        ->delimiter(',');
}

} // namespace detail

/// Parses argv and runs. CLI11 validation failures exit with code 2.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Lipschitz emulator uncertainty toolkit"};
    app.require_subcommand(1);

    auto* lipschitz = app.add_subcommand("lipschitz", "empirical Lipschitz constant and value centers");
    detail::add_common_options(lipschitz, c, true);
    detail::add_metric_options(lipschitz, c);

    auto* envelope = app.add_subcommand("envelope", "envelopes e+/e-/e* and the minimax emulator at points");
    detail::add_common_options(envelope, c, true);
    detail::add_metric_options(envelope, c);
    envelope->add_option("--query", c.query_path, "CSV of evaluation points (coordinates only)");

    auto* burden = app.add_subcommand("burden", "observation-count lower bounds for accuracy targets");
    detail::add_common_options(burden, c, true);
    detail::add_metric_options(burden, c);
    detail::add_epsilon_option(burden, c);

    auto* corners = app.add_subcommand("corners", "corner bracketing of the worst-case error");
    detail::add_common_options(corners, c, true);
    detail::add_metric_options(corners, c);
    detail::add_corner_options(corners, c);
    detail::add_seed_option(corners, c);

    auto* mc = app.add_subcommand("mc", "Monte Carlo error distribution with confidence bounds");
    detail::add_common_options(mc, c, true);
    detail::add_metric_options(mc, c);
    detail::add_mc_options(mc, c);
    detail::add_seed_option(mc, c);

    auto* verdict = app.add_subcommand("verdict", "compare the error lower bound against khat/2");
    detail::add_common_options(verdict, c, true);
    detail::add_metric_options(verdict, c);
    detail::add_corner_options(verdict, c);
    detail::add_seed_option(verdict, c);
    verdict->add_option("--khyp", c.khyp, "rescale the bound to a hypothetical true constant");

    auto* cover = app.add_subcommand("cover", "covering upper bound for a hypothetical constant");
    detail::add_common_options(cover, c, false);
    cover->add_option("--kplus", c.kplus, "hypothetical Lipschitz constant");
    cover->add_option("--dim", c.dim, "dimension");
    detail::add_epsilon_option(cover, c);

    auto* report = app.add_subcommand("report", "run every applicable analysis and emit one report");
    detail::add_common_options(report, c, true);
    detail::add_metric_options(report, c);
    detail::add_epsilon_option(report, c);
    detail::add_corner_options(report, c);
    detail::add_mc_options(report, c);
    detail::add_seed_option(report, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    for (CLI::App* sub : {lipschitz, envelope, burden, corners, mc, verdict, cover, report})
        if (sub->parsed()) c.subcommand = sub->get_name();
    return run(c, out, err);
}

} // namespace lipuq::cli
