#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "lipuq/errors.hpp"
#include "lipuq/metric.hpp"
#include "lipuq/rng.hpp"

namespace lipuq {

/// Observations of a scalar function on the unit hypercube. Immutable once
/// built; every coordinate lies in [0,1] and points are pairwise distinct.
struct Dataset {
    int dim = 0;
    std::vector<double> coords; // row-major, size() * dim
    std::vector<double> values;
    std::vector<std::string> labels; // dim coordinate names then the value name; may be empty

    std::size_t size() const { return values.size(); }
    const double* point(std::size_t i) const { return coords.data() + static_cast<std::size_t>(dim) * i; }
};

namespace detail {

constexpr double kCoordTolerance = 1e-12;

inline std::string row_label(std::size_t i) { return "data row " + std::to_string(i + 1); }

} // namespace detail

/// Validates coordinates (clamping boundary noise within 1e-12, rejecting
/// anything farther out), then collapses exact-duplicate points: equal values
/// merge, differing values are an inconsistency. Row numbers in error
/// messages are 1-based and refer to the pre-merge order.
inline Dataset make_dataset(int dim, std::vector<double> coords, std::vector<double> values,
                            std::vector<std::string> labels = {}) {
    if (dim < 1) throw DomainError("dataset: dim must be >= 1");
    if (values.empty()) throw EmptyError("dataset: no observations");
    if (coords.size() != values.size() * static_cast<std::size_t>(dim))
        throw DimensionMismatch("dataset: coordinate count does not match n * dim");

    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < dim; ++j) {
            double& c = coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)];
            if (!std::isfinite(c))
                throw DomainError("dataset: non-finite coordinate in " + detail::row_label(i));
            if (c < 0.0) {
                if (c < -detail::kCoordTolerance)
                    throw DomainError("dataset: coordinate " + std::to_string(c) + " out of [0,1] in " +
                                      detail::row_label(i));
                c = 0.0;
            } else if (c > 1.0) {
                if (c > 1.0 + detail::kCoordTolerance)
                    throw DomainError("dataset: coordinate " + std::to_string(c) + " out of [0,1] in " +
                                      detail::row_label(i));
                c = 1.0;
            }
        }
        if (!std::isfinite(values[i]))
            throw DomainError("dataset: non-finite value in " + detail::row_label(i));
    }

    // Sort indices lexicographically by coordinates so duplicates are adjacent.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto point_of = [&](std::size_t i) { return coords.data() + i * static_cast<std::size_t>(dim); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double* pa = point_of(a);
        const double* pb = point_of(b);
        for (int j = 0; j < dim; ++j) {
            if (pa[j] != pb[j]) return pa[j] < pb[j];
        }
        return a < b;
    });
    std::vector<bool> drop(n, false);
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t prev = order[k - 1];
        const std::size_t cur = order[k];
        if (std::equal(point_of(prev), point_of(prev) + dim, point_of(cur))) {
            if (values[prev] != values[cur])
                throw DuplicateError("dataset: " + detail::row_label(std::min(prev, cur)) + " and " +
                                     detail::row_label(std::max(prev, cur)) +
                                     " repeat a point with different values");
            drop[std::max(prev, cur)] = true;
            order[k] = std::min(prev, cur); // keep chains of 3+ duplicates anchored
        }
    }

    Dataset ds;
    ds.dim = dim;
    ds.labels = std::move(labels);
    ds.coords.reserve(coords.size());
    ds.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (drop[i]) continue;
        ds.coords.insert(ds.coords.end(), point_of(i), point_of(i) + dim);
        ds.values.push_back(values[i]);
    }
    return ds;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

inline double parse_cell(const std::string& cell, const std::string& where) {
    if (cell.empty()) throw ParseError("csv: missing cell in " + where);
    double out = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("csv: cell '" + cell + "' in " + where + " is not a number");
    return out;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows; // each of size header.size()
};

inline CsvTable read_csv_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("csv: cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw EmptyError("csv: '" + path + "' is empty");
    table.header = split_csv_line(line);
    if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty()))
        throw ParseError("csv: '" + path + "' has an empty header row");
    std::size_t row_index = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue; // ignore blank lines, including a trailing newline
        ++row_index;
        const auto cells = split_csv_line(line);
        if (cells.size() != table.header.size())
            throw ParseError("csv: " + row_label(row_index - 1) + " has " + std::to_string(cells.size()) +
                             " cells, header has " + std::to_string(table.header.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c)
            row.push_back(parse_cell(cells[c], "column '" + table.header[c] + "', " + row_label(row_index - 1)));
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw EmptyError("csv: '" + path + "' has a header but no data rows");
    return table;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

/// Loads a dataset from CSV: one header row, coordinate columns, one value
/// column (the last one unless value_column selects another by header name
/// or 0-based index).
inline Dataset load_csv(const std::string& path, const std::string& value_column = "") {
    const auto table = detail::read_csv_table(path);
    const std::size_t cols = table.header.size();
    if (cols < 2) throw ParseError("csv: need at least one coordinate column and one value column");

    std::size_t value_idx = cols - 1;
    if (!value_column.empty()) {
        const auto named = std::find(table.header.begin(), table.header.end(), value_column);
        if (named != table.header.end()) {
            value_idx = static_cast<std::size_t>(named - table.header.begin());
        } else {
            std::size_t idx = 0;
            const auto res = std::from_chars(value_column.data(), value_column.data() + value_column.size(), idx);
            if (res.ec != std::errc{} || res.ptr != value_column.data() + value_column.size())
                throw DomainError("--value-column: '" + value_column + "' matches no header name");
            if (idx >= cols)
                throw DomainError("--value-column: index " + value_column + " out of range for " +
                                  std::to_string(cols) + " columns");
            value_idx = idx;
        }
    }

    const int dim = static_cast<int>(cols - 1);
    std::vector<double> coords;
    std::vector<double> values;
    coords.reserve(table.rows.size() * static_cast<std::size_t>(dim));
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c == value_idx) continue;
            coords.push_back(row[c]);
        }
        values.push_back(row[value_idx]);
    }
    std::vector<std::string> labels;
    labels.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c)
        if (c != value_idx) labels.push_back(table.header[c]);
    labels.push_back(table.header[value_idx]);
    return make_dataset(dim, std::move(coords), std::move(values), std::move(labels));
}

/// Query points: the coordinate schema of Dataset with no value column.
struct PointSet {
    int dim = 0;
    std::vector<double> coords;
    std::size_t size() const { return dim == 0 ? 0 : coords.size() / static_cast<std::size_t>(dim); }
    const double* point(std::size_t i) const { return coords.data() + static_cast<std::size_t>(dim) * i; }
};

inline PointSet load_points_csv(const std::string& path) {
    const auto table = detail::read_csv_table(path);
    PointSet ps;
    ps.dim = static_cast<int>(table.header.size());
    ps.coords.reserve(table.rows.size() * table.header.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            double v = table.rows[r][c];
            if (v < 0.0 || v > 1.0) {
                if (v < -detail::kCoordTolerance || v > 1.0 + detail::kCoordTolerance)
                    throw DomainError("csv: coordinate " + std::to_string(v) + " out of [0,1] in " +
                                      detail::row_label(r));
                v = std::clamp(v, 0.0, 1.0);
            }
            ps.coords.push_back(v);
        }
    }
    return ps;
}

inline void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("csv: cannot write '" + path + "'");
    if (ds.labels.size() == static_cast<std::size_t>(ds.dim) + 1) {
        for (std::size_t c = 0; c < ds.labels.size(); ++c)
            out << (c ? "," : "") << ds.labels[c];
    } else {
        for (int j = 0; j < ds.dim; ++j) out << (j ? "," : "") << "x" << (j + 1);
        out << ",y";
    }
    out << "\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double* p = ds.point(i);
        for (int j = 0; j < ds.dim; ++j) out << (j ? "," : "") << detail::format_double(p[j]);
        out << "," << detail::format_double(ds.values[i]) << "\n";
    }
    if (!out) throw ParseError("csv: write to '" + path + "' failed");
}

enum class SynthKind { Linear, Constant, ProductSine, RandomLipschitz };

inline SynthKind parse_synth_kind(std::string_view token) {
    if (token == "linear") return SynthKind::Linear;
    if (token == "constant") return SynthKind::Constant;
    if (token == "product-sine") return SynthKind::ProductSine;
    if (token == "random-lipschitz") return SynthKind::RandomLipschitz;
    throw UnsupportedKind("synthesize: unknown kind '" + std::string(token) + "'");
}

struct Synthesized {
    Dataset dataset;
    double known_k = 0.0; // Lipschitz constant of the generator under the requested metric
};

namespace detail {

// linf constant of prod_i sin(pi x_i): the gradient's 1-norm peaks where
// every tan^2(pi x) = p-1, giving pi sqrt(p) ((p-1)/p)^{(p-1)/2}.
inline double product_sine_constant(int dim, MetricKind kind) {
    if (kind == MetricKind::Euclidean || dim == 1) return std::numbers::pi;
    const double p = static_cast<double>(dim);
    return std::numbers::pi * std::sqrt(p) * std::pow((p - 1.0) / p, 0.5 * (p - 1.0));
}

} // namespace detail

/// Deterministic test fixtures: the design is the centroid when n = 1, and
/// otherwise the corners 0 and 1 followed by uniform draws. known_k is the
/// generator's Lipschitz constant under the requested metric, so synthesized
/// data always satisfies the empirical estimate <= known_k.
inline Synthesized synthesize(SynthKind kind, int dim, std::size_t n, std::uint64_t seed, MetricKind metric_kind) {
    if (dim < 1) throw DomainError("synthesize: dim must be >= 1");
    if (n < 1) throw EmptyError("synthesize: n must be >= 1");

    const auto d = static_cast<std::size_t>(dim);
    std::vector<double> coords(n * d);
    if (n == 1) {
        std::fill(coords.begin(), coords.end(), 0.5);
    } else {
        std::fill(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(d), 0.0);
        std::fill(coords.begin() + static_cast<std::ptrdiff_t>(d), coords.begin() + static_cast<std::ptrdiff_t>(2 * d), 1.0);
        const CounterRng rng(seed, 0);
        for (std::size_t i = 2; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = rng.uniform((i - 2) * d + j);
    }

    const Metric metric{metric_kind, dim};
    std::vector<double> values(n);
    double known_k = 0.0;
    switch (kind) {
        case SynthKind::Linear: {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < d; ++j) acc += coords[i * d + j];
                values[i] = acc / static_cast<double>(dim);
            }
            known_k = metric_kind == MetricKind::Supremum ? 1.0 : 1.0 / std::sqrt(static_cast<double>(dim));
            break;
        }
        case SynthKind::Constant: {
            std::fill(values.begin(), values.end(), 0.5);
            known_k = 0.0;
            break;
        }
        case SynthKind::ProductSine: {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 1.0;
                for (std::size_t j = 0; j < d; ++j) acc *= std::sin(std::numbers::pi * coords[i * d + j]);
                values[i] = acc;
            }
            known_k = detail::product_sine_constant(dim, metric_kind);
            break;
        }
        case SynthKind::RandomLipschitz: {
            // min over cones h_j + K d(a_j, .): Lipschitz with constant K.
            const CounterRng arng(seed, 1);
            const std::size_t m = std::min<std::size_t>(n, 8);
            std::vector<double> anchors(m * d);
            std::vector<double> heights(m);
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t c = 0; c < d; ++c) anchors[j * d + c] = arng.uniform(j * (d + 1) + c);
                heights[j] = arng.uniform(j * (d + 1) + d);
            }
            const double k_target = 1.0 + 2.0 * arng.uniform(m * (d + 1));
            for (std::size_t i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < m; ++j) {
                    const double cone = heights[j] + k_target * distance(metric, &anchors[j * d], &coords[i * d]);
                    if (cone < best) best = cone;
                }
                values[i] = best;
            }
            known_k = k_target;
            break;
        }
    }

    return Synthesized{make_dataset(dim, std::move(coords), std::move(values)), known_k};
}

} // namespace lipuq
