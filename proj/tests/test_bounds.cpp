#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "lipuq/bounds.hpp"
#include "lipuq/dataset.hpp"
#include "lipuq/envelope.hpp"
#include "support/oracles.hpp"

using namespace lipuq;

namespace {

EnvelopeModel model_of(Dataset ds, MetricKind kind, std::optional<double> kappa = std::nullopt) {
    const Metric metric{kind, ds.dim};
    return build_envelope_model(std::move(ds), metric, kappa);
}

// Force the sup metric on a generated fixture; corner machinery rejects l2.
EnvelopeModel sup_model(std::uint64_t index, int max_dim, std::size_t max_n) {
    auto fx = testsupport::make_fixture(index, max_dim, max_n);
    return model_of(std::move(fx.dataset), MetricKind::Supremum);
}

double value_scale(const EnvelopeModel& m) {
    double s = 1.0;
    for (const double v : m.dataset.values) s = std::fmax(s, std::fabs(v));
    return s;
}

// Independent long-double burden oracle for small magnitudes, with the same
// round-to-integer snap before the ceiling.
std::uint64_t burden_oracle(const EnvelopeModel& m, double epsilon) {
    const int p = m.dataset.dim;
    const long double c = static_cast<long double>(ball_volume_constant(m.metric));
    long double sum = 0.0L;
    for (const double v : m.dataset.values)
        sum += std::pow(std::fabs(static_cast<long double>(v) - m.gamma_bar), static_cast<long double>(p));
    const long double gap = std::pow(static_cast<long double>(m.khat), static_cast<long double>(p)) / c - sum;
    if (gap <= 0.0L) return 1;
    long double v = gap / std::pow(static_cast<long double>(epsilon), static_cast<long double>(p));
    const long double snapped = std::round(v);
    if (std::fabs(v - snapped) <= 1e-9L * std::fmax(1.0L, v)) v = snapped;
    const long double bounded = std::fmax(1.0L, std::ceil(v));
    return static_cast<std::uint64_t>(bounded);
}

} // namespace

TEST_CASE("epsilon specs parse, print and resolve", "[bounds]") {
    const EpsilonSpec abs = parse_epsilon_spec("0.1");
    CHECK(abs.unit == EpsilonUnit::Absolute);
    CHECK(abs.amount == 0.1);
    CHECK(abs.text() == "0.1");
    CHECK(resolve_epsilon(abs, 14.2, 232.77) == 0.1);

    const EpsilonSpec khat = parse_epsilon_spec("0.5:khat");
    CHECK(khat.unit == EpsilonUnit::FractionOfKhat);
    CHECK(khat.text() == "0.5:khat");
    CHECK(resolve_epsilon(khat, 14.2, 232.77) == 7.1);

    const EpsilonSpec ghat = parse_epsilon_spec("0.02:gammahat");
    CHECK(ghat.unit == EpsilonUnit::FractionOfGammaHat);
    CHECK_THAT(resolve_epsilon(ghat, 14.2, 232.77), Catch::Matchers::WithinRel(4.6554, 1e-12));

    CHECK(parse_epsilon_spec("1e-3:abs").unit == EpsilonUnit::Absolute);
    CHECK(parse_epsilon_spec("1e-3").text() == "0.001");

    CHECK_THROWS_AS(parse_epsilon_spec("abc"), DomainError);
    CHECK_THROWS_AS(parse_epsilon_spec("0.5:bogus"), DomainError);
    CHECK_THROWS_AS(parse_epsilon_spec("-1"), DomainError);
    CHECK_THROWS_AS(parse_epsilon_spec("0"), DomainError);
    CHECK_THROWS_AS(parse_epsilon_spec(""), DomainError);

    CHECK_THROWS_AS(resolve_epsilon(khat, 0.0, 1.0), DegenerateError);
    CHECK_THROWS_AS(resolve_epsilon(ghat, 1.0, 0.0), DegenerateError);
    CHECK_THROWS_AS(resolve_epsilon(ghat, 1.0, -3.0), DegenerateError);
}

TEST_CASE("burden bound matches a hand-computed example", "[bounds]") {
    // khat = 0.1, gamma_bar = 0 (median), C_2(1) = 2:
    // (0.1/2 - 0.001) / 0.005 = 9.8, so the bound is 10.
    const auto m = model_of(make_dataset(1, {0.0, 0.01, 1.0}, {0.0, 0.001, 0.0}), MetricKind::Euclidean);
    CHECK(m.khat == 0.1);
    CHECK(m.gamma_bar == 0.0);

    const BurdenBound b = burden_lower_bound(m, 0.005);
    REQUIRE(b.bound.exact.has_value());
    CHECK(*b.bound.exact == 10);
    CHECK_THAT(b.term_k.value, Catch::Matchers::WithinRel(0.05, 1e-12));
    CHECK_THAT(b.term_sum.value, Catch::Matchers::WithinRel(0.001, 1e-12));
    CHECK_THAT(b.bound.log10, Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK(b.epsilon == 0.005);
    CHECK(b.spec.unit == EpsilonUnit::Absolute);

    // A large accuracy target clamps to the trivial bound of one observation.
    const BurdenBound trivial = burden_lower_bound(m, 10.0);
    REQUIRE(trivial.bound.exact.has_value());
    CHECK(*trivial.bound.exact == 1);

    // Observed spread can exceed khat^p / C_q; the difference clamps at 1.
    const auto spread = model_of(make_dataset(1, {0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}), MetricKind::Euclidean);
    const BurdenBound clamped = burden_lower_bound(spread, 0.001);
    REQUIRE(clamped.bound.exact.has_value());
    CHECK(*clamped.bound.exact == 1);
}

TEST_CASE("burden bound rejects degenerate and invalid inputs", "[bounds]") {
    const auto constant = model_of(make_dataset(1, {0.0, 1.0}, {3.0, 3.0}), MetricKind::Supremum);
    CHECK_THROWS_AS(burden_lower_bound(constant, 0.1), DegenerateError);

    const auto m = model_of(make_dataset(1, {0.0, 1.0}, {0.0, 1.0}), MetricKind::Supremum);
    CHECK_THROWS_AS(burden_lower_bound(m, 0.0), DomainError);
    CHECK_THROWS_AS(burden_lower_bound(m, -0.5), DomainError);
    CHECK_THROWS_AS(burden_from_terms(1.0, 0, MetricKind::Supremum, Magnitude::zero(), 0.1), DomainError);
}

TEST_CASE("burden bound agrees with a long-double oracle on fixtures", "[bounds]") {
    int checked = 0;
    for (std::uint64_t i = 0; i < 24; ++i) {
        const auto fx = testsupport::make_fixture(i, 2, 30);
        const auto m = model_of(fx.dataset, fx.metric.kind);
        if (m.khat <= 0.0) continue;
        for (const double eps : {0.003, 0.02, 0.1, 0.9}) {
            const BurdenBound b = burden_lower_bound(m, eps);
            REQUIRE(b.bound.exact.has_value());
            CHECK(*b.bound.exact == burden_oracle(m, eps));
            ++checked;
        }
    }
    CHECK(checked >= 80);
}

TEST_CASE("burden bound is monotone in accuracy and in the constant", "[bounds]") {
    const auto m = model_of(make_dataset(1, {0.0, 0.01, 1.0}, {0.0, 0.001, 0.0}), MetricKind::Euclidean);
    double prev = std::numeric_limits<double>::infinity();
    for (const double eps : {1e-6, 1e-4, 1e-2, 1.0, 100.0}) {
        const double cur = burden_lower_bound(m, eps).bound.log10;
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }

    const Magnitude sum = Magnitude::from_value(0.001);
    prev = -std::numeric_limits<double>::infinity();
    for (const double khat : {0.1, 0.5, 1.0, 7.0, 50.0}) {
        const double cur = burden_from_terms(khat, 3, MetricKind::Supremum, sum, 0.01).bound.log10;
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("burden bound survives astronomically large magnitudes", "[bounds]") {
    // (khat / 2)^400 is around 10^340: past double range, fine in log10.
    const BurdenBound b =
        burden_from_terms(14.2, 400, MetricKind::Supremum, Magnitude::from_value(1e30), 0.001);
    CHECK_FALSE(b.bound.exact.has_value());
    const double expect = 400.0 * std::log10(14.2) - 400.0 * std::log10(2.0) - 400.0 * std::log10(0.001);
    CHECK_THAT(b.bound.log10, Catch::Matchers::WithinAbs(expect, 1e-6));
    CHECK_FALSE(b.term_k.fits_double());
    CHECK(b.term_k.log10 == 400.0 * std::log10(14.2) - 400.0 * std::log10(2.0));
}

TEST_CASE("covering upper bound matches hand values", "[bounds]") {
    const BigCount one = covering_upper_bound(1.0, 0.5, 3);
    REQUIRE(one.exact.has_value());
    CHECK(*one.exact == 1);

    const BigCount hundred = covering_upper_bound(1.0, 0.05, 2);
    REQUIRE(hundred.exact.has_value());
    CHECK(*hundred.exact == 100);

    // Ratio 50 exactly; 50^21 only fits as a logarithm.
    const BigCount big = covering_upper_bound(34.68, 0.3468, 21);
    CHECK_FALSE(big.exact.has_value());
    CHECK_THAT(big.log10, Catch::Matchers::WithinAbs(21.0 * std::log10(50.0), 1e-12));

    // The ratio 1 / (2 * 1/6) = 3.0000000000000004 snaps back to 3.
    const BigCount snapped = covering_upper_bound(1.0, 1.0 / 6.0, 4);
    REQUIRE(snapped.exact.has_value());
    CHECK(*snapped.exact == 81);

    CHECK_THROWS_AS(covering_upper_bound(0.0, 0.1, 2), DomainError);
    CHECK_THROWS_AS(covering_upper_bound(1.0, 0.0, 2), DomainError);
    CHECK_THROWS_AS(covering_upper_bound(1.0, 0.1, 0), DomainError);
}

TEST_CASE("covering upper bound is monotone", "[bounds]") {
    double prev = std::numeric_limits<double>::infinity();
    for (const double eps : {0.001, 0.01, 0.1, 1.0}) {
        const double cur = covering_upper_bound(3.7, eps, 5).log10;
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
    prev = -std::numeric_limits<double>::infinity();
    for (const double k : {0.1, 1.0, 10.0, 1000.0}) {
        const double cur = covering_upper_bound(k, 0.05, 5).log10;
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("corner upper bound matches hand values", "[bounds]") {
    // Single observation at 0.25 with value 5, kappa 2: dtil = 0.75, so the
    // bracket is [5 - 1.5, 5 + 1.5] and the e* bound is 1.5.
    const auto spike = model_of(make_dataset(1, {0.25}, {5.0}), MetricKind::Supremum, 2.0);
    CHECK(corner_upper_bound(spike) == 1.5);

    // A determined line: the bound stays positive even though sup e* is 0.
    const auto line = model_of(make_dataset(1, {0.0, 1.0}, {0.0, 1.0}), MetricKind::Supremum);
    CHECK(corner_upper_bound(line) == 0.5);

    const auto l2 = model_of(make_dataset(1, {0.25}, {5.0}), MetricKind::Euclidean, 2.0);
    CHECK_THROWS_AS(corner_upper_bound(l2), UnsupportedMetric);
}

TEST_CASE("exhaustive corner search matches hand values", "[bounds]") {
    const auto spike = model_of(make_dataset(1, {0.25}, {5.0}), MetricKind::Supremum, 2.0);
    const CornerBoundReport r = corner_lower_bound(spike, CornerMode::Exhaustive);
    CHECK(r.upper == 1.5);
    CHECK(r.lower == 1.5); // attained at the corner 1
    REQUIRE(r.argmax_corner.size() == 1);
    CHECK(r.argmax_corner[0] == 1);
    CHECK(r.corners_evaluated == 2);
    CHECK(r.mode == CornerMode::Exhaustive);

    const auto line = model_of(make_dataset(1, {0.0, 1.0}, {0.0, 1.0}), MetricKind::Supremum);
    const CornerBoundReport rl = corner_lower_bound(line, CornerMode::Exhaustive);
    CHECK(rl.lower == 0.0);
    CHECK(rl.upper == 0.5);
    CHECK(rl.argmax_corner == std::vector<std::uint8_t>{0}); // ties keep the first visited corner
}

TEST_CASE("single centroid observation yields kappa/2 at every corner", "[bounds]") {
    for (const int p : {1, 2, 5, 16}) {
        const auto made = synthesize(SynthKind::Constant, p, 1, 0, MetricKind::Supremum);
        for (const double kappa : {0.25, 1.0, 3.0}) {
            const auto m = model_of(made.dataset, MetricKind::Supremum, kappa);
            const CornerBoundReport r = corner_lower_bound(m, CornerMode::Exhaustive);
            CHECK(r.lower == 0.5 * kappa);
            CHECK(r.upper == 0.5 * kappa);
            CHECK(r.corners_evaluated == (std::uint64_t{1} << p));
            // all corners tie, so the first Gray-code corner (all zeros) wins
            CHECK(r.argmax_corner == std::vector<std::uint8_t>(static_cast<std::size_t>(p), 0));
        }
    }
}

TEST_CASE("corner search rejects unusable configurations", "[bounds]") {
    const auto m10 = model_of(synthesize(SynthKind::ProductSine, 10, 12, 5, MetricKind::Supremum).dataset,
                              MetricKind::Supremum);
    CHECK_THROWS_AS(corner_search(m10, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1), BudgetExceeded);
    CHECK_THROWS_AS(corner_search(m10, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1023), BudgetExceeded);
    CHECK(corner_search(m10, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1024).evaluated == 1024);

    const auto l2 = model_of(make_dataset(2, {0.1, 0.2, 0.8, 0.9}, {0.0, 1.0}), MetricKind::Euclidean);
    CHECK_THROWS_AS(corner_search(l2, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1 << 20),
                    UnsupportedMetric);
    CHECK_THROWS_AS(corner_lower_bound(l2, CornerMode::Exhaustive), UnsupportedMetric);
    CHECK_THROWS_AS(centroid_verdict(l2, 0.1), UnsupportedMetric);
    CHECK_THROWS_AS(global_f_bounds(l2, CornerMode::Exhaustive), UnsupportedMetric);
}

TEST_CASE("corner mode tokens round-trip", "[bounds]") {
    CHECK(parse_corner_mode("exhaustive") == CornerMode::Exhaustive);
    CHECK(parse_corner_mode("heuristic") == CornerMode::Heuristic);
    CHECK(corner_mode_token(CornerMode::Heuristic) == "heuristic");
    CHECK_THROWS_AS(parse_corner_mode("fast"), DomainError);
}

TEST_CASE("corner brackets contain the dense-grid supremum", "[bounds]") {
    for (std::uint64_t i = 0; i < 14; ++i) {
        const auto m = sup_model(100 + i, 2, 24);
        const int per_axis = m.dataset.dim == 1 ? 2001 : 201;
        const double grid = testsupport::grid_sup_estar(m.dataset, MetricKind::Supremum, m.kappa, per_axis);
        const double tol = 1e-9 * value_scale(m);
        const CornerBoundReport r = corner_lower_bound(m, CornerMode::Exhaustive);
        CHECK(r.lower <= grid + tol);
        CHECK(grid <= r.upper + tol);
        CHECK(r.lower <= r.upper + tol);
    }
}

TEST_CASE("lower bracket never exceeds the upper bracket on fixtures", "[bounds]") {
    for (std::uint64_t i = 0; i < 12; ++i) {
        const auto m = sup_model(200 + i, 9, 40);
        const double tol = 1e-9 * value_scale(m);
        const CornerBoundReport ex = corner_lower_bound(m, CornerMode::Exhaustive);
        CHECK(ex.lower <= ex.upper + tol);
        const CornerBoundReport he = corner_lower_bound(m, CornerMode::Heuristic, 500, 42 + i);
        CHECK(he.lower <= he.upper + tol);
        CHECK(he.lower <= ex.lower); // heuristic max runs over a subset of corners
    }
}

TEST_CASE("reported argmax corner reproduces the reported bound", "[bounds]") {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto m = sup_model(300 + i, 8, 30);
        for (const CornerMode mode : {CornerMode::Exhaustive, CornerMode::Heuristic}) {
            const CornerBoundReport r = corner_lower_bound(m, mode, 2000, 7 + i);
            REQUIRE(r.argmax_corner.size() == static_cast<std::size_t>(m.dataset.dim));
            std::vector<double> w(r.argmax_corner.size());
            for (std::size_t j = 0; j < w.size(); ++j) {
                CHECK((r.argmax_corner[j] == 0 || r.argmax_corner[j] == 1));
                w[j] = static_cast<double>(r.argmax_corner[j]);
            }
            CHECK(envelope_at(m, w).e_star == r.lower);
        }
    }
}

TEST_CASE("gray-code and lexicographic scans agree on the best value", "[bounds]") {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto m = sup_model(400 + i, 8, 30);
        for (const CornerObjective obj :
             {CornerObjective::MaxEstar, CornerObjective::MaxEplus, CornerObjective::MinEminus}) {
            const auto gray = corner_search(m, obj, CornerMode::Exhaustive, 1 << 20, 0, CornerOrder::GrayCode);
            const auto lex =
                corner_search(m, obj, CornerMode::Exhaustive, 1 << 20, 0, CornerOrder::Lexicographic);
            CHECK(gray.best == lex.best);
            CHECK(gray.evaluated == lex.evaluated);
        }
    }
}

TEST_CASE("exhaustive corner search is independent of the thread count", "[bounds]") {
    for (std::uint64_t i = 0; i < 6; ++i) {
        const auto m = sup_model(500 + i, 9, 30);
        const auto base = corner_search(m, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1 << 20, 0);
        for (const int threads : {2, 3, 8}) {
            const auto par = corner_search(m, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1 << 20, 0,
                                           CornerOrder::GrayCode, threads);
            CHECK(par.best == base.best);
            CHECK(par.corner == base.corner); // first-visited ties survive the parallel merge
            CHECK(par.evaluated == base.evaluated);
        }
    }
}

TEST_CASE("heuristic corner search is deterministic across thread counts", "[bounds]") {
    const auto made = synthesize(SynthKind::RandomLipschitz, 12, 40, 777, MetricKind::Supremum);
    const auto m = model_of(made.dataset, MetricKind::Supremum);
    const auto base = corner_search(m, CornerObjective::MaxEstar, CornerMode::Heuristic, 5000, 7);
    for (const int threads : {2, 8}) {
        const auto par =
            corner_search(m, CornerObjective::MaxEstar, CornerMode::Heuristic, 5000, 7, CornerOrder::GrayCode, threads);
        CHECK(par.best == base.best);
        CHECK(par.corner == base.corner);
        CHECK(par.evaluated == base.evaluated);
    }
    // different seeds may legitimately land elsewhere, but stay valid bounds
    const auto other = corner_search(m, CornerObjective::MaxEstar, CornerMode::Heuristic, 5000, 8);
    CHECK(other.best <= corner_upper_bound(m) + 1e-9 * value_scale(m));
}

TEST_CASE("heuristic search spends its budget and stays below exhaustive", "[bounds]") {
    const auto made = synthesize(SynthKind::RandomLipschitz, 10, 50, 4242, MetricKind::Supremum);
    const auto m = model_of(made.dataset, MetricKind::Supremum);
    const auto ex = corner_search(m, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1 << 20, 0);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto he = corner_search(m, CornerObjective::MaxEstar, CornerMode::Heuristic, 20000, seed);
        CHECK(he.best <= ex.best);
        CHECK(he.evaluated >= 20000); // the crossing restart completes
        CHECK(he.mode == CornerMode::Heuristic);
        if (he.best == ex.best) ++hits;
    }
    CHECK(hits >= 15); // steepest ascent with restarts finds the global max on most seeds
}

TEST_CASE("constant observations dominate varying ones corner by corner", "[bounds]") {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto m = sup_model(700 + i, 6, 30);
        if (m.khat <= 0.0) continue;
        auto constant = m.dataset;
        for (double& v : constant.values) v = 0.5;
        const auto cm = model_of(std::move(constant), MetricKind::Supremum, m.kappa);
        const auto varying = corner_search(m, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1 << 20, 0);
        const auto flat = corner_search(cm, CornerObjective::MaxEstar, CornerMode::Exhaustive, 1 << 20, 0);
        CHECK(flat.best >= varying.best - 1e-12 * value_scale(m));
    }
}

TEST_CASE("scaled error bound transfers to hypothetical constants", "[bounds]") {
    const auto m = model_of(make_dataset(1, {0.0, 1.0}, {0.0, 2.0}), MetricKind::Supremum);
    CHECK(m.khat == 2.0);
    CHECK(scaled_error_bound(m, 10.0, 0.7) == 3.5);
    CHECK(scaled_error_bound(m, 2.0, 0.7) == 0.7);
    CHECK_THROWS_AS(scaled_error_bound(m, 1.9, 0.7), DomainError);

    const auto constant = model_of(make_dataset(1, {0.0, 1.0}, {3.0, 3.0}), MetricKind::Supremum);
    CHECK_THROWS_AS(scaled_error_bound(constant, 1.0, 0.1), DegenerateError);
}

TEST_CASE("centroid verdict compares the bound against khat/2", "[bounds]") {
    const auto m = model_of(make_dataset(1, {0.0, 1.0}, {0.0, 2.0}), MetricKind::Supremum);
    const Verdict hit = centroid_verdict(m, 1.0);
    CHECK(hit.triggered); // the threshold itself counts
    CHECK(hit.threshold == 1.0);
    CHECK(hit.khat == 2.0);
    CHECK(hit.implied_bound.find("E_K") != std::string::npos);

    const Verdict miss = centroid_verdict(m, 0.999);
    CHECK_FALSE(miss.triggered);
    CHECK(miss.implied_bound.find("inconclusive") != std::string::npos);

    const auto constant = model_of(make_dataset(1, {0.0, 1.0}, {3.0, 3.0}), MetricKind::Supremum);
    const Verdict degenerate = centroid_verdict(constant, 0.0);
    CHECK_FALSE(degenerate.triggered);
    CHECK(degenerate.implied_bound.find("degenerate") != std::string::npos);
}

TEST_CASE("global f bounds bracket a hand example", "[bounds]") {
    const auto spike = model_of(make_dataset(1, {0.25}, {5.0}), MetricKind::Supremum, 2.0);
    const GlobalFBounds g = global_f_bounds(spike, CornerMode::Exhaustive);
    CHECK(g.max_upper == 6.5);
    CHECK(g.min_lower == 3.5);
    CHECK(g.max_corner == 6.5);
    CHECK(g.min_corner == 3.5);
    CHECK(g.max_certified);
    CHECK(g.min_certified);
    CHECK(g.corners_evaluated == 4);
}

TEST_CASE("global f bounds collapse for constant data", "[bounds]") {
    const auto constant = model_of(make_dataset(2, {0.1, 0.2, 0.8, 0.9}, {3.0, 3.0}), MetricKind::Supremum);
    REQUIRE(constant.kappa == 0.0);
    const GlobalFBounds g = global_f_bounds(constant, CornerMode::Heuristic, 0, 0);
    CHECK(g.max_upper == 3.0);
    CHECK(g.min_lower == 3.0);
    CHECK(g.max_certified);
    CHECK(g.min_certified);
    CHECK(g.corners_evaluated >= 4); // the corners 0 and 1 always run for both searches
}

TEST_CASE("global f bounds require an admissible class", "[bounds]") {
    const auto line = make_dataset(1, {0.0, 1.0}, {0.0, 1.0});
    const auto strict = model_of(line, MetricKind::Supremum, 0.5); // kappa below khat = 1
    CHECK_THROWS_AS(global_f_bounds(strict, CornerMode::Exhaustive), EmptyClass);
}

TEST_CASE("global f bounds stay sound on fixtures", "[bounds]") {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto m = sup_model(800 + i, 8, 40);
        const GlobalFBounds g = global_f_bounds(m, CornerMode::Exhaustive);
        const double tol = 1e-9 * value_scale(m);
        double fmaxv = -std::numeric_limits<double>::infinity();
        double fminv = std::numeric_limits<double>::infinity();
        for (const double v : m.dataset.values) {
            fmaxv = std::fmax(fmaxv, v);
            fminv = std::fmin(fminv, v);
        }
        CHECK(g.max_upper >= fmaxv - tol); // sup f is at least the largest observation
        CHECK(g.min_lower <= fminv + tol);
        CHECK(g.max_corner <= g.max_upper + tol); // corner values stay inside the sound bracket
        CHECK(g.min_corner >= g.min_lower - tol);
    }
}
