#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lipuq/envelope.hpp"
#include "support/oracles.hpp"

using namespace lipuq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Dataset two_point_line() { return make_dataset(1, {0.0, 1.0}, {0.0, 1.0}); }

EnvelopeModel line_model(double kappa = 1.0) {
    return build_envelope_model(two_point_line(), Metric{MetricKind::Supremum, 1}, kappa);
}

} // namespace

TEST_CASE("empirical lipschitz constant", "[envelope]") {
    const Dataset line = two_point_line();
    CHECK(empirical_lipschitz(line, {MetricKind::Supremum, 1}) == 1.0);
    CHECK(empirical_lipschitz(line, {MetricKind::Euclidean, 1}) == 1.0);

    const Dataset flat = make_dataset(2, {0.0, 0.0, 1.0, 1.0, 0.5, 0.25}, {3.0, 3.0, 3.0});
    CHECK(empirical_lipschitz(flat, {MetricKind::Supremum, 2}) == 0.0);

    const Dataset single = make_dataset(1, {0.5}, {7.0});
    CHECK(empirical_lipschitz(single, {MetricKind::Euclidean, 1}) == 0.0);

    const Dataset tri = make_dataset(2, {0.0, 0.0, 1.0, 1.0, 0.0, 1.0}, {0.0, 1.0, 3.0});
    CHECK(empirical_lipschitz(tri, {MetricKind::Supremum, 2}) == 3.0);

    CHECK_THROWS_AS(empirical_lipschitz(tri, {MetricKind::Supremum, 3}), DimensionMismatch);
}

TEST_CASE("empirical lipschitz is thread-count independent", "[envelope]") {
    const auto made = synthesize(SynthKind::RandomLipschitz, 4, 120, 11, MetricKind::Euclidean);
    const Metric m{MetricKind::Euclidean, 4};
    const double k1 = empirical_lipschitz(made.dataset, m, 1);
    for (const int threads : {2, 3, 8}) CHECK(empirical_lipschitz(made.dataset, m, threads) == k1);
    CHECK(k1 > 0.0);
}

TEST_CASE("synthesized data never exceeds its generator constant", "[envelope][dataset]") {
    for (const MetricKind kind : {MetricKind::Euclidean, MetricKind::Supremum}) {
        for (const SynthKind sk :
             {SynthKind::Linear, SynthKind::Constant, SynthKind::ProductSine, SynthKind::RandomLipschitz}) {
            for (const int dim : {1, 2, 5}) {
                for (const std::size_t n : {1u, 2u, 17u, 60u}) {
                    const auto made = synthesize(sk, dim, n, 5 * dim + static_cast<int>(n), kind);
                    const double khat = empirical_lipschitz(made.dataset, Metric{kind, dim});
                    REQUIRE(khat <= made.known_k * (1.0 + 1e-9) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("gamma_bar matches closed forms", "[envelope]") {
    CHECK(gamma_bar(make_dataset(2, {0, 0, 0.5, 0.5, 1, 1}, {1.0, 2.0, 6.0})) == 3.0);
    CHECK(gamma_bar(two_point_line()) == 0.5);
    CHECK(gamma_bar(make_dataset(1, {0.0, 0.5, 1.0}, {1.0, 3.0, 2.0})) == 2.0);
    CHECK(gamma_bar(make_dataset(3, {0, 0, 0, 1, 1, 1}, {4.0, 4.0})) == 4.0);

    // first-order optimality against nearby candidates, p = 3
    const Dataset ds = make_dataset(3, {0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1}, {0.3, 1.9, 0.7, 1.1});
    const double g = gamma_bar(ds);
    const auto obj = [&](double c) {
        double acc = 0.0;
        for (const double v : ds.values) acc += std::pow(std::fabs(v - c), 3.0);
        return acc;
    };
    CHECK(obj(g) <= obj(g + 1e-6) + 1e-15);
    CHECK(obj(g) <= obj(g - 1e-6) + 1e-15);
}

TEST_CASE("gamma_bar survives huge value magnitudes", "[envelope]") {
    // |f - g|^p would overflow doubles; the search switches to log domain
    const auto made = synthesize(SynthKind::Linear, 21, 30, 3, MetricKind::Supremum);
    Dataset ds = made.dataset;
    for (double& v : ds.values) v = v * 1e200 - 5e199;
    const double g = gamma_bar(ds);
    CHECK(std::isfinite(g));
    const auto [lo, hi] = std::minmax_element(ds.values.begin(), ds.values.end());
    CHECK(g >= *lo);
    CHECK(g <= *hi);
    const auto log_obj = [&](double c) {
        std::vector<double> l(ds.values.size());
        for (std::size_t i = 0; i < l.size(); ++i) l[i] = 21.0 * std::log10(std::fabs(ds.values[i] - c));
        return log10_sum(l.data(), l.size());
    };
    const double span = *hi - *lo;
    CHECK(log_obj(g) <= log_obj(g + 1e-6 * span) + 1e-9);
    CHECK(log_obj(g) <= log_obj(g - 1e-6 * span) + 1e-9);
}

TEST_CASE("gamma_hat is the sample mean", "[envelope]") {
    CHECK(gamma_hat(make_dataset(1, {0.0, 0.5, 1.0}, {1.0, 2.0, 6.0})) == 3.0);
}

TEST_CASE("envelope_at hand examples", "[envelope]") {
    // two observations on opposite corners of the unit square
    const Dataset sq = make_dataset(2, {0.0, 0.0, 1.0, 1.0}, {0.0, 1.0});
    const auto model = build_envelope_model(sq, Metric{MetricKind::Supremum, 2});
    REQUIRE(model.khat == 1.0);
    const auto e = envelope_at(model, {1.0, 0.0});
    CHECK(e.e_plus == 1.0);
    CHECK(e.e_minus == 0.0);
    CHECK(e.e_star == 0.5);

    const auto on_x = envelope_at(model, {1.0, 1.0});
    CHECK_THAT(on_x.e_plus, WithinAbs(1.0, 1e-12));
    CHECK_THAT(on_x.e_minus, WithinAbs(1.0, 1e-12));
    CHECK_THAT(on_x.e_star, WithinAbs(0.0, 1e-12));

    // fully determined line: e* vanishes everywhere
    const auto line = line_model();
    for (int a = 0; a <= 100; ++a) {
        const double w = a / 100.0;
        CHECK_THAT(envelope_at(line, &w).e_star, WithinAbs(0.0, 1e-15));
    }

    CHECK_THROWS_AS(envelope_at(model, std::vector<double>{0.5}), DimensionMismatch);
}

TEST_CASE("envelope with kappa below khat goes negative", "[envelope]") {
    const auto model = build_envelope_model(two_point_line(), Metric{MetricKind::Supremum, 1}, 0.5);
    const auto e = envelope_at(model, {0.5});
    CHECK(e.e_star < 0.0); // diagnostic mode: empty interval intersection
    CHECK_THROWS_AS(minimax_emulator_at(model, {0.5}), EmptyClass);
}

TEST_CASE("minimax emulator", "[envelope]") {
    const auto line = line_model();
    CHECK_THAT(minimax_emulator_at(line, {0.3}), WithinAbs(0.3, 1e-15));
    CHECK_THAT(minimax_emulator_at(line, {0.0}), WithinAbs(0.0, 1e-15));

    const Dataset centroid = make_dataset(3, {0.5, 0.5, 0.5}, {42.0});
    const auto cm = build_envelope_model(centroid, Metric{MetricKind::Supremum, 3}, 2.0);
    const CounterRng rng(5, 0);
    for (int t = 0; t < 50; ++t) {
        const auto w = testsupport::random_cube_point(rng, 3, static_cast<std::uint64_t>(t) * 4);
        CHECK(minimax_emulator_at(cm, w) == 42.0);
    }
}

TEST_CASE("fbar hand examples", "[envelope]") {
    const auto line = line_model();
    for (int a = 0; a <= 20; ++a) {
        const double w = a / 20.0;
        CHECK_THAT(fbar_at(line, &w), WithinAbs(w, 1e-15));
    }

    // isolated spike: far from it, fbar sits at gamma_bar
    const Dataset ds = make_dataset(1, {0.0, 0.1, 0.2}, {0.0, 1.0, 0.0});
    const auto model = build_envelope_model(ds, Metric{MetricKind::Supremum, 1});
    REQUIRE(model.khat == 10.0);
    CHECK(fbar_at(model, {0.9}) == model.gamma_bar);
    CHECK_THAT(fbar_at(model, {0.1}), WithinAbs(1.0, 1e-12)); // interpolates on X+

    const Dataset flat = make_dataset(1, {0.0, 1.0}, {2.0, 2.0});
    const auto degenerate = build_envelope_model(flat, Metric{MetricKind::Supremum, 1});
    CHECK_THROWS_AS(fbar_at(degenerate, {0.5}), DegenerateError);
}

TEST_CASE("envelope property suite on random fixtures", "[envelope][properties]") {
    const CounterRng rng(0xabcdef, 99);
    std::uint64_t ctr = 0;
    for (std::uint64_t fi = 0; fi < 12; ++fi) {
        const auto fx = testsupport::make_fixture(fi);
        const auto model = build_envelope_model(fx.dataset, fx.metric);
        const double kappa = model.kappa;
        const double scale = std::max(1.0, std::fabs(model.gamma_hat));

        // interpolation at the observations
        for (std::size_t i = 0; i < model.size(); ++i) {
            const auto e = envelope_at(model, model.dataset.point(i));
            const double tol = 1e-10 * std::max(1.0, std::fabs(model.dataset.values[i]));
            REQUIRE_THAT(e.e_plus, WithinAbs(model.dataset.values[i], tol));
            REQUIRE_THAT(e.e_minus, WithinAbs(model.dataset.values[i], tol));
        }

        for (int t = 0; t < 400; ++t) {
            const auto v = testsupport::random_cube_point(rng, fx.metric.dim, ctr);
            ctr += 16;
            const auto w = testsupport::random_cube_point(rng, fx.metric.dim, ctr);
            ctr += 16;
            const double dvw = distance(fx.metric, v.data(), w.data());
            const auto ev = envelope_at(model, v);
            const auto ew = envelope_at(model, w);

            // each envelope is kappa-Lipschitz
            REQUIRE(std::fabs(ev.e_plus - ew.e_plus) <= kappa * dvw + 1e-10 * scale);
            REQUIRE(std::fabs(ev.e_minus - ew.e_minus) <= kappa * dvw + 1e-10 * scale);

            // ordering at kappa = khat
            REQUIRE(ev.e_star >= -1e-12 * scale);
            const double fstar = minimax_emulator_at(model, v.data());
            REQUIRE(fstar <= ev.e_plus + 1e-12 * scale);
            REQUIRE(fstar >= ev.e_minus - 1e-12 * scale);

            // monotone in kappa, and the scaling lemma alpha e*_k >= e*_{alpha k}
            const double alpha = 0.05 + 0.95 * rng.uniform(ctr++);
            EnvelopeModel shrunk = model; // kappa only affects evaluation
            shrunk.kappa = alpha * kappa;
            const auto es = envelope_at(shrunk, v);
            REQUIRE(es.e_star <= ev.e_star + 1e-12 * scale);
            REQUIRE(alpha * ev.e_star >= es.e_star - 1e-10 * scale);

            // the interval oracle agrees pointwise
            const double oracle = testsupport::estar_interval_oracle(model.dataset, fx.metric.kind, kappa, v.data());
            REQUIRE_THAT(ev.e_star, WithinAbs(oracle, 1e-10 * scale));
        }
    }
}

TEST_CASE("fbar stays in the admissible class", "[envelope][properties]") {
    const CounterRng rng(31337, 5);
    std::uint64_t ctr = 0;
    for (std::uint64_t fi = 0; fi < 8; ++fi) {
        const auto fx = testsupport::make_fixture(fi, 4, 25);
        const auto model = build_envelope_model(fx.dataset, fx.metric);
        if (model.khat <= 0.0) continue;

        // agrees with f on X
        for (std::size_t i = 0; i < model.size(); ++i) {
            const double tol = 1e-10 * std::max(1.0, std::fabs(model.dataset.values[i]));
            REQUIRE_THAT(fbar_at(model, model.dataset.point(i)), WithinAbs(model.dataset.values[i], tol));
        }

        // empirical constant of fbar itself stays within khat
        for (int t = 0; t < 1500; ++t) {
            const auto v = testsupport::random_cube_point(rng, fx.metric.dim, ctr);
            ctr += 16;
            const auto w = testsupport::random_cube_point(rng, fx.metric.dim, ctr);
            ctr += 16;
            const double dvw = distance(fx.metric, v.data(), w.data());
            if (dvw == 0.0) continue;
            REQUIRE(std::fabs(fbar_at(model, v) - fbar_at(model, w)) <= (model.khat + 1e-9) * dvw);
        }

        // the defining balls of Q+ and Q- cannot overlap
        for (const std::size_t ip : model.plus_index) {
            for (const std::size_t im : model.minus_index) {
                const double gap = distance(fx.metric, model.dataset.point(ip), model.dataset.point(im));
                REQUIRE(model.q_radius[ip] + model.q_radius[im] <= gap + 1e-12 * std::max(1.0, gap));
            }
        }
    }
}

TEST_CASE("interval scaling lemma on raw interval families", "[envelope][properties]") {
    const CounterRng rng(777, 0);
    std::uint64_t ctr = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 1 + rng.below(ctr++, 6);
        std::vector<testsupport::Interval> base(m);
        testsupport::Interval full, scaled;
        const double alpha = 0.01 + 0.99 * rng.uniform(ctr++);
        for (std::size_t i = 0; i < m; ++i) {
            const double center = 4.0 * rng.uniform(ctr++) - 2.0;
            const double radius = 2.0 * rng.uniform(ctr++);
            full = testsupport::intersect(full, {center - radius, center + radius});
            scaled = testsupport::intersect(scaled, {center - alpha * radius, center + alpha * radius});
        }
        const double len_full = full.hi - full.lo;
        const double len_scaled = scaled.hi - scaled.lo;
        REQUIRE(alpha * len_full >= len_scaled - 1e-10);
    }
}
