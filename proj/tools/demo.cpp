// Walks one synthetic dataset through the whole pipeline: empirical constant,
// envelopes, burden bounds, corner bracketing, Monte Carlo error distribution.
#include <cstdio>

#include "lipuq/bounds.hpp"
#include "lipuq/dataset.hpp"
#include "lipuq/envelope.hpp"
#include "lipuq/montecarlo.hpp"

int main() {
    using namespace lipuq;

    const int dim = 6;
    Synthesized synth = synthesize(SynthKind::ProductSine, dim, 120, 7, MetricKind::Supremum);
    const EnvelopeModel m =
        build_envelope_model(std::move(synth.dataset), Metric{MetricKind::Supremum, dim});

    std::printf("n = %zu points in [0,1]^%d\n", m.size(), dim);
    std::printf("khat = %.6g, gamma_bar = %.6g, gamma_hat = %.6g\n", m.khat, m.gamma_bar, m.gamma_hat);

    const std::vector<double> center(static_cast<std::size_t>(dim), 0.5);
    const EnvelopeValues e = envelope_at(m, center);
    std::printf("at the center: e+ = %.6g, e- = %.6g, e* = %.6g, f* = %.6g\n", e.e_plus, e.e_minus, e.e_star,
                minimax_emulator_at(m, center));

    for (const double frac : {0.5, 0.1, 0.05}) {
        const EpsilonSpec spec{EpsilonUnit::FractionOfKhat, frac};
        const BurdenBound b = burden_lower_bound(m, resolve_epsilon(spec, m.khat, m.gamma_hat), spec);
        if (b.bound.exact)
            std::printf("burden at %s: >= %llu observations\n", spec.text().c_str(),
                        static_cast<unsigned long long>(*b.bound.exact));
        else
            std::printf("burden at %s: >= 10^%.3f observations\n", spec.text().c_str(), b.bound.log10);
    }

    const CornerBoundReport corners = corner_lower_bound(m, CornerMode::Exhaustive);
    std::printf("sup e* in [%.6g, %.6g] after %llu corners (%s)\n", corners.lower, corners.upper,
                static_cast<unsigned long long>(corners.corners_evaluated),
                std::string(corner_mode_token(corners.mode)).c_str());

    const Verdict v = centroid_verdict(m, corners.lower);
    std::printf("threshold khat/2 = %.6g: %s\n", v.threshold, v.triggered ? "triggered" : "not triggered");

    McConfig mc;
    mc.samples = 20000;
    mc.seed = 1;
    mc.units = {ErrorUnits::Absolute, ErrorUnits::KhatOver2};
    mc.metrics = {MetricKind::Supremum};
    for (const ErrorDistributionReport& row : build_report(m, mc)) {
        std::printf("mc [%s]: median >= %.6g, mean >= %.6g, max %.6g\n",
                    std::string(error_units_token(row.units)).c_str(), row.quantile_lcbs[1].lcb, row.mean_lcb,
                    row.max_observed);
    }
    return 0;
}
