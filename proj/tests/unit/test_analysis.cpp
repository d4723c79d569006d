// decay fitting, oscillation extraction, trace comparison
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qedtd/analysis.hpp"

using namespace qedtd;

namespace {

// |P|^2 = env(t): store P = sqrt(env) (real phase is irrelevant here)
PopulationTrace synth(double t_end, double dt, auto env) {
    PopulationTrace tr;
    for (double t = 0.0; t <= t_end; t += dt) {
        tr.t.push_back(t);
        tr.P.emplace_back(std::sqrt(std::max(0.0, env(t))), 0.0);
    }
    return tr;
}

} // namespace

TEST_CASE("exponential fit recovers its own model to 0.1%") {
    const double tau = 0.267e-12;
    const auto tr = synth(2e-12, 1e-15, [&](double t) { return std::exp(-t / tau); });
    const DecayFit fit = fit_exponential_decay(tr, 0.0, 2e-12);
    CHECK(!fit.non_exponential);
    CHECK(fit.tau == doctest::Approx(tau).epsilon(1e-3));
    CHECK(fit.r_squared > 0.9999);

    // scale invariance: a positive prefactor leaves tau unchanged
    PopulationTrace scaled = tr;
    for (auto& p : scaled.P)
        p *= std::sqrt(7.3);
    const DecayFit fit2 = fit_exponential_decay(scaled, 0.0, 2e-12);
    CHECK(fit2.tau == doctest::Approx(fit.tau).epsilon(1e-12));
}

TEST_CASE("envelope fit on an oscillating decay recovers tau within 2%") {
    const double tau = 0.5e-12;
    const double omega = 2.0 * std::numbers::pi / 4e-14; // 40 fs period
    const auto tr = synth(2e-12, 2.5e-16, [&](double t) {
        const double c = std::cos(0.5 * omega * t);
        return c * c * std::exp(-t / tau);
    });
    const DecayFit fit = fit_exponential_decay(tr, 0.0, 2e-12);
    CHECK(fit.envelope_used);
    CHECK(!fit.non_exponential);
    CHECK(fit.tau == doctest::Approx(tau).epsilon(0.02));
}

TEST_CASE("undamped oscillation is flagged NonExponential") {
    const double omega = 2.0 * std::numbers::pi / 1e-13;
    const auto tr = synth(2e-12, 2.5e-16,
                          [&](double t) { return 0.5 + 0.5 * std::cos(omega * t); });
    const DecayFit fit = fit_exponential_decay(tr, 0.0, 2e-12);
    CHECK(fit.non_exponential);
}

TEST_CASE("oscillation frequency of cos^2(f t) is 2f within 0.5%") {
    const double f = 3.86e13;
    const auto tr = synth(5.0 * std::numbers::pi / f, 2.0e-16, [&](double t) {
        const double c = std::cos(f * t);
        return c * c;
    });
    const OscillationFit fit = extract_oscillation_frequency(tr);
    CHECK(fit.omega == doctest::Approx(2.0 * f).epsilon(0.005));
    CHECK(fit.method == OscillationMethod::MinimaSpacing);

    // invariance under offset and positive scaling
    PopulationTrace shifted = tr;
    for (auto& p : shifted.P) {
        const double v = std::norm(p);
        p = cplx{std::sqrt(3.0 * v + 0.25), 0.0};
    }
    const OscillationFit fit2 = extract_oscillation_frequency(shifted);
    CHECK(fit2.omega == doctest::Approx(fit.omega).epsilon(1e-6));

    // determinism
    const OscillationFit fit3 = extract_oscillation_frequency(tr);
    CHECK(fit3.omega == fit.omega);
    CHECK(fit3.omega_spectral == fit.omega_spectral);
}

TEST_CASE("monotone decay raises AmbiguousOscillation") {
    const auto tr =
        synth(2e-12, 1e-15, [&](double t) { return std::exp(-t / 0.3e-12); });
    CHECK_THROWS_AS(extract_oscillation_frequency(tr), AmbiguousOscillation);
}

TEST_CASE("compare_traces metrics") {
    const auto tr = synth(1e-12, 1e-15, [&](double t) {
        const double c = std::cos(3.86e13 * t);
        return c * c * std::exp(-t / 0.5e-12);
    });
    const TraceComparison self = compare_traces(tr, tr);
    CHECK(self.linf_rel == doctest::Approx(0.0));
    CHECK(self.l2_rel == doctest::Approx(0.0));

    PopulationTrace scaled = tr;
    for (auto& p : scaled.P)
        p *= std::sqrt(1.015);
    const TraceComparison cmp = compare_traces(tr, scaled);
    CHECK(cmp.linf_rel == doctest::Approx(0.015).epsilon(1e-9));

    PopulationTrace late = tr;
    for (auto& t : late.t)
        t += 2e-12; // no overlap
    CHECK_THROWS_AS(compare_traces(tr, late), std::invalid_argument);
}
