#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "mimdetect/detectors.hpp"
#include "mimdetect/distributions.hpp"
#include "mimdetect/error_analysis.hpp"
#include "mimdetect/errors.hpp"
#include "mimdetect/quadrature.hpp"

using mimd::EventTag;
using mimd::Rule;

namespace {

double gaussian_kl(double m1, double s1, double m2, double s2) {
    return std::log(s2 / s1) + (s1 * s1 + (m1 - m2) * (m1 - m2)) / (2.0 * s2 * s2) - 0.5;
}

}  // namespace

TEST_CASE("error rate assembly and validation") {
    const mimd::PriorPair priors(0.9, 0.1);
    const auto r = mimd::make_rates(0.2, 0.05, priors);
    CHECK(r.alpha == 0.2);
    CHECK(r.beta == 0.05);
    CHECK(r.pe == doctest::Approx(0.1 * 0.2 + 0.9 * 0.05).epsilon(1e-15));
    // Tiny numerical overshoot is clamped, real violations are rejected.
    CHECK(mimd::make_rates(-1e-12, 0.0, priors).alpha == 0.0);
    CHECK(mimd::make_rates(1.0 + 1e-12, 0.0, priors).alpha == 1.0);
    CHECK_THROWS_AS(mimd::make_rates(-0.01, 0.0, priors), mimd::ValidationError);
    CHECK_THROWS_AS(mimd::make_rates(0.0, 1.01, priors), mimd::ValidationError);
}

TEST_CASE("indistinguishable classes decided by tie-break have alpha 0 and beta 1") {
    const mimd::GaussianDensity d(0.0, 1.0);
    const mimd::PriorPair priors(0.5, 0.5);
    const mimd::DetectorModel m{&d, &d, priors, 1.0};
    const auto rates =
        mimd::error_rates_quadrature(mimd::make_decider(m, Rule::Bayes), priors, d, d);
    CHECK(rates.alpha == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(rates.beta == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rates.pe == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("bayes rates for equal-prior unit gaussians match the closed form") {
    // Boundary at the midpoint: alpha = beta = Phi(-1).
    const mimd::GaussianDensity da(0.0, 1.0);
    const mimd::GaussianDensity db(2.0, 1.0);
    const mimd::PriorPair priors(0.5, 0.5);
    const mimd::DetectorModel m{&da, &db, priors, 1.0};
    const auto rates =
        mimd::error_rates_quadrature(mimd::make_decider(m, Rule::Bayes), priors, da, db);
    CHECK(rates.alpha == doctest::Approx(0.15865525393145705).epsilon(1e-8));
    CHECK(rates.beta == doctest::Approx(0.15865525393145705).epsilon(1e-8));
}

TEST_CASE("pinned quadrature rates for the rare-event model at prior ratio 1000") {
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.5, 0.1);
    const mimd::PriorPair priors(1.0 - 1.0 / 1001.0, 1.0 / 1001.0);
    const mimd::DetectorModel m{&da, &db, priors, 5.2026346};
    const auto bayes =
        mimd::error_rates_quadrature(mimd::make_decider(m, Rule::Bayes), priors, da, db);
    const auto mim =
        mimd::error_rates_quadrature(mimd::make_decider(m, Rule::Mim), priors, da, db);
    CHECK(bayes.alpha == doctest::Approx(0.35498185).epsilon(1e-6));
    CHECK(bayes.beta == doctest::Approx(0.00011981687).epsilon(1e-6));
    // At this configuration the magnified rule agrees with Bayes everywhere.
    CHECK(mim.alpha == doctest::Approx(bayes.alpha).epsilon(1e-12));
    CHECK(mim.beta == doctest::Approx(bayes.beta).epsilon(1e-12));
}

TEST_CASE("pinned quadrature rates where magnification flips a central band") {
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.3, 0.1);
    const mimd::PriorPair priors(0.992, 0.008);
    const mimd::DetectorModel m{&da, &db, priors, 2.9119131};
    const auto bayes =
        mimd::error_rates_quadrature(mimd::make_decider(m, Rule::Bayes), priors, da, db);
    const auto mim =
        mimd::error_rates_quadrature(mimd::make_decider(m, Rule::Mim), priors, da, db);
    CHECK(bayes.alpha == doctest::Approx(0.84922511).epsilon(1e-6));
    CHECK(bayes.beta == doctest::Approx(0.00068502993).epsilon(1e-6));
    CHECK(mim.alpha == doctest::Approx(0.81297214).epsilon(1e-6));
    CHECK(mim.beta == doctest::Approx(0.33997569).epsilon(1e-6));
    // The magnified rule trades a lower miss rate for a higher false-alarm rate.
    CHECK(mim.alpha < bayes.alpha);
    CHECK(mim.beta > bayes.beta);
}

TEST_CASE("monte carlo rates for hand-built deciders") {
    const mimd::PriorPair priors(0.8, 0.2);
    std::vector<mimd::LabeledSample> data;
    for (int i = 0; i < 40; ++i) data.push_back({static_cast<double>(i), EventTag::A});
    for (int i = 0; i < 10; ++i) data.push_back({100.0 + i, EventTag::B});

    const auto oracle = [](double x) { return x >= 100.0 ? EventTag::B : EventTag::A; };
    const auto rep = mimd::error_rates_monte_carlo(oracle, data, priors);
    CHECK(rep.rates.alpha == 0.0);
    CHECK(rep.rates.beta == 0.0);
    CHECK(rep.rates.pe == 0.0);
    CHECK(rep.counts.n_a == 40);
    CHECK(rep.counts.n_b == 10);
    CHECK(rep.counts.misses == 0);
    CHECK(rep.counts.false_alarms == 0);

    const auto always_b = [](double) { return EventTag::B; };
    const auto rep2 = mimd::error_rates_monte_carlo(always_b, data, priors);
    CHECK(rep2.rates.alpha == 0.0);
    CHECK(rep2.rates.beta == 1.0);
    CHECK(rep2.rates.pe == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(rep2.counts.false_alarms == 40);
}

TEST_CASE("monte carlo rates require both labels to be present") {
    const mimd::PriorPair priors(0.5, 0.5);
    const auto decider = [](double) { return EventTag::A; };
    std::vector<mimd::LabeledSample> only_a{{0.0, EventTag::A}, {1.0, EventTag::A}};
    std::vector<mimd::LabeledSample> only_b{{0.0, EventTag::B}};
    CHECK_THROWS_AS(mimd::error_rates_monte_carlo(decider, only_a, priors),
                    mimd::ValidationError);
    CHECK_THROWS_AS(mimd::error_rates_monte_carlo(decider, only_b, priors),
                    mimd::ValidationError);
    try {
        mimd::error_rates_monte_carlo(decider, only_a, priors);
    } catch (const mimd::ValidationError& e) {
        CHECK(std::string(e.what()).find("B") != std::string::npos);
    }
}

TEST_CASE("monte carlo agrees with quadrature within binomial error") {
    const mimd::GaussianDensity da(0.0, 1.0);
    const mimd::GaussianDensity db(1.5, 1.0);
    const mimd::PriorPair priors(0.9, 0.1);
    const mimd::DetectorModel m{&da, &db, priors, 2.0};
    const auto samples = mimd::sample_mixture(da, db, priors, 200000, 99);
    for (const Rule rule : {Rule::Bayes, Rule::Mim}) {
        const auto decider = mimd::make_decider(m, rule);
        const auto q = mimd::error_rates_quadrature(decider, priors, da, db);
        const auto mc = mimd::error_rates_monte_carlo(decider, samples, priors);
        const double sa = std::sqrt(q.alpha * (1.0 - q.alpha) /
                                    static_cast<double>(mc.counts.n_b));
        const double sb = std::sqrt(q.beta * (1.0 - q.beta) /
                                    static_cast<double>(mc.counts.n_a));
        CHECK(std::abs(mc.rates.alpha - q.alpha) <= 5.0 * sa);
        CHECK(std::abs(mc.rates.beta - q.beta) <= 5.0 * sb);
    }
}

TEST_CASE("serial and parallel monte carlo evaluation agree bitwise") {
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.5, 0.1);
    const mimd::PriorPair priors(0.992, 0.008);
    const mimd::DetectorModel m{&da, &db, priors, 4.0};
    const auto samples = mimd::sample_mixture(da, db, priors, 150001, 3);
    const auto decider = mimd::make_decider(m, Rule::Mim);
    const auto ser = mimd::error_rates_monte_carlo(decider, samples, priors, mimd::Exec::Serial);
    const auto par =
        mimd::error_rates_monte_carlo(decider, samples, priors, mimd::Exec::Parallel);
    CHECK(ser.rates.alpha == par.rates.alpha);
    CHECK(ser.rates.beta == par.rates.beta);
    CHECK(ser.counts.misses == par.counts.misses);
    CHECK(ser.counts.false_alarms == par.counts.false_alarms);
}

TEST_CASE("tilted density interpolates between the endpoints") {
    const mimd::GaussianDensity da(0.0, 1.0);
    const mimd::GaussianDensity db(2.0, 1.0);
    {
        const mimd::TiltedDensity t(da, db, 1.0);
        for (double x = -2.0; x <= 2.0; x += 0.5) {
            CHECK(t.value(x) == doctest::Approx(da.value(x)).epsilon(1e-8));
        }
    }
    {
        const mimd::TiltedDensity t(da, db, 0.0);
        for (double x = -1.0; x <= 4.0; x += 0.5) {
            CHECK(t.value(x) == doctest::Approx(db.value(x)).epsilon(1e-8));
        }
    }
    {
        // Equal variances: the half-way tilt is the gaussian at the midpoint.
        const mimd::TiltedDensity t(da, db, 0.5);
        const mimd::GaussianDensity mid(1.0, 1.0);
        for (double x = -1.0; x <= 3.0; x += 0.5) {
            CHECK(t.value(x) == doctest::Approx(mid.value(x)).epsilon(1e-8));
        }
    }
    for (const double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const mimd::TiltedDensity t(da, db, lam);
        const auto hint = t.support_hint();
        const double total = mimd::integrate_simpson([&](double x) { return t.value(x); },
                                                     hint.lo, hint.hi, 1e-10);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK_THROWS_AS(mimd::TiltedDensity(da, db, -0.1), mimd::ValidationError);
    CHECK_THROWS_AS(mimd::TiltedDensity(da, db, 1.1), mimd::ValidationError);
}

TEST_CASE("kl divergence matches the gaussian closed form") {
    const mimd::GaussianDensity n01(0.0, 1.0);
    const mimd::GaussianDensity n11(1.0, 1.0);
    const mimd::GaussianDensity n21(2.0, 1.0);
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.5, 0.1);
    CHECK(mimd::kl_divergence(n01, n01) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(mimd::kl_divergence(n01, n11) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(mimd::kl_divergence(n01, n21) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(mimd::kl_divergence(da, db) ==
          doctest::Approx(12.562688279036613).epsilon(1e-8));
    CHECK(mimd::kl_divergence(db, da) ==
          doctest::Approx(7.9195722903763370).epsilon(1e-8));
    CHECK(mimd::kl_divergence(da, db) == doctest::Approx(gaussian_kl(0.0, 0.126, 0.5, 0.1)));
}

TEST_CASE("error exponent for symmetric unit gaussians") {
    const mimd::GaussianDensity da(0.0, 1.0);
    const mimd::GaussianDensity db(2.0, 1.0);
    const auto res = mimd::chernoff_exponent(da, db);
    CHECK_FALSE(res.degenerate);
    CHECK(res.lambda_star == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.d_star == doctest::Approx(0.5).epsilon(1e-6));
    // At the optimum the tilted density is equidistant from both endpoints.
    CHECK(res.kl_to_a == doctest::Approx(res.kl_to_b).epsilon(1e-6));
}

TEST_CASE("error exponent for the rare-event densities") {
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.5, 0.1);
    const auto res = mimd::chernoff_exponent(da, db);
    CHECK_FALSE(res.degenerate);
    CHECK(res.lambda_star == doctest::Approx(0.55741871386543).epsilon(1e-6));
    CHECK(res.d_star == doctest::Approx(2.46062752924847).epsilon(1e-6));
}

TEST_CASE("error exponent flags indistinguishable densities as degenerate") {
    const mimd::GaussianDensity d(0.0, 1.0);
    const auto res = mimd::chernoff_exponent(d, d);
    CHECK(res.degenerate);
    CHECK(res.lambda_star == doctest::Approx(0.5));
    CHECK(res.d_star == doctest::Approx(0.0));
}
