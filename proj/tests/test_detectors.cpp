#include <cmath>
#include <vector>

#include "doctest.h"
#include "mimdetect/detectors.hpp"
#include "mimdetect/distributions.hpp"
#include "mimdetect/errors.hpp"
#include "mimdetect/rng.hpp"

using mimd::EventTag;

namespace {

struct RareEventModel {
    mimd::GaussianDensity da{0.0, 0.126};
    mimd::GaussianDensity db{0.35, 0.1};
    mimd::PriorPair priors{0.999, 0.001};
    mimd::DetectorModel model{&da, &db, priors, 3.0};
};

}  // namespace

TEST_CASE("bayes rule picks the larger weighted likelihood, ties to the rare event") {
    const mimd::GaussianDensity da(0.0, 1.0);
    const mimd::GaussianDensity db(1.0, 1.0);
    const mimd::PriorPair priors(0.5, 0.5);
    const mimd::DetectorModel m{&da, &db, priors, 1.0};
    // Equal variances and priors put the boundary at the midpoint 0.5.
    CHECK(mimd::bayes_decide(m, 0.499) == EventTag::A);
    CHECK(mimd::bayes_decide(m, 0.501) == EventTag::B);
    CHECK(mimd::bayes_decide(m, 0.5) == EventTag::B);  // exact tie goes to B
    CHECK(mimd::bayes_decide(m, -3.0) == EventTag::A);
    CHECK(mimd::bayes_decide(m, 4.0) == EventTag::B);
}

TEST_CASE("identical densities with equal priors tie everywhere, resolving to B") {
    const mimd::GaussianDensity d(0.0, 1.0);
    const mimd::PriorPair priors(0.5, 0.5);
    const mimd::DetectorModel m{&d, &d, priors, 1.0};
    for (double x = -3.0; x <= 3.0; x += 0.37) {
        const auto dec = mimd::decide(m, x);
        CHECK(dec.bayes == EventTag::B);
        CHECK(dec.mim == EventTag::B);
        CHECK(dec.bayes_score == 0.0);
        CHECK(dec.mim_score == 0.0);
    }
}

TEST_CASE("pinned decision on the rare-event model") {
    RareEventModel f;
    const auto dec = mimd::decide(f.model, 0.35);
    // At the center of the rare density the common event still wins under Bayes:
    // 0.999 * N(0, 0.126^2)(0.35) = 0.0668 vs 0.001 * N(0.35, 0.1^2)(0.35) = 0.0040.
    CHECK(dec.bayes == EventTag::A);
    CHECK(dec.bayes_score == doctest::Approx(2.8176183663271422).epsilon(1e-13));
    CHECK(dec.bayes_score > 0.0);
}

TEST_CASE("deep tail decisions survive density underflow") {
    RareEventModel f;
    // At x = -4 both densities underflow in linear space (the rare one to zero),
    // but the log-domain rule must still pick the common event.
    const auto dec = mimd::decide(f.model, -4.0);
    CHECK(dec.bayes == EventTag::A);
    CHECK(dec.mim == EventTag::A);
    CHECK(std::isfinite(dec.bayes_score));
}

TEST_CASE("magnified comparison flips the ordering above the magnifier peak") {
    // f(p, 10) peaks at p = 0.1: a larger raw score can have the smaller
    // magnified value once it sits past the peak.
    CHECK(mimd::mim_prefers_b(0.2, 0.0693147, 10.0));        // f(0.2) < f(0.0693)
    CHECK_FALSE(mimd::mim_prefers_b(0.05, 0.01, 10.0));      // both below peak: order kept
    CHECK(mimd::mim_prefers_b(0.01, 0.05, 10.0));            // u <= v always goes to B
    CHECK(mimd::mim_prefers_b(0.3, 0.3, 10.0));              // tie goes to B
}

TEST_CASE("rare-event verdicts form a superset of plain-Bayes verdicts") {
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.5, 0.1);
    const mimd::PriorPair priors(1.0 - 1.0 / 1001.0, 1.0 / 1001.0);
    const mimd::DetectorModel m{&da, &db, priors, 5.2026346};
    mimd::Xoshiro256ss rng(17);
    for (int i = 0; i < 10000; ++i) {
        const double x = -1.26 + rng.uniform01() * (1.5 + 1.26);
        if (mimd::bayes_decide(m, x) == EventTag::B) {
            CHECK(mimd::mim_decide(m, x) == EventTag::B);
        }
    }
}

TEST_CASE("a vanishing magnification strength reproduces the bayes rule") {
    RareEventModel f;
    mimd::DetectorModel weak = f.model;
    weak.s0 = 1e-9;
    mimd::Xoshiro256ss rng(23);
    for (int i = 0; i < 10000; ++i) {
        const double x = -1.26 + rng.uniform01() * 2.61;
        CHECK(mimd::mim_decide(weak, x) == mimd::bayes_decide(weak, x));
    }
}

TEST_CASE("calibration strength from pinned means") {
    CHECK(mimd::s0_from_means(2.0, 1.0) == doctest::Approx(0.69314718055994531).epsilon(1e-15));
    CHECK(mimd::s0_from_means(std::exp(1.0), 1.0) ==
          doctest::Approx(0.58197670686932642).epsilon(1e-14));
    // Symmetric in its arguments.
    CHECK(mimd::s0_from_means(1.0, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("calibrated strength equalizes the magnified means") {
    mimd::Xoshiro256ss rng(29);
    for (int i = 0; i < 100; ++i) {
        const double ma = std::exp(-3.0 + 6.0 * rng.uniform01());
        double mb = std::exp(-3.0 + 6.0 * rng.uniform01());
        if (std::abs(ma - mb) < 1e-6 * ma) mb *= 2.0;
        const double s0 = mimd::s0_from_means(ma, mb);
        CHECK(s0 > 0.0);
        const double fa = ma * std::exp(-s0 * ma);
        const double fb = mb * std::exp(-s0 * mb);
        CHECK(std::abs(fa - fb) <= 1e-12 * fa);
    }
}

TEST_CASE("calibration strength scales inversely with the mean scale") {
    const double base = mimd::s0_from_means(2.0, 0.5);
    for (const double c : {2.0, 10.0, 0.25}) {
        CHECK(mimd::s0_from_means(2.0 * c, 0.5 * c) == doctest::Approx(base / c).epsilon(1e-12));
    }
}

TEST_CASE("calibration means over explicit training data") {
    RareEventModel f;
    const std::vector<double> training{0.0, 0.1};
    const auto stats = mimd::calibration_means(f.model, training);
    // Hand-computed weighted likelihood means over the two points.
    const double ua = 0.5 * (0.999 * f.da.value(0.0) + 0.999 * f.da.value(0.1));
    const double ub = 0.5 * (0.001 * f.db.value(0.0) + 0.001 * f.db.value(0.1));
    CHECK(stats.mean_a == doctest::Approx(ua).epsilon(1e-14));
    CHECK(stats.mean_b == doctest::Approx(ub).epsilon(1e-14));
    CHECK(stats.n == 2);
}

TEST_CASE("calibration means agree between serial and parallel paths") {
    RareEventModel f;
    const auto xs = mimd::sample_density(f.da, 100001, 31);
    const auto ser = mimd::calibration_means(f.model, xs, mimd::Exec::Serial);
    const auto par = mimd::calibration_means(f.model, xs, mimd::Exec::Parallel);
    CHECK(ser.mean_a == par.mean_a);
    CHECK(ser.mean_b == par.mean_b);
    CHECK(ser.n == par.n);
}

TEST_CASE("pipeline calibration lands near the exact-expectation strength") {
    // Rare-event model with prior ratio 10^3; the exact-expectation strength is
    // 5.2026. Sampling jitter at n = 10^4 has a standard deviation near 0.023,
    // so (5.0, 5.4) is a ~9-sigma window.
    const mimd::GaussianDensity da(0.0, 0.126);
    const mimd::GaussianDensity db(0.5, 0.1);
    const mimd::PriorPair priors(1.0 - 1.0 / 1001.0, 1.0 / 1001.0);
    mimd::DetectorModel m{&da, &db, priors, 1.0};
    const auto training = mimd::sample_density(da, 10000, 1);
    const double s0 = mimd::calibrate_s0(m, training);
    CHECK(s0 > 5.0);
    CHECK(s0 < 5.4);
}

TEST_CASE("degenerate calibration is rejected with both means reported") {
    const mimd::GaussianDensity d(0.0, 1.0);
    const mimd::PriorPair priors(0.5, 0.5);
    const mimd::DetectorModel m{&d, &d, priors, 1.0};
    const std::vector<double> training{0.0, 0.5, -0.5};
    CHECK_THROWS_AS(mimd::calibrate_s0(m, training), mimd::CalibrationError);
    try {
        mimd::calibrate_s0(m, training);
    } catch (const mimd::CalibrationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("mean_a") != std::string::npos);
        CHECK(msg.find("mean_b") != std::string::npos);
    }
}

TEST_CASE("calibration input validation") {
    RareEventModel f;
    CHECK_THROWS_AS(mimd::calibration_means(f.model, std::vector<double>{}),
                    mimd::ValidationError);
    CHECK_THROWS_AS(mimd::s0_from_means(0.0, 1.0), mimd::CalibrationError);
    CHECK_THROWS_AS(mimd::s0_from_means(-1.0, 1.0), mimd::CalibrationError);
    CHECK_THROWS_AS(mimd::s0_from_means(1.0, 1.0), mimd::CalibrationError);
    CHECK_THROWS_AS(mimd::s0_from_means(std::nan(""), 1.0), mimd::CalibrationError);
}

TEST_CASE("model validation rejects null densities and bad strengths") {
    const mimd::GaussianDensity d(0.0, 1.0);
    const mimd::PriorPair priors(0.5, 0.5);
    const mimd::DetectorModel no_a{nullptr, &d, priors, 1.0};
    CHECK_THROWS_AS(mimd::decide(no_a, 0.0), mimd::ValidationError);
    const mimd::DetectorModel bad_s0{&d, &d, priors, -1.0};
    CHECK_THROWS_AS(mimd::mim_decide(bad_s0, 0.0), mimd::ValidationError);
    CHECK_NOTHROW(mimd::bayes_decide(bad_s0, 0.0));  // bayes ignores the strength
}
