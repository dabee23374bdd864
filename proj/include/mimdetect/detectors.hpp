#pragma once

#include <cstddef>
#include <span>

#include "mimdetect/distributions.hpp"
#include "mimdetect/parallel.hpp"

namespace mimd {

// A two-event detection problem: conditional densities and priors for the
// normal event A and the minor event B, plus the magnifier scale s0 used by
// the importance-weighted rule. The densities are borrowed, not owned.
struct DetectorModel {
  const Density* density_a;
  const Density* density_b;
  PriorPair priors;
  double s0;
};

// Both verdicts for one observation together with their margins.
//   bayes_score = log(w_a p_a(x)) - log(w_b p_b(x)); positive means A.
//   mim_score   = magnify(w_a p_a(x), s0) - magnify(w_b p_b(x), s0).
struct Decision {
  EventTag bayes;
  EventTag mim;
  double bayes_score;
  double mim_score;
};

// Maximum-posterior rule: declare A iff w_a p_a(x) > w_b p_b(x), compared in
// the log domain so tail observations never underflow. Ties go to B.
EventTag bayes_decide(const DetectorModel& model, double x);

// Core of the importance-weighted rule on raw weighted likelihoods:
// true iff magnify(u, s0) <= magnify(v, s0) or u <= v.
bool mim_prefers_b(double u, double v, double s0);

// Importance-weighted rule at scale s0: with u = w_a p_a(x), v = w_b p_b(x)
// and f = magnify(., s0), declare B iff f(u) <= f(v) or u <= v, else A.
// The second clause keeps every Bayes-B point inside the B region, so this
// rule can only enlarge the B region (fewer misses, more false alarms).
EventTag mim_decide(const DetectorModel& model, double x);

// Both rules plus scores in one evaluation.
Decision decide(const DetectorModel& model, double x);

// Sample means of the weighted likelihoods w_a p_a(x_i) and w_b p_b(x_i)
// over a training set (drawn from the A-conditional law in normal operation).
struct CalibrationStats {
  double mean_a;
  double mean_b;
  std::size_t n;
};

CalibrationStats calibration_means(const DetectorModel& model,
                                   std::span<const double> training,
                                   Exec exec = Exec::Serial);

// Closed-form magnifier scale from the two weighted-likelihood means:
//   s0 = (ln m_a - ln m_b) / (m_a - m_b),
// the unique s with m_a e^{-s m_a} = m_b e^{-s m_b}. Both means must be
// positive and must differ by more than 1e-15 relative, else the calibration
// is degenerate and a CalibrationError reports both means.
double s0_from_means(double mean_a, double mean_b);

// Calibrates s0 on a training set: s0_from_means over calibration_means.
// The model's own s0 field is ignored. Empty training data is an error.
double calibrate_s0(const DetectorModel& model, std::span<const double> training,
                    Exec exec = Exec::Serial);

}  // namespace mimd
