#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "mimdetect/detectors.hpp"
#include "mimdetect/distributions.hpp"
#include "mimdetect/parallel.hpp"

namespace mimd {

enum class Rule { Bayes, Mim };

// Conditional error rates of one detector.
//   alpha: miss rate, P(decide A | B occurred)
//   beta:  false-alarm rate, P(decide B | A occurred)
//   pe:    prior-weighted overall error, w_b * alpha + w_a * beta
struct ErrorRates {
  double alpha;
  double beta;
  double pe;
};

// Assembles ErrorRates, clamping alpha and beta into [0, 1]. Inputs may
// overshoot the unit interval by at most 1e-9 (quadrature round-off); anything
// worse is a validation error.
ErrorRates make_rates(double alpha, double beta, const PriorPair& priors);

// Raw confusion counts of one rule over labelled samples.
struct ConfusionCounts {
  std::uint64_t n_a = 0;           // samples labelled A
  std::uint64_t n_b = 0;           // samples labelled B
  std::uint64_t misses = 0;        // labelled B, decided A
  std::uint64_t false_alarms = 0;  // labelled A, decided B
};

struct EvalReport {
  ErrorRates rates;
  ConfusionCounts counts;
};

using Decider = std::function<EventTag(double)>;

// Wraps one of the model's rules as a plain decision function (the model is
// captured by value; the densities it points at must outlive the decider).
Decider make_decider(const DetectorModel& model, Rule rule);

// Exact error rates by integration: alpha integrates density_b over the
// decider's A region, beta integrates density_a over its B region, both
// across the union support hint. Decision boundaries are located first
// (uniform scan plus bisection) so no Simpson panel straddles one; tol is
// the total absolute tolerance, split evenly across the sub-intervals.
ErrorRates error_rates_quadrature(const Decider& decider, const PriorPair& priors,
                                  const Density& density_a,
                                  const Density& density_b, double tol = 1e-10,
                                  Exec exec = Exec::Serial);

// Empirical error rates over labelled samples; priors enter only the pe
// assembly. Needs at least one sample of each label, otherwise the missing
// label's conditional rate is undefined and the error names that label.
EvalReport error_rates_monte_carlo(const Decider& decider,
                                   std::span<const LabeledSample> samples,
                                   const PriorPair& priors,
                                   Exec exec = Exec::Parallel);

// Normalized geometric interpolation between two densities:
//   p_lambda(x) = p_a(x)^lambda * p_b(x)^(1-lambda) / z
// with z computed by quadrature over the union support hint at construction.
// Evaluation runs in the log domain. lambda must lie in [0, 1]; the base
// densities are borrowed and must outlive this object.
class TiltedDensity final : public Density {
public:
  TiltedDensity(const Density& density_a, const Density& density_b,
                double lambda, double tol = 1e-10, Exec exec = Exec::Serial);

  double value(double x) const override;
  double log_value(double x) const override;
  Interval support_hint() const override;

  double lambda() const { return lambda_; }
  double log_normalizer() const { return log_z_; }

private:
  const Density* a_;
  const Density* b_;
  double lambda_;
  double log_z_;
  Interval hint_;
};

// Kullback-Leibler divergence integral p(x) * (log p(x) - log q(x)) dx over
// p's support hint, in nats. The integrand is defined as 0 wherever
// p(x) < 1e-300. If q vanishes where p does not, the integrand is non-finite
// and the quadrature reports a computation error (infinite divergence).
double kl_divergence(const Density& p, const Density& q, double tol = 1e-10,
                     Exec exec = Exec::Serial);

// Chernoff error exponent between two densities.
//   lambda_star: the tilt with D(p_l || p_a) = D(p_l || p_b)
//   d_star:      that common divergence value (nats)
//   kl_to_a/b:   the two divergences at lambda_star, reported for inspection
//   degenerate:  densities indistinguishable at tolerance; fields pinned to
//                lambda_star = 0.5, d_star = kl_to_a = kl_to_b = 0
struct ChernoffResult {
  double lambda_star;
  double d_star;
  double kl_to_a;
  double kl_to_b;
  bool degenerate;
};

// Bisection on h(lambda) = D(p_lambda || p_a) - D(p_lambda || p_b), which
// falls from D(p_b || p_a) at 0 to -D(p_a || p_b) at 1. Stops when
// |h| <= tol; the inner quadrature runs at tol / 100 so solver noise stays
// well inside the stopping band. Degenerate when no sign change brackets a
// root (identical densities).
ChernoffResult chernoff_exponent(const Density& density_a,
                                 const Density& density_b, double tol = 1e-8,
                                 Exec exec = Exec::Serial);

}  // namespace mimd
