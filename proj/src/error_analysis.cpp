#include "mimdetect/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "mimdetect/errors.hpp"
#include "mimdetect/quadrature.hpp"

namespace mimd {

namespace {

constexpr std::size_t kChunk = 65536;

double clamp_rate(double r, const char* name) {
  if (!std::isfinite(r) || r < -1e-9 || r > 1.0 + 1e-9) {
    std::ostringstream msg;
    msg << name << " rate " << r << " is outside [0, 1]";
    throw ValidationError(msg.str());
  }
  return std::clamp(r, 0.0, 1.0);
}

}  // namespace

ErrorRates make_rates(double alpha, double beta, const PriorPair& priors) {
  const double a = clamp_rate(alpha, "miss");
  const double b = clamp_rate(beta, "false-alarm");
  return {a, b, priors.w_b * a + priors.w_a * b};
}

Decider make_decider(const DetectorModel& model, Rule rule) {
  if (model.density_a == nullptr || model.density_b == nullptr)
    throw ValidationError("detector model is missing a density");
  if (rule == Rule::Bayes)
    return [model](double x) { return bayes_decide(model, x); };
  if (!(model.s0 > 0.0) || !std::isfinite(model.s0))
    throw ValidationError("magnifier scale s0 must be positive and finite");
  return [model](double x) { return mim_decide(model, x); };
}

ErrorRates error_rates_quadrature(const Decider& decider, const PriorPair& priors,
                                  const Density& density_a,
                                  const Density& density_b, double tol,
                                  Exec exec) {
  if (!decider) throw ValidationError("decider is empty");
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw ValidationError("quadrature tolerance must be positive and finite");

  const Interval range = union_hint(density_a, density_b);
  const auto is_b = [&](double x) { return decider(x) == EventTag::B; };

  std::vector<double> edges{range.lo};
  for (double s : find_switch_points(is_b, range.lo, range.hi)) edges.push_back(s);
  edges.push_back(range.hi);

  const double sub_tol = tol / static_cast<double>(edges.size() - 1);
  double alpha = 0.0;
  double beta = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    if (!(hi > lo)) continue;
    if (is_b(0.5 * (lo + hi))) {
      beta += integrate_simpson([&](double x) { return density_a.value(x); }, lo,
                                hi, sub_tol, 20, exec);
    } else {
      alpha += integrate_simpson([&](double x) { return density_b.value(x); }, lo,
                                 hi, sub_tol, 20, exec);
    }
  }
  return make_rates(alpha, beta, priors);
}

EvalReport error_rates_monte_carlo(const Decider& decider,
                                   std::span<const LabeledSample> samples,
                                   const PriorPair& priors, Exec exec) {
  if (!decider) throw ValidationError("decider is empty");
  if (samples.empty()) throw ValidationError("no samples to evaluate");

  const std::size_t n = samples.size();
  const std::size_t blocks = (n + kChunk - 1) / kChunk;
  std::vector<ConfusionCounts> parts(blocks);
  for_blocks(n, kChunk, exec, [&](std::size_t begin, std::size_t end) {
    ConfusionCounts c;
    for (std::size_t i = begin; i < end; ++i) {
      const LabeledSample& s = samples[i];
      const EventTag verdict = decider(s.x);
      if (s.label == EventTag::A) {
        ++c.n_a;
        if (verdict == EventTag::B) ++c.false_alarms;
      } else {
        ++c.n_b;
        if (verdict == EventTag::A) ++c.misses;
      }
    }
    parts[begin / kChunk] = c;
  });

  ConfusionCounts total;
  for (const ConfusionCounts& c : parts) {
    total.n_a += c.n_a;
    total.n_b += c.n_b;
    total.misses += c.misses;
    total.false_alarms += c.false_alarms;
  }
  if (total.n_b == 0)
    throw ValidationError(
        "no B-labelled samples: miss rate alpha is undefined on this data");
  if (total.n_a == 0)
    throw ValidationError(
        "no A-labelled samples: false-alarm rate beta is undefined on this data");

  const double alpha =
      static_cast<double>(total.misses) / static_cast<double>(total.n_b);
  const double beta =
      static_cast<double>(total.false_alarms) / static_cast<double>(total.n_a);
  return {make_rates(alpha, beta, priors), total};
}

TiltedDensity::TiltedDensity(const Density& density_a, const Density& density_b,
                             double lambda, double tol, Exec exec)
    : a_(&density_a), b_(&density_b), lambda_(lambda) {
  if (!(lambda >= 0.0) || !(lambda <= 1.0))
    throw ValidationError("tilt lambda must lie in [0, 1]");
  hint_ = union_hint(density_a, density_b);
  const double z = integrate_simpson(
      [&](double x) {
        return std::exp(lambda_ * a_->log_value(x) +
                        (1.0 - lambda_) * b_->log_value(x));
      },
      hint_.lo, hint_.hi, tol, 20, exec);
  if (!(z > 0.0) || !std::isfinite(z))
    throw ComputationError("tilted-density normalizer is not positive");
  log_z_ = std::log(z);
}

double TiltedDensity::value(double x) const { return std::exp(log_value(x)); }

double TiltedDensity::log_value(double x) const {
  return lambda_ * a_->log_value(x) + (1.0 - lambda_) * b_->log_value(x) - log_z_;
}

Interval TiltedDensity::support_hint() const { return hint_; }

double kl_divergence(const Density& p, const Density& q, double tol, Exec exec) {
  const Interval range = p.support_hint();
  return integrate_simpson(
      [&](double x) {
        const double px = p.value(x);
        if (px < 1e-300) return 0.0;
        return px * (p.log_value(x) - q.log_value(x));
      },
      range.lo, range.hi, tol, 20, exec);
}

ChernoffResult chernoff_exponent(const Density& density_a,
                                 const Density& density_b, double tol,
                                 Exec exec) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw ValidationError("chernoff tolerance must be positive and finite");
  const double quad_tol = tol / 100.0;

  struct Balance {
    double h;
    double to_a;
    double to_b;
  };
  const auto balance = [&](double lambda) -> Balance {
    const TiltedDensity tilted(density_a, density_b, lambda, quad_tol, exec);
    const double to_a = kl_divergence(tilted, density_a, quad_tol, exec);
    const double to_b = kl_divergence(tilted, density_b, quad_tol, exec);
    return {to_a - to_b, to_a, to_b};
  };

  const double h0 = balance(0.0).h;  // D(p_b || p_a) >= 0
  const double h1 = balance(1.0).h;  // -D(p_a || p_b) <= 0
  if (h0 <= tol || h1 >= -tol) return {0.5, 0.0, 0.0, 0.0, true};

  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const Balance b = balance(mid);
    if (std::fabs(b.h) <= tol) return {mid, b.to_a, b.to_a, b.to_b, false};
    if (b.h > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError(
      "chernoff bisection did not balance the divergences within 200 steps");
}

}  // namespace mimd
