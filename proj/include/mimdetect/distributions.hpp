#pragma once

#include <cstdint>
#include <vector>

#include "mimdetect/parallel.hpp"
#include "mimdetect/rng.hpp"

namespace mimd {

enum class EventTag : std::uint8_t { A, B };

inline char event_char(EventTag t) { return t == EventTag::A ? 'A' : 'B'; }

struct Interval {
  double lo;
  double hi;
};

// Minimal density interface: linear and log evaluation plus a finite interval
// that carries all but a negligible sliver of the mass (used as the
// integration range by the quadrature routines).
class Density {
public:
  virtual ~Density() = default;
  virtual double value(double x) const = 0;
  virtual double log_value(double x) const = 0;
  virtual Interval support_hint() const = 0;
};

class GaussianDensity final : public Density {
public:
  GaussianDensity(double mean, double stddev);

  double value(double x) const override;      // coef * exp(-z^2/2)
  double log_value(double x) const override;  // log coef - z^2/2, never -inf
  Interval support_hint() const override;     // mean +- 10 stddev

  double sample(Xoshiro256ss& rng) const { return mean_ + stddev_ * rng.normal(); }

  double mean() const { return mean_; }
  double stddev() const { return stddev_; }

private:
  double mean_;
  double stddev_;
  double coef_;      // 1 / (stddev * sqrt(2 pi))
  double log_coef_;  // computed independently of coef_ for a real consistency check
};

Interval union_hint(const Density& a, const Density& b);

// Prior weights of the normal event A and the minor event B. Each must lie in
// (0, 1) and they must sum to 1 within 1e-12.
struct PriorPair {
  PriorPair(double w_a, double w_b);
  double w_a;
  double w_b;
};

struct LabeledSample {
  double x;
  EventTag label;
};

// Draws n samples of the two-component mixture: label ~ Bernoulli(w_b) picks
// B, otherwise A; x is then drawn from the labelled component. Sampling is
// chunked (65536 samples per chunk) with per-chunk child seeds, so serial and
// parallel runs produce identical sequences. n = 0 is an error.
std::vector<LabeledSample> sample_mixture(const GaussianDensity& density_a,
                                          const GaussianDensity& density_b,
                                          const PriorPair& priors, std::size_t n,
                                          std::uint64_t seed,
                                          Exec exec = Exec::Parallel);

// Same chunked scheme for a single density (used for calibration training
// sets).
std::vector<double> sample_density(const GaussianDensity& density, std::size_t n,
                                   std::uint64_t seed, Exec exec = Exec::Parallel);

}  // namespace mimd
