#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimdetect/error_analysis.hpp"
#include "mimdetect/parallel.hpp"

namespace mimd {

enum class SweepKind { PriorRatio, MeanSeparation };
enum class RateSource { Quadrature, MonteCarlo };

const char* sweep_kind_name(SweepKind k);    // "prior_ratio" / "mean_separation"
const char* rate_source_name(RateSource s);  // "quadrature" / "monte_carlo"

// Everything needed to reproduce one sweep. A prior-ratio sweep walks
// r = log10(w_a / w_b) with both densities fixed; a mean-separation sweep
// walks the B-density mean with the priors fixed. At every grid point a
// fresh training set is drawn from the A density to calibrate s0 (unless
// frozen_s0 pins it), then both detectors are scored by quadrature and by
// Monte Carlo on a fresh mixture sample.
struct SweepSpec {
  SweepKind kind = SweepKind::PriorRatio;
  std::vector<double> grid;                // strictly increasing, nonempty
  std::size_t n_samples = 1'000'000;       // Monte Carlo mixture draws per point
  std::size_t calibration_size = 10'000;   // training draws from the A density
  std::uint64_t seed = 1;
  double mean_a = 0.0;
  double std_a = 0.126;
  double mean_b = 0.5;                     // fixed B mean (prior-ratio sweeps)
  double std_b = 0.1;
  double w_a = 0.992;                      // fixed priors (mean-separation sweeps)
  double w_b = 0.008;
  double quad_tol = 1e-10;
  std::optional<double> frozen_s0;         // skip calibration, reuse this scale
};

// One scored grid point from one source. Quadrature rows carry zero counts.
// status is "ok" for a sound row; any other value names the failure that
// flagged the point (such rows carry zeroed numbers and must be ignored).
struct SweepRow {
  double sweep_value = 0.0;
  RateSource source = RateSource::Quadrature;
  double s0 = 0.0;
  ErrorRates bayes{0.0, 0.0, 0.0};
  ErrorRates mim{0.0, 0.0, 0.0};
  ConfusionCounts counts_bayes;
  ConfusionCounts counts_mim;
  std::string status = "ok";
};

// Runs the sweep: two rows per grid point (quadrature first, Monte Carlo
// second), ordered by grid index. Grid points are independent and may run
// concurrently; every point derives its own child seeds from spec.seed and
// its grid index, so results do not depend on thread count or scheduling.
// A point whose evaluation fails is flagged and the sweep continues.
std::vector<SweepRow> run_prior_sweep(const SweepSpec& spec,
                                      Exec exec = Exec::Parallel);
std::vector<SweepRow> run_mean_sweep(const SweepSpec& spec,
                                     Exec exec = Exec::Parallel);

// The stock configurations: prior ratios 1.0 to 4.0 in steps of 0.5 over
// N(0, 0.126^2) vs N(0.5, 0.1^2), and B means 0.2 to 0.8 in steps of 0.05
// with priors (0.992, 0.008).
SweepSpec default_prior_sweep();
SweepSpec default_mean_sweep();

}  // namespace mimd
