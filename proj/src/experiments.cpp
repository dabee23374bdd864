#include "mimdetect/experiments.hpp"

#include <cmath>
#include <exception>

#include "mimdetect/errors.hpp"
#include "mimdetect/rng.hpp"

namespace mimd {

namespace {

void check_spec(const SweepSpec& spec) {
  if (spec.grid.empty()) throw ValidationError("sweep grid is empty");
  for (std::size_t i = 0; i + 1 < spec.grid.size(); ++i)
    if (!(spec.grid[i] < spec.grid[i + 1]))
      throw ValidationError("sweep grid must be strictly increasing");
  for (double g : spec.grid)
    if (!std::isfinite(g)) throw ValidationError("sweep grid value is not finite");
  if (spec.n_samples == 0) throw ValidationError("n_samples must be positive");
  if (spec.calibration_size == 0 && !spec.frozen_s0)
    throw ValidationError("calibration_size must be positive");
  if (!(spec.std_a > 0.0) || !(spec.std_b > 0.0))
    throw ValidationError("density standard deviations must be positive");
  if (!(spec.quad_tol > 0.0))
    throw ValidationError("quadrature tolerance must be positive");
  if (spec.frozen_s0 && !(*spec.frozen_s0 > 0.0))
    throw ValidationError("frozen s0 must be positive");
  if (spec.kind == SweepKind::MeanSeparation)
    (void)PriorPair(spec.w_a, spec.w_b);  // fail before the parallel region
}

// Evaluates one grid point into rows[2i] (quadrature) and rows[2i+1]
// (Monte Carlo). Failures flag both rows and never escape: this runs inside
// the parallel region, where a thrown exception would abort the process.
void run_point(const SweepSpec& spec, std::size_t index, double value,
               std::vector<SweepRow>& rows) {
  SweepRow& quad_row = rows[2 * index];
  SweepRow& mc_row = rows[2 * index + 1];
  quad_row.sweep_value = value;
  quad_row.source = RateSource::Quadrature;
  mc_row.sweep_value = value;
  mc_row.source = RateSource::MonteCarlo;

  try {
    PriorPair priors = spec.kind == SweepKind::PriorRatio
                           ? PriorPair(1.0 - 1.0 / (1.0 + std::pow(10.0, value)),
                                       1.0 / (1.0 + std::pow(10.0, value)))
                           : PriorPair(spec.w_a, spec.w_b);
    const GaussianDensity density_a(spec.mean_a, spec.std_a);
    const GaussianDensity density_b(
        spec.kind == SweepKind::MeanSeparation ? value : spec.mean_b, spec.std_b);

    double s0;
    if (spec.frozen_s0) {
      s0 = *spec.frozen_s0;
    } else {
      const std::vector<double> training =
          sample_density(density_a, spec.calibration_size,
                         child_seed(spec.seed, 2 * index), Exec::Serial);
      const DetectorModel precal{&density_a, &density_b, priors, 1.0};
      s0 = calibrate_s0(precal, training, Exec::Serial);
    }
    const DetectorModel model{&density_a, &density_b, priors, s0};
    quad_row.s0 = s0;
    mc_row.s0 = s0;

    const Decider bayes = make_decider(model, Rule::Bayes);
    const Decider mim = make_decider(model, Rule::Mim);

    quad_row.bayes = error_rates_quadrature(bayes, priors, density_a, density_b,
                                            spec.quad_tol, Exec::Serial);
    quad_row.mim = error_rates_quadrature(mim, priors, density_a, density_b,
                                          spec.quad_tol, Exec::Serial);

    const std::vector<LabeledSample> samples =
        sample_mixture(density_a, density_b, priors, spec.n_samples,
                       child_seed(spec.seed, 2 * index + 1), Exec::Serial);
    const EvalReport mc_bayes =
        error_rates_monte_carlo(bayes, samples, priors, Exec::Serial);
    const EvalReport mc_mim =
        error_rates_monte_carlo(mim, samples, priors, Exec::Serial);
    mc_row.bayes = mc_bayes.rates;
    mc_row.counts_bayes = mc_bayes.counts;
    mc_row.mim = mc_mim.rates;
    mc_row.counts_mim = mc_mim.counts;
  } catch (const std::exception& e) {
    const char* status =
        dynamic_cast<const CalibrationError*>(&e) ? "degenerate_calibration"
                                                  : "failed";
    quad_row = SweepRow{};
    quad_row.sweep_value = value;
    quad_row.source = RateSource::Quadrature;
    quad_row.status = status;
    mc_row = SweepRow{};
    mc_row.sweep_value = value;
    mc_row.source = RateSource::MonteCarlo;
    mc_row.status = status;
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, Exec exec) {
  check_spec(spec);
  std::vector<SweepRow> rows(2 * spec.grid.size());
  for_blocks(spec.grid.size(), 1, exec, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      run_point(spec, i, spec.grid[i], rows);
  });
  return rows;
}

}  // namespace

const char* sweep_kind_name(SweepKind k) {
  return k == SweepKind::PriorRatio ? "prior_ratio" : "mean_separation";
}

const char* rate_source_name(RateSource s) {
  return s == RateSource::Quadrature ? "quadrature" : "monte_carlo";
}

std::vector<SweepRow> run_prior_sweep(const SweepSpec& spec, Exec exec) {
  if (spec.kind != SweepKind::PriorRatio)
    throw ValidationError("spec.kind must be prior_ratio for run_prior_sweep");
  return run_sweep(spec, exec);
}

std::vector<SweepRow> run_mean_sweep(const SweepSpec& spec, Exec exec) {
  if (spec.kind != SweepKind::MeanSeparation)
    throw ValidationError("spec.kind must be mean_separation for run_mean_sweep");
  return run_sweep(spec, exec);
}

SweepSpec default_prior_sweep() {
  SweepSpec spec;
  spec.kind = SweepKind::PriorRatio;
  for (int i = 0; i <= 6; ++i) spec.grid.push_back(1.0 + 0.5 * i);
  return spec;
}

SweepSpec default_mean_sweep() {
  SweepSpec spec;
  spec.kind = SweepKind::MeanSeparation;
  for (int i = 0; i <= 12; ++i) spec.grid.push_back((4.0 + i) / 20.0);
  return spec;
}

}  // namespace mimd
