#include "mimdetect/detectors.hpp"

#include <cmath>
#include <sstream>

#include "mimdetect/errors.hpp"
#include "mimdetect/mim.hpp"

namespace mimd {

namespace {

constexpr std::size_t kChunk = 65536;

void check_model(const DetectorModel& model) {
  if (model.density_a == nullptr || model.density_b == nullptr)
    throw ValidationError("detector model is missing a density");
  if (!(model.s0 > 0.0) || !std::isfinite(model.s0))
    throw ValidationError("magnifier scale s0 must be positive and finite");
}

void check_observation(double x) {
  if (!std::isfinite(x)) throw ValidationError("observation must be finite");
}

}  // namespace

EventTag bayes_decide(const DetectorModel& model, double x) {
  if (model.density_a == nullptr || model.density_b == nullptr)
    throw ValidationError("detector model is missing a density");
  check_observation(x);
  const double log_u = std::log(model.priors.w_a) + model.density_a->log_value(x);
  const double log_v = std::log(model.priors.w_b) + model.density_b->log_value(x);
  return log_u > log_v ? EventTag::A : EventTag::B;
}

bool mim_prefers_b(double u, double v, double s0) {
  return magnify(u, s0) <= magnify(v, s0) || u <= v;
}

EventTag mim_decide(const DetectorModel& model, double x) {
  check_model(model);
  check_observation(x);
  const double u = model.priors.w_a * model.density_a->value(x);
  const double v = model.priors.w_b * model.density_b->value(x);
  return mim_prefers_b(u, v, model.s0) ? EventTag::B : EventTag::A;
}

Decision decide(const DetectorModel& model, double x) {
  check_model(model);
  check_observation(x);
  const double log_u = std::log(model.priors.w_a) + model.density_a->log_value(x);
  const double log_v = std::log(model.priors.w_b) + model.density_b->log_value(x);
  const double u = model.priors.w_a * model.density_a->value(x);
  const double v = model.priors.w_b * model.density_b->value(x);
  const double fu = magnify(u, model.s0);
  const double fv = magnify(v, model.s0);
  Decision d;
  d.bayes = log_u > log_v ? EventTag::A : EventTag::B;
  d.mim = mim_prefers_b(u, v, model.s0) ? EventTag::B : EventTag::A;
  d.bayes_score = log_u - log_v;
  d.mim_score = fu - fv;
  return d;
}

CalibrationStats calibration_means(const DetectorModel& model,
                                   std::span<const double> training, Exec exec) {
  if (model.density_a == nullptr || model.density_b == nullptr)
    throw ValidationError("detector model is missing a density");
  if (training.empty())
    throw ValidationError("calibration needs a nonempty training set");
  const std::size_t n = training.size();
  const double sum_a =
      block_sum(n, kChunk, exec, [&](std::size_t begin, std::size_t end) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i)
          s += model.priors.w_a * model.density_a->value(training[i]);
        return s;
      });
  const double sum_b =
      block_sum(n, kChunk, exec, [&](std::size_t begin, std::size_t end) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i)
          s += model.priors.w_b * model.density_b->value(training[i]);
        return s;
      });
  return {sum_a / static_cast<double>(n), sum_b / static_cast<double>(n), n};
}

double s0_from_means(double mean_a, double mean_b) {
  if (!std::isfinite(mean_a) || !std::isfinite(mean_b)) {
    std::ostringstream msg;
    msg << "calibration means must be finite (mean_a=" << mean_a
        << ", mean_b=" << mean_b << ")";
    throw CalibrationError(msg.str());
  }
  if (mean_a <= 0.0 || mean_b <= 0.0) {
    std::ostringstream msg;
    msg << "calibration means must be positive (mean_a=" << mean_a
        << ", mean_b=" << mean_b << ")";
    throw CalibrationError(msg.str());
  }
  const double larger = mean_a > mean_b ? mean_a : mean_b;
  if (std::fabs(mean_a - mean_b) <= 1e-15 * larger) {
    std::ostringstream msg;
    msg << "degenerate calibration: weighted-likelihood means coincide "
           "(mean_a="
        << mean_a << ", mean_b=" << mean_b << ")";
    throw CalibrationError(msg.str());
  }
  return (std::log(mean_a) - std::log(mean_b)) / (mean_a - mean_b);
}

double calibrate_s0(const DetectorModel& model, std::span<const double> training,
                    Exec exec) {
  const CalibrationStats stats = calibration_means(model, training, exec);
  return s0_from_means(stats.mean_a, stats.mean_b);
}

}  // namespace mimd
