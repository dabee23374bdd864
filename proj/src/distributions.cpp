#include "mimdetect/distributions.hpp"

#include <cmath>
#include <string>

#include "mimdetect/errors.hpp"

namespace mimd {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::size_t kChunk = 65536;
}  // namespace

GaussianDensity::GaussianDensity(double mean, double stddev)
    : mean_(mean), stddev_(stddev) {
  if (!std::isfinite(mean))
    throw ValidationError("GaussianDensity: mean must be finite");
  if (!std::isfinite(stddev) || !(stddev > 0.0))
    throw ValidationError("GaussianDensity: stddev must be finite and > 0, got " +
                          std::to_string(stddev));
  coef_ = 1.0 / (stddev_ * std::sqrt(kTwoPi));
  log_coef_ = -std::log(stddev_) - 0.5 * std::log(kTwoPi);
}

double GaussianDensity::value(double x) const {
  const double z = (x - mean_) / stddev_;
  return coef_ * std::exp(-0.5 * z * z);
}

double GaussianDensity::log_value(double x) const {
  const double z = (x - mean_) / stddev_;
  return log_coef_ - 0.5 * z * z;
}

Interval GaussianDensity::support_hint() const {
  return {mean_ - 10.0 * stddev_, mean_ + 10.0 * stddev_};
}

Interval union_hint(const Density& a, const Density& b) {
  const Interval ia = a.support_hint();
  const Interval ib = b.support_hint();
  return {ia.lo < ib.lo ? ia.lo : ib.lo, ia.hi > ib.hi ? ia.hi : ib.hi};
}

PriorPair::PriorPair(double wa, double wb) : w_a(wa), w_b(wb) {
  if (!std::isfinite(wa) || !std::isfinite(wb) || wa <= 0.0 || wa >= 1.0 ||
      wb <= 0.0 || wb >= 1.0)
    throw ValidationError("PriorPair: weights must lie strictly inside (0, 1), got (" +
                          std::to_string(wa) + ", " + std::to_string(wb) + ")");
  if (std::abs(wa + wb - 1.0) > 1e-12)
    throw ValidationError("PriorPair: weights sum to " + std::to_string(wa + wb) +
                          ", expected 1 within 1e-12");
}

std::vector<LabeledSample> sample_mixture(const GaussianDensity& density_a,
                                          const GaussianDensity& density_b,
                                          const PriorPair& priors, std::size_t n,
                                          std::uint64_t seed, Exec exec) {
  if (n == 0) throw ValidationError("sample_mixture: n must be > 0");
  std::vector<LabeledSample> out(n);
  for_blocks(n, kChunk, exec, [&](std::size_t begin, std::size_t end) {
    Xoshiro256ss rng(child_seed(seed, begin / kChunk));
    for (std::size_t i = begin; i < end; ++i) {
      const bool minor = rng.uniform01() < priors.w_b;
      const double x = minor ? density_b.sample(rng) : density_a.sample(rng);
      out[i] = {x, minor ? EventTag::B : EventTag::A};
    }
  });
  return out;
}

std::vector<double> sample_density(const GaussianDensity& density, std::size_t n,
                                   std::uint64_t seed, Exec exec) {
  if (n == 0) throw ValidationError("sample_density: n must be > 0");
  std::vector<double> out(n);
  for_blocks(n, kChunk, exec, [&](std::size_t begin, std::size_t end) {
    Xoshiro256ss rng(child_seed(seed, begin / kChunk));
    for (std::size_t i = begin; i < end; ++i) out[i] = density.sample(rng);
  });
  return out;
}

}  // namespace mimd
