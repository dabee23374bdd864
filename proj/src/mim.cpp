#include "mimdetect/mim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mimdetect/errors.hpp"

namespace mimd {

namespace {

void check_coeff(double w) {
  if (!(w > 0.0) || !std::isfinite(w))
    throw ValidationError("importance coefficient must be finite and > 0, got " +
                          std::to_string(w));
}

}  // namespace

double mim_discrete(std::span<const double> probabilities, double w) {
  check_coeff(w);
  if (probabilities.empty())
    throw ValidationError("mim_discrete: empty distribution");

  double sum = 0.0;
  for (double p : probabilities) {
    if (!std::isfinite(p) || p < 0.0)
      throw ValidationError("mim_discrete: probabilities must be finite and >= 0, got " +
                            std::to_string(p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("mim_discrete: probabilities sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-12");

  // log sum_i exp(log p_i + w(1 - p_i)), max-shifted.
  double max_term = -std::numeric_limits<double>::infinity();
  for (double p : probabilities) {
    if (p == 0.0) continue;
    max_term = std::max(max_term, std::log(p) + w * (1.0 - p));
  }
  double acc = 0.0;
  for (double p : probabilities) {
    if (p == 0.0) continue;
    acc += std::exp(std::log(p) + w * (1.0 - p) - max_term);
  }
  return max_term + std::log(acc);
}

double magnify(double p, double w) {
  check_coeff(w);
  if (!std::isfinite(p) || p < 0.0)
    throw ValidationError("magnify: probability must be finite and >= 0, got " +
                          std::to_string(p));
  if (p == 0.0) return 0.0;
  return p * std::exp(-w * p);
}

RatioSolution solve_magnifying_ratio(double p, double w, double tol) {
  check_coeff(w);
  if (!(tol > 0.0))
    throw ValidationError("solve_magnifying_ratio: tol must be > 0");
  if (!std::isfinite(p) || p <= 0.0)
    throw ValidationError("solve_magnifying_ratio: p must be finite and > 0, got " +
                          std::to_string(p));
  if (p >= 1.0 / w)
    throw ValidationError(
        "solve_magnifying_ratio: no solution, p = " + std::to_string(p) +
        " is not below 1/w = " + std::to_string(1.0 / w));

  const auto g = [w](double q) { return std::log1p(q) / (w * q); };

  int iterations = 0;
  const int cap = 200;

  // Bracket the root starting from q = 1; g is strictly decreasing.
  double lo = 1.0, hi = 1.0;
  double g1 = g(1.0);
  if (g1 > p) {
    // root right of 1: grow hi until g(hi) <= p
    while (g(hi) > p) {
      hi *= 2.0;
      if (++iterations > cap)
        throw ConvergenceError("solve_magnifying_ratio: bracketing failed toward large q");
    }
    lo = hi / 2.0;
  } else if (g1 < p) {
    // root left of 1: shrink lo until g(lo) >= p
    while (g(lo) < p) {
      lo /= 2.0;
      if (++iterations > cap)
        throw ConvergenceError("solve_magnifying_ratio: bracketing failed toward small q");
    }
    hi = lo * 2.0;
  }

  double q = 0.5 * (lo + hi);
  while (std::abs(g(q) - p) > tol * p) {
    if (g(q) > p)
      lo = q;
    else
      hi = q;
    q = 0.5 * (lo + hi);
    if (++iterations > cap)
      throw ConvergenceError(
          "solve_magnifying_ratio: no convergence after " + std::to_string(cap) +
          " iterations, residual " + std::to_string(g(q) - p));
  }
  return {q, p * (1.0 + q)};
}

}  // namespace mimd
