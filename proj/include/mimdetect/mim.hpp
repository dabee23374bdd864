#pragma once

#include <span>

namespace mimd {

// Message importance of a discrete distribution:
//   L(p, w) = log sum_i p_i * exp(w * (1 - p_i))
// Evaluated as a log-sum-exp over the positive-mass entries, so the raw
// exponentials never overflow. Zero-probability entries contribute nothing.
// Requires w > 0, every p_i >= 0, and |sum p_i - 1| <= 1e-12.
// Range: 0 <= L <= w (0 exactly for a point mass).
double mim_discrete(std::span<const double> probabilities, double w);

// Single-probability importance magnifier:
//   magnify(p, w) = p * exp(-w * p)
// Defined for p >= 0 (density values may exceed 1); exactly 0 at p = 0;
// increasing on [0, 1/w], decreasing on [1/w, inf), underflows to 0 for huge
// p. Requires w > 0 and finite p >= 0.
double magnify(double p, double w);

struct RatioSolution {
  double q;        // magnifying ratio, q > 0
  double partner;  // p * (1 + q), the equal-importance point in (1/w, inf)
};

// Solves ln(1 + q) / (w q) = p for the magnifying ratio q of a probability
// p in the open interval (0, 1/w). The left side is strictly decreasing in q
// (from 1/w at q -> 0 to 0 at q -> inf), so a unique root exists; it is
// bracketed by doubling/halving from q = 1 and then bisected until
// |ln(1+q)/(wq) - p| <= tol * p. Iteration cap 200 over both phases.
// Errors: p <= 0 or p >= 1/w (no solution), w <= 0, non-convergence.
RatioSolution solve_magnifying_ratio(double p, double w, double tol = 1e-12);

}  // namespace mimd
