#include "mimdetect/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>

#include "mimdetect/errors.hpp"

namespace mimd {

namespace {

constexpr std::size_t kNodeBlock = 4096;

// One composite Simpson pass over m subintervals (m even): weights are
// 1, 4, 2, 4, ..., 2, 4, 1 and the result is h/3 times the weighted sum.
double simpson_pass(const std::function<double(double)>& f, double lo,
                    double hi, std::size_t m, Exec exec) {
  const double h = (hi - lo) / static_cast<double>(m);
  const double interior =
      block_sum(m - 1, kNodeBlock, exec, [&](std::size_t begin, std::size_t end) {
        double s = 0.0;
        for (std::size_t j = begin; j < end; ++j) {
          const std::size_t i = j + 1;  // interior node index 1 .. m-1
          const double x = lo + static_cast<double>(i) * h;
          s += (i % 2 == 1 ? 4.0 : 2.0) * f(x);
        }
        return s;
      });
  return (f(lo) + f(hi) + interior) * h / 3.0;
}

}  // namespace

double integrate_simpson(const std::function<double(double)>& f, double lo,
                         double hi, double tol, int max_halvings, Exec exec) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw ValidationError("integration bounds must be finite");
  if (hi < lo)
    throw ValidationError("integration upper bound lies below the lower bound");
  if (hi == lo) return 0.0;
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw ValidationError("integration tolerance must be positive and finite");
  if (max_halvings < 1)
    throw ValidationError("max_halvings must be at least 1");

  std::size_t m = 64;
  double coarse = simpson_pass(f, lo, hi, m, exec);
  if (!std::isfinite(coarse))
    throw ComputationError("integrand produced a non-finite value");
  for (int k = 0; k < max_halvings; ++k) {
    m *= 2;
    const double fine = simpson_pass(f, lo, hi, m, exec);
    if (!std::isfinite(fine))
      throw ComputationError("integrand produced a non-finite value");
    if (std::fabs(fine - coarse) < tol) return fine;
    if (k == max_halvings - 1) {
      std::ostringstream msg;
      msg << "Simpson refinement did not converge after " << max_halvings
          << " halvings: successive estimates " << coarse << " and " << fine
          << " differ by " << std::fabs(fine - coarse) << " (tolerance " << tol
          << ")";
      throw ConvergenceError(msg.str());
    }
    coarse = fine;
  }
  return coarse;  // unreachable; the loop returns or throws
}

std::vector<double> find_switch_points(const std::function<bool(double)>& pred,
                                       double lo, double hi, int scan_points,
                                       double xtol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi <= lo)
    throw ValidationError("switch-point scan needs a finite nonempty range");
  if (scan_points < 1) throw ValidationError("scan_points must be positive");
  if (!(xtol > 0.0)) throw ValidationError("xtol must be positive");

  std::vector<double> out;
  const double step = (hi - lo) / static_cast<double>(scan_points);
  double left = lo;
  bool left_val = pred(lo);
  for (int i = 1; i <= scan_points; ++i) {
    const double right = i == scan_points ? hi : lo + static_cast<double>(i) * step;
    const bool right_val = pred(right);
    if (right_val != left_val) {
      double a = left;
      double b = right;
      while (b - a > xtol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // midpoint no longer representable
        if (pred(mid) == left_val) {
          a = mid;
        } else {
          b = mid;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    left = right;
    left_val = right_val;
  }
  return out;
}

}  // namespace mimd
