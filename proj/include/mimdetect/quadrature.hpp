#pragma once

#include <functional>
#include <vector>

#include "mimdetect/parallel.hpp"

namespace mimd {

// Composite Simpson integration with step halving: the panel count doubles
// (starting from 64) until two successive estimates differ by less than tol,
// up to max_halvings refinements. Interior sums are accumulated in fixed-size
// index blocks combined in order, so serial and parallel runs agree bitwise.
// Throws ConvergenceError when the refinement cap is reached, reporting the
// last two estimates.
double integrate_simpson(const std::function<double(double)>& f, double lo,
                         double hi, double tol, int max_halvings = 20,
                         Exec exec = Exec::Serial);

// Locates every switch point of a boolean predicate over [lo, hi]: the range
// is scanned on a uniform grid (scan_points panels) and each sign change is
// bisected down to an interval narrower than xtol. Returned points are sorted.
// Used to split integration ranges at detector decision boundaries so Simpson
// panels never straddle a discontinuity.
std::vector<double> find_switch_points(const std::function<bool(double)>& pred,
                                       double lo, double hi,
                                       int scan_points = 4096,
                                       double xtol = 1e-13);

}  // namespace mimd
