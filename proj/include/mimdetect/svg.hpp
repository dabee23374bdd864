#pragma once

#include <span>
#include <string>

#include "mimdetect/experiments.hpp"

namespace mimd::svg {

// Renders a sweep as a standalone SVG: two stacked panels (miss rate on top,
// false-alarm rate below) sharing the sweep value on the x axis. Each panel
// draws the quadrature results for both detectors as lines and the Monte
// Carlo results as hollow circles. Flagged rows are skipped. Output is fully
// deterministic for a given row list.
std::string render_sweep(std::span<const SweepRow> rows, SweepKind kind);

}  // namespace mimd::svg
