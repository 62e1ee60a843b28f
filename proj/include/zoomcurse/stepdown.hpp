#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "zoomcurse/tail_bounds.hpp"

namespace zoomcurse {

struct StepdownStep {
  std::size_t j = 0;  // 1-based step index
  double alpha_j = 0.0;
  double r_hat = 0.0;
  double gap = 0.0;  // sorted gap examined at this step
  bool terminated = false;
};

struct StepdownTrace {
  std::vector<double> sorted_gaps;  // descending
  std::vector<StepdownStep> steps;
  double radius = 0.0;
};

// Closed-form conservative radii for the lower and upper endpoint under a
// union bound with a shared marginal. gaps are empirical gaps X_win - X_j;
// at least one must be exactly 0.
StepdownTrace stepdown_lower(std::span<const double> gaps, const TailModel& model, double alpha);
// The upper radius never exceeds the lower one, which also bounds r_u.
StepdownTrace stepdown_upper(std::span<const double> gaps, const TailModel& model, double alpha);

}  // namespace zoomcurse
