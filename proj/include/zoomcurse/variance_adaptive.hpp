#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zoomcurse/zoom_core.hpp"

namespace zoomcurse {

// The bound in base describes standardized errors: P(exists j: |xi_j| / sigma_j > v_j) <= S_joint(v).
// Widths in raw units are therefore r * sigma_j.
class ScaledProblem {
 public:
  ScaledProblem(Problem base, std::vector<double> sigma);

  const Problem& base() const { return base_; }
  const std::vector<double>& sigma() const { return sigma_; }

 private:
  Problem base_;
  std::vector<double> sigma_;
};

// Smallest r with S_joint(max(r, Delta_j / (sigma_j + sigma_i*))) <= alpha, in
// standardized units. i_star defaults to argmax theta (lowest index on ties).
ActiveRadius active_radius_scaled(const JointBound& bound, std::span<const double> theta,
                                  std::span<const double> sigma, double alpha,
                                  std::optional<std::size_t> i_star = std::nullopt);

std::vector<double> scaled_worst_case(std::span<const double> x, std::size_t winner, double t, double t_star,
                                      std::size_t i_star, std::span<const double> sigma);

struct ScaledGridOptions {
  std::size_t points = 2001;
  std::size_t tstar_points = 256;
  std::size_t refine = 8;
};

// Membership of t: some i* and t* >= t on the secondary grid satisfy the
// acceptance conditions. Returns the accepting (i*, t*) if any.
struct ScaledMembership {
  bool accepted = false;
  std::size_t i_star = 0;
  double t_star = 0.0;
  bool at_range_edge = false;
  std::size_t evaluations = 0;
};
ScaledMembership scaled_contains(const ScaledProblem& problem, double t, const ScaledGridOptions& options = {});

WinnerInterval winner_interval_scaled(const ScaledProblem& problem, const ScaledGridOptions& options = {});

}  // namespace zoomcurse
