#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zoomcurse/zoom_core.hpp"

namespace zoomcurse {

// max(theta_(k) - theta_j, 0), theta_(k) the k-th largest entry.
std::vector<double> gaps_topk(std::span<const double> theta, std::size_t k);

// Indices of the k largest values, ordered by (value desc, index asc).
std::vector<std::size_t> top_k_indices(std::span<const double> x, std::size_t k);

// Winners shifted down by r; losers at min((2/3) X_j + (1/3)(X_(k) - r), X_(k) - r).
std::vector<double> tilde_theta(std::span<const double> x, std::size_t k, double r);

struct TopKResult {
  std::size_t k = 0;
  std::vector<std::size_t> winner_indices;
  double r_max = 0.0;
  std::vector<std::pair<double, double>> intervals;  // X_j -/+ r_max per winner
  std::map<std::string, double> diagnostics;
};

// Largest grid r in [0, r_alpha(0)] with r <= r_alpha(tilde theta^r), rounded
// outward one step.
TopKResult topk_interval(const Problem& problem, std::size_t k, const GridOptions& options = {});

// Lower step-down run on X_(k) - X_j floored at 0. Union bounds only.
double topk_stepdown(const Problem& problem, std::size_t k);

}  // namespace zoomcurse
