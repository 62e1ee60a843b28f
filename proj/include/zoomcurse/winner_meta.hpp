#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "zoomcurse/zoom_core.hpp"

namespace zoomcurse {

// Interval for max_i theta_i. Same endpoints as the winner interval; needs a
// permutation-symmetric bound.
WinnerInterval population_value_interval(const Problem& problem, Method method = Method::grid,
                                         const GridOptions& options = {});

struct IdentitySet {
  std::vector<std::size_t> indices;  // ascending
  double threshold = 0.0;            // X_win - 2 radius
  double radius = 0.0;               // r_alpha(theta^{t_l})
};

IdentitySet winner_identity_set(const Problem& problem, const WinnerInterval& interval);
IdentitySet winner_identity_set(const Problem& problem, const GridOptions& options = {});

struct NearWinnerInterval {
  std::size_t j = 0;
  std::vector<std::pair<double, double>> pieces;  // sorted, non-empty pieces
  double lo = 0.0;                                // hull
  double hi = 0.0;

  bool contains(double value) const;
};

NearWinnerInterval near_winner_interval(const Problem& problem, const WinnerInterval& interval, std::size_t j);

}  // namespace zoomcurse
