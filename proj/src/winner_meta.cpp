#include "zoomcurse/winner_meta.hpp"

#include <algorithm>

#include "zoomcurse/error.hpp"

namespace zoomcurse {

WinnerInterval population_value_interval(const Problem& p, Method method, const GridOptions& options) {
  if (!p.bound().symmetric())
    throw UnsupportedMethodError("population value interval needs a permutation-symmetric bound");
  WinnerInterval w = winner_interval(p, method, options);
  w.target = "population_max";
  return w;
}

IdentitySet winner_identity_set(const Problem& p, const WinnerInterval& w) {
  IdentitySet s;
  s.radius = worst_case_radius(p, w.t_l);
  s.threshold = p.x_winner() - 2.0 * s.radius;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.x()[i] >= s.threshold) s.indices.push_back(i);
  return s;
}

IdentitySet winner_identity_set(const Problem& p, const GridOptions& options) {
  return winner_identity_set(p, winner_interval_grid(p, options));
}

bool NearWinnerInterval::contains(double v) const {
  for (const auto& [a, b] : pieces)
    if (a <= v && v <= b) return true;
  return false;
}

NearWinnerInterval near_winner_interval(const Problem& p, const WinnerInterval& w, std::size_t j) {
  if (j >= p.size()) throw DomainError("candidate index out of range");
  if (!p.bound().symmetric()) throw UnsupportedMethodError("near-winner sets need a permutation-symmetric bound");
  NearWinnerInterval out;
  out.j = j;
  const double xw = p.x_winner();
  const double xj = p.x()[j];
  if (xj == xw) {
    out.pieces.emplace_back(w.t_l, w.t_u);
  } else {
    const double d = xw - xj;
    const double a = std::max(xw - 3.0 * w.r_l, xj - w.r_l);
    const double b = std::min(xw + w.r_u, xj + w.r_l);
    if (a <= b) out.pieces.emplace_back(a, b);
    out.pieces.emplace_back(xj - d - w.r_u, xj + (d + w.r_u) / 3.0);
    std::sort(out.pieces.begin(), out.pieces.end());
  }
  out.lo = out.pieces.front().first;
  out.hi = out.pieces.front().second;
  for (const auto& [a, b] : out.pieces) {
    out.lo = std::min(out.lo, a);
    out.hi = std::max(out.hi, b);
  }
  return out;
}

}  // namespace zoomcurse
