#include "zoomcurse/topk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zoomcurse/error.hpp"
#include "zoomcurse/stepdown.hpp"

namespace zoomcurse {

namespace {

void check_k(std::size_t k, std::size_t m) {
  if (k < 1 || k > m) throw DomainError("k must lie in [1, m]");
}

}  // namespace

std::vector<std::size_t> top_k_indices(std::span<const double> x, std::size_t k) {
  check_k(k, x.size());
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  idx.resize(k);
  return idx;
}

std::vector<double> gaps_topk(std::span<const double> theta, std::size_t k) {
  check_k(k, theta.size());
  const double kth = theta[top_k_indices(theta, k).back()];
  std::vector<double> g(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) g[j] = std::max(kth - theta[j], 0.0);
  return g;
}

std::vector<double> tilde_theta(std::span<const double> x, std::size_t k, double r) {
  const auto win = top_k_indices(x, k);
  const double anchor = x[win.back()] - r;
  std::vector<double> th(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) th[j] = std::min((2.0 / 3.0) * x[j] + anchor / 3.0, anchor);
  for (auto j : win) th[j] = x[j] - r;
  return th;
}

TopKResult topk_interval(const Problem& p, std::size_t k, const GridOptions& opt) {
  check_k(k, p.size());
  if (opt.points < 3) throw DomainError("grid needs at least 3 points");
  const std::size_t G = opt.points;
  const double r0 = simultaneous_radius(p.bound(), p.alpha());
  const double step = r0 / static_cast<double>(G - 1);
  std::size_t evals = 0;

  auto f = [&](long i) {
    ++evals;
    const auto th = tilde_theta(p.x(), k, static_cast<double>(i) * step);
    return active_radius_value(p.bound(), gaps_topk(th, k), p.alpha());
  };

  // r_alpha(tilde theta^r) grows with r, so a rejected node at r only leaves
  // candidates at or below f(r).
  long i = static_cast<long>(G) - 1;
  long best = 0;
  if (opt.exhaustive) {
    for (long j = 0; j < static_cast<long>(G); ++j)
      if (static_cast<double>(j) * step <= f(j)) best = j;
  } else {
    while (i > 0) {
      const double fr = f(i);
      if (static_cast<double>(i) * step <= fr) break;
      const double tol = 1e-9 * std::max(1.0, fr);
      const long next = static_cast<long>(std::floor((fr + tol) / step));
      i = std::min(i - 1, next);
    }
    best = std::max(i, 0L);
  }

  TopKResult out;
  out.k = k;
  out.winner_indices = top_k_indices(p.x(), k);
  double r = std::min(static_cast<double>(best + 1) * step, r0);
  out.diagnostics["accepted_radius"] = static_cast<double>(best) * step;
  out.diagnostics["grid_points"] = static_cast<double>(G);
  out.diagnostics["grid_step"] = step;
  out.diagnostics["r0"] = r0;
  out.diagnostics["evaluations"] = static_cast<double>(evals);
  double clamp = 0.0;
  if (opt.clamp_to_stepdown && p.bound().common_marginal()) {
    const double sd = stepdown_lower(gaps_topk(p.x(), k), *p.bound().common_marginal(), p.alpha()).radius;
    out.diagnostics["stepdown_radius"] = sd;
    if (sd < r) {
      r = sd;
      clamp = 1.0;
    }
  }
  out.diagnostics["stepdown_clamp"] = clamp;
  out.r_max = r;
  for (auto j : out.winner_indices) out.intervals.emplace_back(p.x()[j] - r, p.x()[j] + r);
  return out;
}

double topk_stepdown(const Problem& p, std::size_t k) {
  check_k(k, p.size());
  if (!p.bound().is_union()) throw UnsupportedMethodError("top-k step-down needs a union bound");
  auto S = p.bound().common_marginal();
  if (!S) throw UnsupportedMethodError("top-k step-down needs identical marginals");
  return stepdown_lower(gaps_topk(p.x(), k), *S, p.alpha()).radius;
}

}  // namespace zoomcurse
