#include "zoomcurse/variance_adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zoomcurse/error.hpp"

namespace zoomcurse {

ScaledProblem::ScaledProblem(Problem base, std::vector<double> sigma) : base_(std::move(base)), sigma_(std::move(sigma)) {
  if (sigma_.size() != base_.size()) throw DimensionError("sigma length does not match observations");
  for (double s : sigma_)
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("sigma entries must be positive and finite");
}

namespace {

std::vector<double> scaled_gaps(std::span<const double> theta, std::span<const double> sigma, std::size_t istar) {
  const double top = theta[istar];
  std::vector<double> g(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double d = std::max(top - theta[j], 0.0);
    // active_radius halves the gap, so pass 2 Delta_j / (sigma_j + sigma_i*).
    g[j] = 2.0 * d / (sigma[j] + sigma[istar]);
  }
  return g;
}

struct Context {
  const ScaledProblem& sp;
  const ScaledGridOptions& opt;
  double r0;
  std::vector<std::size_t> order;  // i* candidates by descending X
};

Context make_context(const ScaledProblem& sp, const ScaledGridOptions& opt) {
  Context c{sp, opt, simultaneous_radius(sp.base().bound(), sp.base().alpha()), {}};
  const auto& x = sp.base().x();
  c.order.resize(x.size());
  std::iota(c.order.begin(), c.order.end(), 0);
  std::stable_sort(c.order.begin(), c.order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  return c;
}

ScaledMembership membership(const Context& ctx, double t) {
  const Problem& p = ctx.sp.base();
  const auto& x = p.x();
  const auto& sg = ctx.sp.sigma();
  const std::size_t w = p.winner();
  const double need_t = std::fabs(x[w] - t) / sg[w];
  const double smax = *std::max_element(sg.begin(), sg.end());
  const double hi = std::max(t, x[w] + smax * ctx.r0);
  const std::size_t Q = std::max<std::size_t>(ctx.opt.tstar_points, 2);

  ScaledMembership out;
  auto radius = [&](std::size_t istar, double ts) {
    ++out.evaluations;
    const auto th = scaled_worst_case(x, w, t, ts, istar, sg);
    return active_radius_value(p.bound(), scaled_gaps(th, sg, istar), p.alpha());
  };
  auto need = [&](std::size_t istar, double ts) {
    double n = std::max(need_t, std::fabs(x[istar] - ts) / sg[istar]);
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] >= ts) n = std::max(n, (x[k] - ts) / sg[k]);
    return n;
  };

  if (need_t > ctx.r0) return out;
  for (std::size_t istar : ctx.order) {
    if (istar == w) {
      if (need(w, t) <= radius(w, t)) {
        out.accepted = true;
        out.i_star = w;
        out.t_star = t;
        return out;
      }
      continue;
    }
    const double step = (hi - t) / static_cast<double>(Q - 1);
    double r_bound = ctx.r0;
    for (std::size_t q = 0; q < Q; ++q) {
      const double ts = q + 1 == Q ? hi : t + static_cast<double>(q) * step;
      if (need(istar, ts) > r_bound) continue;
      const double r = radius(istar, ts);
      r_bound = r;
      if (r < need_t) break;  // r only shrinks as t* grows
      if (need(istar, ts) <= r) {
        out.accepted = true;
        out.i_star = istar;
        out.t_star = ts;
        out.at_range_edge = q + 1 == Q;
        // Refine toward the smallest feasible t* between the previous node and this one.
        if (q > 0 && ctx.opt.refine > 1) {
          const double h = step / static_cast<double>(ctx.opt.refine);
          for (std::size_t s = 1; s < ctx.opt.refine; ++s) {
            const double tr = t + static_cast<double>(q - 1) * step + static_cast<double>(s) * h;
            if (need(istar, tr) <= radius(istar, tr)) {
              out.t_star = tr;
              break;
            }
          }
        }
        return out;
      }
    }
  }
  return out;
}

}  // namespace

ActiveRadius active_radius_scaled(const JointBound& bound, std::span<const double> theta, std::span<const double> sigma,
                                  double alpha, std::optional<std::size_t> i_star) {
  if (theta.size() != sigma.size() || theta.size() != bound.dimension())
    throw DimensionError("theta, sigma and bound must have the same length");
  for (double s : sigma)
    if (!(s > 0.0)) throw DomainError("sigma entries must be positive");
  const std::size_t istar = i_star ? *i_star : argmax_lowest(theta);
  if (istar >= theta.size()) throw DomainError("i_star out of range");
  if (theta[istar] < theta[argmax_lowest(theta)]) throw DomainError("i_star must attain the maximum of theta");
  const auto g = scaled_gaps(theta, sigma, istar);
  ActiveRadius out;
  out.r = active_radius_value(bound, g, alpha);
  out.alpha_used = alpha;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (0.5 * g[j] <= out.r) out.active.push_back(j);
  return out;
}

std::vector<double> scaled_worst_case(std::span<const double> x, std::size_t winner, double t, double t_star,
                                      std::size_t i_star, std::span<const double> sigma) {
  if (x.size() != sigma.size()) throw DimensionError("sigma length does not match observations");
  if (winner >= x.size() || i_star >= x.size()) throw DomainError("index out of range");
  if (t_star < t) throw DomainError("t_star must be at least t");
  if (i_star == winner && t_star != t) throw DomainError("t_star must equal t when i_star is the winner");
  std::vector<double> th(x.size());
  const double s_star = sigma[i_star];
  for (std::size_t j = 0; j < x.size(); ++j)
    th[j] = std::min((x[j] * (sigma[j] + s_star) + t_star * sigma[j]) / (2.0 * sigma[j] + s_star), t_star);
  th[winner] = t;
  th[i_star] = t_star;
  return th;
}

ScaledMembership scaled_contains(const ScaledProblem& problem, double t, const ScaledGridOptions& options) {
  if (!std::isfinite(t)) return {};
  return membership(make_context(problem, options), t);
}

WinnerInterval winner_interval_scaled(const ScaledProblem& sp, const ScaledGridOptions& opt) {
  if (opt.points < 3) throw DomainError("grid needs at least 3 points");
  const Context ctx = make_context(sp, opt);
  const Problem& p = sp.base();
  const std::size_t G = opt.points % 2 == 1 ? opt.points : opt.points + 1;
  const long c = static_cast<long>(G - 1) / 2;
  const double x = p.x_winner();
  const double box = ctx.r0 * sp.sigma()[p.winner()];
  const double step = box / static_cast<double>(c);
  auto t_at = [&](long i) { return x + static_cast<double>(i - c) * step; };

  std::size_t evals = 0, edge = 0;
  auto test = [&](long i) {
    const auto m = membership(ctx, t_at(i));
    evals += m.evaluations;
    if (m.accepted && m.at_range_edge) ++edge;
    return m;
  };

  if (!test(c).accepted) throw InternalError("scaled grid rejected the observed winner value");
  long i_l = 0;
  ScaledMembership lo;
  for (;; ++i_l) {
    lo = test(i_l);
    if (lo.accepted) break;
  }
  long i_u = static_cast<long>(G) - 1;
  ScaledMembership up;
  for (;; --i_u) {
    up = test(i_u);
    if (up.accepted) break;
  }

  WinnerInterval w;
  w.method = Method::grid;
  w.winner = p.winner();
  w.x_winner = x;
  w.t_l = std::max(t_at(i_l - 1), x - box);
  w.t_u = std::min(t_at(i_u + 1), x + box);
  w.r_l = x - w.t_l;
  w.r_u = w.t_u - x;
  w.diagnostics["grid_points"] = static_cast<double>(G);
  w.diagnostics["grid_step"] = step;
  w.diagnostics["r0"] = ctx.r0;
  w.diagnostics["evaluations"] = static_cast<double>(evals);
  w.diagnostics["accepted_lower"] = t_at(i_l);
  w.diagnostics["accepted_upper"] = t_at(i_u);
  w.diagnostics["tstar_lower"] = lo.t_star;
  w.diagnostics["istar_lower"] = static_cast<double>(lo.i_star);
  w.diagnostics["tstar_upper"] = up.t_star;
  w.diagnostics["istar_upper"] = static_cast<double>(up.i_star);
  w.diagnostics["edge_acceptances"] = static_cast<double>(edge);
  return w;
}

}  // namespace zoomcurse
