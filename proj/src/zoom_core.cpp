#include "zoomcurse/zoom_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "zoomcurse/error.hpp"
#include "zoomcurse/stepdown.hpp"

namespace zoomcurse {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

void check_gaps(std::span<const double> gaps, std::size_t m) {
  if (gaps.size() != m) throw DimensionError("gap vector length does not match the bound");
  for (double g : gaps)
    if (!(g >= 0.0)) throw DomainError("gaps must be non-negative");
}

double union_value(const JointBound& bound, std::span<const double> half, double r) {
  const auto& ms = bound.marginals();
  double s = 0.0;
  for (std::size_t j = 0; j < half.size(); ++j) s += ms[j].tail(std::max(r, half[j]));
  return std::min(1.0, s);
}

// Minimal feasible r by bisection on [lo, hi] where hi is feasible.
template <class F>
double bisect_feasible(const F& f, double lo, double hi, double alpha) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) <= alpha)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
  }
  return hi;
}

double union_general(const JointBound& bound, std::span<const double> gaps, double alpha) {
  const std::size_t m = gaps.size();
  std::vector<double> half(m);
  for (std::size_t j = 0; j < m; ++j) half[j] = 0.5 * gaps[j];
  auto f = [&](double r) { return union_value(bound, half, r); };
  if (f(0.0) <= alpha) return 0.0;
  double hi = 0.0;
  for (const auto& t : bound.marginals()) hi = std::max(hi, t.inverse(alpha / static_cast<double>(m)));
  for (int k = 0; f(hi) > alpha; ++k) {
    if (k > 60 || !std::isfinite(hi)) throw InfeasibleError("no finite radius meets the requested level");
    hi = hi * (1.0 + 1e-12) + 1e-300;
    if (k > 8) hi = hi * 2.0 + 1.0;
  }
  return bisect_feasible(f, 0.0, hi, alpha);
}

// Identical analytic marginals: on each stretch between sorted half gaps the
// bound is c S(r) + const, so the radius has a closed form.
double union_identical(const TailModel& S, std::span<const double> gaps, double alpha) {
  const std::size_t m = gaps.size();
  std::vector<double> h(m);
  for (std::size_t j = 0; j < m; ++j) h[j] = 0.5 * gaps[j];
  std::sort(h.begin(), h.end());
  std::vector<double> suf(m + 1, 0.0);
  for (std::size_t j = m; j-- > 0;) suf[j] = suf[j + 1] + S.tail(h[j]);

  auto f = [&](double r) {
    const std::size_t c = static_cast<std::size_t>(std::upper_bound(h.begin(), h.end(), r) - h.begin());
    return std::min(1.0, static_cast<double>(c) * S.tail(r) + suf[c]);
  };

  std::size_t lo = 0, hi = m;  // first index i with f(h[i]) <= alpha, m if none
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (f(h[mid]) <= alpha)
      hi = mid;
    else
      lo = mid + 1;
  }
  const std::size_t i = lo;
  if (i == 0) return 0.0;
  const double left = h[i - 1];
  const double right = i < m ? h[i] : std::numeric_limits<double>::infinity();
  const double q = (alpha - suf[i]) / static_cast<double>(i);
  double r;
  if (q >= kMinTailProbability && q <= 1.0) {
    r = std::clamp(S.inverse(q), left, right);
  } else if (i < m) {
    r = bisect_feasible(f, left, right, alpha);
  } else {
    throw InfeasibleError("no finite radius meets the requested level");
  }
  for (int k = 0; k < 64 && f(r) > alpha; ++k) r = std::nextafter(r, std::numeric_limits<double>::infinity());
  if (f(r) > alpha) r = bisect_feasible(f, r, i < m ? right : r * 2.0 + 1.0, alpha);
  return r;
}

}  // namespace

Problem::Problem(std::vector<double> x, JointBound bound, double alpha, std::vector<std::string> labels)
    : x_(std::move(x)), bound_(std::move(bound)), alpha_(alpha), labels_(std::move(labels)) {
  if (x_.empty()) throw DomainError("problem needs at least one candidate");
  for (double v : x_)
    if (!std::isfinite(v)) throw DomainError("observations must be finite");
  check_alpha(alpha_);
  if (bound_.dimension() != x_.size()) throw DimensionError("bound dimension does not match the observations");
  if (!labels_.empty() && labels_.size() != x_.size()) throw DimensionError("label count does not match observations");
  winner_ = argmax_lowest(x_);
}

std::size_t argmax_lowest(std::span<const double> v) {
  if (v.empty()) throw DomainError("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

std::vector<double> gaps_from_theta(std::span<const double> theta) {
  const double top = theta[argmax_lowest(theta)];
  std::vector<double> g(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) g[j] = top - theta[j];
  return g;
}

std::vector<double> empirical_gaps(std::span<const double> x) { return gaps_from_theta(x); }

double active_radius_value(const JointBound& bound, std::span<const double> gaps, double alpha) {
  check_alpha(alpha);
  check_gaps(gaps, bound.dimension());
  if (const auto* idx = bound.mc_index()) return idx->quantile(gaps, 1.0 - alpha);
  if (auto common = bound.common_marginal(); common && common->kind() != TailModel::Kind::empirical)
    return union_identical(*common, gaps, alpha);
  return union_general(bound, gaps, alpha);
}

ActiveRadius active_radius(const JointBound& bound, std::span<const double> gaps, double alpha) {
  ActiveRadius out;
  out.r = active_radius_value(bound, gaps, alpha);
  out.alpha_used = alpha;
  for (std::size_t j = 0; j < gaps.size(); ++j)
    if (gaps[j] <= 2.0 * out.r) out.active.push_back(j);
  return out;
}

double simultaneous_radius(const JointBound& bound, double alpha) {
  std::vector<double> zero(bound.dimension(), 0.0);
  return active_radius_value(bound, zero, alpha);
}

std::vector<double> worst_case_theta(std::span<const double> x, std::size_t winner, double t) {
  if (winner >= x.size()) throw DomainError("winner index out of range");
  std::vector<double> th(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    th[j] = j == winner ? t : std::min((2.0 / 3.0) * x[j] + t / 3.0, t);
  return th;
}

double worst_case_radius(const Problem& p, double t) {
  const auto th = worst_case_theta(p.x(), p.winner(), t);
  const auto g = gaps_from_theta(th);
  return active_radius_value(p.bound(), g, p.alpha());
}

bool contains(const Problem& problem, double t) {
  if (!std::isfinite(t)) return false;
  return std::fabs(problem.x_winner() - t) <= worst_case_radius(problem, t);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::grid:
      return "grid";
    case Method::root:
      return "root";
    case Method::stepdown:
      return "stepdown";
  }
  return "?";
}

WinnerInterval winner_interval_grid(const Problem& p, const GridOptions& opt) {
  if (opt.points < 3) throw DomainError("grid needs at least 3 points");
  const std::size_t G = opt.points % 2 == 1 ? opt.points : opt.points + 1;
  const long c = static_cast<long>(G - 1) / 2;
  const double x = p.x_winner();
  const double r0 = simultaneous_radius(p.bound(), p.alpha());
  const double step = r0 / static_cast<double>(c);

  auto t_at = [&](long i) { return x + static_cast<double>(i - c) * step; };
  std::vector<double> cache(G, std::numeric_limits<double>::quiet_NaN());
  std::size_t evals = 0;
  auto rad = [&](long i) {
    double& v = cache[static_cast<std::size_t>(i)];
    if (std::isnan(v)) {
      v = worst_case_radius(p, t_at(i));
      ++evals;
    }
    return v;
  };
  auto acc = [&](long i) { return std::fabs(x - t_at(i)) <= rad(i); };

  const long last = static_cast<long>(G) - 1;
  long i_l = -1, i_u = -1;
  double rejected_inside = 0.0;
  bool bridged = false;

  if (!acc(c)) throw InternalError("grid search rejected the observed winner value");

  if (opt.exhaustive) {
    std::vector<char> ok(G);
    for (long i = 0; i <= last; ++i) ok[static_cast<std::size_t>(i)] = acc(i);
    for (long i = 0; i <= last; ++i)
      if (ok[static_cast<std::size_t>(i)]) {
        if (i_l < 0) i_l = i;
        i_u = i;
      }
    for (long i = i_l; i <= i_u; ++i)
      if (!ok[static_cast<std::size_t>(i)]) rejected_inside += 1.0;
    bridged = rejected_inside > 0.0;
  } else {
    // Above X acceptance is |X - t| <= r(t) with r non-increasing in t, so the
    // accepted nodes form a prefix.
    if (acc(last)) {
      i_u = last;
    } else {
      long lo = c, hi = last;
      while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (acc(mid) ? lo : hi) = mid;
      }
      i_u = lo;
    }
    // Below X: a rejected node at t rules out every node under X - r(t).
    for (long i = 0;;) {
      if (acc(i)) {
        i_l = i;
        break;
      }
      const double r = rad(i);
      const double tol = 1e-9 * std::max(1.0, r);
      const long next = static_cast<long>(std::ceil(static_cast<double>(c) - (r + tol) / step));
      i = std::max(i + 1, next);
    }
    // An accepted node at t vouches for every node in [X - r(t), t].
    for (long i = c; i > i_l;) {
      const double r = rad(i);
      const double tol = 1e-9 * std::max(1.0, r);
      const long covered = static_cast<long>(std::ceil(static_cast<double>(c) - (r - tol) / step));
      const long probe = std::min(i - 1, covered - 1);
      if (probe <= i_l) break;
      if (!acc(probe)) {
        bridged = true;
        rejected_inside = static_cast<double>(probe);  // first hole found, as a node index
        break;
      }
      i = probe;
    }
  }

  WinnerInterval w;
  w.method = Method::grid;
  w.winner = p.winner();
  w.x_winner = x;
  double t_l = std::max(t_at(i_l - 1), x - r0);
  double t_u = std::min(t_at(i_u + 1), x + r0);
  w.diagnostics["accepted_lower"] = t_at(i_l);
  w.diagnostics["accepted_upper"] = t_at(i_u);

  double sd_l_bind = 0.0, sd_u_bind = 0.0;
  if (opt.clamp_to_stepdown) {
    if (auto S = p.bound().common_marginal()) {
      const auto g = empirical_gaps(p.x());
      const double rl = stepdown_lower(g, *S, p.alpha()).radius;
      const double ru = stepdown_upper(g, *S, p.alpha()).radius;
      w.diagnostics["stepdown_r_l"] = rl;
      w.diagnostics["stepdown_r_u"] = ru;
      // The exact accepted set lies inside the step-down interval, so this
      // only trims the outward rounding (and Monte-Carlo overshoot).
      if (x - rl > t_l) {
        t_l = x - rl;
        sd_l_bind = 1.0;
      }
      if (x + ru < t_u) {
        t_u = x + ru;
        sd_u_bind = 1.0;
      }
    }
  }
  w.t_l = t_l;
  w.t_u = t_u;
  w.r_l = x - t_l;
  w.r_u = t_u - x;
  w.diagnostics["grid_points"] = static_cast<double>(G);
  w.diagnostics["grid_step"] = step;
  w.diagnostics["r0"] = r0;
  w.diagnostics["evaluations"] = static_cast<double>(evals);
  w.diagnostics["bridged"] = bridged ? 1.0 : 0.0;
  if (bridged) w.diagnostics[opt.exhaustive ? "rejected_inside" : "first_hole_node"] = rejected_inside;
  w.diagnostics["stepdown_clamp_lower"] = sd_l_bind;
  w.diagnostics["stepdown_clamp_upper"] = sd_u_bind;
  return w;
}

double lower_endpoint_function(const JointBound& bound, std::span<const double> g, double r) {
  if (!bound.is_union()) throw UnsupportedMethodError("endpoint equations need a union bound");
  if (g.size() != bound.dimension()) throw DimensionError("gap vector length does not match the bound");
  const auto& ms = bound.marginals();
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) s += ms[j].tail(std::max(r, (g[j] - r) / 3.0));
  return s;
}

double upper_endpoint_function(const JointBound& bound, std::span<const double> g, double r) {
  if (!bound.is_union()) throw UnsupportedMethodError("endpoint equations need a union bound");
  if (g.size() != bound.dimension()) throw DimensionError("gap vector length does not match the bound");
  const auto& ms = bound.marginals();
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) s += ms[j].tail(std::max(r, (g[j] + r) / 3.0));
  return s;
}

WinnerInterval winner_interval_root(const Problem& p) {
  const JointBound& b = p.bound();
  if (!b.is_union()) throw UnsupportedMethodError("root method needs a union bound");
  const double a = p.alpha();
  const double r0 = simultaneous_radius(b, a);
  const auto g = empirical_gaps(p.x());

  auto Su = [&](double r) { return upper_endpoint_function(b, g, r); };
  auto Sl = [&](double r) { return lower_endpoint_function(b, g, r); };

  // Upper: strictly decreasing, keep the side where Su <= alpha.
  double lo = 0.0, hi = r0;
  int iters_u = 0;
  while (hi - lo > 1e-3 * kRootTolerance && iters_u < 200) {
    const double mid = 0.5 * (lo + hi);
    (Su(mid) <= a ? hi : lo) = mid;
    ++iters_u;
  }
  const double r_u = hi;

  // Lower: possibly non-monotone; walk down from r0 to the first point above
  // alpha, then bisect that bracket.
  const double h = r0 / kRootScanSteps;
  double above = 0.0, below = r0;
  for (int k = 1; k <= kRootScanSteps; ++k) {
    const double r = r0 - k * h;
    if (Sl(r) > a) {
      above = std::max(r, 0.0);
      break;
    }
    below = r;
  }
  int iters_l = 0;
  while (below - above > 1e-3 * kRootTolerance && iters_l < 200) {
    const double mid = 0.5 * (above + below);
    (Sl(mid) > a ? above : below) = mid;
    ++iters_l;
  }
  const double r_l = below;

  WinnerInterval w;
  w.method = Method::root;
  w.winner = p.winner();
  w.x_winner = p.x_winner();
  w.r_l = r_l;
  w.r_u = r_u;
  w.t_l = w.x_winner - r_l;
  w.t_u = w.x_winner + r_u;
  w.diagnostics["r0"] = r0;
  w.diagnostics["iterations_lower"] = iters_l;
  w.diagnostics["iterations_upper"] = iters_u;
  w.diagnostics["scan_steps"] = kRootScanSteps;
  return w;
}

WinnerInterval winner_interval_stepdown(const Problem& p) {
  if (!p.bound().is_union()) throw UnsupportedMethodError("step-down needs a union bound");
  auto S = p.bound().common_marginal();
  if (!S) throw UnsupportedMethodError("step-down needs identical marginals");
  const auto g = empirical_gaps(p.x());
  const auto lo = stepdown_lower(g, *S, p.alpha());
  const auto up = stepdown_upper(g, *S, p.alpha());
  WinnerInterval w;
  w.method = Method::stepdown;
  w.winner = p.winner();
  w.x_winner = p.x_winner();
  w.r_l = lo.radius;
  w.r_u = up.radius;
  w.t_l = w.x_winner - w.r_l;
  w.t_u = w.x_winner + w.r_u;
  w.diagnostics["steps_lower"] = static_cast<double>(lo.steps.size());
  w.diagnostics["steps_upper"] = static_cast<double>(up.steps.size());
  return w;
}

WinnerInterval winner_interval(const Problem& p, Method method, const GridOptions& options) {
  switch (method) {
    case Method::grid:
      return winner_interval_grid(p, options);
    case Method::root:
      return winner_interval_root(p);
    case Method::stepdown:
      return winner_interval_stepdown(p);
  }
  throw InternalError("unknown method");
}

}  // namespace zoomcurse
