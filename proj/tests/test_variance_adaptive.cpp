#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "frozen.hpp"
#include "zoomcurse/error.hpp"
#include "zoomcurse/variance_adaptive.hpp"

using namespace zoomcurse;

namespace {
JointBound gauss(std::size_t m) { return JointBound::union_of(TailModel::gaussian(1.0), m); }

// Same secondary grid as the library, every node evaluated, no pruning.
bool brute_member(const ScaledProblem& sp, double t, std::size_t Q) {
  const Problem& p = sp.base();
  const auto& x = p.x();
  const auto& sg = sp.sigma();
  const std::size_t w = p.winner();
  const double r0 = simultaneous_radius(p.bound(), p.alpha());
  const double smax = *std::max_element(sg.begin(), sg.end());
  const double hi = std::max(t, x[w] + smax * r0);
  auto ok = [&](std::size_t is, double ts) {
    const auto th = scaled_worst_case(x, w, t, ts, is, sg);
    const double r = active_radius_scaled(p.bound(), th, sg, p.alpha(), is).r;
    if (std::fabs(x[w] - t) > r * sg[w]) return false;
    if (std::fabs(x[is] - ts) > r * sg[is]) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] >= ts && x[k] - ts > r * sg[k]) return false;
    return true;
  };
  if (std::fabs(x[w] - t) / sg[w] > r0) return false;
  if (ok(w, t)) return true;
  const double step = (hi - t) / static_cast<double>(Q - 1);
  for (std::size_t is = 0; is < x.size(); ++is) {
    if (is == w) continue;
    for (std::size_t q = 0; q < Q; ++q)
      if (ok(is, q + 1 == Q ? hi : t + static_cast<double>(q) * step)) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("active_radius_scaled examples") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = 1 + rng() % 6;
    std::vector<double> th(m);
    for (auto& v : th) v = u(rng);
    const std::vector<double> ones(m, 1.0);
    CHECK(active_radius_scaled(gauss(m), th, ones, 0.1).r == active_radius(gauss(m), gaps_from_theta(th), 0.1).r);
  }
  // Standardized units: the radius does not depend on sigma for one candidate.
  CHECK(std::fabs(active_radius_scaled(gauss(1), std::vector<double>{0.0}, std::vector<double>{2.0}, 0.1).r -
                  frozen::kZ90) < 1e-12);
  const double inf = std::numeric_limits<double>::infinity();
  const auto far = active_radius_scaled(gauss(2), std::vector<double>{0.0, -inf}, std::vector<double>{1.0, 5.0}, 0.1);
  CHECK(std::fabs(far.r - frozen::kZ90) < 1e-9);
  CHECK(far.active == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(active_radius_scaled(gauss(2), std::vector<double>{0.0, 1.0}, std::vector<double>{1.0}, 0.1),
                  DimensionError);
  CHECK_THROWS_AS(active_radius_scaled(gauss(2), std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 0.0}, 0.1),
                  DomainError);
}

TEST_CASE("scaled_worst_case examples") {
  const std::vector<double> x{10.0, 0.0, 4.0};
  const std::vector<double> ones(3, 1.0);
  const auto a = scaled_worst_case(x, 0, 8.0, 8.0, 0, ones);
  const auto b = worst_case_theta(x, 0, 8.0);
  for (std::size_t j = 0; j < 3; ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-15));
  const auto c = scaled_worst_case(std::vector<double>{10.0, 0.0}, 0, 9.0, 9.0, 0, std::vector<double>{1.0, 1.0});
  CHECK(c[0] == 9.0);
  CHECK(c[1] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(scaled_worst_case(std::vector<double>{1.0}, 0, 0.5, 0.5, 0, std::vector<double>{3.0}) ==
        std::vector<double>{0.5});
  CHECK_THROWS_AS(scaled_worst_case(x, 0, 8.0, 7.0, 1, ones), DomainError);
  CHECK_THROWS_AS(scaled_worst_case(x, 0, 8.0, 9.0, 0, ones), DomainError);
}

TEST_CASE("winner_interval_scaled examples") {
  const ScaledProblem one(Problem({0.0}, gauss(1), 0.1), {2.0});
  const auto w = winner_interval_scaled(one);
  const double step = w.diagnostics.at("grid_step");
  CHECK(std::fabs(w.t_l + 2.0 * frozen::kZ90) <= step);
  CHECK(std::fabs(w.t_u - 2.0 * frozen::kZ90) <= step);

  const ScaledProblem tiny(Problem({0.0, -50.0}, gauss(2), 0.1), {0.01, 1.0});
  const auto v = winner_interval_scaled(tiny);
  CHECK(std::fabs(v.t_l + 0.01 * frozen::kZ90) <= v.diagnostics.at("grid_step"));
  CHECK(std::fabs(v.t_u - 0.01 * frozen::kZ90) <= v.diagnostics.at("grid_step"));

  CHECK_THROWS_AS(ScaledProblem(Problem({0.0, 1.0}, gauss(2), 0.1), {1.0}), DimensionError);
  CHECK_THROWS_AS(ScaledProblem(Problem({0.0}, gauss(1), 0.1), {-1.0}), DomainError);
}

TEST_CASE("property: equal sigma reduces to the basic grid interval") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t m = 1 + rng() % 6;
    std::uniform_real_distribution<double> u(-6.0, 0.0);
    std::vector<double> x(m);
    for (auto& v : x) v = u(rng);
    const Problem p(x, gauss(m), 0.1);
    const auto a = winner_interval_scaled(ScaledProblem(p, std::vector<double>(m, 1.0)), ScaledGridOptions{401});
    const auto b = winner_interval_grid(p, GridOptions{401, false, false});
    const double step = b.diagnostics.at("grid_step");
    CHECK(std::fabs(a.t_l - b.t_l) <= 2 * step);
    CHECK(std::fabs(a.t_u - b.t_u) <= 2 * step);
  }
}

TEST_CASE("property: pruned membership equals brute force on the same grid") {
  std::mt19937_64 rng(6);
  const double sig[] = {0.5, 1.0, 2.0};
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t m = 2 + rng() % 3;
    std::uniform_real_distribution<double> u(-4.0, 0.0);
    std::vector<double> x(m), s(m);
    for (std::size_t j = 0; j < m; ++j) {
      x[j] = u(rng);
      s[j] = sig[rng() % 3];
    }
    const ScaledProblem sp(Problem(x, gauss(m), 0.1), s);
    const ScaledGridOptions opt{101, 64, 8};
    const double xw = sp.base().x_winner();
    const double box = simultaneous_radius(sp.base().bound(), 0.1) * s[sp.base().winner()];
    for (int k = -25; k <= 25; ++k) {
      const double t = xw + box * k / 24.0;
      const auto fast = scaled_contains(sp, t, opt);
      CHECK(fast.accepted == brute_member(sp, t, 64));
      if (fast.accepted) CHECK(fast.t_star >= t);
    }
  }
}

TEST_CASE("property: heteroskedastic coverage by simulation") {
  const std::size_t m = 5, trials = 300;
  const double alpha = 0.1;
  const std::vector<double> theta{0.0, -0.5, -1.0, -3.0, -6.0};
  const std::vector<double> sigma{2.0, 0.5, 1.0, 1.0, 2.0};
  std::mt19937_64 rng(10);
  std::normal_distribution<double> z;
  std::size_t hit = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = theta[j] + sigma[j] * z(rng);
    const ScaledProblem sp(Problem(x, gauss(m), alpha), sigma);
    const auto w = winner_interval_scaled(sp, ScaledGridOptions{201});
    if (w.covers(theta[w.winner])) ++hit;
  }
  CHECK(static_cast<double>(hit) / trials >= 1 - alpha - 3 * std::sqrt(alpha * (1 - alpha) / trials));
}
