#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "frozen.hpp"
#include "oracle.hpp"
#include "zoomcurse/error.hpp"
#include "zoomcurse/stepdown.hpp"
#include "zoomcurse/topk.hpp"

using namespace zoomcurse;

namespace {
JointBound gauss(std::size_t m) { return JointBound::union_of(TailModel::gaussian(1.0), m); }
}  // namespace

TEST_CASE("gaps_topk examples") {
  const std::vector<double> th{3.0, 2.0, 1.0};
  CHECK(gaps_topk(th, 1) == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(gaps_topk(th, 2) == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(gaps_topk(std::vector<double>{5.0, 5.0, 5.0}, 3) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(gaps_topk(th, 0), DomainError);
  CHECK_THROWS_AS(gaps_topk(th, 4), DomainError);
}

TEST_CASE("top_k_indices breaks ties by index") {
  CHECK(top_k_indices(std::vector<double>{1.0, 3.0, 3.0, 2.0}, 3) == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("tilde_theta examples") {
  const auto a = tilde_theta(std::vector<double>{10.0, 0.0}, 1, 1.0);
  CHECK(a[0] == 9.0);
  CHECK(std::fabs(a[1] - 3.0) < 1e-15);
  CHECK(a == worst_case_theta(std::vector<double>{10.0, 0.0}, 0, 9.0));
  const auto b = tilde_theta(std::vector<double>{10.0, 9.0, 0.0}, 2, 0.0);
  CHECK(b[0] == 10.0);
  CHECK(b[1] == 9.0);
  CHECK(std::fabs(b[2] - 3.0) < 1e-15);
  CHECK(tilde_theta(std::vector<double>{5.0}, 1, 2.0) == std::vector<double>{3.0});
}

TEST_CASE("topk_interval examples") {
  {
    const auto r = topk_interval(Problem({10.0, 0.0}, gauss(2), 0.1), 1);
    const double step = r.diagnostics.at("grid_step");
    CHECK(std::fabs(r.r_max - frozen::kRootLower) <= 2 * step);
    CHECK(std::fabs(r.r_max - 1.682) < 0.02);
  }
  {
    const auto r = topk_interval(Problem({1.0, 1.0, 1.0, 1.0}, gauss(4), 0.1), 4);
    CHECK(std::fabs(r.r_max - TailModel::gaussian(1.0).inverse(0.1 / 4)) < 1e-12);
  }
  {
    const Problem p({10.0, 9.9, 0.0}, gauss(3), 0.1);
    const auto r = topk_interval(p, 2);
    const double step = r.diagnostics.at("grid_step");
    CHECK(std::fabs(r.r_max - frozen::kTop2Root) <= 2 * step);
    CHECK(r.r_max <= frozen::kTop2Step);
    CHECK(std::fabs(topk_stepdown(p, 2) - frozen::kTop2Step) < 1e-12);
    CHECK(r.winner_indices == std::vector<std::size_t>{0, 1});
    REQUIRE(r.intervals.size() == 2);
    CHECK(r.intervals[1].first == doctest::Approx(9.9 - r.r_max).epsilon(1e-14));
  }
}

TEST_CASE("topk_stepdown examples") {
  const Problem p({10.0, 0.0}, gauss(2), 0.1);
  CHECK(topk_stepdown(p, 1) == stepdown_lower(std::vector<double>{0.0, 10.0}, TailModel::gaussian(1.0), 0.1).radius);
  CHECK(std::fabs(topk_stepdown(p, 2) - frozen::kZ95) < 1e-12);
  CHECK(std::fabs(topk_stepdown(Problem({-3.0, 7.0}, gauss(2), 0.1), 2) - frozen::kZ95) < 1e-12);
  const auto mc = JointBound::exact_mc(NoiseSampler::equicorrelated(2, 0.0), 2000, 3);
  CHECK_THROWS_AS(topk_stepdown(Problem({1.0, 0.0}, mc, 0.1), 1), UnsupportedMethodError);
}

TEST_CASE("property: k = 1 matches the winner lower radius") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 1 + rng() % 8;
    std::uniform_real_distribution<double> u(-8.0, 0.0);
    std::vector<double> x(m);
    for (auto& v : x) v = u(rng);
    const Problem p(x, gauss(m), 0.1);
    const auto r = topk_interval(p, 1);
    const auto w = winner_interval_root(p);
    CHECK(std::fabs(r.r_max - w.r_l) <= 2 * r.diagnostics.at("grid_step"));
  }
}

TEST_CASE("property: dominance, monotone in k, exhaustive equality") {
  std::mt19937_64 rng(78);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 2 + rng() % 9;
    std::uniform_real_distribution<double> u(-10.0, 0.0);
    std::vector<double> x(m);
    for (auto& v : x) v = u(rng);
    const Problem p(x, gauss(m), 0.1);
    double prev = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
      const auto r = topk_interval(p, k, GridOptions{501, false, false});
      const auto e = topk_interval(p, k, GridOptions{501, true, false});
      CHECK(r.r_max == e.r_max);
      CHECK(topk_stepdown(p, k) >= r.r_max - r.diagnostics.at("grid_step"));
      CHECK(topk_stepdown(p, k) >= topk_interval(p, k).r_max);
      CHECK(r.r_max >= prev - r.diagnostics.at("grid_step"));
      CHECK(r.r_max <= r.diagnostics.at("r0"));
      prev = r.r_max;
    }
  }
}

TEST_CASE("property: brute-force parameter set lies in the top-k box") {
  std::mt19937_64 rng(79);
  const double alpha = 0.1;
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t m = 2 + rng() % 2;
    std::uniform_real_distribution<double> u(-7.0, 0.0);
    std::vector<double> x(m);
    for (auto& v : x) v = u(rng);
    const Problem p(x, gauss(m), alpha);
    const double r0 = simultaneous_radius(p.bound(), alpha);
    const double xmax = *std::max_element(x.begin(), x.end());
    for (std::size_t k = 1; k < m; ++k) {
      const auto res = topk_interval(p, k);
      const int n = m == 2 ? 121 : 41;
      std::vector<double> lo(m), hi(m);
      for (std::size_t j = 0; j < m; ++j) {
        lo[j] = x[j] - 3.0 * r0 - (xmax - x[j]);
        hi[j] = x[j] + r0;
      }
      std::vector<int> c(m, 0);
      std::vector<double> th(m);
      bool ok = true;
      std::size_t accepted = 0;
      while (true) {
        for (std::size_t j = 0; j < m; ++j) th[j] = lo[j] + (hi[j] - lo[j]) * c[j] / (n - 1);
        if (oracle::zoom_accepts(x, th, alpha, k)) {
          ++accepted;
          for (auto w : res.winner_indices)
            if (std::fabs(th[w] - x[w]) > res.r_max + 1e-9) ok = false;
        }
        std::size_t d = 0;
        while (d < m && ++c[d] == n) c[d++] = 0;
        if (d == m) break;
      }
      CHECK(accepted > 0);
      CHECK(ok);
    }
  }
}
