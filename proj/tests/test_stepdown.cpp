#include <doctest.h>

#include <cmath>
#include <random>

#include "frozen.hpp"
#include "oracle.hpp"
#include "zoomcurse/error.hpp"
#include "zoomcurse/stepdown.hpp"
#include "zoomcurse/zoom_core.hpp"

using namespace zoomcurse;

namespace {
const TailModel kG = TailModel::gaussian(1.0);

std::vector<double> random_gaps(std::mt19937_64& rng) {
  const std::size_t m = 1 + rng() % 50;
  std::uniform_real_distribution<double> scale(0.0, 15.0);
  const double s = scale(rng);
  std::uniform_real_distribution<double> u(0.0, s);
  std::vector<double> g(m);
  for (auto& v : g) v = u(rng);
  g[rng() % m] = 0.0;
  return g;
}
}  // namespace

TEST_CASE("stepdown_lower examples") {
  CHECK(std::fabs(stepdown_lower(std::vector<double>{0.0}, kG, 0.1).radius - frozen::kZ90) < 1e-12);
  const auto t = stepdown_lower(std::vector<double>{10.0, 0.0}, kG, 0.1);
  REQUIRE(t.steps.size() == 2);
  CHECK(std::fabs(t.steps[0].r_hat - frozen::kZ95) < 1e-12);
  CHECK_FALSE(t.steps[0].terminated);
  CHECK(std::fabs(t.steps[1].alpha_j - frozen::kStepLowerAlpha2) < 1e-12);
  CHECK(t.steps[1].terminated);
  CHECK(std::fabs(t.radius - frozen::kStepLower) < 1e-12);
  CHECK(std::fabs(t.radius - 1.682) < 1e-3);
  CHECK(t.sorted_gaps == std::vector<double>{10.0, 0.0});
  const auto b = stepdown_lower(std::vector<double>{1.0, 0.5, 0.0}, kG, 0.1);
  CHECK(b.steps.size() == 1);
  CHECK(std::fabs(b.radius - frozen::kZ3) < 1e-12);
}

TEST_CASE("stepdown_upper examples") {
  CHECK(std::fabs(stepdown_upper(std::vector<double>{0.0}, kG, 0.1).radius - frozen::kZ90) < 1e-12);
  const auto t = stepdown_upper(std::vector<double>{10.0, 0.0}, kG, 0.1);
  REQUIRE(t.steps.size() == 2);
  CHECK(std::fabs(t.steps[1].alpha_j - frozen::kStepUpperAlpha2) < 1e-12);
  CHECK(std::fabs(t.radius - frozen::kStepUpper) < 1e-12);
  CHECK(std::fabs(t.radius - 1.6455) < 1e-3);
  const auto c = stepdown_upper(std::vector<double>{3.0, 0.0}, kG, 0.1);
  CHECK(c.steps.size() == 1);
  CHECK(std::fabs(c.radius - frozen::kZ95) < 1e-12);
}

TEST_CASE("stepdown errors") {
  CHECK_THROWS_AS(stepdown_lower(std::vector<double>{1.0, 2.0}, kG, 0.1), DomainError);
  CHECK_THROWS_AS(stepdown_lower(std::vector<double>{}, kG, 0.1), DomainError);
  CHECK_THROWS_AS(stepdown_lower(std::vector<double>{0.0, -1.0}, kG, 0.1), DomainError);
  CHECK_THROWS_AS(stepdown_upper(std::vector<double>{0.0}, kG, 1.0), DomainError);
  CHECK_THROWS_AS(stepdown_upper(std::vector<double>{0.0}, kG, 0.0), DomainError);
}

TEST_CASE("property: step-down dominates the root radii and meets the budget") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 500; ++rep) {
    const auto g = random_gaps(rng);
    const double m = static_cast<double>(g.size());
    std::vector<double> x(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) x[j] = -g[j];
    const Problem p(x, JointBound::union_of(kG, g.size()), 0.1);
    const auto root = winner_interval_root(p);
    const auto lo = stepdown_lower(g, kG, 0.1);
    const auto up = stepdown_upper(g, kG, 0.1);
    CHECK(lo.radius >= root.r_l - 1e-9);
    CHECK(up.radius >= root.r_u - 1e-9);
    CHECK(oracle::lower_fn(g, lo.radius) <= 0.1 + 1e-12);
    CHECK(oracle::upper_fn(g, up.radius) <= 0.1 + 1e-12);
    CHECK(lo.radius >= up.radius);
    CHECK(lo.radius >= kG.inverse(0.1) - 1e-12);
    CHECK(up.radius >= kG.inverse(0.1) - 1e-12);
    CHECK(lo.radius <= kG.inverse(0.1 / m) + 1e-12);
    CHECK(up.radius <= kG.inverse(0.1 / m) + 1e-12);
    for (std::size_t s = 1; s < lo.steps.size(); ++s) {
      CHECK(lo.steps[s].r_hat <= lo.steps[s - 1].r_hat);
      CHECK(lo.steps[s].alpha_j <= lo.steps[s - 1].alpha_j);
    }
    for (std::size_t s = 1; s < up.steps.size(); ++s) CHECK(up.steps[s].alpha_j <= up.steps[s - 1].alpha_j);
    CHECK(lo.steps.back().terminated);
    CHECK(up.steps.back().terminated);
  }
}

TEST_CASE("property: heavier tails give larger step-down radii") {
  std::mt19937_64 rng(8);
  const auto sg = TailModel::sub_gaussian(1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto g = random_gaps(rng);
    CHECK(stepdown_lower(g, sg, 0.1).radius >= stepdown_lower(g, kG, 0.1).radius - 1e-12);
  }
}
