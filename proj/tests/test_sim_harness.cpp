#include <doctest.h>

#include <cmath>

#include "frozen.hpp"
#include "zoomcurse/error.hpp"
#include "zoomcurse/sim_harness.hpp"

using namespace zoomcurse;

namespace {
SimConfig small(std::size_t m, std::size_t mw, double c, double rho, std::size_t trials) {
  SimConfig cfg;
  cfg.m = m;
  cfg.m_winners = mw;
  cfg.c = c;
  cfg.rho = rho;
  cfg.trials = trials;
  cfg.seed = 20260101;
  cfg.mc_samples = 20000;
  cfg.grid_points = 401;
  return cfg;
}

double floor_for(std::size_t trials) { return 0.9 - 3.0 * std::sqrt(0.09 / static_cast<double>(trials)); }
}  // namespace

TEST_CASE("single candidate: every method is the marginal interval") {
  auto cfg = small(1, 1, 4.0, 0.0, 2000);
  cfg.methods = {SimMethod::zoom_grid, SimMethod::zoom_stepdown, SimMethod::bonferroni, SimMethod::uncorrected,
                 SimMethod::topk, SimMethod::identity_set};
  cfg.mc_samples = 100000;
  const auto rep = run_simulation(cfg);
  CHECK(rep.k_used == 1);
  for (const auto& s : rep.methods) {
    if (s.method == SimMethod::identity_set) {
      CHECK(s.coverage == 1.0);
      continue;
    }
    CHECK(std::fabs(s.coverage - 0.9) <= 0.02);
  }
  CHECK(std::fabs(rep.find(SimMethod::zoom_stepdown)->width.median - 2 * frozen::kZ90) < 1e-9);
  CHECK(std::fabs(rep.find(SimMethod::bonferroni)->width.median - 2 * frozen::kZ90) < 1e-9);
  CHECK(std::fabs(rep.find(SimMethod::uncorrected)->width.median - 2 * frozen::kZ90) < 1e-9);
  // The exact bound carries Monte-Carlo error in its quantile.
  CHECK(std::fabs(rep.find(SimMethod::zoom_grid)->width.median - 2 * frozen::kZ90) < 0.06);
  const auto wc = width_comparison(rep);
  for (const auto& r : wc.ratios)
    if (r.numerator == SimMethod::zoom_stepdown && r.denominator == SimMethod::uncorrected)
      CHECK(r.ratio == doctest::Approx(1.0));
}

TEST_CASE("all candidates tied: zoom never exceeds Bonferroni") {
  const auto rep = run_simulation(small(10, 10, 4.0, 0.0, 300));
  CHECK(rep.zoom_above_bonferroni == 0);
  CHECK(rep.grid_above_stepdown == 0);
  const auto* sd = rep.find(SimMethod::zoom_stepdown);
  const auto* bf = rep.find(SimMethod::bonferroni);
  CHECK(sd->width.median <= bf->width.median + 1e-12);
  for (const auto& s : rep.methods) {
    CHECK(s.coverage >= 0.0);
    CHECK(s.coverage <= 1.0);
    CHECK(s.width.q05 <= s.width.median);
    CHECK(s.width.median <= s.width.q95);
  }
}

TEST_CASE("well separated winner: zoom approaches uncorrected width") {
  auto cfg = small(100, 1, 8.0, 0.0, 100);
  cfg.mc_samples = 100000;
  const auto rep = run_simulation(cfg);
  const double unc = rep.find(SimMethod::uncorrected)->width.median;
  CHECK(std::fabs(rep.find(SimMethod::zoom_grid)->width.median / unc - 1.0) < 0.05);
  CHECK(rep.find(SimMethod::zoom_grid)->width.median < 0.95 * rep.find(SimMethod::bonferroni)->width.median);
  CHECK(rep.zoom_above_bonferroni == 0);
  CHECK(rep.grid_above_stepdown == 0);
}

TEST_CASE("uncorrected intervals undercover with several tied winners") {
  auto cfg = small(10, 5, 4.0, 0.0, 2000);
  cfg.methods = {SimMethod::zoom_grid, SimMethod::zoom_stepdown, SimMethod::uncorrected};
  const auto rep = run_simulation(cfg);
  CHECK(rep.find(SimMethod::uncorrected)->coverage < floor_for(cfg.trials));
  CHECK(rep.find(SimMethod::zoom_grid)->coverage >= floor_for(cfg.trials));
  CHECK(rep.find(SimMethod::zoom_stepdown)->coverage >= floor_for(cfg.trials));
}

TEST_CASE("reports do not depend on the worker count") {
  auto cfg = small(6, 2, 4.0, 0.5, 150);
  cfg.methods = {SimMethod::zoom_grid, SimMethod::zoom_stepdown, SimMethod::topk, SimMethod::identity_set};
  cfg.keep_trials = true;
  const auto a = run_simulation(cfg);
  cfg.workers = 4;
  const auto b = run_simulation(cfg);
  REQUIRE(a.methods.size() == b.methods.size());
  CHECK(a.r_sim == b.r_sim);
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    CHECK(a.methods[i].widths == b.methods[i].widths);
    CHECK(a.methods[i].hits == b.methods[i].hits);
  }
  CHECK(a.stepdown_clamp_binding == b.stepdown_clamp_binding);
  cfg.seed += 1;
  const auto c = run_simulation(cfg);
  CHECK(c.methods[0].widths != a.methods[0].widths);
}

TEST_CASE("configuration errors") {
  auto cfg = small(5, 1, 4.0, 0.0, 10);
  cfg.trials = 0;
  CHECK_THROWS_AS(run_simulation(cfg), DomainError);
  cfg = small(5, 6, 4.0, 0.0, 10);
  CHECK_THROWS_AS(run_simulation(cfg), DomainError);
  cfg = small(5, 0, 4.0, 0.0, 10);
  CHECK_THROWS_AS(run_simulation(cfg), DomainError);
  cfg = small(5, 1, 4.0, 1.0, 10);
  CHECK_THROWS_AS(run_simulation(cfg), DomainError);
  cfg = small(5, 1, 0.0, 0.0, 10);
  CHECK_THROWS_AS(run_simulation(cfg), DomainError);
  CHECK_THROWS_AS(parse_sim_method("nope"), InputError);
  CHECK(parse_sim_method("topk") == SimMethod::topk);
}

TEST_CASE("sample_quantile uses linear interpolation") {
  CHECK(sample_quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == 2.5);
  CHECK(sample_quantile({5.0}, 0.95) == 5.0);
  CHECK(sample_quantile({0.0, 10.0}, 0.05) == doctest::Approx(0.5));
  CHECK_THROWS_AS(sample_quantile({}, 0.5), DomainError);
}
