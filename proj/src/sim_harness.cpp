#include "zoomcurse/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <thread>

#include "zoomcurse/error.hpp"
#include "zoomcurse/noise_mc.hpp"
#include "zoomcurse/stepdown.hpp"
#include "zoomcurse/topk.hpp"
#include "zoomcurse/winner_meta.hpp"
#include "zoomcurse/zoom_core.hpp"

namespace zoomcurse {

const char* sim_method_name(SimMethod m) {
  switch (m) {
    case SimMethod::zoom_grid:
      return "zoom_grid";
    case SimMethod::zoom_stepdown:
      return "zoom_stepdown";
    case SimMethod::bonferroni:
      return "bonferroni";
    case SimMethod::uncorrected:
      return "uncorrected";
    case SimMethod::topk:
      return "topk";
    case SimMethod::identity_set:
      return "identity_set";
  }
  return "?";
}

SimMethod parse_sim_method(const std::string& name) {
  for (auto m : {SimMethod::zoom_grid, SimMethod::zoom_stepdown, SimMethod::bonferroni, SimMethod::uncorrected,
                 SimMethod::topk, SimMethod::identity_set})
    if (name == sim_method_name(m)) return m;
  throw InputError("unknown simulation method '" + name + "'");
}

const MethodSummary* SimReport::find(SimMethod m) const {
  for (const auto& s : methods)
    if (s.method == m) return &s;
  return nullptr;
}

double sample_quantile(std::vector<double> v, double p) {
  if (v.empty()) throw DomainError("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double h = p * static_cast<double>(v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (h - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

namespace {

bool wants(const SimConfig& c, SimMethod m) {
  return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

WidthSummary summarize(const std::vector<double>& w) {
  return {sample_quantile(w, 0.5), sample_quantile(w, 0.05), sample_quantile(w, 0.95)};
}

struct TrialOut {
  double width[6] = {0, 0, 0, 0, 0, 0};
  char hit[6] = {0, 0, 0, 0, 0, 0};
  bool zoom_above_bonf = false;
  bool grid_above_sd = false;
  bool clamp = false;
};

constexpr std::uint64_t kBankStream = 0xB4A7C0DEULL;

}  // namespace

SimReport run_simulation(const SimConfig& cfg) {
  if (cfg.trials == 0) throw DomainError("trials must be at least 1");
  if (cfg.m == 0) throw DomainError("m must be at least 1");
  if (cfg.m_winners < 1 || cfg.m_winners > cfg.m) throw DomainError("m_winners must lie in [1, m]");
  if (!(cfg.rho >= 0.0 && cfg.rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) throw DomainError("c must be positive");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (cfg.methods.empty()) throw DomainError("no simulation methods requested");
  if (cfg.mc_samples < 1000) throw DomainError("mc_samples must be at least 1000");

  SimReport rep;
  rep.config = cfg;
  const std::size_t m = cfg.m;
  const auto sampler = NoiseSampler::equicorrelated(m, cfg.rho);
  auto bank = std::make_shared<const SampleBank>(
      draw_bank(sampler, cfg.mc_samples, derive_seed(cfg.seed, kBankStream), std::max(1u, cfg.workers)));
  rep.r_sim = mc_quantile(m_statistic(*bank, std::vector<double>(m, 0.0)), 1.0 - cfg.alpha);

  const TailModel unit = TailModel::gaussian(1.0);
  const JointBound mc = JointBound::exact_mc(bank, true, unit);
  const JointBound uni = JointBound::union_of(unit, m);

  rep.theta.assign(m, 0.0);
  for (std::size_t i = cfg.m_winners; i < m; ++i) rep.theta[i] = -cfg.c * rep.r_sim;
  const double theta_max = 0.0;
  rep.k_used = std::min(cfg.topk_k, m);

  const double r_bonf = unit.inverse(cfg.alpha / static_cast<double>(m));
  const double r_unc = unit.inverse(cfg.alpha);
  const bool need_grid = wants(cfg, SimMethod::zoom_grid) || wants(cfg, SimMethod::identity_set);
  GridOptions gopt;
  gopt.points = cfg.grid_points;

  auto run_trial = [&](std::size_t trial) {
    TrialOut o;
    std::mt19937_64 rng(derive_seed(cfg.seed, trial + 1));
    std::vector<double> x(m);
    sampler.draw(rng, x);
    for (std::size_t i = 0; i < m; ++i) x[i] += rep.theta[i];
    const std::size_t win = argmax_lowest(x);
    const double target = rep.theta[win];
    const double xw = x[win];

    std::optional<WinnerInterval> grid, sd;
    std::optional<Problem> pmc;
    if (need_grid || wants(cfg, SimMethod::topk)) pmc.emplace(x, mc, cfg.alpha);
    if (need_grid) grid = winner_interval_grid(*pmc, gopt);
    if (wants(cfg, SimMethod::zoom_stepdown)) sd = winner_interval_stepdown(Problem(x, uni, cfg.alpha));

    if (wants(cfg, SimMethod::zoom_grid)) {
      o.width[0] = grid->width();
      o.hit[0] = grid->covers(target);
      o.clamp = grid->diagnostics.at("stepdown_clamp_lower") > 0.0 || grid->diagnostics.at("stepdown_clamp_upper") > 0.0;
    }
    if (sd) {
      o.width[1] = sd->width();
      o.hit[1] = sd->covers(target);
    }
    o.width[2] = 2.0 * r_bonf;
    o.hit[2] = std::fabs(xw - target) <= r_bonf;
    o.width[3] = 2.0 * r_unc;
    o.hit[3] = std::fabs(xw - target) <= r_unc;
    if (wants(cfg, SimMethod::topk)) {
      const auto tk = topk_interval(*pmc, rep.k_used, gopt);
      bool all = true;
      for (auto j : tk.winner_indices) all = all && std::fabs(x[j] - rep.theta[j]) <= tk.r_max;
      o.width[4] = 2.0 * tk.r_max;
      o.hit[4] = all;
    }
    if (wants(cfg, SimMethod::identity_set)) {
      const auto ids = winner_identity_set(*pmc, *grid);
      bool all = true;
      for (std::size_t i = 0; i < m; ++i)
        if (rep.theta[i] == theta_max)
          all = all && std::binary_search(ids.indices.begin(), ids.indices.end(), i);
      o.width[5] = static_cast<double>(ids.indices.size());
      o.hit[5] = all;
    }
    const double eps = 1e-12;
    if (grid && wants(cfg, SimMethod::zoom_grid)) o.zoom_above_bonf = grid->width() > 2.0 * r_bonf + eps;
    if (sd) o.zoom_above_bonf = o.zoom_above_bonf || sd->width() > 2.0 * r_bonf + eps;
    if (grid && sd && wants(cfg, SimMethod::zoom_grid))
      o.grid_above_sd = grid->r_l > sd->r_l + eps || grid->r_u > sd->r_u + eps;
    return o;
  };

  std::vector<TrialOut> out(cfg.trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(cfg.trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) out[t] = run_trial(t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < cfg.trials; t += workers) out[t] = run_trial(t);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  const SimMethod order[] = {SimMethod::zoom_grid, SimMethod::zoom_stepdown, SimMethod::bonferroni,
                             SimMethod::uncorrected, SimMethod::topk, SimMethod::identity_set};
  for (int k = 0; k < 6; ++k) {
    if (!wants(cfg, order[k])) continue;
    MethodSummary s;
    s.method = order[k];
    s.trials = cfg.trials;
    std::vector<double> w(cfg.trials);
    std::vector<char> h(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      w[t] = out[t].width[k];
      h[t] = out[t].hit[k];
      s.covered += h[t] ? 1 : 0;
    }
    s.coverage = static_cast<double>(s.covered) / static_cast<double>(cfg.trials);
    s.width = summarize(w);
    const std::size_t n_short = std::min(cfg.width_trials == 0 ? cfg.trials : cfg.width_trials, cfg.trials);
    s.width_short = summarize(std::vector<double>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n_short)));
    if (cfg.keep_trials) {
      s.widths = std::move(w);
      s.hits = std::move(h);
    }
    rep.methods.push_back(std::move(s));
  }
  for (const auto& o : out) {
    rep.zoom_above_bonferroni += o.zoom_above_bonf ? 1 : 0;
    rep.grid_above_stepdown += o.grid_above_sd ? 1 : 0;
    rep.stepdown_clamp_binding += o.clamp ? 1 : 0;
  }
  return rep;
}

WidthComparison width_comparison(const SimReport& report) {
  WidthComparison wc;
  for (const auto& s : report.methods) wc.medians.emplace_back(s.method, s.width.median);
  for (const auto& a : report.methods)
    for (const auto& b : report.methods) {
      if (a.method == b.method) continue;
      const double r = b.width.median > 0.0 ? a.width.median / b.width.median : std::nan("");
      wc.ratios.push_back({a.method, b.method, r});
    }
  std::stable_sort(wc.medians.begin(), wc.medians.end(),
                   [](const auto& p, const auto& q) { return p.second < q.second; });
  return wc;
}

}  // namespace zoomcurse
