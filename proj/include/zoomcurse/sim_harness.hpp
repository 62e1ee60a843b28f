#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace zoomcurse {

enum class SimMethod { zoom_grid, zoom_stepdown, bonferroni, uncorrected, topk, identity_set };

const char* sim_method_name(SimMethod m);
SimMethod parse_sim_method(const std::string& name);

struct SimConfig {
  std::size_t m = 10;
  std::size_t m_winners = 1;
  double c = 4.0;
  double rho = 0.0;
  double alpha = 0.1;
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  std::vector<SimMethod> methods{SimMethod::zoom_grid, SimMethod::zoom_stepdown, SimMethod::bonferroni,
                                 SimMethod::uncorrected};
  std::size_t topk_k = 3;
  std::size_t mc_samples = 100000;
  std::size_t grid_points = 2001;
  std::size_t width_trials = 100;  // leading trials used for the short-run width summary
  unsigned workers = 1;
  bool keep_trials = false;
};

struct WidthSummary {
  double median = 0.0;
  double q05 = 0.0;
  double q95 = 0.0;
};

struct MethodSummary {
  SimMethod method = SimMethod::zoom_grid;
  std::size_t covered = 0;
  std::size_t trials = 0;
  double coverage = 0.0;
  WidthSummary width;        // all trials; identity_set reports set sizes
  WidthSummary width_short;  // first width_trials trials
  std::vector<double> widths;
  std::vector<char> hits;
};

struct SimReport {
  SimConfig config;
  double r_sim = 0.0;
  std::vector<double> theta;
  std::size_t k_used = 0;
  std::vector<MethodSummary> methods;
  // Per-trial ordering checks, counted only when both methods ran.
  std::size_t zoom_above_bonferroni = 0;
  std::size_t grid_above_stepdown = 0;
  std::size_t stepdown_clamp_binding = 0;

  const MethodSummary* find(SimMethod m) const;
};

SimReport run_simulation(const SimConfig& config);

struct WidthRatio {
  SimMethod numerator;
  SimMethod denominator;
  double ratio;
};

struct WidthComparison {
  std::vector<std::pair<SimMethod, double>> medians;  // sorted ascending by median
  std::vector<WidthRatio> ratios;                     // every ordered pair, report order
};

WidthComparison width_comparison(const SimReport& report);

// Linear interpolation between order statistics (type 7).
double sample_quantile(std::vector<double> values, double p);

}  // namespace zoomcurse
