#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zoomcurse/tail_bounds.hpp"

namespace zoomcurse {

class Problem {
 public:
  Problem(std::vector<double> x, JointBound bound, double alpha, std::vector<std::string> labels = {});

  const std::vector<double>& x() const { return x_; }
  const JointBound& bound() const { return bound_; }
  double alpha() const { return alpha_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return x_.size(); }
  std::size_t winner() const { return winner_; }
  double x_winner() const { return x_[winner_]; }

 private:
  std::vector<double> x_;
  JointBound bound_;
  double alpha_;
  std::vector<std::string> labels_;
  std::size_t winner_ = 0;
};

// argmax with the lowest index on ties.
std::size_t argmax_lowest(std::span<const double> v);

// Delta_j = max(theta) - theta_j
std::vector<double> gaps_from_theta(std::span<const double> theta);

// X_win - X_j
std::vector<double> empirical_gaps(std::span<const double> x);

struct ActiveRadius {
  double r = 0.0;
  std::vector<std::size_t> active;  // {j : gaps_j <= 2 r}
  double alpha_used = 0.0;
};

// Smallest r with S_joint(max(r, gaps / 2)) <= alpha.
ActiveRadius active_radius(const JointBound& bound, std::span<const double> gaps, double alpha);
double active_radius_value(const JointBound& bound, std::span<const double> gaps, double alpha);

// r_alpha at zero gaps: the fully simultaneous radius.
double simultaneous_radius(const JointBound& bound, double alpha);

std::vector<double> worst_case_theta(std::span<const double> x, std::size_t winner, double t);

// r_alpha at the gaps of worst_case_theta(X, winner, t).
double worst_case_radius(const Problem& problem, double t);

bool contains(const Problem& problem, double t);

enum class Method { grid, root, stepdown };
const char* method_name(Method m);

struct WinnerInterval {
  double t_l = 0.0;
  double t_u = 0.0;
  double r_l = 0.0;
  double r_u = 0.0;
  double x_winner = 0.0;
  std::size_t winner = 0;
  Method method = Method::grid;
  std::string target = "winner_value";  // or "population_max"
  std::map<std::string, double> diagnostics;

  bool covers(double value) const { return t_l <= value && value <= t_u; }
  double width() const { return t_u - t_l; }
};

struct GridOptions {
  std::size_t points = 2001;  // raised to the next odd number so X_win is a node
  bool exhaustive = false;    // evaluate every node instead of the monotone shortcuts
  bool clamp_to_stepdown = true;
};

WinnerInterval winner_interval_grid(const Problem& problem, const GridOptions& options = {});
WinnerInterval winner_interval_root(const Problem& problem);
WinnerInterval winner_interval_stepdown(const Problem& problem);
WinnerInterval winner_interval(const Problem& problem, Method method, const GridOptions& options = {});

// Lower and upper endpoint functions for union bounds; emp_gaps are X_win - X_j.
double lower_endpoint_function(const JointBound& bound, std::span<const double> emp_gaps, double r);
double upper_endpoint_function(const JointBound& bound, std::span<const double> emp_gaps, double r);

// Scan parameter for the largest root of the lower endpoint function.
inline constexpr int kRootScanSteps = 1024;
inline constexpr double kRootTolerance = 1e-10;

}  // namespace zoomcurse
