#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zoomcurse/noise_mc.hpp"

namespace zoomcurse {

// Two-sided marginal tail bound S(r) >= P(|xi| > r) with its inverse.
class TailModel {
 public:
  enum class Kind { gaussian, sub_gaussian, empirical };

  static TailModel gaussian(double scale);
  // S(r) = min(1, 2 exp(-r^2 / (2 proxy^2)))
  static TailModel sub_gaussian(double proxy);
  // Knots (radius, exceedance), radii increasing and exceedance non-increasing.
  // S is piecewise linear between knots and 0 past the last one. A (0, 1) knot
  // is prepended when the table does not start at radius 0.
  static TailModel empirical(std::vector<double> radii, std::vector<double> exceedance);
  static TailModel empirical_from_csv(const std::filesystem::path& path);
  // gaussian:<scale> | subgaussian:<proxy> | empirical:<csv path>
  static TailModel parse(std::string_view text);

  double tail(double r) const;
  // Smallest r with tail(r) <= q. Throws DomainError unless 0 < q <= 1 and
  // InfeasibleError for q < 1e-12.
  double inverse(double q) const;

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  std::string describe() const;
  bool operator==(const TailModel& other) const;

 private:
  Kind kind_ = Kind::gaussian;
  double param_ = 1.0;
  std::string source_;
  std::vector<double> radii_;
  std::vector<double> exceed_;
};

inline constexpr double kMinTailProbability = 1e-12;

double marginal_radius(const TailModel& model, double q);

// Joint exceedance bound S_joint(v) >= P(exists i: |xi_i| > v_i).
class JointBound {
 public:
  static JointBound union_of(std::vector<TailModel> models);
  static JointBound union_of(const TailModel& model, std::size_t m);
  // Empirical exceedance over a fixed bank. The envelope is an optional
  // marginal bound valid for every coordinate; it enables step-down envelopes
  // but is never used for the exact computation itself.
  static JointBound exact_mc(std::shared_ptr<const SampleBank> bank, bool exchangeable,
                             std::optional<TailModel> envelope = std::nullopt);
  static JointBound exact_mc(const NoiseSampler& sampler, std::size_t n, std::uint64_t seed,
                             std::optional<TailModel> envelope = std::nullopt,
                             unsigned workers = 1);

  bool is_union() const { return mc_ == nullptr; }
  std::size_t dimension() const;
  double exceedance(std::span<const double> v) const;

  const std::vector<TailModel>& marginals() const { return models_; }
  // Shared marginal when every coordinate has the same bound.
  std::optional<TailModel> common_marginal() const;
  // Permutation symmetric: identical union marginals or exchangeable bank.
  bool symmetric() const;

  const SampleBank* bank() const;
  const MStatisticIndex* mc_index() const;
  std::string describe() const;

 private:
  struct McState {
    std::shared_ptr<const SampleBank> bank;
    MStatisticIndex index;
    bool exchangeable;
    std::optional<TailModel> envelope;
  };
  std::vector<TailModel> models_;
  bool identical_ = false;
  std::shared_ptr<const McState> mc_;
};

double joint_exceedance(const JointBound& bound, std::span<const double> v);

}  // namespace zoomcurse
