#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace zoomcurse {

// splitmix64 finalizer applied to (master, index); used for per-block and
// per-trial seeds so results do not depend on the number of workers.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class NoiseSampler {
 public:
  enum class Kind { equicorrelated_gaussian, diagonal_gaussian, table };

  // xi_i = sqrt(rho) Z0 + sqrt(1 - rho) Z_i
  static NoiseSampler equicorrelated(std::size_t m, double rho);
  static NoiseSampler diagonal(std::vector<double> scales);
  // Row-major rows x cols matrix of pre-drawn errors.
  static NoiseSampler table(std::size_t rows, std::size_t cols, std::vector<double> samples);
  // CSV, one draw per line; an optional non-numeric first line is skipped.
  static NoiseSampler table_from_csv(const std::filesystem::path& path);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return m_; }
  double rho() const { return rho_; }
  const std::vector<double>& scales() const { return scales_; }
  std::size_t table_rows() const;
  std::span<const double> table_data() const;
  // Equicorrelated draws are exchangeable; the other kinds are not declared so.
  bool exchangeable() const;
  std::string describe() const;

  void draw(std::mt19937_64& rng, std::span<double> out) const;

 private:
  Kind kind_ = Kind::equicorrelated_gaussian;
  std::size_t m_ = 0;
  double rho_ = 0.0;
  std::vector<double> scales_;
  std::shared_ptr<const std::vector<double>> table_;
  std::size_t table_rows_ = 0;
};

struct SampleBank {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  std::vector<double> data;  // row-major

  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline constexpr std::size_t kBankBlockRows = 4096;

// Block b of 4096 rows is drawn from derive_seed(seed, b). A table sampler
// returns its first n rows.
SampleBank draw_bank(const NoiseSampler& sampler, std::size_t n, std::uint64_t seed,
                     unsigned workers = 1);

// M(xi, gaps) = max_j |xi_j| 1{|xi_j| > gaps_j / 2}, one value per row.
std::vector<double> m_statistic(const SampleBank& bank, std::span<const double> gaps);

// 1-based ascending rank ceil(level * n), guarded against round-off in level * n.
std::size_t upper_rank(std::size_t n, double level);

// Upper order statistic at upper_rank(n, level); never interpolated.
double mc_quantile(std::span<const double> values, double level);

// Same value as mc_quantile(m_statistic(bank, gaps), level), computed by
// merging per-column sorted |xi| lists. Only entries above gaps_j / 2 are
// visited, so wide gaps make the query cheap.
class MStatisticIndex {
 public:
  explicit MStatisticIndex(const SampleBank& bank);

  double quantile(std::span<const double> gaps, double level) const;
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> abs_;          // column-major, each column descending
  std::vector<std::uint32_t> row_;   // matching row ids
};

}  // namespace zoomcurse
