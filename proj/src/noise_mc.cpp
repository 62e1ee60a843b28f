#include "zoomcurse/noise_mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "zoomcurse/error.hpp"

namespace zoomcurse {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

NoiseSampler NoiseSampler::equicorrelated(std::size_t m, double rho) {
  if (m == 0) throw DomainError("equicorrelated sampler needs m >= 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0, 1]");
  NoiseSampler s;
  s.kind_ = Kind::equicorrelated_gaussian;
  s.m_ = m;
  s.rho_ = rho;
  return s;
}

NoiseSampler NoiseSampler::diagonal(std::vector<double> scales) {
  if (scales.empty()) throw DomainError("diagonal sampler needs at least one scale");
  for (double v : scales)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("scales must be positive and finite");
  NoiseSampler s;
  s.kind_ = Kind::diagonal_gaussian;
  s.m_ = scales.size();
  s.scales_ = std::move(scales);
  return s;
}

NoiseSampler NoiseSampler::table(std::size_t rows, std::size_t cols, std::vector<double> samples) {
  if (rows == 0 || cols == 0) throw DomainError("empty noise table");
  if (samples.size() != rows * cols) throw DimensionError("noise table size does not match rows x cols");
  for (double v : samples)
    if (!std::isfinite(v)) throw DomainError("noise table entries must be finite");
  NoiseSampler s;
  s.kind_ = Kind::table;
  s.m_ = cols;
  s.table_rows_ = rows;
  s.table_ = std::make_shared<const std::vector<double>>(std::move(samples));
  return s;
}

NoiseSampler NoiseSampler::table_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open noise table " + path.string());
  std::vector<double> data;
  std::size_t cols = 0, rows = 0;
  std::string line;
  std::size_t lineno = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (rows == 0 && cols == 0 && !header_checked) {
      // A first line that does not start with a number is a header.
      header_checked = true;
      char* end = nullptr;
      const std::string first = line.substr(0, line.find(','));
      std::strtod(first.c_str(), &end);
      if (end == first.c_str()) continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::size_t n = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
        data.push_back(v);
      } catch (const std::exception&) {
        throw InputError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
      ++n;
    }
    if (cols == 0) cols = n;
    if (n != cols)
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(cols) +
                       " columns");
    ++rows;
  }
  if (rows == 0) throw InputError("noise table " + path.string() + " is empty");
  return table(rows, cols, std::move(data));
}

std::size_t NoiseSampler::table_rows() const { return table_rows_; }

std::span<const double> NoiseSampler::table_data() const {
  if (!table_) return {};
  return {table_->data(), table_->size()};
}

bool NoiseSampler::exchangeable() const { return kind_ == Kind::equicorrelated_gaussian; }

std::string NoiseSampler::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::equicorrelated_gaussian:
      os << "equicorrelated:" << rho_;
      break;
    case Kind::diagonal_gaussian:
      os << "diagonal";
      break;
    case Kind::table:
      os << "table";
      break;
  }
  return os.str();
}

void NoiseSampler::draw(std::mt19937_64& rng, std::span<double> out) const {
  if (out.size() != m_) throw DimensionError("draw buffer has wrong length");
  std::normal_distribution<double> z(0.0, 1.0);
  switch (kind_) {
    case Kind::equicorrelated_gaussian: {
      const double a = std::sqrt(rho_), b = std::sqrt(1.0 - rho_);
      const double z0 = z(rng);
      for (auto& v : out) v = a * z0 + b * z(rng);
      break;
    }
    case Kind::diagonal_gaussian:
      for (std::size_t i = 0; i < m_; ++i) out[i] = scales_[i] * z(rng);
      break;
    case Kind::table: {
      std::uniform_int_distribution<std::size_t> pick(0, table_rows_ - 1);
      const std::size_t r = pick(rng);
      std::copy_n(table_->data() + r * m_, m_, out.begin());
      break;
    }
  }
}

SampleBank draw_bank(const NoiseSampler& sampler, std::size_t n, std::uint64_t seed, unsigned workers) {
  if (n == 0) throw DomainError("bank size must be at least 1");
  SampleBank bank;
  bank.rows = n;
  bank.cols = sampler.dimension();
  bank.seed = seed;
  bank.data.resize(n * bank.cols);

  if (sampler.kind() == NoiseSampler::Kind::table) {
    if (n > sampler.table_rows())
      throw DomainError("requested " + std::to_string(n) + " rows from a table of " +
                        std::to_string(sampler.table_rows()));
    // The table is passed through in file order; no resampling.
    auto src = sampler.table_data();
    std::copy_n(src.begin(), n * bank.cols, bank.data.begin());
    return bank;
  }

  const std::size_t blocks = (n + kBankBlockRows - 1) / kBankBlockRows;
  auto fill = [&](std::size_t b) {
    std::mt19937_64 rng(derive_seed(seed, b));
    const std::size_t lo = b * kBankBlockRows, hi = std::min(n, lo + kBankBlockRows);
    for (std::size_t i = lo; i < hi; ++i)
      sampler.draw(rng, std::span<double>(bank.data.data() + i * bank.cols, bank.cols));
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) fill(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) fill(b);
      });
    for (auto& t : pool) t.join();
  }
  return bank;
}

std::vector<double> m_statistic(const SampleBank& bank, std::span<const double> gaps) {
  if (gaps.size() != bank.cols) throw DimensionError("gap vector length does not match bank columns");
  for (double g : gaps)
    if (!(g >= 0.0)) throw DomainError("gaps must be non-negative");
  std::vector<double> out(bank.rows, 0.0);
  for (std::size_t i = 0; i < bank.rows; ++i) {
    double m = 0.0;
    const double* row = bank.data.data() + i * bank.cols;
    for (std::size_t j = 0; j < bank.cols; ++j) {
      const double a = std::fabs(row[j]);
      if (a > 0.5 * gaps[j] && a > m) m = a;
    }
    out[i] = m;
  }
  return out;
}

std::size_t upper_rank(std::size_t n, double level) {
  const double x = level * static_cast<double>(n);
  const double nearest = std::round(x);
  double k = std::fabs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
  k = std::clamp(k, 1.0, static_cast<double>(n));
  return static_cast<std::size_t>(k);
}

double mc_quantile(std::span<const double> values, double level) {
  if (values.empty()) throw DomainError("mc_quantile of an empty sequence");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t k = upper_rank(v.size(), level);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1), v.end());
  return v[k - 1];
}

MStatisticIndex::MStatisticIndex(const SampleBank& bank) : rows_(bank.rows), cols_(bank.cols) {
  if (rows_ > 0xFFFFFFFFULL) throw DomainError("bank too large for the sorted index");
  abs_.resize(rows_ * cols_);
  row_.resize(rows_ * cols_);
  std::vector<std::uint32_t> order(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const double va = std::fabs(bank.at(a, j)), vb = std::fabs(bank.at(b, j));
      return va > vb || (va == vb && a < b);
    });
    for (std::size_t p = 0; p < rows_; ++p) {
      abs_[j * rows_ + p] = std::fabs(bank.at(order[p], j));
      row_[j * rows_ + p] = order[p];
    }
  }
}

double MStatisticIndex::quantile(std::span<const double> gaps, double level) const {
  if (gaps.size() != cols_) throw DimensionError("gap vector length does not match bank columns");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
  for (double g : gaps)
    if (!(g >= 0.0)) throw DomainError("gaps must be non-negative");
  if (rows_ == 0) throw DomainError("mc_quantile of an empty sequence");

  // The ascending rank-k statistic is the K-th largest value of M.
  const std::size_t want = rows_ - upper_rank(rows_, level) + 1;

  struct Head {
    double value;
    std::uint32_t col;
    std::uint32_t pos;
  };
  auto less = [](const Head& a, const Head& b) { return a.value < b.value; };
  std::vector<Head> heap;
  heap.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double v = abs_[j * rows_];
    if (v > 0.5 * gaps[j]) heap.push_back({v, static_cast<std::uint32_t>(j), 0});
  }
  std::make_heap(heap.begin(), heap.end(), less);

  thread_local std::vector<std::uint8_t> seen;
  thread_local std::vector<std::uint32_t> touched;
  if (seen.size() < rows_) seen.assign(rows_, 0);
  touched.clear();

  double result = 0.0;
  std::size_t distinct = 0;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), less);
    Head h = heap.back();
    heap.pop_back();
    const std::size_t base = static_cast<std::size_t>(h.col) * rows_;
    const std::uint32_t r = row_[base + h.pos];
    if (!seen[r]) {
      seen[r] = 1;
      touched.push_back(r);
      if (++distinct == want) {
        result = h.value;
        break;
      }
    }
    const std::uint32_t next = h.pos + 1;
    if (next < rows_ && abs_[base + next] > 0.5 * gaps[h.col]) {
      heap.push_back({abs_[base + next], h.col, next});
      std::push_heap(heap.begin(), heap.end(), less);
    }
  }
  for (auto r : touched) seen[r] = 0;
  return result;
}

}  // namespace zoomcurse
