#include "zoomcurse/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "zoomcurse/error.hpp"
#include "zoomcurse/normal.hpp"

namespace zoomcurse {

namespace {

double parse_positive(std::string_view text, std::string_view what) {
  std::string s(text);
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
    return v;
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("cannot parse " + std::string(what) + " from '" + s + "'");
  }
}

// The analytic inverses can land an ulp or two on the wrong side of q.
template <class F>
double nudge_up(const F& tail, double r, double q) {
  for (int i = 0; i < 64 && tail(r) > q; ++i) r = std::nextafter(r, std::numeric_limits<double>::infinity());
  return r;
}

}  // namespace

TailModel TailModel::gaussian(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("gaussian scale must be positive");
  TailModel t;
  t.kind_ = Kind::gaussian;
  t.param_ = scale;
  return t;
}

TailModel TailModel::sub_gaussian(double proxy) {
  if (!(proxy > 0.0) || !std::isfinite(proxy)) throw DomainError("sub-gaussian proxy must be positive");
  TailModel t;
  t.kind_ = Kind::sub_gaussian;
  t.param_ = proxy;
  return t;
}

TailModel TailModel::empirical(std::vector<double> radii, std::vector<double> exceedance) {
  if (radii.size() != exceedance.size()) throw DimensionError("empirical tail table columns differ in length");
  if (radii.empty()) throw DomainError("empirical tail table is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0) || !std::isfinite(radii[i])) throw DomainError("tail radii must be finite and >= 0");
    if (!(exceedance[i] >= 0.0 && exceedance[i] <= 1.0)) throw DomainError("tail exceedance must lie in [0, 1]");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("tail radii must be strictly increasing");
    if (i > 0 && exceedance[i] > exceedance[i - 1]) throw DomainError("tail exceedance must be non-increasing");
  }
  if (radii.front() > 0.0) {
    radii.insert(radii.begin(), 0.0);
    exceedance.insert(exceedance.begin(), 1.0);
  }
  TailModel t;
  t.kind_ = Kind::empirical;
  t.param_ = radii.back();
  t.radii_ = std::move(radii);
  t.exceed_ = std::move(exceedance);
  return t;
}

TailModel TailModel::empirical_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tail table " + path.string());
  std::vector<double> r, e;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected radius,exceedance");
    try {
      std::size_t u1 = 0, u2 = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      double x = std::stod(a, &u1), y = std::stod(b, &u2);
      if (a.find_first_not_of(" \t", u1) != std::string::npos || b.find_first_not_of(" \t", u2) != std::string::npos)
        throw std::invalid_argument("");
      r.push_back(x);
      e.push_back(y);
    } catch (const std::exception&) {
      if (lineno == 1 && r.empty()) continue;  // header
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": not numeric");
    }
  }
  TailModel t = empirical(std::move(r), std::move(e));
  t.source_ = path.string();
  return t;
}

TailModel TailModel::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("tail must look like kind:value, got '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  if (kind == "gaussian") return gaussian(parse_positive(arg, "gaussian scale"));
  if (kind == "subgaussian") return sub_gaussian(parse_positive(arg, "sub-gaussian proxy"));
  if (kind == "empirical") return empirical_from_csv(std::filesystem::path(std::string(arg)));
  throw InputError("unknown tail kind '" + std::string(kind) + "'");
}

double TailModel::tail(double r) const {
  if (std::isnan(r)) throw DomainError("tail evaluated at NaN");
  if (r <= 0.0) return 1.0;
  if (std::isinf(r)) return 0.0;
  switch (kind_) {
    case Kind::gaussian:
      return std::min(1.0, std::erfc(r / (param_ * std::sqrt(2.0))));
    case Kind::sub_gaussian:
      return std::min(1.0, 2.0 * std::exp(-r * r / (2.0 * param_ * param_)));
    case Kind::empirical: {
      if (r > radii_.back()) return 0.0;
      auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
      if (it == radii_.end()) return exceed_.back();
      const std::size_t i = static_cast<std::size_t>(it - radii_.begin());
      const double w = (r - radii_[i - 1]) / (radii_[i] - radii_[i - 1]);
      return std::clamp(exceed_[i - 1] + w * (exceed_[i] - exceed_[i - 1]), 0.0, 1.0);
    }
  }
  return 1.0;
}

double TailModel::inverse(double q) const {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("tail probability must lie in (0, 1]");
  if (q < kMinTailProbability) throw InfeasibleError("tail probability below 1e-12 is not supported");
  auto S = [this](double r) { return tail(r); };
  switch (kind_) {
    case Kind::gaussian: {
      if (q == 1.0) return 0.0;
      return nudge_up(S, -param_ * normal::quantile(0.5 * q), q);
    }
    case Kind::sub_gaussian: {
      if (q >= 1.0) return 0.0;
      return nudge_up(S, param_ * std::sqrt(2.0 * std::log(2.0 / q)), q);
    }
    case Kind::empirical: {
      if (exceed_.front() <= q) return 0.0;
      for (std::size_t i = 0; i + 1 < radii_.size(); ++i) {
        if (exceed_[i + 1] <= q) {
          const double w = (exceed_[i] - q) / (exceed_[i] - exceed_[i + 1]);
          return nudge_up(S, radii_[i] + w * (radii_[i + 1] - radii_[i]), q);
        }
      }
      // Past the last knot S drops to 0.
      return std::nextafter(radii_.back(), std::numeric_limits<double>::infinity());
    }
  }
  return 0.0;
}

std::string TailModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::gaussian:
      os << "gaussian:" << param_;
      break;
    case Kind::sub_gaussian:
      os << "subgaussian:" << param_;
      break;
    case Kind::empirical:
      os << "empirical:" << (source_.empty() ? std::string("<inline>") : source_);
      break;
  }
  return os.str();
}

bool TailModel::operator==(const TailModel& o) const {
  return kind_ == o.kind_ && param_ == o.param_ && radii_ == o.radii_ && exceed_ == o.exceed_;
}

double marginal_radius(const TailModel& model, double q) { return model.inverse(q); }

JointBound JointBound::union_of(std::vector<TailModel> models) {
  if (models.empty()) throw DomainError("union bound needs at least one marginal");
  JointBound b;
  b.identical_ = std::all_of(models.begin(), models.end(), [&](const TailModel& t) { return t == models.front(); });
  b.models_ = std::move(models);
  return b;
}

JointBound JointBound::union_of(const TailModel& model, std::size_t m) {
  if (m == 0) throw DomainError("union bound needs m >= 1");
  return union_of(std::vector<TailModel>(m, model));
}

JointBound JointBound::exact_mc(std::shared_ptr<const SampleBank> bank, bool exchangeable,
                                std::optional<TailModel> envelope) {
  if (!bank || bank->rows == 0 || bank->cols == 0) throw DomainError("exact_mc bound needs a non-empty bank");
  JointBound b;
  b.mc_ = std::make_shared<const McState>(McState{bank, MStatisticIndex(*bank), exchangeable, std::move(envelope)});
  return b;
}

JointBound JointBound::exact_mc(const NoiseSampler& sampler, std::size_t n, std::uint64_t seed,
                                std::optional<TailModel> envelope, unsigned workers) {
  auto bank = std::make_shared<const SampleBank>(draw_bank(sampler, n, seed, workers));
  return exact_mc(std::move(bank), sampler.exchangeable(), std::move(envelope));
}

std::size_t JointBound::dimension() const { return mc_ ? mc_->bank->cols : models_.size(); }

double JointBound::exceedance(std::span<const double> v) const {
  if (v.size() != dimension()) throw DimensionError("exceedance vector has wrong length");
  for (double x : v)
    if (std::isnan(x)) throw DomainError("exceedance vector contains NaN");
  if (mc_) {
    const SampleBank& bank = *mc_->bank;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < bank.rows; ++i) {
      const double* row = bank.data.data() + i * bank.cols;
      for (std::size_t j = 0; j < bank.cols; ++j) {
        if (std::fabs(row[j]) > v[j]) {
          ++hits;
          break;
        }
      }
    }
    return static_cast<double>(hits) / static_cast<double>(bank.rows);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += models_[j].tail(v[j]);
  return std::clamp(s, 0.0, 1.0);
}

std::optional<TailModel> JointBound::common_marginal() const {
  if (mc_) return mc_->envelope;
  if (identical_) return models_.front();
  return std::nullopt;
}

bool JointBound::symmetric() const { return mc_ ? mc_->exchangeable : identical_; }

const SampleBank* JointBound::bank() const { return mc_ ? mc_->bank.get() : nullptr; }

const MStatisticIndex* JointBound::mc_index() const { return mc_ ? &mc_->index : nullptr; }

std::string JointBound::describe() const {
  if (mc_) return "exact_mc";
  return "union";
}

double joint_exceedance(const JointBound& bound, std::span<const double> v) { return bound.exceedance(v); }

}  // namespace zoomcurse
