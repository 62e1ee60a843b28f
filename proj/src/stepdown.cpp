#include "zoomcurse/stepdown.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "zoomcurse/error.hpp"

namespace zoomcurse {

namespace {

std::vector<double> checked_sorted(std::span<const double> gaps, double alpha) {
  if (gaps.empty()) throw DomainError("step-down needs at least one gap");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  double lo = gaps[0];
  for (double g : gaps) {
    if (!(g >= 0.0)) throw DomainError("gaps must be non-negative");
    lo = std::min(lo, g);
  }
  if (lo != 0.0) throw DomainError("step-down needs one zero gap (the winner)");
  std::vector<double> s(gaps.begin(), gaps.end());
  std::stable_sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

// factor: termination when gap <= factor * r_hat.
// spend(gap, r_hat): budget removed when the gap is too wide to matter.
template <class Spend>
StepdownTrace run(std::span<const double> gaps, const TailModel& model, double alpha, double factor,
                  const Spend& spend) {
  StepdownTrace tr;
  tr.sorted_gaps = checked_sorted(gaps, alpha);
  const std::size_t m = tr.sorted_gaps.size();
  double a = alpha;
  for (std::size_t j = 1; j <= m; ++j) {
    if (!(a > 0.0)) throw InfeasibleError("step-down budget exhausted");
    const double r = model.inverse(a / static_cast<double>(m - j + 1));
    const double g = tr.sorted_gaps[j - 1];
    StepdownStep st{j, a, r, g, g <= factor * r};
    tr.steps.push_back(st);
    if (st.terminated) {
      tr.radius = r;
      return tr;
    }
    a -= spend(g, r);
  }
  // The last sorted gap is 0, so the loop always returns.
  throw InternalError("step-down did not terminate");
}

}  // namespace

StepdownTrace stepdown_lower(std::span<const double> gaps, const TailModel& model, double alpha) {
  return run(gaps, model, alpha, 4.0, [&](double g, double r) { return model.tail((g - r) / 3.0); });
}

StepdownTrace stepdown_upper(std::span<const double> gaps, const TailModel& model, double alpha) {
  const double r1 = model.inverse(alpha);
  auto t = run(gaps, model, alpha, 2.0, [&](double g, double) { return model.tail((g + r1) / 3.0); });
  // Gaps just above the 2r threshold can push the last step past S^-1(alpha/m).
  // The lower step-down radius already bounds r_u, so it caps the result.
  t.radius = std::min(t.radius, stepdown_lower(gaps, model, alpha).radius);
  return t;
}

}  // namespace zoomcurse
