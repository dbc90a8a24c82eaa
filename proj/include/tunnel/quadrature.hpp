#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace tunnel {

struct QuadratureSettings {
  int nodes_per_panel = 32;
  int max_panels = 4096;
  double rel_tol = 1e-8;

  /// Throws DomainError unless nodes_per_panel >= 8, max_panels >= 1, rel_tol > 0.
  void validate() const;
};

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int n);

  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  /// Integral of f over [lo, hi]; also accumulates the integral of |f| into *abs_out.
  template <class F>
  auto apply(F& f, double lo, double hi, double* abs_out = nullptr) const {
    using R = std::invoke_result_t<F&, double>;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    R sum{};
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const R v = f(mid + half * nodes_[i]);
      sum += weights_[i] * v;
      abs_sum += weights_[i] * std::abs(v);
    }
    if (abs_out) *abs_out += half * abs_sum;
    return R(sum * half);
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

template <class R>
struct QuadratureResult {
  R value{};
  double error = 0.0;      // sum of per-panel |coarse - refined| estimates
  double abs_integral = 0.0;  // integral of |f|, the tolerance scale
  int panels = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Throws ConvergenceError carrying `what` when the result did not converge.
void require_converged(bool converged, int panels, double error, double scale,
                       const std::string& what);

template <class R>
const QuadratureResult<R>& require_converged(const QuadratureResult<R>& r,
                                             const std::string& what) {
  require_converged(r.converged, r.panels, r.error, r.abs_integral, what);
  return r;
}

/// Locally adaptive composite Gauss-Legendre.
///
/// Starts from the panels delimited by `breakpoints` (sorted, at least two
/// entries). Each panel is estimated once whole and once as two halves; the
/// panel with the largest discrepancy is bisected until the summed
/// discrepancy drops below rel_tol times the integral of |f| or the panel
/// budget is spent.
template <class F>
auto integrate_adaptive(F&& f, std::span<const double> breakpoints,
                        const QuadratureSettings& settings)
    -> QuadratureResult<std::invoke_result_t<F&, double>> {
  using R = std::invoke_result_t<F&, double>;
  settings.validate();
  QuadratureResult<R> result;
  if (breakpoints.size() < 2) return result;
  const int initial = static_cast<int>(breakpoints.size()) - 1;
  if (initial > settings.max_panels) {
    result.panels = initial;
    result.error = INFINITY;
    return result;
  }

  const GaussLegendreRule rule(settings.nodes_per_panel);
  struct Panel {
    double lo, hi;
    R whole, left, right;
    double abs_left, abs_right;
    double err;
  };
  auto refine = [&](double lo, double hi, R whole) {
    Panel p{lo, hi, whole, R{}, R{}, 0.0, 0.0, 0.0};
    const double mid = 0.5 * (lo + hi);
    p.left = rule.apply(f, lo, mid, &p.abs_left);
    p.right = rule.apply(f, mid, hi, &p.abs_right);
    p.err = std::abs(p.whole - (p.left + p.right));
    result.evaluations += 2 * rule.size();
    return p;
  };
  auto by_error = [](const Panel& x, const Panel& y) { return x.err < y.err; };

  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(std::min(settings.max_panels, 1 << 16)));
  double err_sum = 0.0;
  double abs_sum = 0.0;
  for (int i = 0; i < initial; ++i) {
    const double lo = breakpoints[i];
    const double hi = breakpoints[i + 1];
    if (!(hi > lo)) continue;
    const R whole = rule.apply(f, lo, hi);
    result.evaluations += rule.size();
    heap.push_back(refine(lo, hi, whole));
    err_sum += heap.back().err;
    abs_sum += heap.back().abs_left + heap.back().abs_right;
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto done = [&] { return err_sum <= settings.rel_tol * abs_sum; };
  while (!done() && static_cast<int>(heap.size()) < settings.max_panels) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    if (worst.err == 0.0) {  // nothing left to gain from splitting
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    err_sum -= worst.err;
    abs_sum -= worst.abs_left + worst.abs_right;
    for (const Panel& child : {refine(worst.lo, mid, worst.left), refine(mid, worst.hi, worst.right)}) {
      err_sum += child.err;
      abs_sum += child.abs_left + child.abs_right;
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
  }

  // Sum in position order so the value does not depend on heap layout.
  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  double err_total = 0.0;
  double abs_total = 0.0;
  for (const Panel& p : heap) {
    result.value += p.left + p.right;
    err_total += p.err;
    abs_total += p.abs_left + p.abs_right;
  }
  result.error = err_total;
  result.abs_integral = abs_total;
  result.panels = static_cast<int>(heap.size());
  result.converged = err_total <= settings.rel_tol * abs_total;
  return result;
}

}  // namespace tunnel
