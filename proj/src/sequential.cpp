#include "bfcub/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "bfcub/errorest.hpp"
#include "bfcub/rule.hpp"

namespace bfcub {

namespace {

struct HeapRegion {
  double estimate;
  double error;
  int split_axis;
  std::vector<double> low;
  std::vector<double> len;
};

struct ByError {
  bool operator()(const HeapRegion& a, const HeapRegion& b) const {
    return a.error < b.error;
  }
};

struct MappedCtx {
  const Integrand* inner;
  const double* lo;
  const double* len;
};

double mapped_eval(const double* u, int n, void* ctx) {
  const auto* m = static_cast<const MappedCtx*>(ctx);
  double x[kMaxDim];
  for (int a = 0; a < n; ++a) x[a] = m->lo[a] + u[a] * m->len[a];
  return (*m->inner)(x, n);
}

} // namespace

IntegrationResult integrate_sequential(const Integrand& f, const Bounds& bounds,
                                       double tau_rel, double tau_abs,
                                       std::int64_t max_evals,
                                       bool validate_invariants) {
  if (!(tau_rel > 0.0)) throw std::invalid_argument("tau_rel must be > 0");
  const int n = bounds.dim();

  const bool mapped = !bounds.is_unit_cube();
  const double jacobian = bounds.volume();
  std::vector<double> dom_len(n);
  for (int a = 0; a < n; ++a) dom_len[a] = bounds.upper[a] - bounds.lower[a];
  MappedCtx map_ctx{&f, bounds.lower.data(), dom_len.data()};
  const Integrand g = mapped ? Integrand{&mapped_eval, &map_ctx} : f;
  const double tau_abs_int = mapped ? tau_abs / jacobian : tau_abs;

  const RuleTable rule = build_rule(n);

  IntegrationResult res;
  std::priority_queue<HeapRegion, std::vector<HeapRegion>, ByError> heap;

  // Initial region: the whole (normalized) domain, raw error as-is.
  RegionBatch first = uniform_split(Bounds::unit_cube(n), 1);
  EvalOutput out = evaluate_batch(g, first, rule);
  res.eval_count += out.eval_count;
  res.regions_generated = 1;
  double v = out.estimates[0];
  double e = out.raw_errors[0];
  heap.push({out.estimates[0], out.raw_errors[0], out.split_axes[0],
             std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)});

  const auto finish = [&](Status status) {
    res.status = status;
    res.estimate = v * jacobian;
    res.errorest = e * jacobian;
    return res;
  };

  for (;;) {
    if (e <= std::fabs(v) * tau_rel || e <= tau_abs_int)
      return finish(Status::Converged);
    if (res.eval_count > max_evals) return finish(Status::MaxIterations);

    HeapRegion top = heap.top();
    heap.pop();

    RegionBatch pair;
    pair.resize(n, 2);
    for (int child = 0; child < 2; ++child) {
      double* low = pair.lows.data() + child * n;
      double* len = pair.lengths.data() + child * n;
      std::copy_n(top.low.data(), n, low);
      std::copy_n(top.len.data(), n, len);
      len[top.split_axis] = top.len[top.split_axis] * 0.5;
      if (child == 1) low[top.split_axis] += len[top.split_axis];
      pair.parent_estimates[child] = top.estimate;
      pair.parent_errors[child] = top.error;
    }

    EvalOutput child_out = evaluate_batch(g, pair, rule);
    res.eval_count += child_out.eval_count;
    res.regions_generated += 2;
    ++res.iterations;
    const std::vector<double> refined =
        two_level_refine(child_out.estimates, child_out.raw_errors,
                         pair.parent_estimates, pair.parent_errors);

    v += child_out.estimates[0] + child_out.estimates[1] - top.estimate;
    e += refined[0] + refined[1] - top.error;
    for (int child = 0; child < 2; ++child) {
      std::vector<double> low(pair.lows.begin() + child * n,
                              pair.lows.begin() + (child + 1) * n);
      std::vector<double> len(pair.lengths.begin() + child * n,
                              pair.lengths.begin() + (child + 1) * n);
      heap.push({child_out.estimates[child], refined[child],
                 child_out.split_axes[child], std::move(low), std::move(len)});
    }

    if (validate_invariants && (res.iterations & 63) == 0) {
      // Ensure the incrementally tracked totals have not drifted from the
      // heap contents.
      auto copy = heap;
      double hv = 0.0, he = 0.0;
      while (!copy.empty()) {
        hv += copy.top().estimate;
        he += copy.top().error;
        copy.pop();
      }
      const double scale = std::max({1e-30, std::fabs(v), std::fabs(hv)});
      if (std::fabs(hv - v) > 1e-10 * scale)
        throw std::logic_error("invariant violated: heap estimate drift");
      if (std::fabs(he - e) > 1e-8 * std::max(1e-30, e))
        throw std::logic_error("invariant violated: heap error drift");
    }
  }
}

} // namespace bfcub
