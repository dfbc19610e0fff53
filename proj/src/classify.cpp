#include "bfcub/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bfcub/reduce.hpp"

namespace bfcub {

ClassifyFlags rel_err_classify(std::span<const double> estimates,
                               std::span<const double> errors, double tau_rel,
                               bool filtering_enabled) {
  const std::int64_t m = static_cast<std::int64_t>(estimates.size());
  if (errors.size() != estimates.size())
    throw std::invalid_argument("rel_err_classify: array length mismatch");
  ClassifyFlags flags(m, 1);
  if (!filtering_enabled) return flags;
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < m; ++j) {
    const bool finished = estimates[j] == 0.0
                              ? errors[j] == 0.0
                              : errors[j] <= std::fabs(estimates[j]) * tau_rel;
    flags[j] = finished ? 0 : 1;
  }
  return flags;
}

ClassifyFlags apply_threshold(std::span<const double> errors, double t) {
  const std::int64_t m = static_cast<std::int64_t>(errors.size());
  ClassifyFlags flags(m, 1);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < m; ++j) flags[j] = errors[j] < t ? 0 : 1;
  return flags;
}

ThresholdResult threshold_classify(const ClassifyFlags& active,
                                   std::span<const double> errors,
                                   double v_tot, double e_tot, double e_it,
                                   std::int64_t s_it, double tau_rel,
                                   const ThresholdLimits& limits) {
  if (static_cast<std::int64_t>(active.size()) != s_it ||
      static_cast<std::int64_t>(errors.size()) != s_it)
    throw std::invalid_argument("threshold_classify: array length mismatch");
  ThresholdResult res;
  res.flags = active;
  if (s_it <= 0) return res;

  const double e_budget = e_tot - std::fabs(v_tot) * tau_rel;
  double p_max = limits.p_max_start;
  res.budget_limit = p_max * e_budget;
  if (!(e_budget > 0.0)) return res; // convergence impossible by discarding

  const auto [min_err, max_err] = min_max(errors);
  double t = e_it / static_cast<double>(s_it);

  ClassifyFlags candidate(s_it);
  enum class Dir { None, TowardMax, TowardMin };
  Dir last = Dir::None;

  while (res.attempts < limits.attempt_limit) {
    ++res.attempts;
    const ClassifyFlags under = apply_threshold(errors, t);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < s_it; ++j)
      candidate[j] = active[j] & under[j];

    const std::int64_t inactive = s_it - count_flags(candidate, 1);
    const bool memory_ok = 2 * inactive > s_it;
    const double discarded = block_sum_where(errors, candidate, 0);
    if (memory_ok && discarded <= p_max * e_budget) {
      res.success = true;
      res.flags = candidate;
      res.threshold = t;
      res.discarded_error = discarded;
      res.budget_limit = p_max * e_budget;
      res.finished_count = inactive;
      return res;
    }

    // Too few finished: raise the threshold. Too much error spent: lower it.
    const Dir dir = memory_ok ? Dir::TowardMin : Dir::TowardMax;
    if (last != Dir::None && dir != last) {
      ++res.direction_changes;
      if (res.direction_changes > limits.direction_change_limit) break;
      p_max = std::min(limits.p_max_cap, p_max + limits.p_max_step);
    }
    last = dir;
    t = dir == Dir::TowardMax ? (t + max_err) * 0.5 : (t + min_err) * 0.5;
  }

  res.threshold = t;
  res.budget_limit = p_max * e_budget;
  return res; // unsuccessful: flags stay as passed in
}

FilterResult filter(const RegionBatch& batch, const ClassifyFlags& flags) {
  if (static_cast<std::int64_t>(flags.size()) != batch.count)
    throw std::invalid_argument("filter: flag length mismatch");
  const int n = batch.dim;
  const std::int64_t m = batch.count;

  FilterResult res;
  res.finished_estimate = block_sum_where(batch.estimates, flags, 0);
  res.finished_error = block_sum_where(batch.errors, flags, 0);

  const std::int64_t kept_count = count_flags(flags, 1);
  res.finished_count = m - kept_count;
  res.kept.resize(n, kept_count);

  std::int64_t k = 0;
  double fin_vol = 0.0;
  for (std::int64_t j = 0; j < m; ++j) {
    if (!flags[j]) {
      fin_vol += batch.volume(j);
      continue;
    }
    std::copy_n(batch.low(j), n, res.kept.lows.data() + k * n);
    std::copy_n(batch.length(j), n, res.kept.lengths.data() + k * n);
    res.kept.estimates[k] = batch.estimates[j];
    res.kept.errors[k] = batch.errors[j];
    res.kept.split_axis[k] = batch.split_axis[j];
    res.kept.parent_estimates[k] = batch.parent_estimates[j];
    res.kept.parent_errors[k] = batch.parent_errors[j];
    ++k;
  }
  res.finished_volume = fin_vol;
  return res;
}

} // namespace bfcub
