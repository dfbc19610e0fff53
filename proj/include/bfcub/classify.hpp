#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfcub/geometry.hpp"

namespace bfcub {

using ClassifyFlags = std::vector<std::uint8_t>; // 1 = active, 0 = finished

// Marks a region finished when its error estimate satisfies the per-region
// relative tolerance. Zero-estimate regions are finished only with zero
// error. With filtering disabled every region stays active.
ClassifyFlags rel_err_classify(std::span<const double> estimates,
                               std::span<const double> errors, double tau_rel,
                               bool filtering_enabled);

// Finished iff error < t (strict: ties stay active).
ClassifyFlags apply_threshold(std::span<const double> errors, double t);

struct ThresholdLimits {
  int direction_change_limit = 4;
  int attempt_limit = 40;
  double p_max_start = 0.25;
  double p_max_step = 0.10;
  double p_max_cap = 0.95;
};

struct ThresholdResult {
  bool success = false;
  ClassifyFlags flags;     // combined flags on success, input flags otherwise
  double threshold = 0.0;  // last threshold probed
  double discarded_error = 0.0;
  double budget_limit = 0.0;           // P_max * e_b at termination
  std::int64_t finished_count = 0;     // inactive regions under the returned flags
  int attempts = 0;
  int direction_changes = 0;
};

// Searches for an error threshold that finishes more than half the batch
// while spending at most P_max of the remaining error budget
// e_b = e_tot - |v_tot| * tau_rel. Prior finished flags are preserved and
// count toward the memory requirement. Fails fast when e_b <= 0.
ThresholdResult threshold_classify(const ClassifyFlags& active,
                                   std::span<const double> errors,
                                   double v_tot, double e_tot, double e_it,
                                   std::int64_t s_it, double tau_rel,
                                   const ThresholdLimits& limits = {});

struct FilterResult {
  RegionBatch kept;
  double finished_estimate = 0.0;
  double finished_error = 0.0;
  double finished_volume = 0.0;
  std::int64_t finished_count = 0;
};

// Compacts the batch down to its active regions (original relative order),
// returning the summed contributions of the removed ones.
FilterResult filter(const RegionBatch& batch, const ClassifyFlags& flags);

} // namespace bfcub
