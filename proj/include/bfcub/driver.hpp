#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfcub/classify.hpp"
#include "bfcub/errorest.hpp"
#include "bfcub/geometry.hpp"
#include "bfcub/integrand.hpp"

namespace bfcub {

enum class Status { Converged, MaxIterations, MemoryExhausted };

std::string to_string(Status s);

// Running totals: v/e cover the in-memory regions, v_f/e_f the contributions
// of regions that were classified finished and removed.
struct Accumulators {
  double v = 0.0;
  double e = 0.0;
  double v_f = 0.0;
  double e_f = 0.0;

  double estimate() const { return v + v_f; }
  double errorest() const { return e + e_f; }
};

struct Config {
  double tau_rel = 1e-3;
  double tau_abs = 1e-20;
  int it_max = 100;
  std::int64_t max_regions = std::int64_t{1} << 22;
  std::int64_t init_target = std::int64_t{1} << 14;
  int init_subdiv = 0; // 0 = derive from init_target
  bool rel_filtering_enabled = true;
  int threads = 0; // 0 = library default
  bool validate_invariants = false;
  ErrorRefiner refiner = &two_level_refine;
  ThresholdLimits threshold_limits;

  int convergence_digits() const; // ceil(log10(1/tau_rel)), clamped to [1,17]
  void validate() const;
};

// One threshold-classification attempt, kept for inspection.
struct ThresholdEvent {
  int iteration = 0;
  bool success = false;
  std::int64_t batch_size = 0;
  std::int64_t finished_count = 0;
  double discarded_error = 0.0;
  double budget_limit = 0.0;
  double retained_fraction() const {
    return batch_size ? 1.0 - static_cast<double>(finished_count) / batch_size : 1.0;
  }
};

struct IntegrationResult {
  double estimate = 0.0;
  double errorest = 0.0;
  Status status = Status::MaxIterations;
  int iterations = 0;
  std::int64_t regions_generated = 0;
  std::int64_t eval_count = 0;
  std::vector<ThresholdEvent> threshold_events;
};

// True iff (e+e_f) <= |v+v_f| * tau_rel or (e+e_f) <= tau_abs.
bool check_termination(const Accumulators& acc, double tau_rel, double tau_abs);

// True iff both values round to the same number at `digits` significant
// decimal digits. Two zeros agree; opposite signs never do.
bool digits_converged(double v_prev, double v_curr, int digits);

// Breadth-first adaptive integration of f over bounds.
IntegrationResult integrate(const Integrand& f, const Bounds& bounds,
                            const Config& config);

} // namespace bfcub
