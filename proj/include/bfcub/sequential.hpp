#pragma once

#include <cstdint>

#include "bfcub/driver.hpp"
#include "bfcub/geometry.hpp"
#include "bfcub/integrand.hpp"

namespace bfcub {

// Sequential adaptive integrator: repeatedly bisects the region with the
// largest error estimate along its stored split axis, re-evaluating both
// halves with the same cubature rule and two-level refinement as the
// breadth-first driver. Serves as a consistency oracle, not a fast path.
IntegrationResult integrate_sequential(const Integrand& f, const Bounds& bounds,
                                       double tau_rel, double tau_abs = 1e-20,
                                       std::int64_t max_evals = 10'000'000,
                                       bool validate_invariants = false);

} // namespace bfcub
