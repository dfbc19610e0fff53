#include "bfcub/errorest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bfcub {

void two_level_refine(std::span<const double> estimates,
                      std::span<const double> raw_errors,
                      std::span<const double> parent_estimates,
                      std::span<const double> parent_errors,
                      std::span<double> refined) {
  const std::int64_t m = static_cast<std::int64_t>(estimates.size());
  if (raw_errors.size() != estimates.size() ||
      parent_estimates.size() != estimates.size() ||
      parent_errors.size() != estimates.size() ||
      refined.size() != estimates.size())
    throw std::invalid_argument("two_level_refine: array length mismatch");
  if (m % 2 != 0)
    throw std::invalid_argument("two_level_refine: batch must pair siblings");

#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < m; ++j) {
    const std::int64_t s = j ^ 1;
    const double pair_err = raw_errors[j] + raw_errors[s];
    if (pair_err == 0.0 || !std::isfinite(pair_err)) {
      refined[j] = raw_errors[j];
      continue;
    }
    const double delta =
        std::fabs(parent_estimates[j] - (estimates[j] + estimates[s]));
    const double scale = std::clamp(delta / pair_err, kTwoLevelFloor, 1.0);
    refined[j] = raw_errors[j] * scale;
  }
}

std::vector<double> two_level_refine(std::span<const double> estimates,
                                     std::span<const double> raw_errors,
                                     std::span<const double> parent_estimates,
                                     std::span<const double> parent_errors) {
  std::vector<double> refined(estimates.size());
  two_level_refine(estimates, raw_errors, parent_estimates, parent_errors,
                   refined);
  return refined;
}

} // namespace bfcub
