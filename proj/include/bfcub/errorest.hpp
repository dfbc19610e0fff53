#pragma once

#include <span>
#include <vector>

namespace bfcub {

// Two-level error refinement: when the parent's integral estimate agrees
// with the sum of its two children, the children's raw errors are scaled
// down, floored at kTwoLevelFloor of the raw value. Entries j and j^1 are
// siblings sharing identical parent fields.
inline constexpr double kTwoLevelFloor = 0.125;

using ErrorRefiner = void (*)(std::span<const double> estimates,
                              std::span<const double> raw_errors,
                              std::span<const double> parent_estimates,
                              std::span<const double> parent_errors,
                              std::span<double> refined);

void two_level_refine(std::span<const double> estimates,
                      std::span<const double> raw_errors,
                      std::span<const double> parent_estimates,
                      std::span<const double> parent_errors,
                      std::span<double> refined);

std::vector<double> two_level_refine(std::span<const double> estimates,
                                     std::span<const double> raw_errors,
                                     std::span<const double> parent_estimates,
                                     std::span<const double> parent_errors);

} // namespace bfcub
