#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace bfcub {

// Deterministic reductions. Values are summed serially inside fixed-size
// blocks and the block partials are combined with a pairwise tree, so the
// result depends only on the input, never on the number of workers.

double block_sum(std::span<const double> x);

// Sum of x[j] where flags[j] == which.
double block_sum_where(std::span<const double> x,
                       std::span<const std::uint8_t> flags,
                       std::uint8_t which);

std::int64_t count_flags(std::span<const std::uint8_t> flags, std::uint8_t which);

std::pair<double, double> min_max(std::span<const double> x);

} // namespace bfcub
