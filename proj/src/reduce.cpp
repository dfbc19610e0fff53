#include "bfcub/reduce.hpp"

#include <algorithm>
#include <vector>

namespace bfcub {

namespace {

constexpr std::int64_t kBlock = 2048;

// Combines partials in place with a fixed pairwise tree.
double pairwise_combine(std::vector<double>& p) {
  std::int64_t m = static_cast<std::int64_t>(p.size());
  if (m == 0) return 0.0;
  while (m > 1) {
    const std::int64_t half = m / 2;
    for (std::int64_t i = 0; i < half; ++i) p[i] = p[2 * i] + p[2 * i + 1];
    if (m % 2) {
      p[half] = p[m - 1];
      m = half + 1;
    } else {
      m = half;
    }
  }
  return p[0];
}

} // namespace

double block_sum(std::span<const double> x) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  if (n == 0) return 0.0;
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partials(nblocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(lo + kBlock, n);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += x[i];
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

double block_sum_where(std::span<const double> x,
                       std::span<const std::uint8_t> flags,
                       std::uint8_t which) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  if (n == 0) return 0.0;
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partials(nblocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(lo + kBlock, n);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i)
      if (flags[i] == which) s += x[i];
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

std::int64_t count_flags(std::span<const std::uint8_t> flags, std::uint8_t which) {
  const std::int64_t n = static_cast<std::int64_t>(flags.size());
  std::int64_t c = 0;
#pragma omp parallel for schedule(static) reduction(+ : c)
  for (std::int64_t i = 0; i < n; ++i) c += (flags[i] == which);
  return c;
}

std::pair<double, double> min_max(std::span<const double> x) {
  double lo = x.empty() ? 0.0 : x[0];
  double hi = lo;
  for (double v : x) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

} // namespace bfcub
