#include "bfcub/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bfcub {

Bounds::Bounds(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("Bounds: lower/upper size mismatch");
  const int n = dim();
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("Bounds: dimension must be in [1, " +
                                std::to_string(kMaxDim) + "]");
  for (int a = 0; a < n; ++a) {
    if (!(lower[a] < upper[a]))
      throw std::invalid_argument("Bounds: lower must be < upper on every axis");
    if (!std::isfinite(lower[a]) || !std::isfinite(upper[a]))
      throw std::invalid_argument("Bounds: entries must be finite");
  }
}

Bounds Bounds::unit_cube(int n) {
  return Bounds(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0));
}

double Bounds::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= upper[a] - lower[a];
  return v;
}

bool Bounds::is_unit_cube() const {
  for (int a = 0; a < dim(); ++a)
    if (lower[a] != 0.0 || upper[a] != 1.0) return false;
  return true;
}

double RegionBatch::volume(std::int64_t j) const {
  const double* len = length(j);
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= len[a];
  return v;
}

double RegionBatch::total_volume() const {
  double v = 0.0;
  for (std::int64_t j = 0; j < count; ++j) v += volume(j);
  return v;
}

void RegionBatch::resize(int n, std::int64_t m) {
  dim = n;
  count = m;
  lows.resize(m * n);
  lengths.resize(m * n);
  estimates.assign(m, 0.0);
  errors.assign(m, 0.0);
  split_axis.assign(m, 0);
  active.assign(m, 1);
  parent_estimates.assign(m, 0.0);
  parent_errors.assign(m, 0.0);
}

int initial_subdivisions(int n, std::int64_t init_target) {
  int d = 1;
  for (;;) {
    // (d+1)^n without overflow
    std::int64_t p = 1;
    bool over = false;
    for (int a = 0; a < n; ++a) {
      if (p > init_target / (d + 1)) { over = true; break; }
      p *= d + 1;
    }
    if (over || p > init_target) break;
    ++d;
  }
  return d;
}

RegionBatch uniform_split(const Bounds& bounds, int d, std::int64_t max_regions) {
  if (d < 1) throw std::invalid_argument("uniform_split: d must be >= 1");
  const int n = bounds.dim();
  std::int64_t m = 1;
  for (int a = 0; a < n; ++a) {
    if (m > max_regions / d)
      throw std::runtime_error("uniform_split: d^n exceeds max_regions");
    m *= d;
  }
  if (m > max_regions)
    throw std::runtime_error("uniform_split: d^n exceeds max_regions");

  RegionBatch out;
  out.resize(n, m);
  std::vector<double> step(n);
  for (int a = 0; a < n; ++a) step[a] = (bounds.upper[a] - bounds.lower[a]) / d;

  for (std::int64_t j = 0; j < m; ++j) {
    std::int64_t rem = j;
    double* low = out.lows.data() + j * n;
    double* len = out.lengths.data() + j * n;
    for (int a = 0; a < n; ++a) {
      const std::int64_t cell = rem % d;
      rem /= d;
      low[a] = bounds.lower[a] + cell * step[a];
      len[a] = step[a];
    }
  }
  return out;
}

RegionBatch bisect(const RegionBatch& batch, std::int64_t max_regions) {
  const int n = batch.dim;
  const std::int64_t m = batch.count;
  if (2 * m > max_regions)
    throw std::logic_error("bisect: doubling would exceed max_regions");

  RegionBatch out;
  out.resize(n, 2 * m);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < m; ++j) {
    const int axis = batch.split_axis[j];
    const double* low = batch.low(j);
    const double* len = batch.length(j);
    const double half = len[axis] * 0.5;
    for (int child = 0; child < 2; ++child) {
      const std::int64_t c = 2 * j + child;
      double* clow = out.lows.data() + c * n;
      double* clen = out.lengths.data() + c * n;
      for (int a = 0; a < n; ++a) {
        clow[a] = low[a];
        clen[a] = len[a];
      }
      clen[axis] = half;
      if (child == 1) clow[axis] = low[axis] + half;
      out.parent_estimates[c] = batch.estimates[j];
      out.parent_errors[c] = batch.errors[j];
    }
  }
  return out;
}

} // namespace bfcub
