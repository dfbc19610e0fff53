#pragma once

#include <cstdint>
#include <vector>

namespace bfcub {

inline constexpr int kMaxDim = 16;

// Axis-aligned integration domain.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  Bounds() = default;
  Bounds(std::vector<double> lo, std::vector<double> hi);

  static Bounds unit_cube(int n);

  int dim() const { return static_cast<int>(lower.size()); }
  double volume() const;
  bool is_unit_cube() const;
};

// Structure-of-arrays storage for a batch of hyperrectangular sub-regions.
// Regions are stored as (low, length) per axis; halving a length is exact in
// binary floating point. After a bisect, the children of old index j occupy
// indices 2j and 2j+1, so sibling(j) = j ^ 1.
struct RegionBatch {
  int dim = 0;
  std::int64_t count = 0;
  std::vector<double> lows;             // count x dim, region-major
  std::vector<double> lengths;          // count x dim, region-major
  std::vector<double> estimates;        // per-region integral estimate
  std::vector<double> errors;           // per-region error estimate
  std::vector<int> split_axis;          // next axis to bisect, in [0, dim)
  std::vector<std::uint8_t> active;     // 1 = active, 0 = finished
  std::vector<double> parent_estimates; // estimate of the region's parent
  std::vector<double> parent_errors;    // error of the region's parent

  const double* low(std::int64_t j) const { return lows.data() + j * dim; }
  const double* length(std::int64_t j) const { return lengths.data() + j * dim; }
  double volume(std::int64_t j) const;
  double total_volume() const;

  void resize(int n, std::int64_t m);
};

// Partitions `bounds` into d^n congruent sub-regions (d cells per axis).
// Estimates, errors and parent fields are zeroed; all regions active.
RegionBatch uniform_split(const Bounds& bounds, int d,
                          std::int64_t max_regions = std::int64_t{1} << 22);

// Halves every region along its split_axis. Children land at indices 2j and
// 2j+1 and inherit the parent's estimate/error in their parent fields.
RegionBatch bisect(const RegionBatch& batch, std::int64_t max_regions);

// Largest d with d^n <= init_target (at least 1).
int initial_subdivisions(int n, std::int64_t init_target);

} // namespace bfcub
