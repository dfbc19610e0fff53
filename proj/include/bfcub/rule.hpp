#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bfcub/geometry.hpp"
#include "bfcub/integrand.hpp"

namespace bfcub {

// Symmetry orbits of the fully symmetric degree-7 rule, in point order.
enum class OrbitKind {
  Center,    // (0, ..., 0)
  AxisNear,  // (+-l2, 0, ..., 0), one axis displaced
  AxisFar,   // (+-l3, 0, ..., 0)
  FacePairs, // (+-l4, +-l4, 0, ..., 0), two axes displaced
  Corners,   // (+-l5, ..., +-l5)
};

struct GeneratorOrbit {
  OrbitKind kind;
  double magnitude;         // displacement in half-width units
  std::int64_t first_point; // index of the orbit's first point
  std::int64_t size;        // number of points in the orbit
};

// Precomputed cubature rule for dimension n: evaluation points in generator
// coordinates (offsets from the region center in units of the half-width),
// the degree-7 integral weights, and four null-rule weight sets whose
// magnitudes estimate the local error.
struct RuleTable {
  int dim = 0;
  std::int64_t point_count = 0;
  std::vector<GeneratorOrbit> generators;
  std::vector<double> points;                     // point_count x dim
  std::array<std::vector<double>, 5> weight_sets; // [0] integral, [1..4] null
  std::vector<int> axis_probe_indices;            // 4 per axis: -l2,+l2,-l3,+l3

  // weight_sets repacked point-major for the evaluation loop.
  std::vector<double> packed_weights; // point_count x 5

  const double* point(std::int64_t p) const { return points.data() + p * dim; }
};

// Expected point count: 2^n + 2n(n-1) + 4n + 1.
std::int64_t rule_point_count(int n);

// Builds the degree-7 fully symmetric rule for dimension n. The integral
// weights and the embedded degree-5 companion are solved from the moment
// equations at build time; the four null rules are derived from them by
// orthogonalization against low-degree moment vectors.
RuleTable build_rule(int n);

struct EvalOutput {
  std::vector<double> estimates;
  std::vector<double> raw_errors;
  std::vector<int> split_axes;
  std::int64_t eval_count = 0;
};

// Evaluates every region of the batch: per-region integral estimate
// (volume-scaled weighted sum), raw error (volume times the largest null-rule
// magnitude), and the axis with the largest fourth-difference indicator.
// A region whose integrand evaluation produces a non-finite value gets a zero
// estimate and an infinite raw error so it can never be filtered out.
EvalOutput evaluate_batch(const Integrand& f, const RegionBatch& batch,
                          const RuleTable& rule);

} // namespace bfcub
