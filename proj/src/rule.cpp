#include "bfcub/rule.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bfcub {

namespace {

using ld = long double;

// Generator magnitudes of the degree-7 family, in half-width units.
const ld kL2 = std::sqrt(9.0L / 70.0L);
const ld kL3 = std::sqrt(9.0L / 10.0L);
const ld kL4 = std::sqrt(9.0L / 10.0L);
const ld kL5 = std::sqrt(9.0L / 19.0L);

// Fourth-difference weighting (l2/l3)^2.
constexpr double kProbeRatio = (9.0 / 70.0) / (9.0 / 10.0);

// Scales of the null rules relative to the degree-5 difference. The two
// degree-3 rules and the degree-1 rule act as roughness detectors for
// regions the degree-5 difference cannot yet see; once the integrand is
// locally smooth their contribution must sit below the degree-5 signal.
constexpr double kNullScaleDeg3 = 1e-2;
constexpr double kNullScaleDeg1 = 1e-4;

constexpr int kOrbits = 5;

// An even monomial pattern: exponents on distinct leading axes.
struct Pattern {
  int k = 0;
  int e[3] = {0, 0, 0};
};

// Sum of the monomial over one orbit's points (generator coordinates).
ld orbit_sum(OrbitKind kind, ld mag, int n, const Pattern& p) {
  const auto powm = [&](int a) { return std::pow(mag, static_cast<ld>(a)); };
  switch (kind) {
    case OrbitKind::Center:
      return p.k == 0 ? 1.0L : 0.0L;
    case OrbitKind::AxisNear:
    case OrbitKind::AxisFar:
      if (p.k == 0) return 2.0L * n;
      if (p.k == 1) return 2.0L * powm(p.e[0]);
      return 0.0L;
    case OrbitKind::FacePairs:
      if (p.k == 0) return 2.0L * n * (n - 1);
      if (p.k == 1) return 4.0L * (n - 1) * powm(p.e[0]);
      if (p.k == 2) return 4.0L * powm(p.e[0] + p.e[1]);
      return 0.0L;
    case OrbitKind::Corners:
      return std::pow(2.0L, static_cast<ld>(n)) * powm(p.e[0] + p.e[1] + p.e[2]);
  }
  return 0.0L;
}

// Mean of the monomial over the [-1,1]^n reference cube.
ld moment_target(const Pattern& p) {
  ld t = 1.0L;
  for (int i = 0; i < p.k; ++i) t /= static_cast<ld>(p.e[i] + 1);
  return t;
}

// Solves the (possibly overdetermined but consistent) moment system by
// normal equations with partial pivoting; k <= 5 unknowns.
std::array<ld, kOrbits> solve_moments(const std::vector<std::array<ld, kOrbits>>& rows,
                                      const std::vector<ld>& rhs,
                                      const std::vector<int>& cols) {
  const int k = static_cast<int>(cols.size());
  ld ata[kOrbits][kOrbits] = {};
  ld atb[kOrbits] = {};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < k; ++i) {
      atb[i] += rows[r][cols[i]] * rhs[r];
      for (int j = 0; j < k; ++j) ata[i][j] += rows[r][cols[i]] * rows[r][cols[j]];
    }
  }
  int perm[kOrbits];
  for (int i = 0; i < k; ++i) perm[i] = i;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (std::fabs(ata[r][c]) > std::fabs(ata[piv][c])) piv = r;
    if (piv != c) {
      for (int j = 0; j < k; ++j) std::swap(ata[c][j], ata[piv][j]);
      std::swap(atb[c], atb[piv]);
    }
    if (ata[c][c] == 0.0L) throw std::logic_error("rule moments: singular system");
    for (int r = c + 1; r < k; ++r) {
      const ld m = ata[r][c] / ata[c][c];
      for (int j = c; j < k; ++j) ata[r][j] -= m * ata[c][j];
      atb[r] -= m * atb[c];
    }
  }
  std::array<ld, kOrbits> x{};
  for (int c = k - 1; c >= 0; --c) {
    ld s = atb[c];
    for (int j = c + 1; j < k; ++j) s -= ata[c][j] * x[cols[j]];
    x[cols[c]] = s / ata[c][c];
  }
  // verify the full system, not just the normal equations
  for (std::size_t r = 0; r < rows.size(); ++r) {
    ld resid = -rhs[r];
    for (int i = 0; i < k; ++i) resid += rows[r][cols[i]] * x[cols[i]];
    if (std::fabs(resid) > 1e-12L)
      throw std::logic_error("rule moments: inconsistent system");
  }
  return x;
}

struct OrbitGeom {
  OrbitKind kind;
  ld mag;
  std::int64_t size;
};

std::array<OrbitGeom, kOrbits> orbit_geometry(int n) {
  return {{{OrbitKind::Center, 0.0L, 1},
           {OrbitKind::AxisNear, kL2, 2 * n},
           {OrbitKind::AxisFar, kL3, 2 * n},
           {OrbitKind::FacePairs, kL4, std::int64_t{2} * n * (n - 1)},
           {OrbitKind::Corners, kL5, std::int64_t{1} << n}}};
}

ld wdot(const std::array<ld, kOrbits>& u, const std::array<ld, kOrbits>& v,
        const std::array<OrbitGeom, kOrbits>& geom) {
  ld s = 0.0L;
  for (int o = 0; o < kOrbits; ++o) s += static_cast<ld>(geom[o].size) * u[o] * v[o];
  return s;
}

// Gram-Schmidt helper over the point-weighted inner product.
struct Orthonormalizer {
  const std::array<OrbitGeom, kOrbits>& geom;
  std::vector<std::array<ld, kOrbits>> basis;

  // Returns false if v is (numerically) inside the current span.
  bool residual(std::array<ld, kOrbits> v, std::array<ld, kOrbits>& out) const {
    for (const auto& b : basis) {
      const ld c = wdot(v, b, geom);
      for (int o = 0; o < kOrbits; ++o) v[o] -= c * b[o];
    }
    const ld norm2 = wdot(v, v, geom);
    if (norm2 < 1e-18L) return false;
    const ld inv = 1.0L / std::sqrt(norm2);
    for (int o = 0; o < kOrbits; ++o) out[o] = v[o] * inv;
    return true;
  }

  bool add(const std::array<ld, kOrbits>& v) {
    std::array<ld, kOrbits> r;
    if (!residual(v, r)) return false;
    basis.push_back(r);
    return true;
  }
};

} // namespace

std::int64_t rule_point_count(int n) {
  return (std::int64_t{1} << n) + std::int64_t{2} * n * (n - 1) + 4 * n + 1;
}

RuleTable build_rule(int n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("build_rule: dimension out of range");

  const auto geom = orbit_geometry(n);
  std::vector<int> cols7, cols5;
  for (int o = 0; o < kOrbits; ++o)
    if (geom[o].size > 0) cols7.push_back(o);
  for (int o = 0; o < kOrbits - 1; ++o) // degree-5 companion omits the corners
    if (geom[o].size > 0) cols5.push_back(o);

  const auto patterns_upto = [&](int max_deg) {
    std::vector<Pattern> ps;
    ps.push_back({0, {0, 0, 0}});
    if (max_deg >= 2) ps.push_back({1, {2, 0, 0}});
    if (max_deg >= 4) {
      ps.push_back({1, {4, 0, 0}});
      if (n >= 2) ps.push_back({2, {2, 2, 0}});
    }
    if (max_deg >= 6) {
      ps.push_back({1, {6, 0, 0}});
      if (n >= 2) ps.push_back({2, {4, 2, 0}});
      if (n >= 3) ps.push_back({3, {2, 2, 2}});
    }
    return ps;
  };

  const auto moment_rows = [&](const std::vector<Pattern>& ps) {
    std::vector<std::array<ld, kOrbits>> rows(ps.size());
    std::vector<ld> rhs(ps.size());
    for (std::size_t r = 0; r < ps.size(); ++r) {
      for (int o = 0; o < kOrbits; ++o)
        rows[r][o] = geom[o].size ? orbit_sum(geom[o].kind, geom[o].mag, n, ps[r]) : 0.0L;
      rhs[r] = moment_target(ps[r]);
    }
    return std::pair{rows, rhs};
  };

  const auto [rows7, rhs7] = moment_rows(patterns_upto(6));
  const auto w7 = solve_moments(rows7, rhs7, cols7);
  const auto [rows5, rhs5] = moment_rows(patterns_upto(4));
  const auto w5 = solve_moments(rows5, rhs5, cols5);

  // Null rule 1: the degree-5 embedded difference.
  std::array<ld, kOrbits> u1{};
  for (int o = 0; o < kOrbits; ++o) u1[o] = w7[o] - w5[o];
  const ld u1_norm = std::sqrt(wdot(u1, u1, geom));

  // Moment rows rescaled per point so annihilation constraints live in the
  // same inner product as the rules.
  const auto wspace_row = [&](const Pattern& p) {
    std::array<ld, kOrbits> v{};
    for (int o = 0; o < kOrbits; ++o)
      if (geom[o].size)
        v[o] = orbit_sum(geom[o].kind, geom[o].mag, n, p) / static_cast<ld>(geom[o].size);
    return v;
  };

  const auto null_rules_below = [&](const std::vector<Pattern>& annihilate,
                                    const std::vector<std::array<ld, kOrbits>>& priors,
                                    int want) {
    Orthonormalizer obstacles{geom, {}};
    for (const auto& p : annihilate) obstacles.add(wspace_row(p));
    for (const auto& u : priors) obstacles.add(u);
    std::vector<std::array<ld, kOrbits>> found;
    for (int o = 0; o < kOrbits && static_cast<int>(found.size()) < want; ++o) {
      if (!geom[o].size) continue;
      std::array<ld, kOrbits> seed{};
      seed[o] = 1.0L;
      std::array<ld, kOrbits> r;
      if (obstacles.residual(seed, r)) {
        found.push_back(r);
        obstacles.add(r);
      }
    }
    return found;
  };

  const std::vector<Pattern> deg1 = {{0, {0, 0, 0}}};
  const std::vector<Pattern> deg3 = {{0, {0, 0, 0}}, {1, {2, 0, 0}}};

  auto deg3_rules = null_rules_below(deg3, {u1}, 2); // empty second slot when n == 1
  std::vector<std::array<ld, kOrbits>> priors = {u1};
  for (const auto& u : deg3_rules) priors.push_back(u);
  auto deg1_rules = null_rules_below(deg1, priors, 1);
  if (deg1_rules.empty())
    throw std::logic_error("build_rule: degree-1 null rule not found");

  std::vector<std::array<ld, kOrbits>> nulls = {u1};
  for (auto& u : deg3_rules) {
    for (int o = 0; o < kOrbits; ++o) u[o] *= u1_norm * kNullScaleDeg3;
    nulls.push_back(u);
  }
  for (auto& u : deg1_rules) {
    for (int o = 0; o < kOrbits; ++o) u[o] *= u1_norm * kNullScaleDeg1;
    nulls.push_back(u);
  }
  // A 1-D point set only admits three independent symmetric null directions;
  // repeat the degree-1 rule in the spare slot.
  while (nulls.size() < 4) nulls.push_back(nulls.back());

  // Verify annihilation before expanding to points.
  const std::vector<Pattern> deg5 = patterns_upto(4);
  const std::size_t n_deg3 = deg3_rules.size();
  for (std::size_t k = 0; k < nulls.size(); ++k) {
    const std::vector<Pattern>& anni = k == 0 ? deg5 : (k <= n_deg3 ? deg3 : deg1);
    for (const auto& p : anni) {
      ld s = 0.0L;
      for (int o = 0; o < kOrbits; ++o)
        if (geom[o].size) s += nulls[k][o] * orbit_sum(geom[o].kind, geom[o].mag, n, p);
      if (std::fabs(s) > 1e-13L)
        throw std::logic_error("build_rule: null rule fails annihilation");
    }
  }

  // Expand orbit weights and points.
  RuleTable rule;
  rule.dim = n;
  rule.point_count = rule_point_count(n);
  rule.points.assign(rule.point_count * n, 0.0);
  for (int k = 0; k < 5; ++k) rule.weight_sets[k].resize(rule.point_count);
  rule.packed_weights.resize(rule.point_count * 5);

  const auto put = [&](std::int64_t p, int orbit) {
    rule.weight_sets[0][p] = static_cast<double>(w7[orbit]);
    for (int k = 1; k < 5; ++k)
      rule.weight_sets[k][p] = static_cast<double>(nulls[k - 1][orbit]);
    for (int k = 0; k < 5; ++k)
      rule.packed_weights[p * 5 + k] = rule.weight_sets[k][p];
  };

  std::int64_t p = 0;
  rule.generators.push_back({OrbitKind::Center, 0.0, p, 1});
  put(p, 0);
  ++p;

  const double l2 = static_cast<double>(kL2), l3 = static_cast<double>(kL3);
  const double l4 = static_cast<double>(kL4), l5 = static_cast<double>(kL5);

  rule.generators.push_back({OrbitKind::AxisNear, l2, p, 2 * n});
  for (int a = 0; a < n; ++a)
    for (int sgn = 0; sgn < 2; ++sgn) {
      rule.points[p * n + a] = sgn ? l2 : -l2;
      put(p, 1);
      ++p;
    }
  rule.generators.push_back({OrbitKind::AxisFar, l3, p, 2 * n});
  for (int a = 0; a < n; ++a)
    for (int sgn = 0; sgn < 2; ++sgn) {
      rule.points[p * n + a] = sgn ? l3 : -l3;
      put(p, 2);
      ++p;
    }
  if (n >= 2) {
    rule.generators.push_back({OrbitKind::FacePairs, l4, p, std::int64_t{2} * n * (n - 1)});
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int sa = 0; sa < 2; ++sa)
          for (int sb = 0; sb < 2; ++sb) {
            rule.points[p * n + a] = sa ? l4 : -l4;
            rule.points[p * n + b] = sb ? l4 : -l4;
            put(p, 3);
            ++p;
          }
  }
  rule.generators.push_back({OrbitKind::Corners, l5, p, std::int64_t{1} << n});
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << n); ++mask) {
    for (int a = 0; a < n; ++a)
      rule.points[p * n + a] = (mask >> a) & 1 ? l5 : -l5;
    put(p, 4);
    ++p;
  }
  if (p != rule.point_count)
    throw std::logic_error("build_rule: point count mismatch");

  rule.axis_probe_indices.resize(4 * n);
  for (int a = 0; a < n; ++a) {
    rule.axis_probe_indices[4 * a + 0] = 1 + 2 * a;          // -l2
    rule.axis_probe_indices[4 * a + 1] = 2 + 2 * a;          // +l2
    rule.axis_probe_indices[4 * a + 2] = 1 + 2 * n + 2 * a;  // -l3
    rule.axis_probe_indices[4 * a + 3] = 2 + 2 * n + 2 * a;  // +l3
  }
  return rule;
}

EvalOutput evaluate_batch(const Integrand& f, const RegionBatch& batch,
                          const RuleTable& rule) {
  if (batch.dim != rule.dim)
    throw std::invalid_argument("evaluate_batch: dimension mismatch");
  const int n = batch.dim;
  const std::int64_t m = batch.count;
  const std::int64_t N = rule.point_count;

  EvalOutput out;
  out.estimates.resize(m);
  out.raw_errors.resize(m);
  out.split_axes.resize(m);
  out.eval_count = m * N;

  const double* gen = rule.points.data();
  const double* wts = rule.packed_weights.data();
  const int nprobe = 4 * n; // probe values occupy vals[1..nprobe]

#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < m; ++j) {
    const double* low = batch.low(j);
    const double* len = batch.length(j);
    double c[kMaxDim], h[kMaxDim], x[kMaxDim];
    double vol = 1.0;
    for (int a = 0; a < n; ++a) {
      h[a] = 0.5 * len[a];
      c[a] = low[a] + h[a];
      vol *= len[a];
    }
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double vals[1 + 4 * kMaxDim];
    bool finite = true;
    for (std::int64_t p = 0; p < N; ++p) {
      const double* g = gen + p * n;
      for (int a = 0; a < n; ++a) x[a] = c[a] + g[a] * h[a];
      const double fx = f(x, n);
      finite = finite && std::isfinite(fx);
      if (p <= nprobe) vals[p] = fx;
      const double* wp = wts + p * 5;
      s0 += wp[0] * fx;
      s1 += wp[1] * fx;
      s2 += wp[2] * fx;
      s3 += wp[3] * fx;
      s4 += wp[4] * fx;
    }

    const double f0 = vals[0];
    int best_axis = 0;
    double best = -1.0;
    for (int a = 0; a < n; ++a) {
      const double near2 = vals[1 + 2 * a] + vals[2 + 2 * a] - 2.0 * f0;
      const double far2 = vals[1 + 2 * n + 2 * a] + vals[2 + 2 * n + 2 * a] - 2.0 * f0;
      const double diff = std::fabs(near2 - kProbeRatio * far2);
      if (std::isfinite(diff) && diff > best) {
        best = diff;
        best_axis = a;
      }
    }
    if (best <= 0.0) {
      // No axis signal: every probe saw the same value. Integrand structure
      // can still hide between the probes (e.g. a support cut through the
      // center on two axes zeroes every single-axis displacement), so halve
      // the widest extent instead of defaulting to axis 0.
      for (int a = 1; a < n; ++a)
        if (len[a] > len[best_axis]) best_axis = a;
    }
    out.split_axes[j] = best_axis;

    if (!finite) {
      out.estimates[j] = 0.0;
      out.raw_errors[j] = std::numeric_limits<double>::infinity();
      continue;
    }
    const double nmax = std::max(std::max(std::fabs(s1), std::fabs(s2)),
                                 std::max(std::fabs(s3), std::fabs(s4)));
    out.estimates[j] = vol * s0;
    out.raw_errors[j] = vol * nmax;
  }
  return out;
}

} // namespace bfcub
