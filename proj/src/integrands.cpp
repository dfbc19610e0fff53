#include "bfcub/integrands.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bfcub {

namespace {

using ld = long double;

double ipow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

double f1(const double* x, int n, void*) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += (i + 1) * x[i];
  return std::cos(s);
}

double f2(const double* x, int n, void*) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) {
    const double t = x[i] - 0.5;
    p *= 1.0 / (1.0 / 2500.0 + t * t);
  }
  return p;
}

double f3(const double* x, int n, void*) {
  double s = 1.0;
  for (int i = 0; i < n; ++i) s += (i + 1) * x[i];
  return 1.0 / ipow(s, n + 1);
}

double f4(const double* x, int n, void*) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = x[i] - 0.5;
    s += t * t;
  }
  return std::exp(-625.0 * s);
}

double f5(const double* x, int n, void*) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::fabs(x[i] - 0.5);
  return std::exp(-10.0 * s);
}

double f6(const double* x, int n, void*) {
  double s = 0.0;
  for (int i = 1; i <= n; ++i) {
    if (x[i - 1] >= (3.0 + i) / 10.0) return 0.0;
    s += (i + 4) * x[i - 1];
  }
  return std::exp(s);
}

double f7(const double* x, int n, void*) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * x[i];
  return ipow(s, 11);
}

double f8(const double* x, int n, void*) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * x[i];
  return ipow(s, 7) * std::sqrt(s);
}

// --- reference values ---

double ref_f1(int n) {
  // cos(sum i*x_i) integrates to cos(sum i/2) * prod sinc(i/2).
  ld phase = 0.0L, p = 1.0L;
  for (int i = 1; i <= n; ++i) {
    const ld h = 0.5L * i;
    phase += h;
    p *= std::sin(h) / h;
  }
  return static_cast<double>(std::cos(phase) * p);
}

double ref_f2(int n) {
  const ld per_axis = 100.0L * std::atan(25.0L);
  return static_cast<double>(std::pow(per_axis, static_cast<ld>(n)));
}

double ref_f3(int n) {
  // Repeated antidifferentiation of (1 + sum i*x_i)^-(n+1) telescopes to an
  // alternating sum over the corners of the cube.
  ld sum = 0.0L;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ld denom = 1.0L;
    int bits = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        denom += i + 1;
        ++bits;
      }
    sum += (bits % 2 ? -1.0L : 1.0L) / denom;
  }
  ld scale = 1.0L;
  for (int i = 1; i <= n; ++i) scale *= static_cast<ld>(i) * i; // n! * prod(a_i)
  return static_cast<double>(sum / scale);
}

double ref_f4(int n) {
  const ld per_axis = std::sqrt(3.14159265358979323846264338327950288L) / 25.0L *
                      std::erf(12.5L);
  return static_cast<double>(std::pow(per_axis, static_cast<ld>(n)));
}

double ref_f5(int n) {
  const ld per_axis = (1.0L - std::exp(-5.0L)) / 5.0L;
  return static_cast<double>(std::pow(per_axis, static_cast<ld>(n)));
}

double ref_f6(int n) {
  ld p = 1.0L;
  for (int i = 1; i <= n; ++i) {
    const ld c = (3.0L + i) / 10.0L;
    p *= (std::exp((i + 4) * c) - 1.0L) / (i + 4);
  }
  return static_cast<double>(p);
}

// E[(x_1^2 + ... + x_d^2)^k] over the unit cube via the axis-recursive
// moment expansion; every term is positive.
ld sum_sq_moment(int d, int k) {
  std::vector<std::vector<ld>> binom(k + 1, std::vector<ld>(k + 1, 0.0L));
  for (int i = 0; i <= k; ++i) {
    binom[i][0] = 1.0L;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0.0L);
  }
  std::vector<ld> g(k + 1);
  for (int j = 0; j <= k; ++j) g[j] = 1.0L / (2 * j + 1); // d = 1
  for (int dd = 2; dd <= d; ++dd) {
    std::vector<ld> next(k + 1, 0.0L);
    for (int kk = 0; kk <= k; ++kk) {
      ld s = 0.0L;
      for (int j = 0; j <= kk; ++j)
        s += binom[kk][j] * (1.0L / (2 * j + 1)) * g[kk - j];
      next[kk] = s;
    }
    g = std::move(next);
  }
  return g[k];
}

double ref_f7(int n) { return static_cast<double>(sum_sq_moment(n, 11)); }

// (sum x_i^2)^(15/2) has no closed form; values were produced by the
// escalating symmetric Gauss-Legendre oracle in tools/golden_box_values.cpp,
// whose integer-power companion reproduces the exact moment recursion to
// better than 1e-16 relative at the same resolution.
double ref_f8(int n) {
  switch (n) {
    case 2: return 2.9285329205389220;   // m = 48 vs 64 agree to ~1e-18
    case 3: return 27.531960573226068;   // m = 48 vs 64 agree to ~1e-18
    case 8: return 8879.8511754142763;   // m = 24 vs 32 agree to ~8e-17
    default:
      throw std::invalid_argument("f8 reference available for n in {2,3,8}");
  }
}

double reference_for(const std::string& id, int n) {
  if (id == "f1") return ref_f1(n);
  if (id == "f2") return ref_f2(n);
  if (id == "f3") return ref_f3(n);
  if (id == "f4") return ref_f4(n);
  if (id == "f5") return ref_f5(n);
  if (id == "f6") return ref_f6(n);
  if (id == "f7") return ref_f7(n);
  if (id == "f8") return ref_f8(n);
  throw std::invalid_argument("unknown integrand id: " + id);
}

const std::array<std::pair<const char*, Integrand>, 8> kCallables = {{
    {"f1", {&f1, nullptr}},
    {"f2", {&f2, nullptr}},
    {"f3", {&f3, nullptr}},
    {"f4", {&f4, nullptr}},
    {"f5", {&f5, nullptr}},
    {"f6", {&f6, nullptr}},
    {"f7", {&f7, nullptr}},
    {"f8", {&f8, nullptr}},
}};

IntegrandSpec make_spec(const std::string& id, int dim, bool headline) {
  IntegrandSpec s;
  s.id = id;
  s.dim = dim;
  s.callable = integrand_by_id(id);
  s.reference_value = reference_for(id, dim);
  s.provenance = id == "f8" ? RefProvenance::OracleQuadrature
                            : RefProvenance::ClosedForm;
  s.sign = id == "f1" ? SignProfile::Oscillatory : SignProfile::OneSigned;
  s.headline = headline;
  return s;
}

} // namespace

Integrand integrand_by_id(const std::string& id) {
  for (const auto& [name, fn] : kCallables)
    if (id == name) return fn;
  throw std::invalid_argument("unknown integrand id: " + id);
}

bool known_integrand(const std::string& id) {
  for (const auto& [name, fn] : kCallables)
    if (id == name) return true;
  return false;
}

const std::vector<IntegrandSpec>& suite() {
  static const std::vector<IntegrandSpec> specs = [] {
    std::vector<IntegrandSpec> v;
    // The nine standard benchmark configurations.
    v.push_back(make_spec("f1", 8, true));
    v.push_back(make_spec("f3", 8, true));
    v.push_back(make_spec("f4", 8, true));
    v.push_back(make_spec("f5", 8, true));
    v.push_back(make_spec("f7", 8, true));
    v.push_back(make_spec("f8", 8, true));
    v.push_back(make_spec("f4", 5, true));
    v.push_back(make_spec("f6", 6, true));
    v.push_back(make_spec("f3", 3, true));
    // The product peak at its native dimension.
    v.push_back(make_spec("f2", 6, false));
    // Cheap low-dimensional checks (f3 at 3 is already present above).
    for (int n : {2, 3})
      for (int i = 1; i <= 8; ++i) {
        const std::string id = "f" + std::to_string(i);
        bool present = false;
        for (const auto& s : v)
          if (s.id == id && s.dim == n) present = true;
        if (!present) v.push_back(make_spec(id, n, false));
      }
    return v;
  }();
  return specs;
}

double reference_value(const std::string& id, int dim) {
  if (dim < 1 || dim > 16)
    throw std::invalid_argument("reference_value: dimension out of range");
  return reference_for(id, dim);
}

} // namespace bfcub
