// Generates the reference values for the box integrands (sum x_i^2)^p over
// the unit cube. A tensor-product Gauss-Legendre grid is exact enough at
// modest order because the integrand is smooth away from the origin; the full
// tensor sum is collapsed onto sorted index multisets (the integrand is
// symmetric under coordinate permutation), which turns m^n work into
// C(m+n-1, n). Resolution is escalated until successive levels agree.
//
// Usage: golden_box_values [dim ...]   (default: 2 3 8)

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace {

using ld = long double;

// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre(int m, std::vector<ld>& x, std::vector<ld>& w) {
  x.assign(m, 0.0L);
  w.assign(m, 0.0L);
  const ld pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < (m + 1) / 2; ++i) {
    ld z = std::cos(pi * (i + 0.75L) / (m + 0.5L));
    ld pp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      ld p0 = 1.0L, p1 = 0.0L;
      for (int j = 0; j < m; ++j) {
        const ld p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = m * (z * p0 - p1) / (z * z - 1.0L);
      const ld dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-19L) break;
    }
    x[i] = 0.5L * (1.0L - z);
    x[m - 1 - i] = 0.5L * (1.0L + z);
    w[i] = 1.0L / ((1.0L - z * z) * pp * pp);
    w[m - 1 - i] = w[i];
  }
}

ld factorial(int k) {
  ld f = 1.0L;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

struct MultisetSum {
  int n;
  int m;
  const std::vector<ld>& sq;   // node^2
  const std::vector<ld>& wts;
  ld (*fexp)(ld);
  ld nfact = 1.0L;
  ld total = 0.0L;

  // Walks non-decreasing index tuples; multiplicity = n! / prod(run!).
  // run_fact carries prod over runs of run! for the tuple built so far.
  void walk(int depth, int start, ld wprod, ld sumsq, int run_len, ld run_fact) {
    if (depth == n) {
      total += wprod * (nfact / run_fact) * fexp(sumsq);
      return;
    }
    for (int i = start; i < m; ++i) {
      const bool repeat = i == start && depth > 0;
      walk(depth + 1, i, wprod * wts[i], sumsq + sq[i],
           repeat ? run_len + 1 : 1,
           repeat ? run_fact * (run_len + 1) : run_fact);
    }
  }
};

ld box_p15half(ld s) {
  ld s2 = s * s;
  return s2 * s2 * s2 * s * std::sqrt(s); // s^7.5
}

ld box_p11(ld s) {
  ld s2 = s * s;
  ld s4 = s2 * s2;
  return s4 * s4 * s2 * s; // s^11
}

ld integrate_sym(int n, int m, ld (*fexp)(ld)) {
  std::vector<ld> x, w;
  gauss_legendre(m, x, w);
  std::vector<ld> sq(m);
  for (int i = 0; i < m; ++i) sq[i] = x[i] * x[i];
  MultisetSum ms{n, m, sq, w, fexp};
  ms.nfact = factorial(n);
  ms.walk(0, 0, 1.0L, 0.0L, 0, 1.0L);
  return ms.total;
}

// Exact moment recursion for (sum x^2)^11, used to validate the grid.
ld sum_sq_moment(int d, int k) {
  std::vector<std::vector<ld>> binom(k + 1, std::vector<ld>(k + 1, 0.0L));
  for (int i = 0; i <= k; ++i) {
    binom[i][0] = 1.0L;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0.0L);
  }
  std::vector<ld> g(k + 1);
  for (int j = 0; j <= k; ++j) g[j] = 1.0L / (2 * j + 1);
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

} // namespace

int main(int argc, char** argv) {
  std::vector<int> dims = {2, 3, 8};
  if (argc > 1) {
    dims.clear();
    for (int i = 1; i < argc; ++i) dims.push_back(std::atoi(argv[i]));
  }
  for (int n : dims) {
    const std::vector<int> levels = n >= 8 ? std::vector<int>{16, 24, 32, 40}
                                           : std::vector<int>{16, 32, 48, 64};
    std::printf("dim %d\n", n);
    const ld exact11 = sum_sq_moment(n, 11);
    ld prev15 = 0.0L;
    for (std::size_t li = 0; li < levels.size(); ++li) {
      const int m = levels[li];
      const ld v11 = integrate_sym(n, m, &box_p11);
      const ld v15 = integrate_sym(n, m, &box_p15half);
      const ld rel11 = std::fabs(v11 - exact11) / exact11;
      const ld step = li ? std::fabs(v15 - prev15) / std::fabs(v15) : -1.0L;
      std::printf("  m=%2d  p=11: %.18Le (vs exact rel %.2Le)   p=15/2: %.18Le (step rel %.2Le)\n",
                  m, v11, rel11, v15, step);
      prev15 = v15;
    }
  }
  return 0;
}
