#pragma once

namespace bfcub {

// A point integrand: maps an n-coordinate point to a real value.
// Stored as a plain function pointer plus context so the per-point call in
// the evaluation loop is a single predictable indirect call.
struct Integrand {
  double (*fn)(const double* x, int n, void* ctx) = nullptr;
  void* ctx = nullptr;

  double operator()(const double* x, int n) const { return fn(x, n, ctx); }
};

// Wraps any callable with signature double(const double*, int). The callable
// must outlive the returned Integrand.
template <class F>
Integrand make_integrand(F& f) {
  return Integrand{
      [](const double* x, int n, void* ctx) {
        return (*static_cast<F*>(ctx))(x, n);
      },
      &f};
}

} // namespace bfcub
