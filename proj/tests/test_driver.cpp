#include <doctest.h>

#include <cmath>
#include <limits>

#include "bfcub/driver.hpp"
#include "bfcub/integrands.hpp"

using namespace bfcub;

namespace {

Config quick_config(double tau_rel) {
  Config cfg;
  cfg.tau_rel = tau_rel;
  cfg.validate_invariants = true;
  return cfg;
}

} // namespace

TEST_CASE("constant integrand converges on the first iteration") {
  Integrand one{[](const double*, int, void*) { return 1.0; }, nullptr};
  auto cfg = quick_config(1e-3);
  cfg.init_subdiv = 2;
  const auto res = integrate(one, Bounds::unit_cube(3), cfg);
  CHECK(res.status == Status::Converged);
  CHECK(res.iterations == 1);
  CHECK(res.estimate == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(res.errorest < 1e-10);
  CHECK(res.regions_generated == 8);
}

TEST_CASE("check_termination branches") {
  CHECK(check_termination({2.0, 1e-3, 0.0, 0.0}, 1e-3, 1e-20));
  CHECK(check_termination({0.0, 1e-21, 0.0, 0.0}, 1e-3, 1e-20));
  CHECK(!check_termination({1.0, 0.5, 0.0, 0.0}, 1e-3, 1e-20));
}

TEST_CASE("digits_converged rounding behavior") {
  CHECK(digits_converged(1.23456, 1.23461, 4)); // both round to 1.235
  CHECK(!digits_converged(1.0, 1.1, 3));
  CHECK(digits_converged(0.0, 0.0, 5));
  CHECK(!digits_converged(-1.0, 1.0, 2));
  CHECK(!digits_converged(std::numeric_limits<double>::quiet_NaN(), 1.0, 3));
}

TEST_CASE("config validation") {
  Config cfg;
  cfg.tau_rel = 0.0;
  CHECK_THROWS(cfg.validate());
  cfg = Config{};
  cfg.max_regions = cfg.init_target; // must be at least twice
  CHECK_THROWS(cfg.validate());
  cfg = Config{};
  CHECK(cfg.convergence_digits() == 3);
  cfg.tau_rel = 8e-6;
  CHECK(cfg.convergence_digits() == 6);
}

TEST_CASE("active count doubles without filtering") {
  // A rough integrand at an unreachable tolerance, relative filtering off:
  // every region stays active, so the batch doubles each iteration.
  Integrand rough{[](const double* x, int n, void*) {
                    double s = 0;
                    for (int i = 0; i < n; ++i) s += std::cos(40.0 * x[i]);
                    return s + 2.0 * n;
                  },
                  nullptr};
  Config cfg = quick_config(1e-12);
  cfg.rel_filtering_enabled = false;
  cfg.init_subdiv = 2;
  cfg.it_max = 4;
  const auto res = integrate(rough, Bounds::unit_cube(2), cfg);
  CHECK(res.status == Status::MaxIterations);
  // 4 + 8 + 16 + 32 generated; 4 + 8 + 16 + 32 evaluated
  CHECK(res.regions_generated == 60);
  const auto n_points = 17; // 2-D rule
  CHECK(res.eval_count == (4 + 8 + 16 + 32) * n_points);
}

TEST_CASE("f3 in 3D converges below tolerance") {
  const auto spec_ref = reference_value("f3", 3);
  auto cfg = quick_config(1e-3);
  const auto res =
      integrate(integrand_by_id("f3"), Bounds::unit_cube(3), cfg);
  CHECK(res.status == Status::Converged);
  const double true_rel = std::fabs(res.estimate - spec_ref) / std::fabs(spec_ref);
  CHECK(true_rel <= 1e-3);
  CHECK(res.errorest <= std::fabs(res.estimate) * 1e-3);
}

TEST_CASE("arbitrary bounds are scaled through the unit-cube map") {
  // integral of x*y over [0,2]x[1,3] = 2 * 4 = 8
  Integrand f{[](const double* x, int, void*) { return x[0] * x[1]; }, nullptr};
  auto cfg = quick_config(1e-6);
  const auto res = integrate(f, Bounds({0, 1}, {2, 3}), cfg);
  CHECK(res.status == Status::Converged);
  CHECK(res.estimate == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("memory trigger invokes the threshold search") {
  auto cfg = quick_config(1e-9);
  cfg.max_regions = 1 << 10;
  cfg.init_target = 1 << 9;
  const auto res =
      integrate(integrand_by_id("f4"), Bounds::unit_cube(2), cfg);
  CHECK(!res.threshold_events.empty());
}

TEST_CASE("non-finite integrand never reports a silent result") {
  Integrand bad{[](const double* x, int, void*) {
                  return x[0] > 0.8 ? std::numeric_limits<double>::quiet_NaN()
                                    : 1.0;
                },
                nullptr};
  Config cfg = quick_config(1e-6);
  cfg.max_regions = 1 << 10;
  cfg.init_target = 1 << 8;
  cfg.it_max = 12;
  const auto res = integrate(bad, Bounds::unit_cube(2), cfg);
  CHECK(res.status != Status::Converged);
  CHECK(std::isinf(res.errorest));
}

TEST_CASE("memory exhaustion reports the best available totals") {
  Integrand rough{[](const double* x, int n, void*) {
                    double s = 0;
                    for (int i = 0; i < n; ++i) s += std::cos(50.0 * x[i] * x[i]);
                    return s + 2.0 * n;
                  },
                  nullptr};
  Config cfg = quick_config(1e-10);
  cfg.rel_filtering_enabled = false;
  cfg.max_regions = 1 << 8;
  cfg.init_target = 1 << 7;
  const auto res = integrate(rough, Bounds::unit_cube(2), cfg);
  CHECK(res.status == Status::MemoryExhausted);
  CHECK(std::isfinite(res.estimate));
  CHECK(res.errorest > 0);
}

TEST_CASE("threshold events record the memory and accuracy bounds") {
  auto cfg = quick_config(5e-7);
  cfg.max_regions = 1 << 12;
  cfg.init_target = 1 << 10;
  const auto res =
      integrate(integrand_by_id("f4"), Bounds::unit_cube(3), cfg);
  for (const auto& ev : res.threshold_events) {
    if (!ev.success) continue;
    CHECK(ev.retained_fraction() < 0.5);
    CHECK(ev.discarded_error <= ev.budget_limit * (1 + 1e-12));
  }
}
