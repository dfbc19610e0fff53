#include <doctest.h>

#include <random>
#include <vector>

#include "bfcub/errorest.hpp"

using namespace bfcub;

TEST_CASE("perfect parent agreement clamps to the floor") {
  // parent exactly equals the children sum, so the ratio clamps at 1/8
  const std::vector<double> v = {3.0, 1.0};
  const std::vector<double> e = {0.08, 0.02};
  const std::vector<double> vp = {4.0, 4.0};
  const std::vector<double> ep = {0.5, 0.5};
  const auto out = two_level_refine(v, e, vp, ep);
  CHECK(out[0] == doctest::Approx(0.01));
  CHECK(out[1] == doctest::Approx(0.0025));
}

TEST_CASE("large disagreement keeps the raw error") {
  const std::vector<double> v = {3.0, 1.0};
  const std::vector<double> e = {0.08, 0.02};
  const std::vector<double> vp = {9.0, 9.0}; // delta = 5 >= e_pair = 0.1
  const std::vector<double> ep = {0.5, 0.5};
  const auto out = two_level_refine(v, e, vp, ep);
  CHECK(out[0] == 0.08);
  CHECK(out[1] == 0.02);
}

TEST_CASE("zero raw errors stay zero") {
  const std::vector<double> v = {1.0, 1.0};
  const std::vector<double> zero = {0.0, 0.0};
  const std::vector<double> vp = {5.0, 5.0};
  const auto out = two_level_refine(v, zero, vp, zero);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 0.0);
}

TEST_CASE("refinement is conservative, floored, and symmetric") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 * (1 + static_cast<int>(unif(rng) * 8));
    std::vector<double> v(m), e(m), vp(m), ep(m);
    for (int j = 0; j < m; j += 2) {
      v[j] = unif(rng) * 4 - 2;
      v[j + 1] = unif(rng) * 4 - 2;
      e[j] = unif(rng);
      e[j + 1] = unif(rng);
      vp[j] = vp[j + 1] = unif(rng) * 8 - 4;
      ep[j] = ep[j + 1] = unif(rng);
    }
    const auto out = two_level_refine(v, e, vp, ep);
    for (int j = 0; j < m; ++j) {
      CHECK(out[j] <= e[j]);
      CHECK(out[j] >= kTwoLevelFloor * e[j]);
      CHECK(out[j] >= 0.0);
    }
  }
}

TEST_CASE("symmetric siblings refine identically") {
  const std::vector<double> v = {1.3, 1.3};
  const std::vector<double> e = {0.4, 0.4};
  const std::vector<double> vp = {2.9, 2.9};
  const std::vector<double> ep = {1.0, 1.0};
  const auto out = two_level_refine(v, e, vp, ep);
  CHECK(out[0] == out[1]);
}

TEST_CASE("length mismatch throws") {
  const std::vector<double> a = {1.0, 2.0};
  const std::vector<double> b = {1.0};
  CHECK_THROWS(two_level_refine(a, b, a, a));
  CHECK_THROWS(two_level_refine(b, b, b, b)); // odd count
}
