#pragma once

#include <string>
#include <vector>

#include "bfcub/integrand.hpp"

namespace bfcub {

enum class RefProvenance { ClosedForm, OracleQuadrature };
enum class SignProfile { OneSigned, Oscillatory };

struct IntegrandSpec {
  std::string id;  // "f1".."f8"
  int dim = 0;
  Integrand callable;
  double reference_value = 0.0;
  RefProvenance provenance = RefProvenance::ClosedForm;
  SignProfile sign = SignProfile::OneSigned;
  bool headline = false; // one of the nine standard benchmark configurations
};

// The fixed-parameter test suite over the unit cube: the nine standard
// (id, dim) benchmark configurations, the f2 product peak at its native six
// dimensions, and every integrand at n in {2, 3} for cheap checks.
const std::vector<IntegrandSpec>& suite();

// Reference integral over [0,1]^dim. Throws for unknown (id, dim).
double reference_value(const std::string& id, int dim);

// Looks up the raw callable for an id ("f1".."f8").
Integrand integrand_by_id(const std::string& id);

bool known_integrand(const std::string& id);

} // namespace bfcub
