#pragma once

#include <vector>

#include "fukaya/potential.hpp"

namespace fukaya {

struct PolytopeFacet {
  std::vector<long long> normal;
  Rational lambda{0};
};

// Moment polytope {u : <normal_i, u> - lambda_i >= 0} with a fiber point.
struct Polytope {
  std::vector<PolytopeFacet> facets;
  std::vector<Rational> point;
};

// Basic Maslov-2 disk classes of a toric Fano fiber: one class per facet
// with energy <normal, u> - lambda, boundary equal to the facet normal and an
// arity-0 table contributing the unit. Throws BoundaryPointError when the
// point is not interior.
FiberAlgebra cho_oh_classes(const Polytope& p);

}  // namespace fukaya
