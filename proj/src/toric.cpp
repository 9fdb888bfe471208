#include "fukaya/toric.hpp"

#include "fukaya/errors.hpp"

namespace fukaya {

FiberAlgebra cho_oh_classes(const Polytope& p) {
  if (p.facets.empty()) throw ValidationError("polytope needs at least one facet");
  const int rank = static_cast<int>(p.point.size());
  BasisPtr basis = GradedBasis::torus(rank);

  std::vector<ClassTable> entries;
  entries.reserve(p.facets.size());
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    const PolytopeFacet& f = p.facets[i];
    if (f.normal.size() != static_cast<std::size_t>(rank)) {
      throw ValidationError("facet normal length differs from the point dimension");
    }
    Rational energy = -f.lambda;
    for (int j = 0; j < rank; ++j) energy += Rational(f.normal[j]) * p.point[j];
    if (!(Rational(0) < energy)) {
      throw BoundaryPointError("fiber point lies on or outside facet " + std::to_string(i));
    }
    DiskClass cls{"facet" + std::to_string(i), energy, 2, f.normal};

    GradedVector unit(basis);
    unit.set("1", NovikovScalar::constant({1.0, 0.0}));
    std::map<std::vector<std::string>, GradedVector> table_entries;
    table_entries.emplace(std::vector<std::string>{}, unit);
    entries.emplace_back(std::move(cls), MultilinearTable(0, {}, basis, std::move(table_entries)));
  }
  return FiberAlgebra(rank, std::move(entries));
}

}  // namespace fukaya
