#pragma once

#include <string>

#include <json.hpp>

#include "fukaya/category.hpp"
#include "fukaya/potential.hpp"
#include "fukaya/report.hpp"
#include "fukaya/toric.hpp"
#include "fukaya/wallcross.hpp"

namespace fukaya {

using Json = nlohmann::json;

// Schemas (all exponents are exact integer pairs [num, den]):
//   scalar    {"terms": [[num, den, re, im], ...], "cutoff": [num, den] | "inf"}
//   basis     {"torus_rank": l} | {"elements": [{"name": ..., "degree": ...}, ...]}
//   vector    {"coords": {name: scalar, ...}}
//   table     {"arity": k, "entries": [{"in": [names], "out": vector}, ...]}
//   fiber     {"rank": l, "classes": [...], "tables": {label: table, ...}}
//   point     {"y": [scalar, ...], "b_high": vector}
//   polytope  {"facets": [{"normal": [ints], "lambda": [num, den]}, ...],
//              "point": [[num, den], ...]}
//   isotopy   {"rank": l, "classes": [...], "tables": {...},
//              "reparam": {"v": [[num, den], ...], "M": [[ints], ...]},
//              "gamma": [ints]?, "point": point?}
//   category  {"objects": [...], "components": [...], "classes": [...],
//              "tables": {class_id: table, ...}}

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json novikov_to_json(const NovikovScalar& s);
NovikovScalar novikov_from_json(const Json& j);

Json basis_to_json(const GradedBasis& b);
BasisPtr basis_from_json(const Json& j);

Json vector_to_json(const GradedVector& v);
GradedVector vector_from_json(const Json& j, const BasisPtr& basis);

Json table_to_json(const MultilinearTable& t);
MultilinearTable table_from_json(const Json& j, const std::vector<BasisPtr>& input_bases,
                                 const BasisPtr& output_basis);

Json disk_class_to_json(const DiskClass& c);
DiskClass disk_class_from_json(const Json& j);

Json fiber_to_json(const FiberAlgebra& alg);
FiberAlgebra fiber_from_json(const Json& j);

Json point_to_json(const MCPoint& pt);
MCPoint point_from_json(const Json& j, const BasisPtr& basis);

Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

struct IsotopyData {
  PseudoIsotopy isotopy;
  IsotopyReparam reparam;
  std::vector<long long> gamma_exponents;  // empty when absent
  std::optional<Json> point;               // raw point JSON when embedded
};

Json isotopy_to_json(const IsotopyData& d);
IsotopyData isotopy_from_json(const Json& j);

Json category_to_json(const CategoryData& cat);
CategoryData category_from_json(const Json& j, const RingConfig& cfg);

Json report_to_json(const Report& r);

Json parse_json_text(const std::string& text);  // wraps parse errors in ParseError
Json load_json_file(const std::string& path);

}  // namespace fukaya
