#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fukaya/graded.hpp"
#include "fukaya/report.hpp"

namespace fukaya {

struct LagrangianLabel {
  std::string name;
  int h1_rank = 0;
  bool oriented = false;
  int ambient_dim = 2;
};

// Multiplicative map from the H_1 lattice to the unit circle, one value per
// generator.
class HolonomyCharacter {
 public:
  HolonomyCharacter() = default;
  explicit HolonomyCharacter(std::vector<Complex> values);

  static HolonomyCharacter trivial(std::size_t rank);
  static HolonomyCharacter from_exponents(const std::vector<long long>& exps,
                                          const RingConfig& cfg);

  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  Complex value(std::size_t i) const { return values_.at(i); }

  // Product of value(i)^{x_i} over the lattice vector x.
  Complex evaluate(const std::vector<long long>& x) const;
  HolonomyCharacter pointwise_product(const HolonomyCharacter& other) const;

  double max_dev_from(const HolonomyCharacter& other) const;

 private:
  std::vector<Complex> values_;
};

struct BraneObject {
  LagrangianLabel label;
  HolonomyCharacter character;
};

// Connected component of a clean intersection, with the graded basis of its
// morphism-space model.
struct MorphismComponent {
  std::string id;
  std::string source;
  std::string target;
  int dim_c = 0;
  BasisPtr basis;
};

// Label of one polygon count: arity, energy, Maslov index, the component
// sequence (C_1, ..., C_k, C_0) and the holonomy-lift exponents s_C as powers
// of zeta. The reversed-output lift s_{C_0'} may be given explicitly; when
// absent it is derived from s_{C_0'} * s_{C_0} = zeta^{dim(C_0) - dim(X)/2}.
struct PolygonClass {
  std::string id;
  int arity = 0;
  Rational energy{0};
  int maslov = 0;
  std::vector<std::string> component_ids;  // size arity + 1
  std::vector<long long> s_exponents;      // size arity + 1, mod 2n
  std::optional<long long> s0_prime_exponent;
};

// Combinatorial model of the category data: branes with their holonomy
// characters, the per-Lagrangian lift systems, intersection components and
// the polygon-class structure constants.
class CategoryData {
 public:
  CategoryData(std::vector<BraneObject> objects,
               std::map<std::string, HolonomyCharacter> el_systems,
               std::map<std::string, MorphismComponent> components,
               std::vector<PolygonClass> classes, std::map<std::string, MultilinearTable> tables,
               const RingConfig& cfg);

  const std::vector<BraneObject>& objects() const { return objects_; }
  const std::map<std::string, HolonomyCharacter>& el_systems() const { return el_systems_; }
  const std::map<std::string, MorphismComponent>& components() const { return components_; }
  const std::vector<PolygonClass>& classes() const { return classes_; }
  const std::map<std::string, MultilinearTable>& tables() const { return tables_; }

  int ambient_dim() const { return ambient_dim_; }
  int half_dim() const { return ambient_dim_ / 2; }

  const MorphismComponent& component(const std::string& id) const;
  const LagrangianLabel& label(const std::string& name) const;

  long long s0_prime_exp(const PolygonClass& cls, const RingConfig& cfg) const;

 private:
  std::vector<BraneObject> objects_;
  std::map<std::string, HolonomyCharacter> el_systems_;
  std::map<std::string, MorphismComponent> components_;
  std::vector<PolygonClass> classes_;
  std::map<std::string, MultilinearTable> tables_;
  int ambient_dim_ = 2;
};

// Object part of the twisted functor: tensor the brane's local system with
// the registered per-Lagrangian system.
BraneObject phi_object(const CategoryData& cat, const BraneObject& obj);

// Scalar by which the morphism-level map acts on a degree-r element supported
// on one component in the rank-one model: zeta^{-r} * s_C.
Complex phi1_scalar(const MorphismComponent& c, const Complex& s_c, int degree,
                    const Complex& zeta);

// zeta^{mu - (dim(C_0) - dim(X)/2)} * s_{C_0'} * prod_i s_{C_i}^{-1}: the
// factor by which one polygon class's table is rescaled in the twisted
// structure.
Complex twist_scale(const CategoryData& cat, const PolygonClass& cls, const RingConfig& cfg);

// Degree-rule violations ("" when valid): output degree must equal
// (dim(C_0) - dim(X)/2) + 2 - k - mu + sum of input degrees per entry.
std::vector<std::string> validate_degree_rule(const CategoryData& cat);

// Rebuild the category with twisted objects and rescaled structure
// constants; throws DegreeRuleError when validation fails.
CategoryData build_twisted_structure(const CategoryData& cat, const RingConfig& cfg);

// Evaluate both sides of the twisted structure equation on every stored
// entry of every class and compare coefficients; degree-invalid classes come
// back as failing cases, not errors.
Report check_twisted_equations(const CategoryData& cat, const RingConfig& cfg);

// Strict order check: the object map has order 2n (order n on oriented
// branes) and the 2n-fold composite of the morphism scalars is 1.
Report check_functor_order(const CategoryData& cat, const RingConfig& cfg);

}  // namespace fukaya
