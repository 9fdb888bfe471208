#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fukaya/category.hpp"
#include "fukaya/graded.hpp"
#include "fukaya/report.hpp"

namespace fukaya {

// Disk class data: symplectic area, Maslov index and the boundary class in
// the H_1 lattice of the fiber torus.
struct DiskClass {
  std::string label;
  Rational energy{0};
  int maslov = 0;
  std::vector<long long> boundary;

  bool is_zero_class() const;
};

using ClassTable = std::pair<DiskClass, MultilinearTable>;

// Structure constants of the fiber torus: one table per registered disk
// class, all inputs of degree > 1, outputs obeying
//   deg = (sum of input degrees) + 2 - k - mu.
// Every class must have positive energy unless it is the zero class carried
// by a table of arity >= 2.
class FiberAlgebra {
 public:
  FiberAlgebra(int rank, std::vector<ClassTable> entries);

  int rank() const { return rank_; }
  const BasisPtr& basis() const { return basis_; }
  // Entries in canonical label order.
  const std::vector<ClassTable>& entries() const { return entries_; }
  std::vector<DiskClass> classes() const;

 private:
  int rank_ = 0;
  BasisPtr basis_;
  std::vector<ClassTable> entries_;
};

// A candidate point of the local mirror chart: invertible torus coordinates
// plus a higher part supported in odd degrees > 1 with positive valuation.
class MCPoint {
 public:
  MCPoint(std::vector<NovikovScalar> y, GradedVector b_high);

  std::size_t rank() const { return y_.size(); }
  const std::vector<NovikovScalar>& y() const { return y_; }
  const GradedVector& b_high() const { return b_high_; }

 private:
  std::vector<NovikovScalar> y_;
  GradedVector b_high_;
};

// Solve gamma(boundary of beta) = zeta^{mu(beta)} for all classes over the
// (2n)-th roots of unity; free directions resolved to the lexicographically
// smallest exponent vector. Throws InconsistentSystemError when no solution
// exists (the divisibility assumption fails for this data).
HolonomyCharacter compute_gamma(const std::vector<DiskClass>& classes, const RingConfig& cfg);
std::vector<long long> compute_gamma_exponents(const std::vector<DiskClass>& classes,
                                               const RingConfig& cfg);

// T^{E(beta)} * prod_i y_i^{boundary_i} for one class at a point; the scalar
// weight carried by every entry of the class's table.
NovikovScalar class_monomial_weight(const DiskClass& cls, const MCPoint& pt,
                                    const RingConfig& cfg);

// The potential sum: T^{E(beta)} y^{boundary} m_{k,beta}(b_high, ..., b_high)
// over all registered classes, truncated at cfg.cutoff.
GradedVector eval_P(const FiberAlgebra& alg, const MCPoint& pt, const RingConfig& cfg);

// Per-class terms of eval_P, keyed by class label (exact transform checks
// need the individual summands).
std::map<std::string, GradedVector> eval_P_terms(const FiberAlgebra& alg, const MCPoint& pt,
                                                 const RingConfig& cfg);

struct WeakMCResult {
  bool is_weak_mc = false;
  NovikovScalar w;
  std::vector<std::string> offending;  // non-unit coordinates that fail to vanish
};

WeakMCResult weak_mc_check(const FiberAlgebra& alg, const MCPoint& pt, const RingConfig& cfg);

// tau: y_i -> gamma_i y_i and zeta^{1-d} on each degree-d part of b_high.
MCPoint apply_tau(const MCPoint& pt, const HolonomyCharacter& gamma, const RingConfig& cfg);

// Verifies W(tau(pt)) = zeta^2 W(pt); requires pt to be weak Maurer-Cartan.
Report check_equivariance(const FiberAlgebra& alg, const MCPoint& pt,
                          const HolonomyCharacter& gamma, const RingConfig& cfg);

// Compare stored degree-1 insertions against the boundary-pairing-scaled
// entries without them (kind 'm' or 'F'; same identity either way, the kind
// only labels the report).
Report check_divisor_axiom(const std::vector<ClassTable>& tables, char kind,
                           const RingConfig& cfg);

}  // namespace fukaya
