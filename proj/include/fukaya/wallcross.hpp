#pragma once

#include <vector>

#include "fukaya/potential.hpp"
#include "fukaya/snf.hpp"

namespace fukaya {

// Pseudo-isotopy structure constants F_{k,beta}: same shape as the fiber
// algebra but with the morphism-level degree rule
//   deg = (sum of input degrees) + 1 - k - mu.
class PseudoIsotopy {
 public:
  PseudoIsotopy(int rank, std::vector<ClassTable> entries);

  int rank() const { return rank_; }
  const BasisPtr& basis() const { return basis_; }
  const std::vector<ClassTable>& entries() const { return entries_; }
  std::vector<DiskClass> classes() const;

 private:
  int rank_ = 0;
  BasisPtr basis_;
  std::vector<ClassTable> entries_;
};

// Reparametrization data of the target chart: 1-form valuation shifts v and
// the unimodular H_1 pushforward matrix M.
//
// Convention: the transported character is chi o M, concretely
//   y'_i = T^{-v_i} * prod_j y_j^{M[j][i]},
// cohomology generators map by e_j -> sum_i M[j][i] e'_i, and b_high by the
// exterior powers of that action.
struct IsotopyReparam {
  std::vector<Rational> v;
  IntMatrix m;

  IsotopyReparam(std::vector<Rational> v_, IntMatrix m_);
};

// f(b): the F-weighted analogue of the potential sum. With implicit_identity
// the normalization F_{1,0} = id contributes b_high itself.
GradedVector eval_f(const PseudoIsotopy& iso, const MCPoint& pt, const RingConfig& cfg,
                    bool implicit_identity = true);

// Chart map induced by the isotopy: multiply each y_i by exp of the i-th
// degree-1 coordinate of f(b) and replace b_high by the non-degree-1 part.
// Throws OutsideDomainError when some degree-1 coordinate of f(b) has
// valuation <= 0. The gamma argument is shape-checked only.
MCPoint f_star(const PseudoIsotopy& iso, const MCPoint& pt, const HolonomyCharacter& gamma,
               const RingConfig& cfg, bool implicit_identity = true);

MCPoint psi_reparam(const IsotopyReparam& reparam, const MCPoint& pt, const RingConfig& cfg);

// The full gluing map psi o F_*.
MCPoint gluing(const PseudoIsotopy& iso, const IsotopyReparam& reparam, const MCPoint& pt,
               const HolonomyCharacter& gamma, const RingConfig& cfg,
               bool implicit_identity = true);

// gamma'(x) = gamma(M x): the character of the target chart.
HolonomyCharacter transport_character(const HolonomyCharacter& gamma, const IntMatrix& m);

// Pushforward of a torus-basis vector under the exterior powers of the
// generator action e_j -> sum_i M[j][i] e'_i.
GradedVector transport_exterior(const GradedVector& v, const IntMatrix& m);

// Verifies f(tau(pt)) = zeta * twist(f(pt)) and tau' o Psi = Psi o tau.
// Throws CharacterMismatchError when gamma(boundary) != zeta^maslov for some
// class or when gamma' is not the M-transport of gamma.
Report check_commute(const PseudoIsotopy& iso, const IsotopyReparam& reparam, const MCPoint& pt,
                     const HolonomyCharacter& gamma, const HolonomyCharacter& gamma_prime,
                     const RingConfig& cfg, bool implicit_identity = true);

}  // namespace fukaya
