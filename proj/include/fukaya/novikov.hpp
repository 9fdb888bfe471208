#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fukaya/rational.hpp"

namespace fukaya {

using Complex = std::complex<double>;

// Truncation bound on exponents; an empty optional means no truncation.
using Cutoff = std::optional<Rational>;

inline bool below_cutoff(const Rational& e, const Cutoff& c) { return !c || e < *c; }

inline Cutoff cutoff_min(const Cutoff& a, const Cutoff& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

// Integer power of a complex number on the unit circle, computed through the
// argument so the magnitude stays exactly 1.
Complex unit_pow(const Complex& z, long long k);

struct NovikovTerm {
  Rational exponent;
  Complex coefficient;
};

// One element of the (truncated) Novikov ring: a finite sum of terms
// c * T^e with exact rational exponents and complex coefficients, meaningful
// only modulo T^cutoff. Exponents are kept strictly increasing, coefficients
// that are exactly zero are dropped, and every stored exponent is < cutoff.
// Values are immutable after construction.
class NovikovScalar {
 public:
  NovikovScalar() = default;  // zero with no truncation
  NovikovScalar(std::vector<NovikovTerm> terms, Cutoff cutoff);

  static NovikovScalar zero(Cutoff cutoff = {});
  static NovikovScalar constant(const Complex& c, Cutoff cutoff = {});
  static NovikovScalar monomial(const Rational& exponent, const Complex& c, Cutoff cutoff = {});

  const std::vector<NovikovTerm>& terms() const { return terms_; }
  const Cutoff& cutoff() const { return cutoff_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient at an exact exponent (zero when absent).
  Complex coefficient_at(const Rational& e) const;

  NovikovScalar truncated(const Cutoff& c) const;
  NovikovScalar scaled(const Complex& c) const;
  NovikovScalar shifted(const Rational& e) const;  // multiply by T^e (exact)

  NovikovScalar operator-() const;
  friend NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b);
  friend NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b);
  friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b);

  std::string str() const;

 private:
  std::vector<NovikovTerm> terms_;
  Cutoff cutoff_;  // nullopt = no truncation
};

// Shared arithmetic configuration: the truncation level, the coefficient
// comparison tolerance and the cyclic order n with zeta = e^{i pi / n}.
struct RingConfig {
  Rational cutoff{2};
  double tol = 1e-9;
  int n = 1;

  RingConfig() = default;
  RingConfig(Rational cutoff_, double tol_, int n_);

  Complex zeta() const;
  // zeta^k with the exponent reduced mod 2n; one std::polar call, no drift
  // accumulation.
  Complex zeta_pow(long long k) const;
  int order() const { return 2 * n; }
};

// Valuation: leading exponent, or empty (representing +infinity) for zero.
std::optional<Rational> nv_val(const NovikovScalar& a);

NovikovScalar nv_add(const NovikovScalar& a, const NovikovScalar& b);
NovikovScalar nv_mul(const NovikovScalar& a, const NovikovScalar& b);

// Inverse via leading-monomial inversion and a geometric series in the
// positive-valuation remainder. A non-monomial input must carry a finite
// cutoff (the series does not terminate otherwise). The result is correct
// modulo T^{cutoff - 2*max(val,0)}.
NovikovScalar nv_inv(const NovikovScalar& a, double tol = 1e-9);

// exp(a) for val(a) >= 0: e^{constant part} times the truncated series in the
// positive-valuation part. Throws DomainError on negative exponents.
NovikovScalar nv_exp(const NovikovScalar& a);

NovikovScalar nv_pow(const NovikovScalar& a, long long k, double tol = 1e-9);

// T^{shift} * prod_i bases[i]^{exponents[i]}, exact below cfg.cutoff and
// truncated there. Inverted factors are computed out to the bound their own
// power and the other factors' negative valuations require, so no truncation
// error can be pulled back below the cutoff.
NovikovScalar nv_weighted_product(const Rational& shift, const std::vector<NovikovScalar>& bases,
                                  const std::vector<long long>& exponents,
                                  const RingConfig& cfg);

// Integer power inside the working ring: exact below cfg.cutoff.
NovikovScalar nv_pow_in_ring(const NovikovScalar& a, long long k, const RingConfig& cfg);

// Exact comparison below min(a.cutoff, b.cutoff): identical exponents and
// bitwise-equal coefficients.
bool nv_exact_eq(const NovikovScalar& a, const NovikovScalar& b);

// Largest coefficient deviation between a and b below
// min(a.cutoff, b.cutoff, cfg.cutoff).
double nv_max_dev(const NovikovScalar& a, const NovikovScalar& b, const RingConfig& cfg);

// Equality in Lambda / T^cutoff: every aligned coefficient difference has
// magnitude <= cfg.tol.
bool nv_eq(const NovikovScalar& a, const NovikovScalar& b, const RingConfig& cfg);

std::string format_complex(const Complex& c);

}  // namespace fukaya
