#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fukaya/category.hpp"
#include "fukaya/potential.hpp"
#include "fukaya/report.hpp"
#include "fukaya/wallcross.hpp"

namespace fukaya {

// Seeded RNG for the randomized suites. Bounded draws go through the raw
// 64-bit stream directly so sequences do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  long long range(long long lo, long long hi);  // inclusive
  double real01();
  Complex unit();
  Complex coefficient(double min_mag, double max_mag);

 private:
  std::mt19937_64 eng_;
};

struct SuiteOptions {
  RingConfig cfg;
  std::uint64_t seed = 42;
  int cases = 100;
  bool implicit_identity = true;
};

// Random degree-valid category: <= max_components intersection components,
// arities <= 4, random holonomy lifts.
CategoryData random_category(Rng& rng, const RingConfig& cfg, int max_components = 6);

// Copy of the category with one class's table outputs moved up one degree
// (class "B0" by construction has room). The result violates the degree rule.
CategoryData perturb_output_degree(const CategoryData& cat, const RingConfig& cfg);

struct RandomFiber {
  FiberAlgebra algebra;
  HolonomyCharacter gamma;  // oriented model: n-th roots of unity
  MCPoint point;
};

// Fiber algebra whose tables output unit multiples (so every point is weak
// Maurer-Cartan) with a character chosen consistently before the Maslov
// indices.
RandomFiber random_fiber(Rng& rng, const RingConfig& cfg);

struct RandomIsotopy {
  PseudoIsotopy isotopy;
  IsotopyReparam reparam;
  HolonomyCharacter gamma;
  MCPoint point;
};

RandomIsotopy random_isotopy(Rng& rng, const RingConfig& cfg);

IntMatrix random_unimodular(Rng& rng, int rank);

// Scalar generators for the ring-law suites.
NovikovScalar random_scalar(Rng& rng, const RingConfig& cfg);
NovikovScalar random_scalar_nonneg(Rng& rng, const RingConfig& cfg);
NovikovScalar random_scalar_invertible(Rng& rng, const RingConfig& cfg);

Report run_novikov_laws(const SuiteOptions& opts);
Report run_twisted_functor(const SuiteOptions& opts);
Report run_equivariance(const SuiteOptions& opts);
Report run_wallcross(const SuiteOptions& opts);
Report run_cp2_mirror(int samples, std::uint64_t seed, double tol);

// Dispatch by suite name; "all" runs the four verification suites. Throws
// UnknownSuiteError for anything else.
std::vector<Report> run_suite(const std::string& name, const SuiteOptions& opts);

// Checks on user-supplied datasets (parsed JSON in the documented schemas).
Report run_user_category(const nlohmann::json& category, const SuiteOptions& opts);
Report run_user_fiber(const nlohmann::json& fiber, const std::optional<nlohmann::json>& point,
                      const SuiteOptions& opts);
Report run_user_isotopy(const nlohmann::json& isotopy, const SuiteOptions& opts);

// Exact per-class transform check: replacing y_i by T^{v_i} y_i multiplies
// the class term by exactly T^{<boundary, v>}.
bool monomial_transform_exact(const FiberAlgebra& alg, const MCPoint& pt,
                              const std::vector<Rational>& v, const RingConfig& cfg);

}  // namespace fukaya
