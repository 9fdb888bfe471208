#include <doctest.h>

#include "fukaya/datasets.hpp"
#include "fukaya/errors.hpp"
#include "fukaya/json_io.hpp"
#include "fukaya/potential.hpp"
#include "fukaya/suites.hpp"
#include "fukaya/toric.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace fukaya;
using testutil::cfg_n;
using testutil::close;
using testutil::term;

namespace {

MCPoint unit_point(const FiberAlgebra& alg) {
  return MCPoint(std::vector<NovikovScalar>(static_cast<std::size_t>(alg.rank()),
                                            NovikovScalar::constant({1.0, 0.0})),
                 GradedVector(alg.basis()));
}

FiberAlgebra cp2_algebra() {
  BuiltinDataset ds = builtin_dataset("cp2-toric");
  return cho_oh_classes(polytope_from_json(ds.data));
}

// The rank-3 fiber with the literal zero boundary on the Maslov-4 class;
// right for evaluating P, but inconsistent with any character at n = 3.
FiberAlgebra t3_literal() {
  BasisPtr basis = GradedBasis::torus(3);
  std::vector<ClassTable> entries;
  const std::vector<std::vector<long long>> boundaries = {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}};
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    GradedVector out(basis);
    out.set("1", NovikovScalar::constant({1.0, 0.0}));
    entries.emplace_back(DiskClass{"b" + std::to_string(i), Rational(1, 3), 2, boundaries[i]},
                         MultilinearTable(0, {}, basis, {{{}, out}}));
  }
  GradedVector out(basis);
  out.set("1", NovikovScalar::constant({1.0, 0.0}));
  entries.emplace_back(DiskClass{"bp", Rational(1, 2), 4, {0, 0, 0}},
                       MultilinearTable(1, {basis}, basis, {{{"e123"}, out}}));
  return FiberAlgebra(3, std::move(entries));
}

MCPoint t3_point(const FiberAlgebra& alg) {
  GradedVector b(alg.basis());
  b.set("e123", term(1, 4, {1.0, 0.0}));
  return MCPoint(std::vector<NovikovScalar>(3, NovikovScalar::constant({1.0, 0.0})), b);
}

}  // namespace

TEST_CASE("compute_gamma") {
  RingConfig cfg = cfg_n(3);

  SUBCASE("the three basic classes of the plane") {
    std::vector<DiskClass> classes = {{"a", Rational(1, 3), 2, {1, 0}},
                                      {"b", Rational(1, 3), 2, {0, 1}},
                                      {"c", Rational(1, 3), 2, {-1, -1}}};
    HolonomyCharacter gamma = compute_gamma(classes, cfg);
    CHECK(close(gamma.value(0), std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0)));
    CHECK(close(gamma.value(1), gamma.value(0)));
  }

  SUBCASE("free coordinates come out trivial") {
    std::vector<DiskClass> classes = {{"a", Rational(1), 0, {1, 0}}};
    HolonomyCharacter gamma = compute_gamma(classes, cfg);
    CHECK(close(gamma.value(0), {1.0, 0.0}));
    CHECK(close(gamma.value(1), {1.0, 0.0}));
  }

  SUBCASE("contradictory congruences are inconsistent") {
    std::vector<DiskClass> classes = {{"a", Rational(1), 2, {1, 0}},
                                      {"b", Rational(1), 0, {1, 0}}};
    CHECK_THROWS_AS(compute_gamma(classes, cfg), InconsistentSystemError);
  }

  SUBCASE("solutions satisfy every congruence") {
    Rng rng(61);
    for (int trial = 0; trial < 25; ++trial) {
      RandomFiber rf = random_fiber(rng, cfg);
      auto exps = compute_gamma_exponents(rf.algebra.classes(), cfg);
      HolonomyCharacter gamma = HolonomyCharacter::from_exponents(exps, cfg);
      for (const auto& cls : rf.algebra.classes()) {
        CHECK(close(gamma.evaluate(cls.boundary), cfg.zeta_pow(cls.maslov), 1e-12));
      }
    }
  }
}

TEST_CASE("eval_P") {
  RingConfig cfg = cfg_n(3);

  SUBCASE("three basic classes at the unit point") {
    FiberAlgebra alg = cp2_algebra();
    GradedVector p = eval_P(alg, unit_point(alg), cfg);
    CHECK(p.coords().size() == 1);
    NovikovScalar w = p.coord("1");
    CHECK(w.terms().size() == 1);
    CHECK(w.terms()[0].exponent == Rational(1, 3));
    CHECK(close(w.terms()[0].coefficient, {3.0, 0.0}));
  }

  SUBCASE("no classes means zero") {
    FiberAlgebra alg(2, {});
    CHECK(eval_P(alg, unit_point(alg), cfg).is_zero());
  }

  SUBCASE("rank-3 synthetic fiber with a higher part") {
    FiberAlgebra alg = t3_literal();
    GradedVector p = eval_P(alg, t3_point(alg), cfg);
    NovikovScalar w = p.coord("1");
    REQUIRE(w.terms().size() == 2);
    CHECK(w.terms()[0].exponent == Rational(1, 3));
    CHECK(close(w.terms()[0].coefficient, {3.0, 0.0}));
    CHECK(w.terms()[1].exponent == Rational(3, 4));
    CHECK(close(w.terms()[1].coefficient, {1.0, 0.0}));
  }

  SUBCASE("a positive energy gap is required") {
    BasisPtr basis = GradedBasis::torus(2);
    GradedVector out(basis);
    out.set("1", NovikovScalar::constant({1.0, 0.0}));
    std::vector<ClassTable> entries;
    entries.emplace_back(DiskClass{"bad", Rational(0), 2, {1, 0}},
                         MultilinearTable(0, {}, basis, {{{}, out}}));
    CHECK_THROWS_AS(FiberAlgebra(2, std::move(entries)), NoEnergyGapError);
  }

  SUBCASE("the zero class is admitted at arity >= 2 only") {
    BasisPtr basis = GradedBasis::torus(7);
    GradedVector out(basis);
    out.set("e123456", NovikovScalar::constant({1.0, 0.0}));  // degree 3+3+2-2-0
    std::vector<long long> zero(7, 0);
    std::vector<ClassTable> good;
    good.emplace_back(DiskClass{"m2", Rational(0), 0, zero},
                      MultilinearTable(2, {basis, basis}, basis, {{{"e123", "e456"}, out}}));
    CHECK_NOTHROW(FiberAlgebra(7, std::move(good)));

    GradedVector out1(basis);
    out1.set("e1234", NovikovScalar::constant({1.0, 0.0}));  // degree 3+2-1-0
    std::vector<ClassTable> bad;
    bad.emplace_back(DiskClass{"m1", Rational(0), 0, zero},
                     MultilinearTable(1, {basis}, basis, {{{"e123"}, out1}}));
    CHECK_THROWS_AS(FiberAlgebra(7, std::move(bad)), ValidationError);
  }
}

TEST_CASE("weak Maurer-Cartan membership") {
  RingConfig cfg = cfg_n(3);

  SUBCASE("degree-zero outputs always land on the unit") {
    FiberAlgebra alg = cp2_algebra();
    Rng rng(67);
    for (int i = 0; i < 10; ++i) {
      std::vector<NovikovScalar> y;
      for (int k = 0; k < 2; ++k) y.push_back(term(rng.range(-1, 1), 12, rng.unit()));
      WeakMCResult r = weak_mc_check(alg, MCPoint(y, GradedVector(alg.basis())), cfg);
      CHECK(r.is_weak_mc);
    }
  }

  SUBCASE("the synthetic fiber is weak Maurer-Cartan with the expected value") {
    FiberAlgebra alg = t3_literal();
    WeakMCResult r = weak_mc_check(alg, t3_point(alg), cfg);
    CHECK(r.is_weak_mc);
    CHECK(r.w.terms().size() == 2);
  }

  SUBCASE("an output off the unit is flagged") {
    BasisPtr basis = GradedBasis::torus(2);
    GradedVector out(basis);
    out.set("e1", NovikovScalar::constant({1.0, 0.0}));
    std::vector<ClassTable> entries;
    entries.emplace_back(DiskClass{"c", Rational(1, 2), 1, {1, 0}},
                         MultilinearTable(0, {}, basis, {{{}, out}}));
    FiberAlgebra alg(2, std::move(entries));
    WeakMCResult r = weak_mc_check(alg, unit_point(alg), cfg);
    CHECK_FALSE(r.is_weak_mc);
    REQUIRE(r.offending.size() == 1);
    CHECK(r.offending[0] == "e1");
  }
}

TEST_CASE("tau action") {
  RingConfig cfg = cfg_n(3);

  SUBCASE("degree-3 parts pick up zeta^{-2}") {
    BasisPtr basis = GradedBasis::torus(3);
    GradedVector b(basis);
    b.set("e123", term(1, 4, {1.0, 0.0}));
    MCPoint pt(std::vector<NovikovScalar>(3, NovikovScalar::constant({1.0, 0.0})), b);
    MCPoint moved = apply_tau(pt, HolonomyCharacter::trivial(3), cfg);
    CHECK(close(moved.b_high().coord("e123").terms()[0].coefficient, cfg.zeta_pow(-2), 1e-12));
  }

  SUBCASE("the plane's character rotates the unit point") {
    FiberAlgebra alg = cp2_algebra();
    HolonomyCharacter gamma = compute_gamma(alg.classes(), cfg);
    MCPoint moved = apply_tau(unit_point(alg), gamma, cfg);
    CHECK(close(moved.y()[0].terms()[0].coefficient,
                std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0)));
  }

  SUBCASE("n applications are the identity in the oriented model") {
    Rng rng(71);
    for (int i = 0; i < 20; ++i) {
      RandomFiber rf = random_fiber(rng, cfg);
      MCPoint moved = rf.point;
      for (int k = 0; k < cfg.n; ++k) moved = apply_tau(moved, rf.gamma, cfg);
      for (std::size_t k = 0; k < rf.point.rank(); ++k) {
        CHECK(nv_max_dev(moved.y()[k], rf.point.y()[k], cfg) < 1e-12);
      }
      CHECK(gv_max_dev(moved.b_high(), rf.point.b_high(), cfg) < 1e-12);
    }
  }
}

TEST_CASE("superpotential equivariance") {
  RingConfig cfg = cfg_n(3);

  SUBCASE("the plane at the unit point") {
    FiberAlgebra alg = cp2_algebra();
    HolonomyCharacter gamma = compute_gamma(alg.classes(), cfg);
    MCPoint pt = unit_point(alg);
    Report r = check_equivariance(alg, pt, gamma, cfg);
    CHECK(r.all_passed());
    // W(tau pt) = 3 e^{2 pi i/3} T^{1/3}
    WeakMCResult moved = weak_mc_check(alg, apply_tau(pt, gamma, cfg), cfg);
    REQUIRE(moved.w.terms().size() == 1);
    CHECK(close(moved.w.terms()[0].coefficient, 3.0 * cfg.zeta_pow(2), 1e-12));
  }

  SUBCASE("arity-0 tables with Maslov 2 reduce to the character identity") {
    Rng rng(73);
    for (int i = 0; i < 20; ++i) {
      RandomFiber rf = random_fiber(rng, cfg);
      CHECK(check_equivariance(rf.algebra, rf.point, rf.gamma, cfg).all_passed());
    }
  }

  SUBCASE("the built-in synthetic fiber with the Maslov-4 class") {
    BuiltinDataset ds = builtin_dataset("t3-synthetic");
    FiberAlgebra alg = fiber_from_json(ds.data);
    MCPoint pt = point_from_json(ds.data.at("point"), alg.basis());
    HolonomyCharacter gamma = compute_gamma(alg.classes(), cfg);
    Report r = check_equivariance(alg, pt, gamma, cfg);
    CHECK(r.all_passed());
    CHECK(r.max_dev() < 1e-9);
  }

  SUBCASE("requires a weak Maurer-Cartan point") {
    BasisPtr basis = GradedBasis::torus(2);
    GradedVector out(basis);
    out.set("e1", NovikovScalar::constant({1.0, 0.0}));
    std::vector<ClassTable> entries;
    entries.emplace_back(DiskClass{"c", Rational(1, 2), 1, {1, 0}},
                         MultilinearTable(0, {}, basis, {{{}, out}}));
    FiberAlgebra alg(2, std::move(entries));
    CHECK_THROWS_AS(
        check_equivariance(alg, unit_point(alg), HolonomyCharacter::trivial(2), cfg),
        PreconditionError);
  }
}

TEST_CASE("divisor axiom check") {
  RingConfig cfg = cfg_n(3);
  BasisPtr basis = GradedBasis::torus(2);
  DiskClass cls{"c", Rational(1, 2), 2, {3, -1}};

  GradedVector base(basis);
  base.set("1", NovikovScalar::constant({1.0, 0.0}));
  MultilinearTable low(0, {}, basis, {{{}, base}});

  auto insertion_table = [&](double factor) {
    std::map<std::vector<std::string>, GradedVector> entries;
    entries.emplace(std::vector<std::string>{"e1"},
                    base.scaled({factor * 3.0, 0.0}));  // <boundary, e1> = 3
    entries.emplace(std::vector<std::string>{"e2"},
                    base.scaled({factor * -1.0, 0.0}));  // <boundary, e2> = -1
    return MultilinearTable(1, {basis}, basis, std::move(entries));
  };

  SUBCASE("closed data passes") {
    std::vector<ClassTable> tables;
    tables.emplace_back(cls, low);
    tables.emplace_back(DiskClass{"c1", cls.energy, cls.maslov, cls.boundary},
                        insertion_table(1.0));
    Report r = check_divisor_axiom(tables, 'F', cfg);
    CHECK(r.all_passed());
    CHECK(r.cases.size() == 2);
  }

  SUBCASE("no degree-1 insertions means a vacuous pass") {
    std::vector<ClassTable> tables;
    tables.emplace_back(cls, low);
    Report r = check_divisor_axiom(tables, 'm', cfg);
    CHECK(r.all_passed());
    REQUIRE(r.cases.size() == 1);
    CHECK(r.cases[0].id == "vacuous");
  }

  SUBCASE("a scaled violation is reported") {
    std::vector<ClassTable> tables;
    tables.emplace_back(cls, low);
    tables.emplace_back(DiskClass{"c1", cls.energy, cls.maslov, cls.boundary},
                        insertion_table(2.0));
    Report r = check_divisor_axiom(tables, 'F', cfg);
    CHECK_FALSE(r.all_passed());
  }
}

TEST_CASE("inverse cubes keep the compositions the other factors pull down") {
  // Regression shape: a slowly decaying inverse series raised to the third
  // power next to another negative-valuation factor. The tail compositions
  // land below the cutoff only after the second factor pulls them down.
  RingConfig cfg = cfg_n(3);
  std::vector<NovikovScalar> y = {
      NovikovScalar::monomial(Rational(-1, 8), {0.56, 0.59}) +
          NovikovScalar::monomial(Rational(3, 4), {0.14, -0.16}),
      NovikovScalar::monomial(Rational(1, 2), {-0.19, -0.50}) +
          NovikovScalar::monomial(Rational(5, 8), {-0.24, -0.04}),
  };
  DiskClass cls{"c", Rational(3, 4), 2, {1, -3}};
  MCPoint pt(y, GradedVector(GradedBasis::torus(2)));
  NovikovScalar w = class_monomial_weight(cls, pt, cfg);

  const Rational wide(8);
  oracle::Series f1 = oracle::from_scalar(y[0]);
  oracle::Series inv_remainder = oracle::from_terms(
      {{Rational(1, 8), Complex(-0.24, -0.04) / Complex(-0.19, -0.50)}});
  oracle::Series inv = oracle::scale(oracle::geometric_inverse(inv_remainder, wide),
                                     Complex(1.0, 0.0) / Complex(-0.19, -0.50));
  oracle::Series inv_shifted;
  for (const auto& [e, c] : inv) inv_shifted[e - Rational(1, 2)] = c;
  oracle::Series expected = oracle::from_terms({{Rational(3, 4), {1.0, 0.0}}});
  expected = oracle::truncate(oracle::mul(expected, f1), wide);
  for (int k = 0; k < 3; ++k) expected = oracle::truncate(oracle::mul(expected, inv_shifted), wide);
  CHECK(oracle::max_dev(oracle::from_scalar(w), expected, cfg.cutoff) < 1e-12);
}

TEST_CASE("class weights match the brute-force oracle below the cutoff") {
  // Negative powers of multi-term coordinates with mixed valuations: the
  // oracle computes everything naively at a generous bound and truncates once.
  RingConfig cfg = cfg_n(3);
  Rng rng(107);
  for (int trial = 0; trial < 150; ++trial) {
    const int rank = 3;
    std::vector<NovikovScalar> y;
    std::vector<oracle::Series> oy;
    for (int i = 0; i < rank; ++i) {
      Rational v(rng.range(-4, 4), 8);
      Complex c0 = rng.coefficient(0.5, 1.5);
      Complex c1 = rng.coefficient(0.05, 0.3);
      Rational gap(rng.range(1, 8), 8);
      y.push_back(NovikovScalar::monomial(v, c0) + NovikovScalar::monomial(v + gap, c1));
      oy.push_back(oracle::from_terms({{v, c0}, {v + gap, c1}}));
    }
    DiskClass cls{"c", Rational(rng.range(1, 4), 4), 2,
                  {rng.range(-3, 3), rng.range(-3, 3), rng.range(-3, 3)}};
    MCPoint pt(y, GradedVector(GradedBasis::torus(rank)));
    NovikovScalar w = class_monomial_weight(cls, pt, cfg);

    const Rational wide(8);
    oracle::Series expected = oracle::from_terms({{cls.energy, {1.0, 0.0}}});
    for (int i = 0; i < rank; ++i) {
      long long b = cls.boundary[i];
      oracle::Series factor = oracle::from_terms({{Rational(0), {1.0, 0.0}}});
      if (b > 0) {
        for (int k = 0; k < b; ++k) factor = oracle::truncate(oracle::mul(factor, oy[i]), wide);
      } else if (b < 0) {
        // lead^{-1} * geometric series in the remainder
        Rational lead_exp = oy[i].begin()->first;
        Complex lead = oy[i].begin()->second;
        oracle::Series remainder;
        for (auto it = std::next(oy[i].begin()); it != oy[i].end(); ++it) {
          remainder[it->first - lead_exp] = it->second / lead;
        }
        oracle::Series inv = oracle::geometric_inverse(remainder, wide);
        inv = oracle::scale(inv, Complex(1.0, 0.0) / lead);
        oracle::Series shifted;
        for (const auto& [e, c] : inv) shifted[e - lead_exp] = c;
        for (int k = 0; k < -b; ++k) {
          factor = oracle::truncate(oracle::mul(factor, shifted), wide);
        }
      }
      expected = oracle::truncate(oracle::mul(expected, factor), wide);
    }
    CHECK(oracle::max_dev(oracle::from_scalar(w), expected, cfg.cutoff) < 1e-10);
  }
}

TEST_CASE("monomial transform law") {
  RingConfig cfg = cfg_n(3);
  FiberAlgebra alg = cp2_algebra();
  CHECK(monomial_transform_exact(alg, unit_point(alg), {Rational(1, 3), Rational(-1, 4)}, cfg));
  CHECK(monomial_transform_exact(alg, unit_point(alg), {Rational(0), Rational(1, 2)}, cfg));

  Rng rng(79);
  for (int i = 0; i < 25; ++i) {
    RandomFiber rf = random_fiber(rng, cfg);
    std::vector<Rational> v;
    for (std::size_t k = 0; k < rf.point.rank(); ++k) v.emplace_back(rng.range(0, 4), 8);
    CHECK(monomial_transform_exact(rf.algebra, rf.point, v, cfg));
  }
}

TEST_CASE("class order does not change the sum") {
  RingConfig cfg = cfg_n(3);
  BasisPtr basis = GradedBasis::torus(2);
  GradedVector out(basis);
  out.set("1", NovikovScalar::constant({0.7, 0.3}));

  auto make = [&](bool reversed) {
    std::vector<ClassTable> entries;
    entries.emplace_back(DiskClass{"x", Rational(1, 3), 2, {1, 0}},
                         MultilinearTable(0, {}, basis, {{{}, out}}));
    entries.emplace_back(DiskClass{"y", Rational(1, 2), 2, {0, 1}},
                         MultilinearTable(0, {}, basis, {{{}, out.scaled({2.0, 0.0})}}));
    if (reversed) std::swap(entries[0], entries[1]);
    return FiberAlgebra(2, std::move(entries));
  };
  FiberAlgebra a = make(false);
  FiberAlgebra b = make(true);
  MCPoint pt = unit_point(a);
  CHECK(nv_exact_eq(eval_P(a, pt, cfg).coord("1"), eval_P(b, pt, cfg).coord("1")));
}

TEST_CASE("point validation") {
  BasisPtr basis = GradedBasis::torus(3);
  std::vector<NovikovScalar> y(3, NovikovScalar::constant({1.0, 0.0}));

  GradedVector even(basis);
  even.set("e12", term(1, 2, {1.0, 0.0}));
  CHECK_THROWS_AS(MCPoint(y, even), ValidationError);

  GradedVector degree1(basis);
  degree1.set("e1", term(1, 2, {1.0, 0.0}));
  CHECK_THROWS_AS(MCPoint(y, degree1), ValidationError);

  GradedVector flat(basis);
  flat.set("e123", NovikovScalar::constant({1.0, 0.0}));  // valuation 0
  CHECK_THROWS_AS(MCPoint(y, flat), ValidationError);

  std::vector<NovikovScalar> with_zero = y;
  with_zero[1] = NovikovScalar();
  CHECK_THROWS_AS(MCPoint(with_zero, GradedVector(basis)), ValidationError);
}
