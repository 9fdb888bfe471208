#include <doctest.h>

#include "fukaya/datasets.hpp"
#include "fukaya/errors.hpp"
#include "fukaya/json_io.hpp"
#include "fukaya/suites.hpp"
#include "fukaya/wallcross.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace fukaya;
using testutil::cfg_n;
using testutil::close;
using testutil::term;

namespace {

// Single class with boundary (1, -1), Maslov 0 and F_0 = e1 - e2.
PseudoIsotopy basic_isotopy() {
  BasisPtr basis = GradedBasis::torus(2);
  GradedVector out(basis);
  out.set("e1", NovikovScalar::constant({1.0, 0.0}));
  out.set("e2", NovikovScalar::constant({-1.0, 0.0}));
  std::vector<ClassTable> entries;
  entries.emplace_back(DiskClass{"beta", Rational(1), 0, {1, -1}},
                       MultilinearTable(0, {}, basis, {{{}, out}}));
  return PseudoIsotopy(2, std::move(entries));
}

MCPoint unit_point(int rank) {
  return MCPoint(std::vector<NovikovScalar>(static_cast<std::size_t>(rank),
                                            NovikovScalar::constant({1.0, 0.0})),
                 GradedVector(GradedBasis::torus(rank)));
}

IntMatrix identity(int rank) {
  IntMatrix m(rank, std::vector<long long>(rank, 0));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

TEST_CASE("eval_f") {
  RingConfig cfg = cfg_n(3);
  PseudoIsotopy empty(2, {});
  MCPoint pt = unit_point(2);
  CHECK(eval_f(empty, pt, cfg, false).is_zero());
  CHECK(eval_f(empty, pt, cfg, true).is_zero());  // b_high = 0 here

  PseudoIsotopy iso = basic_isotopy();
  GradedVector f = eval_f(iso, pt, cfg);
  CHECK(f.coords().size() == 2);
  CHECK(f.coord("e1").terms()[0].exponent == Rational(1));
  CHECK(close(f.coord("e2").terms()[0].coefficient, {-1.0, 0.0}));

  // y = (1, T^{-1/2}) raises the energy to 3/2
  MCPoint shifted({NovikovScalar::constant({1.0, 0.0}), term(-1, 2, {1.0, 0.0})},
                  GradedVector(GradedBasis::torus(2)));
  GradedVector g = eval_f(iso, shifted, cfg);
  CHECK(g.coord("e1").terms()[0].exponent == Rational(3, 2));
}

TEST_CASE("chart map f_star") {
  RingConfig cfg = cfg_n(3);
  HolonomyCharacter gamma = HolonomyCharacter::from_exponents({2, 2}, cfg);

  SUBCASE("the empty isotopy is the identity with the normalization term") {
    PseudoIsotopy empty(3, {});
    GradedVector b(GradedBasis::torus(3));
    b.set("e123", term(1, 4, {0.5, 0.0}));
    MCPoint pt(std::vector<NovikovScalar>(3, NovikovScalar::constant({1.0, 0.0})), b);
    MCPoint out = f_star(empty, pt, HolonomyCharacter::trivial(3), cfg, true);
    CHECK(gv_max_dev(out.b_high(), pt.b_high(), cfg) == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(nv_exact_eq(out.y()[i], pt.y()[i]));

    // with the normalization term off, b_high is replaced by zero
    MCPoint bare = f_star(empty, pt, HolonomyCharacter::trivial(3), cfg, false);
    CHECK(bare.b_high().is_zero());
  }

  SUBCASE("exponentials of the degree-1 part act on the coordinates") {
    PseudoIsotopy iso = basic_isotopy();
    MCPoint out = f_star(iso, unit_point(2), gamma, cfg);
    auto series = oracle::exp_positive(oracle::from_terms({{Rational(1), {1.0, 0.0}}}),
                                       Rational(2));
    CHECK(oracle::max_dev(oracle::from_scalar(out.y()[0]), series, Rational(2)) < 1e-12);
    auto inv_series = oracle::exp_positive(oracle::from_terms({{Rational(1), {-1.0, 0.0}}}),
                                           Rational(2));
    CHECK(oracle::max_dev(oracle::from_scalar(out.y()[1]), inv_series, Rational(2)) < 1e-12);
  }

  SUBCASE("valuation zero in the degree-1 part leaves the domain") {
    PseudoIsotopy iso = basic_isotopy();
    MCPoint pt({term(-1, 1, {1.0, 0.0}), NovikovScalar::constant({1.0, 0.0})},
               GradedVector(GradedBasis::torus(2)));
    CHECK_THROWS_AS(f_star(iso, pt, gamma, cfg), OutsideDomainError);
  }
}

TEST_CASE("chart reparametrization psi") {
  RingConfig cfg = cfg_n(3);

  SUBCASE("pure valuation shift") {
    IsotopyReparam r({Rational(1, 3), Rational(0)}, identity(2));
    MCPoint out = psi_reparam(r, unit_point(2), cfg);
    CHECK(*nv_val(out.y()[0]) == Rational(-1, 3));
    CHECK(*nv_val(out.y()[1]) == Rational(0));
  }

  SUBCASE("trivial data is the identity") {
    IsotopyReparam r({Rational(0), Rational(0)}, identity(2));
    MCPoint pt({term(1, 2, {0.3, 0.4}), term(0, 1, {1.0, -1.0})},
               GradedVector(GradedBasis::torus(2)));
    MCPoint out = psi_reparam(r, pt, cfg);
    for (int i = 0; i < 2; ++i) CHECK(nv_exact_eq(out.y()[i], pt.y()[i]));
  }

  SUBCASE("shear on the exponent lattice") {
    IsotopyReparam r({Rational(0), Rational(0)}, {{1, 1}, {0, 1}});
    MCPoint pt({term(1, 1, {1.0, 0.0}), term(2, 1, {1.0, 0.0})},
               GradedVector(GradedBasis::torus(2)));
    MCPoint out = psi_reparam(r, pt, cfg);
    CHECK(*nv_val(out.y()[0]) == Rational(1));
    CHECK(*nv_val(out.y()[1]) == Rational(3));  // y'_2 = y_1 * y_2
  }

  SUBCASE("inverse data composes to the identity") {
    Rng rng(83);
    for (int trial = 0; trial < 20; ++trial) {
      RandomIsotopy ri = random_isotopy(rng, cfg);
      IntMatrix inv = inverse_unimodular(ri.reparam.m);
      std::vector<Rational> w(ri.point.rank(), Rational(0));
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) w[i] -= Rational(inv[j][i]) * ri.reparam.v[j];
      }
      MCPoint round = psi_reparam(IsotopyReparam(w, inv), psi_reparam(ri.reparam, ri.point, cfg),
                                  cfg);
      for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(nv_max_dev(round.y()[i], ri.point.y()[i], cfg) < 1e-12);
      }
      CHECK(gv_max_dev(round.b_high(), ri.point.b_high(), cfg) < 1e-12);
    }
  }

  SUBCASE("multi-term coordinates with inverting entries match the oracle") {
    Rng rng(127);
    BasisPtr basis = GradedBasis::torus(2);
    const Rational wide(10);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<NovikovScalar> y;
      std::vector<oracle::Series> inv_oracle;
      for (int i = 0; i < 2; ++i) {
        Rational v(rng.range(-2, 2), 8);
        Complex head = rng.coefficient(0.6, 1.4);
        Rational gap(rng.range(1, 4), 4);
        Complex tail = rng.coefficient(0.05, 0.25);
        y.push_back(NovikovScalar::monomial(v, head) + NovikovScalar::monomial(v + gap, tail));
        oracle::Series g = oracle::scale(
            oracle::geometric_inverse(oracle::from_terms({{gap, tail / head}}), wide),
            Complex(1.0, 0.0) / head);
        oracle::Series shifted;
        for (const auto& [e, c] : g) shifted[e - v] = c;
        inv_oracle.push_back(std::move(shifted));
      }
      MCPoint pt(y, GradedVector(basis));
      std::vector<Rational> v = {Rational(rng.range(-2, 2), 4), Rational(rng.range(-2, 2), 4)};
      IsotopyReparam r(v, {{0, 1}, {-1, 2}});  // det = 1, inverting entries
      MCPoint out = psi_reparam(r, pt, cfg);

      for (int i = 0; i < 2; ++i) {
        oracle::Series expected = oracle::from_terms({{-r.v[i], {1.0, 0.0}}});
        for (int j = 0; j < 2; ++j) {
          long long e = r.m[j][i];
          oracle::Series factor = oracle::from_terms({{Rational(0), {1.0, 0.0}}});
          for (long long k = 0; k < std::llabs(e); ++k) {
            factor = oracle::truncate(
                oracle::mul(factor, e > 0 ? oracle::from_scalar(y[j]) : inv_oracle[j]), wide);
          }
          expected = oracle::truncate(oracle::mul(expected, factor), wide);
        }
        Rational bound = out.y()[i].cutoff() ? fukaya::min(*out.y()[i].cutoff(), cfg.cutoff)
                                             : cfg.cutoff;
        CHECK(oracle::max_dev(oracle::from_scalar(out.y()[i]), expected, bound) < 1e-10);
        CHECK(bound >= cfg.cutoff);  // outputs stay meaningful to the working cutoff
      }
    }
  }

  SUBCASE("valuation bookkeeping at M = id") {
    Rng rng(89);
    for (int trial = 0; trial < 20; ++trial) {
      RandomIsotopy ri = random_isotopy(rng, cfg);
      std::vector<Rational> v = ri.reparam.v;
      MCPoint out = psi_reparam(IsotopyReparam(v, identity(static_cast<int>(v.size()))),
                                ri.point, cfg);
      for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(*nv_val(out.y()[i]) == *nv_val(ri.point.y()[i]) - v[i]);
      }
    }
  }

  SUBCASE("non-unimodular matrices are rejected") {
    CHECK_THROWS_AS(IsotopyReparam({Rational(0), Rational(0)}, {{2, 0}, {0, 1}}),
                    ValidationError);
  }
}

TEST_CASE("exterior transport conventions") {
  BasisPtr b = GradedBasis::torus(2);
  GradedVector v(b);
  v.set("e12", NovikovScalar::constant({1.0, 0.0}));

  // swapping the generators reverses the orientation of the top wedge
  GradedVector swapped = transport_exterior(v, {{0, 1}, {1, 0}});
  CHECK(close(swapped.coord("e12").terms()[0].coefficient, {-1.0, 0.0}));

  // a shear fixes the top wedge
  GradedVector sheared = transport_exterior(v, {{1, 1}, {0, 1}});
  CHECK(close(sheared.coord("e12").terms()[0].coefficient, {1.0, 0.0}));

  // degree-1 coordinates transform by the transpose action
  GradedVector x(b);
  x.set("e1", NovikovScalar::constant({1.0, 0.0}));
  GradedVector moved = transport_exterior(x, {{1, 2}, {0, 1}});
  CHECK(close(moved.coord("e1").terms()[0].coefficient, {1.0, 0.0}));
  CHECK(close(moved.coord("e2").terms()[0].coefficient, {2.0, 0.0}));
}

TEST_CASE("integer matrix helpers") {
  CHECK(det_bareiss({{1, 1}, {0, 1}}) == 1);
  CHECK(det_bareiss({{0, 1}, {1, 0}}) == -1);
  CHECK(det_bareiss({{2, 0}, {0, 2}}) == 4);
  IntMatrix m{{1, 2, 0}, {0, 1, 3}, {0, 0, 1}};
  IntMatrix inv = inverse_unimodular(m);
  IntMatrix expected{{1, -2, 6}, {0, 1, -3}, {0, 0, 1}};
  CHECK(inv == expected);
  CHECK_THROWS_AS(inverse_unimodular({{2, 0}, {0, 1}}), ValidationError);
}

TEST_CASE("gluing composite") {
  RingConfig cfg = cfg_n(3);
  PseudoIsotopy iso = basic_isotopy();
  HolonomyCharacter gamma = HolonomyCharacter::from_exponents({2, 2}, cfg);
  IsotopyReparam r({Rational(1, 3), Rational(0)}, identity(2));

  MCPoint out = gluing(iso, r, unit_point(2), gamma, cfg);
  // (T^{-1/3} e^T, e^{-T}): valuations -1/3 and 0
  CHECK(*nv_val(out.y()[0]) == Rational(-1, 3));
  CHECK(close(out.y()[0].coefficient_at(Rational(-1, 3)), {1.0, 0.0}));
  CHECK(close(out.y()[0].coefficient_at(Rational(2, 3)), {1.0, 0.0}));  // T^{-1/3} * T
  CHECK(close(out.y()[1].coefficient_at(Rational(1)), {-1.0, 0.0}));
  CHECK(out.b_high().is_zero());

  SUBCASE("trivial data is the identity") {
    PseudoIsotopy empty(2, {});
    IsotopyReparam rid({Rational(0), Rational(0)}, identity(2));
    MCPoint pt = unit_point(2);
    MCPoint same = gluing(empty, rid, pt, HolonomyCharacter::trivial(2), cfg);
    for (int i = 0; i < 2; ++i) CHECK(nv_exact_eq(same.y()[i], pt.y()[i]));
  }

  SUBCASE("domain violations propagate") {
    MCPoint pt({term(-1, 1, {1.0, 0.0}), NovikovScalar::constant({1.0, 0.0})},
               GradedVector(GradedBasis::torus(2)));
    CHECK_THROWS_AS(gluing(iso, r, pt, gamma, cfg), OutsideDomainError);
  }
}

TEST_CASE("the action commutes with the gluing") {
  RingConfig cfg = cfg_n(3);

  SUBCASE("worked example with the consistent character") {
    PseudoIsotopy iso = basic_isotopy();
    HolonomyCharacter gamma = HolonomyCharacter::from_exponents({2, 2}, cfg);
    IsotopyReparam r({Rational(1, 3), Rational(0)}, identity(2));
    Report rep = check_commute(iso, r, unit_point(2), gamma,
                               transport_character(gamma, r.m), cfg);
    CHECK(rep.all_passed());
    CHECK(rep.max_dev() < 1e-12);
  }

  SUBCASE("empty isotopy commutes trivially") {
    PseudoIsotopy empty(2, {});
    HolonomyCharacter gamma = HolonomyCharacter::from_exponents({1, 0}, cfg);
    IsotopyReparam r({Rational(0), Rational(0)}, identity(2));
    Report rep = check_commute(empty, r, unit_point(2), gamma, gamma, cfg);
    CHECK(rep.all_passed());
  }

  SUBCASE("characters that miss zeta^maslov are rejected") {
    PseudoIsotopy iso = basic_isotopy();
    HolonomyCharacter bad = HolonomyCharacter::from_exponents({1, 2}, cfg);
    IsotopyReparam r({Rational(0), Rational(0)}, identity(2));
    CHECK_THROWS_AS(check_commute(iso, r, unit_point(2), bad, bad, cfg),
                    CharacterMismatchError);
  }

  SUBCASE("the target character must be the transport") {
    PseudoIsotopy iso = basic_isotopy();
    HolonomyCharacter gamma = HolonomyCharacter::from_exponents({2, 2}, cfg);
    HolonomyCharacter wrong = HolonomyCharacter::from_exponents({2, 3}, cfg);
    IsotopyReparam r({Rational(0), Rational(0)}, identity(2));
    CHECK_THROWS_AS(check_commute(iso, r, unit_point(2), gamma, wrong, cfg),
                    CharacterMismatchError);
  }

  SUBCASE("randomized isotopies with consistent characters") {
    Rng rng(97);
    for (int trial = 0; trial < 25; ++trial) {
      RandomIsotopy ri = random_isotopy(rng, cfg);
      Report rep = check_commute(ri.isotopy, ri.reparam, ri.point, ri.gamma,
                                 transport_character(ri.gamma, ri.reparam.m), cfg);
      CHECK(rep.all_passed());
      CHECK(rep.max_dev() < 1e-9);
    }
  }

  SUBCASE("commutation also holds without the identity normalization term") {
    Rng rng(113);
    for (int trial = 0; trial < 15; ++trial) {
      RandomIsotopy ri = random_isotopy(rng, cfg);
      Report rep = check_commute(ri.isotopy, ri.reparam, ri.point, ri.gamma,
                                 transport_character(ri.gamma, ri.reparam.m), cfg, false);
      CHECK(rep.all_passed());
    }
  }
}

TEST_CASE("pseudo-isotopy validation") {
  BasisPtr basis = GradedBasis::torus(2);
  GradedVector wrong(basis);
  wrong.set("e12", NovikovScalar::constant({1.0, 0.0}));  // degree 2, rule wants 1
  std::vector<ClassTable> entries;
  entries.emplace_back(DiskClass{"beta", Rational(1), 0, {1, 0}},
                       MultilinearTable(0, {}, basis, {{{}, wrong}}));
  CHECK_THROWS_AS(PseudoIsotopy(2, std::move(entries)), DegreeRuleError);

  GradedVector out(basis);
  out.set("e1", NovikovScalar::constant({1.0, 0.0}));
  std::vector<ClassTable> flat;
  flat.emplace_back(DiskClass{"beta", Rational(0), 0, {1, 0}},
                    MultilinearTable(0, {}, basis, {{{}, out}}));
  CHECK_THROWS_AS(PseudoIsotopy(2, std::move(flat)), NoEnergyGapError);
}

TEST_CASE("builtin wall-crossing dataset round trip") {
  BuiltinDataset ds = builtin_dataset("wallcross-basic");
  RingConfig cfg = cfg_n(ds.n);
  IsotopyData data = isotopy_from_json(ds.data);
  CHECK(data.isotopy.rank() == 2);
  CHECK(data.gamma_exponents == std::vector<long long>{2, 2});
  REQUIRE(data.point.has_value());
  MCPoint pt = point_from_json(*data.point, data.isotopy.basis());
  HolonomyCharacter gamma = HolonomyCharacter::from_exponents(data.gamma_exponents, cfg);
  Report rep = check_commute(data.isotopy, data.reparam, pt, gamma,
                             transport_character(gamma, data.reparam.m), cfg);
  CHECK(rep.all_passed());
}
