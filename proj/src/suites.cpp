#include "fukaya/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fukaya/datasets.hpp"
#include "fukaya/errors.hpp"
#include "fukaya/json_io.hpp"
#include "fukaya/toric.hpp"

namespace fukaya {

namespace {
constexpr double kTwoPi = 6.283185307179586476925;

std::string case_id(const char* prefix, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%03d", prefix, i);
  return buf;
}

void echo_config(Report& report, const SuiteOptions& opts) {
  report.config["cutoff"] = opts.cfg.cutoff.str();
  report.config["tol"] = std::to_string(opts.cfg.tol);
  report.config["n"] = std::to_string(opts.cfg.n);
  report.config["seed"] = std::to_string(opts.seed);
  report.config["cases"] = std::to_string(opts.cases);
  report.config["implicit_identity"] = opts.implicit_identity ? "true" : "false";
}

}  // namespace

long long Rng::range(long long lo, long long hi) {
  if (hi < lo) throw ValidationError("rng range with hi < lo");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next() % span);
}

double Rng::real01() {
  return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
}

Complex Rng::unit() { return std::polar(1.0, kTwoPi * real01()); }

Complex Rng::coefficient(double min_mag, double max_mag) {
  // sequenced draws: argument evaluation order would otherwise make the
  // stream depend on the compiler
  double magnitude = min_mag + (max_mag - min_mag) * real01();
  double angle = kTwoPi * real01();
  return std::polar(magnitude, angle);
}

// ---------------------------------------------------------------------------
// Generators

CategoryData random_category(Rng& rng, const RingConfig& cfg, int max_components) {
  const int half_dim = static_cast<int>(rng.range(1, 2));
  const int ambient = 2 * half_dim;
  const int n_objects = static_cast<int>(rng.range(2, 3));

  std::vector<BraneObject> objects;
  std::map<std::string, HolonomyCharacter> el;
  for (int i = 0; i < n_objects; ++i) {
    LagrangianLabel label{"L" + std::to_string(i), static_cast<int>(rng.range(0, 2)),
                          rng.range(0, 1) == 1, ambient};
    std::vector<Complex> character, el_values;
    for (int r = 0; r < label.h1_rank; ++r) {
      character.push_back(rng.unit());
      long long e = rng.range(0, cfg.order() - 1);
      if (label.oriented) e = 2 * (e % cfg.n);  // oriented: n-th roots only
      el_values.push_back(cfg.zeta_pow(e));
    }
    objects.push_back({label, HolonomyCharacter(std::move(character))});
    el.emplace(label.name, HolonomyCharacter(std::move(el_values)));
  }

  const int n_components = static_cast<int>(rng.range(1, max_components));
  std::map<std::string, MorphismComponent> components;
  std::vector<std::string> component_ids;
  for (int i = 0; i < n_components; ++i) {
    std::string id = "C" + std::to_string(i);
    int dim_c = (i == 0) ? static_cast<int>(rng.range(1, half_dim))
                         : static_cast<int>(rng.range(0, half_dim));
    std::vector<BasisElement> elems;
    for (int d = 0; d <= dim_c; ++d) elems.push_back({"g" + std::to_string(d), d});
    if (rng.range(0, 2) == 0) elems.push_back({"h" + std::to_string(dim_c), dim_c});
    components.emplace(
        id, MorphismComponent{id, objects[rng.range(0, n_objects - 1)].label.name,
                              objects[rng.range(0, n_objects - 1)].label.name, dim_c,
                              GradedBasis::make(std::move(elems))});
    component_ids.push_back(id);
  }

  auto random_output = [&](const MorphismComponent& c0, int degree) {
    GradedVector out(c0.basis);
    for (const auto& e : c0.basis->elements()) {
      if (e.degree != degree) continue;
      NovikovScalar value = NovikovScalar::constant(rng.coefficient(0.3, 1.2));
      if (rng.range(0, 3) == 0) {
        Rational tail_exp(rng.range(1, 3), 2);
        value = value + NovikovScalar::monomial(tail_exp, rng.coefficient(0.3, 1.2));
      }
      out.set(e.name, value);
    }
    return out;
  };

  const int n_classes = static_cast<int>(rng.range(2, 4));
  std::vector<PolygonClass> classes;
  std::map<std::string, MultilinearTable> tables;
  for (int ci = 0; ci < n_classes; ++ci) {
    PolygonClass cls;
    cls.id = "B" + std::to_string(ci);
    cls.arity = static_cast<int>(rng.range(0, 4));
    for (int i = 0; i <= cls.arity; ++i) {
      cls.component_ids.push_back(component_ids[rng.range(0, n_components - 1)]);
    }
    if (ci == 0) cls.component_ids.back() = "C0";  // room for the degree bump
    const MorphismComponent& c0 = components.at(cls.component_ids.back());

    std::vector<BasisPtr> input_bases;
    std::vector<std::string> key;
    int total_in = 0;
    for (int i = 0; i < cls.arity; ++i) {
      const MorphismComponent& comp = components.at(cls.component_ids[i]);
      input_bases.push_back(comp.basis);
      const auto& elems = comp.basis->elements();
      const BasisElement& pick = elems[rng.range(0, static_cast<long long>(elems.size()) - 1)];
      key.push_back(pick.name);
      total_in += pick.degree;
    }
    int d_out = (ci == 0 && c0.dim_c > 0) ? static_cast<int>(rng.range(0, c0.dim_c - 1))
                                          : static_cast<int>(rng.range(0, c0.dim_c));
    cls.maslov = (c0.dim_c - half_dim) + 2 - cls.arity + total_in - d_out;
    long long e_num = rng.range(1, 4);
    cls.energy = Rational(e_num, rng.range(1, 4));
    for (int i = 0; i <= cls.arity; ++i) cls.s_exponents.push_back(rng.range(0, cfg.order() - 1));
    if (rng.range(0, 3) == 0) {
      long long m = cfg.order();
      long long e = ((c0.dim_c - half_dim - cls.s_exponents.back()) % m + m) % m;
      cls.s0_prime_exponent = e;
    }

    std::map<std::vector<std::string>, GradedVector> entries;
    entries.emplace(key, random_output(c0, d_out));
    if (cls.arity > 0 && rng.range(0, 1) == 0) {
      // Optional second entry with the same total input degree.
      for (int attempt = 0; attempt < 10; ++attempt) {
        std::vector<std::string> other;
        int other_total = 0;
        for (int i = 0; i < cls.arity; ++i) {
          const auto& elems = input_bases[i]->elements();
          const BasisElement& pick = elems[rng.range(0, static_cast<long long>(elems.size()) - 1)];
          other.push_back(pick.name);
          other_total += pick.degree;
        }
        if (other_total == total_in && !entries.count(other)) {
          entries.emplace(std::move(other), random_output(c0, d_out));
          break;
        }
      }
    }
    tables.emplace(cls.id, MultilinearTable(cls.arity, std::move(input_bases), c0.basis,
                                            std::move(entries)));
    classes.push_back(std::move(cls));
  }
  return CategoryData(std::move(objects), std::move(el), std::move(components), std::move(classes),
                      std::move(tables), cfg);
}

CategoryData perturb_output_degree(const CategoryData& cat, const RingConfig& cfg) {
  std::map<std::string, MultilinearTable> tables;
  bool bumped = false;
  for (const auto& [id, table] : cat.tables()) {
    if (bumped || id != "B0") {
      tables.emplace(id, table);
      continue;
    }
    std::map<std::vector<std::string>, GradedVector> entries;
    for (const auto& [key, out] : table.entries()) {
      GradedVector moved(table.output_basis());
      for (const auto& [name, value] : out.coords()) {
        int d = table.output_basis()->degree_of(name);
        for (const auto& e : table.output_basis()->elements()) {
          if (e.degree == d + 1) {
            moved.set(e.name, moved.coord(e.name) + value);
            break;
          }
        }
      }
      if (moved.is_zero()) throw ValidationError("perturbation found no higher-degree element");
      entries.emplace(key, std::move(moved));
    }
    tables.emplace(id, MultilinearTable(table.arity(), table.input_bases(),
                                        table.output_basis(), std::move(entries)));
    bumped = true;
  }
  if (!bumped) throw ValidationError("category has no table for class B0");
  return CategoryData(cat.objects(), cat.el_systems(), cat.components(), cat.classes(),
                      std::move(tables), cfg);
}

RandomFiber random_fiber(Rng& rng, const RingConfig& cfg) {
  const int rank = static_cast<int>(rng.range(2, 3));
  const long long order = cfg.order();
  std::vector<long long> g(rank);
  g[0] = 2 % order;
  for (int i = 1; i < rank; ++i) g[i] = (2 * rng.range(0, cfg.n - 1)) % order;

  BasisPtr basis = GradedBasis::torus(rank);
  const int n_classes = static_cast<int>(rng.range(2, 4));
  std::vector<ClassTable> entries;
  for (int ci = 0; ci < n_classes; ++ci) {
    int arity = 0;
    if (rank == 3) arity = static_cast<int>(rng.range(0, 2));
    const int mu = 2 + 2 * arity;  // unit-valued outputs force this Maslov index

    DiskClass cls;
    cls.label = case_id("r", ci);
    cls.maslov = mu;
    long long e_num = rng.range(1, 4);
    cls.energy = Rational(e_num, rng.range(2, 4));
    cls.boundary.assign(rank, 0);
    long long acc = 0;
    for (int j = 1; j < rank; ++j) {
      cls.boundary[j] = rng.range(-2, 2);
      acc += cls.boundary[j] * g[j];
    }
    // Solve 2 * b_0 = mu - acc (mod 2n); both sides even, so b_0 exists mod n.
    long long c = ((mu - acc) % order + order) % order;
    cls.boundary[0] = (c / 2) % cfg.n;

    GradedVector out(basis);
    NovikovScalar value = NovikovScalar::constant(rng.coefficient(0.3, 1.2));
    if (rng.range(0, 3) == 0) {
      Rational tail_exp(rng.range(1, 3), 2);
      value = value + NovikovScalar::monomial(tail_exp, rng.coefficient(0.3, 1.2));
    }
    out.set("1", value);
    std::vector<std::string> key(static_cast<std::size_t>(arity), "e123");
    std::map<std::vector<std::string>, GradedVector> table_entries;
    table_entries.emplace(std::move(key), std::move(out));
    entries.emplace_back(std::move(cls),
                         MultilinearTable(arity, std::vector<BasisPtr>(arity, basis), basis,
                                          std::move(table_entries)));
  }

  std::vector<NovikovScalar> y;
  for (int i = 0; i < rank; ++i) {
    Rational v(rng.range(0, 2), 16);
    NovikovScalar yi = NovikovScalar::monomial(v, rng.coefficient(0.5, 1.5));
    if (rng.range(0, 1) == 0) {
      Rational tail_exp = v + Rational(rng.range(1, 4), 4);
      yi = yi + NovikovScalar::monomial(tail_exp, rng.coefficient(0.05, 0.2));
    }
    y.push_back(std::move(yi));
  }
  GradedVector b_high(basis);
  if (rank == 3 && rng.range(0, 1) == 0) {
    Rational b_exp(rng.range(1, 4), 4);
    b_high.set("e123", NovikovScalar::monomial(b_exp, rng.coefficient(0.3, 0.9)));
  }
  return RandomFiber{FiberAlgebra(rank, std::move(entries)),
                     HolonomyCharacter::from_exponents(g, cfg),
                     MCPoint(std::move(y), std::move(b_high))};
}

IntMatrix random_unimodular(Rng& rng, int rank) {
  IntMatrix m(rank, std::vector<long long>(rank, 0));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  const int ops = static_cast<int>(rng.range(2, 4));
  for (int op = 0; op < ops; ++op) {
    int i = static_cast<int>(rng.range(0, rank - 1));
    int j = static_cast<int>(rng.range(0, rank - 1));
    switch (rng.range(0, 2)) {
      case 0:
        if (i != j) {
          long long f = rng.range(0, 1) == 0 ? 1 : -1;
          for (int k = 0; k < rank; ++k) m[i][k] += f * m[j][k];
        }
        break;
      case 1:
        if (i != j) std::swap(m[i], m[j]);
        break;
      default:
        for (int k = 0; k < rank; ++k) m[i][k] = -m[i][k];
        break;
    }
  }
  return m;
}

RandomIsotopy random_isotopy(Rng& rng, const RingConfig& cfg) {
  const int rank = static_cast<int>(rng.range(2, 3));
  const long long order = cfg.order();
  std::vector<long long> g(rank);
  g[0] = 1;
  for (int i = 1; i < rank; ++i) g[i] = rng.range(0, order - 1);

  BasisPtr basis = GradedBasis::torus(rank);
  const int n_classes = static_cast<int>(rng.range(1, 3));
  std::vector<ClassTable> entries;
  for (int ci = 0; ci < n_classes; ++ci) {
    int arity = 0;
    int out_degree = 1;
    if (rank == 3) {
      arity = static_cast<int>(rng.range(0, 2));
      out_degree = rng.range(0, 1) == 0 ? 1 : 3;
    }
    const int mu = 3 * arity + 1 - arity - out_degree;  // inputs are the top wedge (degree 3)

    DiskClass cls;
    cls.label = case_id("f", ci);
    cls.maslov = mu;
    cls.energy = Rational(1) + Rational(rng.range(0, 3), 4);
    cls.boundary.assign(rank, 0);
    long long acc = 0;
    for (int j = 1; j < rank; ++j) {
      cls.boundary[j] = rng.range(-2, 2);
      acc += cls.boundary[j] * g[j];
    }
    long long b0 = ((mu - acc) % order + order) % order;  // g[0] = 1
    if (b0 > cfg.n) b0 -= order;
    cls.boundary[0] = b0;

    GradedVector out(basis);
    for (const auto& e : basis->elements()) {
      if (e.degree != out_degree) continue;
      if (rng.range(0, 1) == 0) out.set(e.name, NovikovScalar::constant(rng.coefficient(0.3, 1.0)));
    }
    if (out.is_zero()) {
      out.set(out_degree == 1 ? "e1" : "e123", NovikovScalar::constant(rng.coefficient(0.3, 1.0)));
    }
    std::vector<std::string> key(static_cast<std::size_t>(arity), "e123");
    std::map<std::vector<std::string>, GradedVector> table_entries;
    table_entries.emplace(std::move(key), std::move(out));
    entries.emplace_back(std::move(cls),
                         MultilinearTable(arity, std::vector<BasisPtr>(arity, basis), basis,
                                          std::move(table_entries)));
  }

  std::vector<Rational> v;
  for (int i = 0; i < rank; ++i) v.emplace_back(rng.range(-3, 3), 6);
  IsotopyReparam reparam(std::move(v), random_unimodular(rng, rank));

  std::vector<NovikovScalar> y;
  for (int i = 0; i < rank; ++i) {
    Rational val(rng.range(-1, 1), 16);
    y.push_back(NovikovScalar::monomial(val, rng.coefficient(0.5, 1.5)));
  }
  GradedVector b_high(basis);
  if (rank == 3 && rng.range(0, 1) == 0) {
    Rational b_exp(rng.range(1, 4), 4);
    b_high.set("e123", NovikovScalar::monomial(b_exp, rng.coefficient(0.3, 0.9)));
  }
  return RandomIsotopy{PseudoIsotopy(rank, std::move(entries)), std::move(reparam),
                       HolonomyCharacter::from_exponents(g, cfg),
                       MCPoint(std::move(y), std::move(b_high))};
}

NovikovScalar random_scalar(Rng& rng, const RingConfig& cfg) {
  // Truncated multiplication is associative on nonnegative exponents; the
  // ring-law suites draw from there (negative valuations are exercised by
  // the valuation and inversion checks).
  std::vector<NovikovTerm> terms;
  const int n_terms = static_cast<int>(rng.range(0, 3));
  for (int i = 0; i < n_terms; ++i) {
    terms.push_back({Rational(rng.range(0, 11), 6), rng.coefficient(0.1, 2.0)});
  }
  return NovikovScalar(std::move(terms), Cutoff(cfg.cutoff));
}

NovikovScalar random_scalar_nonneg(Rng& rng, const RingConfig& cfg) {
  std::vector<NovikovTerm> terms;
  const int n_terms = static_cast<int>(rng.range(0, 3));
  for (int i = 0; i < n_terms; ++i) {
    terms.push_back({Rational(rng.range(0, 8), 4), rng.coefficient(0.1, 1.5)});
  }
  return NovikovScalar(std::move(terms), Cutoff(cfg.cutoff));
}

NovikovScalar random_scalar_invertible(Rng& rng, const RingConfig& cfg) {
  std::vector<NovikovTerm> terms;
  Rational e(rng.range(-2, 4), 4);
  terms.push_back({e, rng.coefficient(0.5, 2.0)});
  const int extra = static_cast<int>(rng.range(0, 2));
  for (int i = 0; i < extra; ++i) {
    e += Rational(rng.range(1, 4), 4);
    terms.push_back({e, rng.coefficient(0.05, 0.25)});
  }
  return NovikovScalar(std::move(terms), Cutoff(cfg.cutoff));
}

// ---------------------------------------------------------------------------
// Suites

Report run_novikov_laws(const SuiteOptions& opts) {
  Report report;
  report.suite = "novikov-laws";
  echo_config(report, opts);
  Rng rng(opts.seed);
  const RingConfig& cfg = opts.cfg;
  const NovikovScalar one = NovikovScalar::constant({1.0, 0.0}, Cutoff(cfg.cutoff));

  double dev_assoc_add = 0, dev_assoc_mul = 0, dev_comm = 0, dev_dist = 0;
  double dev_exp = 0, dev_inv = 0;
  bool val_law = true;
  for (int i = 0; i < opts.cases; ++i) {
    NovikovScalar a = random_scalar(rng, cfg);
    NovikovScalar b = random_scalar(rng, cfg);
    NovikovScalar c = random_scalar(rng, cfg);
    dev_assoc_add = std::max(dev_assoc_add, nv_max_dev((a + b) + c, a + (b + c), cfg));
    dev_assoc_mul = std::max(dev_assoc_mul, nv_max_dev((a * b) * c, a * (b * c), cfg));
    dev_comm = std::max(dev_comm, nv_max_dev(a * b, b * a, cfg));
    dev_dist = std::max(dev_dist, nv_max_dev(a * (b + c), a * b + a * c, cfg));

    NovikovScalar p = random_scalar_invertible(rng, cfg);
    NovikovScalar q = random_scalar_invertible(rng, cfg);
    if (*nv_val(p) + *nv_val(q) < cfg.cutoff) {
      val_law = val_law && (nv_val(p * q) == std::optional<Rational>(*nv_val(p) + *nv_val(q)));
    }
    dev_inv = std::max(dev_inv, nv_max_dev(p * nv_inv(p, cfg.tol), one, cfg));

    NovikovScalar u = random_scalar_nonneg(rng, cfg);
    NovikovScalar w = random_scalar_nonneg(rng, cfg);
    dev_exp = std::max(dev_exp, nv_max_dev(nv_exp(u + w), nv_exp(u) * nv_exp(w), cfg));
  }
  const std::string iters = std::to_string(opts.cases) + " iterations";
  report.add_check("add-associativity", dev_assoc_add <= cfg.tol, dev_assoc_add, "(a+b)+c",
                   "a+(b+c)", iters);
  report.add_check("mul-associativity", dev_assoc_mul <= cfg.tol, dev_assoc_mul, "(ab)c", "a(bc)",
                   iters);
  report.add_check("mul-commutativity", dev_comm <= cfg.tol, dev_comm, "ab", "ba", iters);
  report.add_check("distributivity", dev_dist <= cfg.tol, dev_dist, "a(b+c)", "ab+ac", iters);
  report.add_check("val-multiplicative", val_law, 0.0, "val(ab)", "val(a)+val(b)", iters);
  report.add_check("exp-homomorphism", dev_exp <= cfg.tol, dev_exp, "exp(a+b)", "exp(a)exp(b)",
                   iters);
  report.add_check("inv-roundtrip", dev_inv <= cfg.tol, dev_inv, "a*inv(a)", "1", iters);
  report.sort_cases();
  return report;
}

namespace {

double tables_max_dev(const CategoryData& a, const CategoryData& b, const RingConfig& cfg) {
  double dev = 0.0;
  for (const auto& [id, table] : a.tables()) {
    const MultilinearTable& other = b.tables().at(id);
    for (const auto& [key, out] : table.entries()) {
      dev = std::max(dev, gv_max_dev(out, other.entries().at(key), cfg));
    }
  }
  return dev;
}

}  // namespace

Report run_twisted_functor(const SuiteOptions& opts) {
  Report report;
  report.suite = "twisted-functor";
  echo_config(report, opts);
  Rng rng(opts.seed);

  BuiltinDataset spec = builtin_dataset("fukcat-random-spec");
  std::vector<int> n_values;
  for (const auto& v : spec.data.at("n_values")) n_values.push_back(v.get<int>());
  const int max_components = spec.data.at("max_components").get<int>();

  for (int i = 0; i < opts.cases; ++i) {
    RingConfig cfg(opts.cfg.cutoff, opts.cfg.tol, n_values[i % n_values.size()]);
    CategoryData cat = random_category(rng, cfg, max_components);

    Report equations = check_twisted_equations(cat, cfg);
    Report order = check_functor_order(cat, cfg);
    double dev = std::max(equations.max_dev(), order.max_dev());
    bool ok = equations.all_passed() && order.all_passed();
    std::string detail;
    if (i % 10 == 0) {
      // 2n applications of the construction give back the original tables.
      CategoryData twisted = cat;
      for (int rep = 0; rep < cfg.order(); ++rep) twisted = build_twisted_structure(twisted, cfg);
      double round_dev = tables_max_dev(cat, twisted, cfg);
      dev = std::max(dev, round_dev);
      ok = ok && round_dev <= cfg.tol;
      detail = "includes 2n-fold twist roundtrip";
    }
    report.add_check(case_id("category", i) + "-n" + std::to_string(cfg.n), ok, dev,
                     "twisted equations + functor order", "", detail);
  }

  // A single degree bump must be caught by both the checker and the builder.
  RingConfig cfg(opts.cfg.cutoff, opts.cfg.tol, 3);
  CategoryData cat = random_category(rng, cfg, max_components);
  CategoryData bad = perturb_output_degree(cat, cfg);
  bool checker_caught = !check_twisted_equations(bad, cfg).all_passed();
  bool builder_caught = false;
  try {
    build_twisted_structure(bad, cfg);
  } catch (const DegreeRuleError&) {
    builder_caught = true;
  }
  report.add_check("perturbation-detected", checker_caught && builder_caught, 0.0,
                   "degree bump on one table", "reported as failure");
  report.sort_cases();
  return report;
}

namespace {

double tau_order_dev(const MCPoint& pt, const HolonomyCharacter& gamma, const RingConfig& cfg) {
  MCPoint moved = pt;
  for (int i = 0; i < cfg.n; ++i) moved = apply_tau(moved, gamma, cfg);
  double dev = 0.0;
  for (std::size_t i = 0; i < pt.rank(); ++i) {
    dev = std::max(dev, nv_max_dev(moved.y()[i], pt.y()[i], cfg));
  }
  return std::max(dev, gv_max_dev(moved.b_high(), pt.b_high(), cfg));
}

std::vector<Rational> random_shift(Rng& rng, std::size_t rank, bool nonneg) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < rank; ++i) {
    v.emplace_back(nonneg ? rng.range(0, 4) : rng.range(-4, 4), 8);
  }
  return v;
}

void equivariance_cases(Report& report, const std::string& prefix, const FiberAlgebra& alg,
                        const MCPoint& pt, const HolonomyCharacter& gamma, const RingConfig& cfg,
                        Rng& rng, bool check_tau_order) {
  Report inner = check_equivariance(alg, pt, gamma, cfg);
  for (const auto& c : inner.cases) {
    report.add({prefix + ":" + c.id, c.status, c.lhs, c.rhs, c.max_dev, c.detail});
  }
  if (check_tau_order) {
    double dev = tau_order_dev(pt, gamma, cfg);
    report.add_check(prefix + ":tau-order", dev <= cfg.tol, dev, "tau^n", "id");
  }
  bool exact = monomial_transform_exact(alg, pt, random_shift(rng, pt.rank(), true), cfg);
  report.add_check(prefix + ":monomial-transform", exact, 0.0, "terms of P(T^v y)",
                   "T^{<boundary,v>} * terms of P(y)");
}

MCPoint unit_point(const FiberAlgebra& alg) {
  std::vector<NovikovScalar> y(static_cast<std::size_t>(alg.rank()),
                               NovikovScalar::constant({1.0, 0.0}));
  return MCPoint(std::move(y), GradedVector(alg.basis()));
}

}  // namespace

bool monomial_transform_exact(const FiberAlgebra& alg, const MCPoint& pt,
                              const std::vector<Rational>& v, const RingConfig& cfg) {
  std::vector<NovikovScalar> shifted_y;
  for (std::size_t i = 0; i < pt.rank(); ++i) shifted_y.push_back(pt.y()[i].shifted(v[i]));
  MCPoint moved(std::move(shifted_y), pt.b_high());

  // The table part of each class term is untouched by the substitution, so
  // the transform law is exactly the statement about the scalar weights
  // (compared as scalars, where truncation bounds survive).
  for (const auto& [cls, table] : alg.entries()) {
    (void)table;
    Rational shift(0);
    for (std::size_t i = 0; i < v.size(); ++i) shift += Rational(cls.boundary[i]) * v[i];
    NovikovScalar base = class_monomial_weight(cls, pt, cfg);
    NovikovScalar got = class_monomial_weight(cls, moved, cfg);
    if (!nv_exact_eq(base.shifted(shift), got)) return false;
  }
  return true;
}

Report run_equivariance(const SuiteOptions& opts) {
  Report report;
  report.suite = "equivariance";
  echo_config(report, opts);
  Rng rng(opts.seed);

  for (const char* name : {"cp2-toric", "p1xp1-toric"}) {
    BuiltinDataset ds = builtin_dataset(name);
    RingConfig cfg(opts.cfg.cutoff, opts.cfg.tol, ds.n);
    FiberAlgebra alg = cho_oh_classes(polytope_from_json(ds.data));
    HolonomyCharacter gamma = compute_gamma(alg.classes(), cfg);
    equivariance_cases(report, name, alg, unit_point(alg), gamma, cfg, rng, true);
  }
  {
    BuiltinDataset ds = builtin_dataset("t3-synthetic");
    RingConfig cfg(opts.cfg.cutoff, opts.cfg.tol, ds.n);
    FiberAlgebra alg = fiber_from_json(ds.data);
    HolonomyCharacter gamma = compute_gamma(alg.classes(), cfg);
    MCPoint pt = point_from_json(ds.data.at("point"), alg.basis());
    equivariance_cases(report, "t3-synthetic", alg, pt, gamma, cfg, rng, true);
  }

  for (int i = 0; i < opts.cases; ++i) {
    RandomFiber rf = random_fiber(rng, opts.cfg);
    equivariance_cases(report, case_id("random", i), rf.algebra, rf.point, rf.gamma, opts.cfg,
                       rng, true);
    if (i % 2 == 0) {
      // The solved character is consistent as well; equivariance must hold
      // for it too (its exponents need not be even, so no tau-order claim).
      HolonomyCharacter solved = compute_gamma(rf.algebra.classes(), opts.cfg);
      Report inner = check_equivariance(rf.algebra, rf.point, solved, opts.cfg);
      bool ok = inner.all_passed();
      report.add_check(case_id("random", i) + ":solved-gamma", ok, inner.max_dev(),
                       "equivariance with computed character", "");
    }
  }
  report.sort_cases();
  return report;
}

Report run_wallcross(const SuiteOptions& opts) {
  Report report;
  report.suite = "wallcross";
  echo_config(report, opts);
  Rng rng(opts.seed);

  auto commute_cases = [&](const std::string& prefix, const PseudoIsotopy& iso,
                           const IsotopyReparam& reparam, const MCPoint& pt,
                           const HolonomyCharacter& gamma, const RingConfig& cfg) {
    HolonomyCharacter gamma_prime = transport_character(gamma, reparam.m);
    Report inner = check_commute(iso, reparam, pt, gamma, gamma_prime, cfg,
                                 opts.implicit_identity);
    for (const auto& c : inner.cases) {
      report.add({prefix + ":" + c.id, c.status, c.lhs, c.rhs, c.max_dev, c.detail});
    }
    // psi with (v, M) then (-(M^{-1})^T v, M^{-1}) is the identity.
    IntMatrix inv = inverse_unimodular(reparam.m);
    std::vector<Rational> w(pt.rank(), Rational(0));
    for (std::size_t i = 0; i < pt.rank(); ++i) {
      for (std::size_t j = 0; j < pt.rank(); ++j) {
        w[i] -= Rational(inv[j][i]) * reparam.v[j];
      }
    }
    MCPoint round = psi_reparam(IsotopyReparam(std::move(w), inv),
                                psi_reparam(reparam, pt, cfg), cfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < pt.rank(); ++i) {
      dev = std::max(dev, nv_max_dev(round.y()[i], pt.y()[i], cfg));
    }
    dev = std::max(dev, gv_max_dev(round.b_high(), pt.b_high(), cfg));
    report.add_check(prefix + ":psi-inverse", dev <= cfg.tol, dev, "psi_inv o psi", "id");

    // Valuation bookkeeping at M = id: val(y'_i) = val(y_i) - v_i exactly.
    IntMatrix id_m(pt.rank(), std::vector<long long>(pt.rank(), 0));
    for (std::size_t i = 0; i < pt.rank(); ++i) id_m[i][i] = 1;
    std::vector<Rational> vs = reparam.v;
    MCPoint shifted = psi_reparam(IsotopyReparam(std::move(vs), std::move(id_m)), pt, cfg);
    bool vals_ok = true;
    for (std::size_t i = 0; i < pt.rank(); ++i) {
      vals_ok = vals_ok && (*nv_val(shifted.y()[i]) == *nv_val(pt.y()[i]) - reparam.v[i]);
    }
    report.add_check(prefix + ":valuation-shift", vals_ok, 0.0, "val(psi(y)_i)",
                     "val(y_i) - v_i");
  };

  {
    BuiltinDataset ds = builtin_dataset("wallcross-basic");
    RingConfig cfg(opts.cfg.cutoff, opts.cfg.tol, ds.n);
    IsotopyData data = isotopy_from_json(ds.data);
    HolonomyCharacter gamma = HolonomyCharacter::from_exponents(data.gamma_exponents, cfg);
    MCPoint pt = point_from_json(*data.point, data.isotopy.basis());
    commute_cases("basic", data.isotopy, data.reparam, pt, gamma, cfg);
  }

  for (int i = 0; i < opts.cases; ++i) {
    RandomIsotopy ri = random_isotopy(rng, opts.cfg);
    commute_cases(case_id("random", i), ri.isotopy, ri.reparam, ri.point, ri.gamma, opts.cfg);
  }

  // A character that misses gamma(boundary) = zeta^mu must be rejected.
  {
    BuiltinDataset ds = builtin_dataset("wallcross-basic");
    RingConfig cfg(opts.cfg.cutoff, opts.cfg.tol, ds.n);
    IsotopyData data = isotopy_from_json(ds.data);
    MCPoint pt = point_from_json(*data.point, data.isotopy.basis());
    HolonomyCharacter bad = HolonomyCharacter::from_exponents({1, 2}, cfg);
    bool caught = false;
    try {
      check_commute(data.isotopy, data.reparam, pt, bad, transport_character(bad, data.reparam.m),
                    cfg, opts.implicit_identity);
    } catch (const CharacterMismatchError&) {
      caught = true;
    }
    report.add_check("character-mismatch-detected", caught, 0.0, "gamma(boundary) != zeta^mu",
                     "CharacterMismatch raised");
  }
  report.sort_cases();
  return report;
}

Report run_cp2_mirror(int samples, std::uint64_t seed, double tol) {
  Report report;
  report.suite = "cp2-mirror";
  report.config["samples"] = std::to_string(samples);
  report.config["seed"] = std::to_string(seed);
  report.config["tol"] = std::to_string(tol);
  if (samples < 1) throw ValidationError("cp2-mirror needs at least one sample");
  Rng rng(seed);

  const Complex zeta = std::polar(1.0, kTwoPi / 3.0);
  auto superpotential = [](Complex u, Complex v) { return u + v * v / (u * v - 1.0); };

  // Worked point (2, 1): W = 3 and W after the action is 3 zeta.
  {
    Complex w0 = superpotential(2.0, 1.0);
    Complex w1 = superpotential(2.0 * zeta, Complex(1.0, 0.0) / zeta);
    double dev = std::max(std::abs(w0 - Complex(3.0, 0.0)), std::abs(w1 - 3.0 * zeta));
    report.add_check("worked-point", dev <= tol, dev, "W(2,1), W(2*zeta, zeta^{-1})",
                     "3, 3*zeta");
  }

  double dev_w = 0.0;
  double dev_tau3 = 0.0;
  long long rejected = 0;
  for (int i = 0; i < samples; ++i) {
    Complex u, v;
    while (true) {
      double ur = -2.0 + 4.0 * rng.real01();
      double ui = -2.0 + 4.0 * rng.real01();
      double vr = -2.0 + 4.0 * rng.real01();
      double vi = -2.0 + 4.0 * rng.real01();
      u = Complex(ur, ui);
      v = Complex(vr, vi);
      if (std::abs(u * v - 1.0) > 0.1) break;  // excluded locus uv = 1
      ++rejected;
    }
    dev_w = std::max(dev_w, std::abs(superpotential(zeta * u, v / zeta) -
                                     zeta * superpotential(u, v)));
    Complex u3 = u, v3 = v;
    for (int rep = 0; rep < 3; ++rep) {
      u3 *= zeta;
      v3 /= zeta;
    }
    dev_tau3 = std::max(dev_tau3, std::max(std::abs(u3 - u), std::abs(v3 - v)));
  }
  report.add_check("w-equivariance", dev_w <= tol, dev_w, "W(zeta u, zeta^{-1} v)",
                   "e^{2 pi i/3} W(u,v)", std::to_string(samples) + " samples");
  report.add_check("tau-cubed", dev_tau3 <= tol, dev_tau3, "tau^3", "id",
                   std::to_string(rejected) + " rejected draws");
  report.sort_cases();
  return report;
}

Report run_user_category(const nlohmann::json& category, const SuiteOptions& opts) {
  Report report;
  report.suite = "user-category";
  echo_config(report, opts);
  CategoryData cat = category_from_json(category, opts.cfg);
  Report equations = check_twisted_equations(cat, opts.cfg);
  Report order = check_functor_order(cat, opts.cfg);
  for (const auto& c : equations.cases) {
    report.add({"equations:" + c.id, c.status, c.lhs, c.rhs, c.max_dev, c.detail});
  }
  for (const auto& c : order.cases) {
    report.add({"order:" + c.id, c.status, c.lhs, c.rhs, c.max_dev, c.detail});
  }
  report.sort_cases();
  return report;
}

Report run_user_fiber(const nlohmann::json& fiber, const std::optional<nlohmann::json>& point,
                      const SuiteOptions& opts) {
  Report report;
  report.suite = "user-fiber";
  echo_config(report, opts);
  FiberAlgebra alg = fiber_from_json(fiber);
  std::optional<nlohmann::json> point_json = point;
  if (!point_json && fiber.contains("point")) point_json = fiber.at("point");
  MCPoint pt = point_json ? point_from_json(*point_json, alg.basis()) : unit_point(alg);

  HolonomyCharacter gamma = compute_gamma(alg.classes(), opts.cfg);
  WeakMCResult weak = weak_mc_check(alg, pt, opts.cfg);
  report.add_check("weak-mc", weak.is_weak_mc, 0.0, "P(b)", "W * unit");
  report.add_pass("w-value", 0.0, weak.w.str(), "");
  if (weak.is_weak_mc) {
    Report inner = check_equivariance(alg, pt, gamma, opts.cfg);
    for (const auto& c : inner.cases) {
      report.add({c.id, c.status, c.lhs, c.rhs, c.max_dev, c.detail});
    }
  }
  Rng rng(opts.seed);
  bool exact = monomial_transform_exact(alg, pt, random_shift(rng, pt.rank(), true), opts.cfg);
  report.add_check("monomial-transform", exact, 0.0, "terms of P(T^v y)",
                   "T^{<boundary,v>} * terms of P(y)");
  report.sort_cases();
  return report;
}

Report run_user_isotopy(const nlohmann::json& isotopy, const SuiteOptions& opts) {
  Report report;
  report.suite = "user-isotopy";
  echo_config(report, opts);
  IsotopyData data = isotopy_from_json(isotopy);
  HolonomyCharacter gamma =
      data.gamma_exponents.empty()
          ? compute_gamma(data.isotopy.classes(), opts.cfg)
          : HolonomyCharacter::from_exponents(data.gamma_exponents, opts.cfg);
  MCPoint pt = data.point
                   ? point_from_json(*data.point, data.isotopy.basis())
                   : MCPoint(std::vector<NovikovScalar>(
                                 static_cast<std::size_t>(data.isotopy.rank()),
                                 NovikovScalar::constant({1.0, 0.0})),
                             GradedVector(data.isotopy.basis()));
  Report inner = check_commute(data.isotopy, data.reparam, pt, gamma,
                               transport_character(gamma, data.reparam.m), opts.cfg,
                               opts.implicit_identity);
  for (const auto& c : inner.cases) {
    report.add({c.id, c.status, c.lhs, c.rhs, c.max_dev, c.detail});
  }
  report.sort_cases();
  return report;
}

std::vector<Report> run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "novikov-laws") return {run_novikov_laws(opts)};
  if (name == "twisted-functor") return {run_twisted_functor(opts)};
  if (name == "equivariance") return {run_equivariance(opts)};
  if (name == "wallcross") return {run_wallcross(opts)};
  if (name == "all") {
    return {run_novikov_laws(opts), run_twisted_functor(opts), run_equivariance(opts),
            run_wallcross(opts)};
  }
  throw UnknownSuiteError("unknown suite '" + name +
                          "'; expected twisted-functor, equivariance, wallcross, "
                          "novikov-laws or all");
}

}  // namespace fukaya
