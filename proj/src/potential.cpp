#include "fukaya/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fukaya/errors.hpp"
#include "fukaya/snf.hpp"

namespace fukaya {

bool DiskClass::is_zero_class() const {
  if (!energy.is_zero() || maslov != 0) return false;
  return std::all_of(boundary.begin(), boundary.end(), [](long long b) { return b == 0; });
}

namespace {

void validate_class_shape(const DiskClass& cls, int rank) {
  if (cls.boundary.size() != static_cast<std::size_t>(rank)) {
    throw ValidationError("class '" + cls.label + "' boundary length differs from rank");
  }
}

// Shared validation for the potential (shift = 2) and pseudo-isotopy
// (shift = 1) table families.
void validate_energy_and_degrees(const DiskClass& cls, const MultilinearTable& table,
                                 int degree_shift) {
  if (cls.energy < Rational(0) || (cls.energy.is_zero() && !cls.is_zero_class())) {
    throw NoEnergyGapError("class '" + cls.label + "' has energy <= 0 but is not the zero class");
  }
  if (cls.is_zero_class() && table.arity() < 2) {
    throw ValidationError("zero class '" + cls.label + "' needs arity >= 2");
  }
  for (const auto& [key, out] : table.entries()) {
    (void)out;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (table.input_bases()[i]->degree_of(key[i]) <= 1) {
        throw ValidationError("class '" + cls.label + "' has an input of degree <= 1");
      }
    }
    int want = table.input_total_degree(key) + degree_shift - table.arity() - cls.maslov;
    for (const auto& [name, value] : out.coords()) {
      (void)value;
      if (table.output_basis()->degree_of(name) != want) {
        throw DegreeRuleError("class '" + cls.label + "' output degree breaks the degree rule");
      }
    }
  }
}

}  // namespace

FiberAlgebra::FiberAlgebra(int rank, std::vector<ClassTable> entries) : rank_(rank) {
  if (rank < 0) throw ValidationError("fiber algebra rank must be >= 0");
  basis_ = GradedBasis::torus(rank);
  std::sort(entries.begin(), entries.end(),
            [](const ClassTable& a, const ClassTable& b) { return a.first.label < b.first.label; });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (entries[i].first.label == entries[i + 1].first.label) {
      throw ValidationError("duplicate class label '" + entries[i].first.label + "'");
    }
  }
  for (const auto& [cls, table] : entries) {
    validate_class_shape(cls, rank);
    if (!table.output_basis()->same_as(*basis_)) {
      throw ValidationError("class '" + cls.label + "' table is not on the torus basis");
    }
    for (const auto& in : table.input_bases()) {
      if (!in->same_as(*basis_)) {
        throw ValidationError("class '" + cls.label + "' table input is not on the torus basis");
      }
    }
    validate_energy_and_degrees(cls, table, 2);
  }
  entries_ = std::move(entries);
}

std::vector<DiskClass> FiberAlgebra::classes() const {
  std::vector<DiskClass> out;
  out.reserve(entries_.size());
  for (const auto& [cls, table] : entries_) {
    (void)table;
    out.push_back(cls);
  }
  return out;
}

MCPoint::MCPoint(std::vector<NovikovScalar> y, GradedVector b_high)
    : y_(std::move(y)), b_high_(std::move(b_high)) {
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (y_[i].is_zero()) {
      throw ValidationError("torus coordinate y_" + std::to_string(i + 1) + " is zero");
    }
  }
  if (!b_high_.basis()) {
    b_high_ = GradedVector(GradedBasis::torus(static_cast<int>(y_.size())));
  }
  for (const auto& [name, value] : b_high_.coords()) {
    int d = b_high_.basis()->degree_of(name);
    if (d <= 1 || d % 2 == 0) {
      throw ValidationError("b_high must live in odd degrees > 1; got degree " +
                            std::to_string(d) + " at '" + name + "'");
    }
    if (!(Rational(0) < *nv_val(value))) {
      throw ValidationError("b_high coordinate '" + name + "' needs positive valuation");
    }
  }
}

std::vector<long long> compute_gamma_exponents(const std::vector<DiskClass>& classes,
                                               const RingConfig& cfg) {
  if (classes.empty()) throw ValidationError("compute_gamma needs a nonempty class list");
  const std::size_t rank = classes.front().boundary.size();
  IntMatrix b;
  std::vector<long long> rhs;
  for (const auto& cls : classes) {
    if (cls.boundary.size() != rank) {
      throw ValidationError("classes with mixed boundary lengths");
    }
    b.push_back(cls.boundary);
    rhs.push_back(cls.maslov);
  }
  auto g = solve_congruence_lexmin(b, rhs, cfg.order());
  if (!g) {
    throw InconsistentSystemError(
        "no character with gamma(boundary) = zeta^maslov exists for this class list "
        "(divisibility assumption violated)");
  }
  return *g;
}

HolonomyCharacter compute_gamma(const std::vector<DiskClass>& classes, const RingConfig& cfg) {
  return HolonomyCharacter::from_exponents(compute_gamma_exponents(classes, cfg), cfg);
}

namespace {

GradedVector class_term(const DiskClass& cls, const MultilinearTable& table, const MCPoint& pt,
                        const RingConfig& cfg) {
  std::vector<GradedVector> args(static_cast<std::size_t>(table.arity()), pt.b_high());
  GradedVector value = ml_apply(table, args);
  if (value.is_zero()) return value;
  return value.scaled(class_monomial_weight(cls, pt, cfg));
}

void check_gap(const std::vector<ClassTable>& entries) {
  for (const auto& [cls, table] : entries) {
    (void)table;
    if (cls.energy < Rational(0) || (cls.energy.is_zero() && !cls.is_zero_class())) {
      throw NoEnergyGapError("class '" + cls.label + "' breaks the positive energy gap");
    }
  }
}

}  // namespace

NovikovScalar class_monomial_weight(const DiskClass& cls, const MCPoint& pt,
                                    const RingConfig& cfg) {
  if (pt.rank() != cls.boundary.size()) {
    throw ValidationError("point rank differs from class boundary length");
  }
  return nv_weighted_product(cls.energy, pt.y(), cls.boundary, cfg)
      .truncated(Cutoff(cfg.cutoff));
}

GradedVector eval_P(const FiberAlgebra& alg, const MCPoint& pt, const RingConfig& cfg) {
  if (pt.rank() != static_cast<std::size_t>(alg.rank())) {
    throw ValidationError("point rank differs from algebra rank");
  }
  check_gap(alg.entries());
  GradedVector sum(alg.basis());
  for (const auto& [cls, table] : alg.entries()) {
    sum = sum + class_term(cls, table, pt, cfg);
  }
  return sum;
}

std::map<std::string, GradedVector> eval_P_terms(const FiberAlgebra& alg, const MCPoint& pt,
                                                 const RingConfig& cfg) {
  if (pt.rank() != static_cast<std::size_t>(alg.rank())) {
    throw ValidationError("point rank differs from algebra rank");
  }
  check_gap(alg.entries());
  std::map<std::string, GradedVector> out;
  for (const auto& [cls, table] : alg.entries()) {
    out.emplace(cls.label, class_term(cls, table, pt, cfg));
  }
  return out;
}

WeakMCResult weak_mc_check(const FiberAlgebra& alg, const MCPoint& pt, const RingConfig& cfg) {
  GradedVector p = eval_P(alg, pt, cfg);
  WeakMCResult result;
  result.w = p.coord("1").truncated(cfg.cutoff);
  result.is_weak_mc = true;
  for (const auto& [name, value] : p.coords()) {
    if (name == "1") continue;
    if (!nv_eq(value, NovikovScalar(), cfg)) {
      result.is_weak_mc = false;
      result.offending.push_back(name);
    }
  }
  return result;
}

MCPoint apply_tau(const MCPoint& pt, const HolonomyCharacter& gamma, const RingConfig& cfg) {
  if (gamma.size() != pt.rank()) {
    throw ValidationError("gamma rank differs from point rank");
  }
  std::vector<NovikovScalar> y;
  y.reserve(pt.rank());
  for (std::size_t i = 0; i < pt.rank(); ++i) y.push_back(pt.y()[i].scaled(gamma.value(i)));

  GradedVector b(pt.b_high().basis());
  for (const auto& [name, value] : pt.b_high().coords()) {
    int d = pt.b_high().basis()->degree_of(name);
    b.set(name, value.scaled(cfg.zeta_pow(1 - d)));
  }
  return MCPoint(std::move(y), std::move(b));
}

Report check_equivariance(const FiberAlgebra& alg, const MCPoint& pt,
                          const HolonomyCharacter& gamma, const RingConfig& cfg) {
  WeakMCResult base = weak_mc_check(alg, pt, cfg);
  if (!base.is_weak_mc) {
    throw PreconditionError("check_equivariance: the point is not weak Maurer-Cartan");
  }
  Report report;
  report.suite = "equivariance";
  MCPoint tau_pt = apply_tau(pt, gamma, cfg);
  WeakMCResult moved = weak_mc_check(alg, tau_pt, cfg);
  report.add_check("weak-mc-at-tau", moved.is_weak_mc, 0.0, moved.w.str(), "W * unit");

  NovikovScalar expected = base.w.scaled(cfg.zeta_pow(2));
  double dev = nv_max_dev(moved.w, expected, cfg);
  report.add_check("w-equivariance", dev <= cfg.tol, dev, moved.w.str(),
                   "zeta^2 * [" + base.w.str() + "]");
  return report;
}

Report check_divisor_axiom(const std::vector<ClassTable>& tables, char kind,
                           const RingConfig& cfg) {
  if (kind != 'm' && kind != 'F') throw ValidationError("divisor axiom kind must be 'm' or 'F'");
  Report report;
  report.suite = std::string("divisor-axiom-") + kind;

  // Group by geometric class data; tables of arity k and k+1 within one
  // group form the insertion pairs.
  auto same_class = [](const DiskClass& a, const DiskClass& b) {
    return a.energy == b.energy && a.maslov == b.maslov && a.boundary == b.boundary;
  };
  bool any_checked = false;
  for (const auto& [cls, low] : tables) {
    for (const auto& [cls_hi, high] : tables) {
      if (!same_class(cls, cls_hi) || high.arity() != low.arity() + 1) continue;
      const BasisPtr& basis =
          low.arity() > 0 ? low.input_bases().front() : high.input_bases().front();
      for (const auto& elem : basis->elements()) {
        if (elem.degree != 1) continue;
        unsigned mask = basis->mask_of(elem.name);
        int index = 0;
        while (!(mask & (1u << index))) ++index;
        long long pairing = cls.boundary.at(index);  // <boundary, e_i>

        double dev = 0.0;
        for (const auto& [key, out] : low.entries()) {
          GradedVector lhs(high.output_basis());
          for (std::size_t pos = 0; pos <= key.size(); ++pos) {
            std::vector<std::string> inserted = key;
            inserted.insert(inserted.begin() + static_cast<std::ptrdiff_t>(pos), elem.name);
            auto hit = high.entries().find(inserted);
            if (hit != high.entries().end()) lhs = lhs + hit->second;
          }
          GradedVector rhs = out.scaled(Complex(static_cast<double>(pairing), 0.0));
          dev = std::max(dev, gv_max_dev(lhs, rhs, cfg));
        }
        any_checked = true;
        report.add_check(cls.label + "+" + cls_hi.label + ":" + elem.name, dev <= cfg.tol, dev,
                         "sum of insertions", "<boundary,b> * entry");
      }
    }
  }
  if (!any_checked) {
    report.add_pass("vacuous", 0.0, "no degree-1 insertion pairs", "");
  }
  report.sort_cases();
  return report;
}

}  // namespace fukaya
