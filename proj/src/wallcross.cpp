#include "fukaya/wallcross.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fukaya/errors.hpp"

namespace fukaya {

PseudoIsotopy::PseudoIsotopy(int rank, std::vector<ClassTable> entries) : rank_(rank) {
  if (rank < 0) throw ValidationError("pseudo-isotopy rank must be >= 0");
  basis_ = GradedBasis::torus(rank);
  std::sort(entries.begin(), entries.end(),
            [](const ClassTable& a, const ClassTable& b) { return a.first.label < b.first.label; });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (entries[i].first.label == entries[i + 1].first.label) {
      throw ValidationError("duplicate class label '" + entries[i].first.label + "'");
    }
  }
  for (const auto& [cls, table] : entries) {
    if (cls.boundary.size() != static_cast<std::size_t>(rank)) {
      throw ValidationError("class '" + cls.label + "' boundary length differs from rank");
    }
    if (!table.output_basis()->same_as(*basis_)) {
      throw ValidationError("class '" + cls.label + "' table is not on the torus basis");
    }
    for (const auto& in : table.input_bases()) {
      if (!in->same_as(*basis_)) {
        throw ValidationError("class '" + cls.label + "' table input is not on the torus basis");
      }
    }
    if (cls.energy < Rational(0) || (cls.energy.is_zero() && !cls.is_zero_class())) {
      throw NoEnergyGapError("class '" + cls.label + "' breaks the positive energy gap");
    }
    if (cls.is_zero_class() && table.arity() < 2) {
      throw ValidationError("zero class '" + cls.label + "' needs arity >= 2");
    }
    for (const auto& [key, out] : table.entries()) {
      for (std::size_t i = 0; i < key.size(); ++i) {
        if (table.input_bases()[i]->degree_of(key[i]) <= 1) {
          throw ValidationError("class '" + cls.label + "' has an input of degree <= 1");
        }
      }
      int want = table.input_total_degree(key) + 1 - table.arity() - cls.maslov;
      for (const auto& [name, value] : out.coords()) {
        (void)value;
        if (table.output_basis()->degree_of(name) != want) {
          throw DegreeRuleError("class '" + cls.label + "' output degree breaks the F degree rule");
        }
      }
    }
  }
  entries_ = std::move(entries);
}

std::vector<DiskClass> PseudoIsotopy::classes() const {
  std::vector<DiskClass> out;
  out.reserve(entries_.size());
  for (const auto& [cls, table] : entries_) {
    (void)table;
    out.push_back(cls);
  }
  return out;
}

IsotopyReparam::IsotopyReparam(std::vector<Rational> v_, IntMatrix m_)
    : v(std::move(v_)), m(std::move(m_)) {
  if (m.size() != v.size()) throw ValidationError("reparam matrix size differs from v length");
  for (const auto& row : m) {
    if (row.size() != v.size()) throw ValidationError("reparam matrix is not square");
  }
  long long det = det_bareiss(m);
  if (det != 1 && det != -1) {
    throw ValidationError("reparam matrix must be unimodular, det = " + std::to_string(det));
  }
}

GradedVector eval_f(const PseudoIsotopy& iso, const MCPoint& pt, const RingConfig& cfg,
                    bool implicit_identity) {
  if (pt.rank() != static_cast<std::size_t>(iso.rank())) {
    throw ValidationError("point rank differs from isotopy rank");
  }
  for (const auto& [cls, table] : iso.entries()) {
    (void)table;
    if (cls.energy < Rational(0) || (cls.energy.is_zero() && !cls.is_zero_class())) {
      throw NoEnergyGapError("class '" + cls.label + "' breaks the positive energy gap");
    }
  }
  GradedVector sum(iso.basis());
  for (const auto& [cls, table] : iso.entries()) {
    std::vector<GradedVector> args(static_cast<std::size_t>(table.arity()), pt.b_high());
    GradedVector value = ml_apply(table, args);
    if (value.is_zero()) continue;
    sum = sum + value.scaled(class_monomial_weight(cls, pt, cfg));
  }
  if (implicit_identity) sum = sum + pt.b_high();
  return sum;
}

MCPoint f_star(const PseudoIsotopy& iso, const MCPoint& pt, const HolonomyCharacter& gamma,
               const RingConfig& cfg, bool implicit_identity) {
  if (gamma.size() != 0 && gamma.size() != pt.rank()) {
    throw ValidationError("gamma rank differs from point rank");
  }
  GradedVector f = eval_f(iso, pt, cfg, implicit_identity);
  auto [deg1, rest] = split_pr1(f);
  std::vector<NovikovScalar> y;
  y.reserve(pt.rank());
  for (std::size_t i = 0; i < pt.rank(); ++i) {
    NovikovScalar g = deg1.coord("e" + std::to_string(i + 1));
    if (!g.is_zero() && !(Rational(0) < *nv_val(g))) {
      throw OutsideDomainError("degree-1 coordinate e" + std::to_string(i + 1) +
                               " of f(b) has valuation <= 0");
    }
    y.push_back(pt.y()[i] * nv_exp(g.truncated(cfg.cutoff)));
  }
  return MCPoint(std::move(y), std::move(rest));
}

GradedVector transport_exterior(const GradedVector& v, const IntMatrix& m) {
  if (!v.basis()) return v;
  if (!v.basis()->torus_rank()) {
    throw ValidationError("exterior transport requires a torus basis");
  }
  const int rank = *v.basis()->torus_rank();
  if (m.size() != static_cast<std::size_t>(rank)) {
    throw ValidationError("transport matrix size differs from torus rank");
  }
  GradedVector out(v.basis());
  for (const auto& [name, value] : v.coords()) {
    unsigned mask = v.basis()->mask_of(name);
    // Wedge the generator images one factor at a time, tracking the sign
    // needed to sort each inserted generator into place.
    std::map<unsigned, long long> terms{{0u, 1}};
    for (int j = 0; j < rank; ++j) {
      if (!(mask & (1u << j))) continue;
      std::map<unsigned, long long> next;
      for (const auto& [partial, coef] : terms) {
        for (int i = 0; i < rank; ++i) {
          long long mji = m[j][i];
          if (mji == 0 || (partial & (1u << i))) continue;
          unsigned grown = partial | (1u << i);
          int above = std::popcount(partial >> (i + 1));
          long long signed_coef = (above % 2 == 0) ? coef * mji : -coef * mji;
          next[grown] += signed_coef;
        }
      }
      terms = std::move(next);
    }
    for (const auto& [result_mask, coef] : terms) {
      if (coef == 0) continue;
      const std::string& target = v.basis()->name_of_mask(result_mask);
      NovikovScalar scaled = value.scaled(Complex(static_cast<double>(coef), 0.0));
      out.set(target, out.coord(target) + scaled);
    }
  }
  return out;
}

MCPoint psi_reparam(const IsotopyReparam& reparam, const MCPoint& pt, const RingConfig& cfg) {
  if (reparam.v.size() != pt.rank()) {
    throw ValidationError("reparam rank differs from point rank");
  }
  const std::size_t rank = pt.rank();
  std::vector<NovikovScalar> y;
  y.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    std::vector<long long> exponents(rank);
    for (std::size_t j = 0; j < rank; ++j) exponents[j] = reparam.m[j][i];
    y.push_back(nv_weighted_product(-reparam.v[i], pt.y(), exponents, cfg));
  }
  return MCPoint(std::move(y), transport_exterior(pt.b_high(), reparam.m));
}

MCPoint gluing(const PseudoIsotopy& iso, const IsotopyReparam& reparam, const MCPoint& pt,
               const HolonomyCharacter& gamma, const RingConfig& cfg, bool implicit_identity) {
  return psi_reparam(reparam, f_star(iso, pt, gamma, cfg, implicit_identity), cfg);
}

HolonomyCharacter transport_character(const HolonomyCharacter& gamma, const IntMatrix& m) {
  if (m.size() != gamma.size()) {
    throw ValidationError("transport matrix size differs from character rank");
  }
  std::vector<Complex> values;
  values.reserve(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    Complex v{1.0, 0.0};
    for (std::size_t j = 0; j < gamma.size(); ++j) v *= unit_pow(gamma.value(j), m[j][i]);
    values.push_back(v);
  }
  return HolonomyCharacter(std::move(values));
}

Report check_commute(const PseudoIsotopy& iso, const IsotopyReparam& reparam, const MCPoint& pt,
                     const HolonomyCharacter& gamma, const HolonomyCharacter& gamma_prime,
                     const RingConfig& cfg, bool implicit_identity) {
  for (const auto& [cls, table] : iso.entries()) {
    (void)table;
    Complex got = gamma.evaluate(cls.boundary);
    Complex want = cfg.zeta_pow(cls.maslov);
    if (std::abs(got - want) > cfg.tol) {
      throw CharacterMismatchError("gamma(boundary) != zeta^maslov on class '" + cls.label + "'");
    }
  }
  HolonomyCharacter transported = transport_character(gamma, reparam.m);
  if (gamma_prime.max_dev_from(transported) > cfg.tol) {
    throw CharacterMismatchError("gamma' is not the M-transport of gamma");
  }

  Report report;
  report.suite = "wallcross-commute";
  MCPoint tau_pt = apply_tau(pt, gamma, cfg);

  // f(tau(b)) = zeta * twist(f(b)).
  GradedVector lhs = eval_f(iso, tau_pt, cfg, implicit_identity);
  GradedVector rhs = twist_apply(eval_f(iso, pt, cfg, implicit_identity), cfg.zeta())
                         .scaled(cfg.zeta_pow(1));
  double dev_f = gv_max_dev(lhs, rhs, cfg);
  report.add_check("intermediate-identity", dev_f <= cfg.tol, dev_f, "f(tau b)",
                   "zeta * twist(f(b))");

  MCPoint glued_then_tau =
      apply_tau(gluing(iso, reparam, pt, gamma, cfg, implicit_identity), gamma_prime, cfg);
  MCPoint tau_then_glued = gluing(iso, reparam, tau_pt, gamma, cfg, implicit_identity);
  double dev = 0.0;
  for (std::size_t i = 0; i < pt.rank(); ++i) {
    dev = std::max(dev, nv_max_dev(glued_then_tau.y()[i], tau_then_glued.y()[i], cfg));
  }
  dev = std::max(dev, gv_max_dev(glued_then_tau.b_high(), tau_then_glued.b_high(), cfg));
  report.add_check("full-commutation", dev <= cfg.tol, dev, "tau' o Psi", "Psi o tau");
  return report;
}

}  // namespace fukaya
