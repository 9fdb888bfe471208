#include "fukaya/category.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fukaya/errors.hpp"

namespace fukaya {

HolonomyCharacter::HolonomyCharacter(std::vector<Complex> values) : values_(std::move(values)) {}

HolonomyCharacter HolonomyCharacter::trivial(std::size_t rank) {
  return HolonomyCharacter(std::vector<Complex>(rank, Complex(1.0, 0.0)));
}

HolonomyCharacter HolonomyCharacter::from_exponents(const std::vector<long long>& exps,
                                                    const RingConfig& cfg) {
  std::vector<Complex> values;
  values.reserve(exps.size());
  for (long long e : exps) values.push_back(cfg.zeta_pow(e));
  return HolonomyCharacter(std::move(values));
}

Complex HolonomyCharacter::evaluate(const std::vector<long long>& x) const {
  if (x.size() != values_.size()) {
    throw ValidationError("character evaluated on a lattice vector of the wrong length");
  }
  Complex out{1.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) out *= unit_pow(values_[i], x[i]);
  return out;
}

HolonomyCharacter HolonomyCharacter::pointwise_product(const HolonomyCharacter& other) const {
  if (other.size() != size()) throw ValidationError("character product with mismatched ranks");
  std::vector<Complex> values(values_);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= other.values_[i];
  return HolonomyCharacter(std::move(values));
}

double HolonomyCharacter::max_dev_from(const HolonomyCharacter& other) const {
  if (other.size() != size()) return 1.0;
  double dev = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    dev = std::max(dev, std::abs(values_[i] - other.values_[i]));
  }
  return dev;
}

CategoryData::CategoryData(std::vector<BraneObject> objects,
                           std::map<std::string, HolonomyCharacter> el_systems,
                           std::map<std::string, MorphismComponent> components,
                           std::vector<PolygonClass> classes,
                           std::map<std::string, MultilinearTable> tables, const RingConfig& cfg)
    : objects_(std::move(objects)),
      el_systems_(std::move(el_systems)),
      components_(std::move(components)),
      classes_(std::move(classes)),
      tables_(std::move(tables)) {
  if (objects_.empty()) throw ValidationError("category needs at least one object");
  ambient_dim_ = objects_.front().label.ambient_dim;
  if (ambient_dim_ < 2 || ambient_dim_ % 2 != 0) {
    throw ValidationError("ambient dimension must be even and >= 2");
  }

  std::map<std::string, const LagrangianLabel*> labels;
  for (const auto& obj : objects_) {
    if (obj.label.ambient_dim != ambient_dim_) {
      throw ValidationError("objects with mixed ambient dimensions");
    }
    if (obj.label.h1_rank < 0) throw ValidationError("negative h1 rank");
    if (obj.character.size() != static_cast<std::size_t>(obj.label.h1_rank)) {
      throw ValidationError("object character length differs from h1 rank of '" +
                            obj.label.name + "'");
    }
    for (const Complex& v : obj.character.values()) {
      if (std::abs(std::abs(v) - 1.0) > cfg.tol) {
        throw ValidationError("object character value off the unit circle");
      }
    }
    labels[obj.label.name] = &obj.label;
  }

  for (const auto& [name, el] : el_systems_) {
    auto it = labels.find(name);
    if (it == labels.end()) throw ValidationError("E_L system for unknown label '" + name + "'");
    const LagrangianLabel& lab = *it->second;
    if (el.size() != static_cast<std::size_t>(lab.h1_rank)) {
      throw ValidationError("E_L system rank mismatch for '" + name + "'");
    }
    for (const Complex& v : el.values()) {
      if (std::abs(unit_pow(v, cfg.order()) - Complex(1.0, 0.0)) > cfg.tol) {
        throw ValidationError("E_L value for '" + name + "' is not a 2n-th root of unity");
      }
      if (lab.oriented && std::abs(unit_pow(v, cfg.n) - Complex(1.0, 0.0)) > cfg.tol) {
        throw ValidationError("E_L value for oriented label '" + name +
                              "' is not an n-th root of unity");
      }
    }
  }

  for (const auto& [id, comp] : components_) {
    if (comp.id != id) throw ValidationError("component map key differs from component id");
    if (!labels.count(comp.source) || !labels.count(comp.target)) {
      throw ValidationError("component '" + id + "' references an unknown label");
    }
    if (comp.dim_c < 0 || comp.dim_c > half_dim()) {
      throw ValidationError("component '" + id + "' has dim outside [0, dim(X)/2]");
    }
    if (!comp.basis) throw ValidationError("component '" + id + "' without a basis");
    for (const auto& e : comp.basis->elements()) {
      if (e.degree < 0 || e.degree > comp.dim_c) {
        throw ValidationError("component '" + id + "' basis degree outside [0, dim_c]");
      }
    }
  }

  std::map<std::string, const PolygonClass*> class_ids;
  for (const auto& cls : classes_) {
    if (!class_ids.emplace(cls.id, &cls).second) {
      throw ValidationError("duplicate class id '" + cls.id + "'");
    }
    if (cls.arity < 0) throw ValidationError("class '" + cls.id + "' with negative arity");
    if (cls.energy < Rational(0)) throw ValidationError("class '" + cls.id + "' with negative energy");
    if (cls.component_ids.size() != static_cast<std::size_t>(cls.arity) + 1) {
      throw ValidationError("class '" + cls.id + "' needs arity+1 component ids");
    }
    if (cls.s_exponents.size() != cls.component_ids.size()) {
      throw ValidationError("class '" + cls.id + "' needs one s exponent per component");
    }
    for (const auto& cid : cls.component_ids) {
      if (!components_.count(cid)) {
        throw ValidationError("class '" + cls.id + "' references unknown component '" + cid + "'");
      }
    }
    // s-consistency: s_{C0'} + s_{C0} = dim(C0) - dim(X)/2 (mod 2n).
    if (cls.s0_prime_exponent) {
      const MorphismComponent& c0 = components_.at(cls.component_ids.back());
      long long want = c0.dim_c - half_dim() - cls.s_exponents.back();
      long long got = *cls.s0_prime_exponent;
      long long m = cfg.order();
      if (((want - got) % m + m) % m != 0) {
        throw ValidationError("class '" + cls.id + "' violates the s-lift consistency relation");
      }
    }
  }

  for (const auto& [id, table] : tables_) {
    auto it = class_ids.find(id);
    if (it == class_ids.end()) throw ValidationError("table for unknown class '" + id + "'");
    const PolygonClass& cls = *it->second;
    if (table.arity() != cls.arity) {
      throw ValidationError("table arity differs from class arity for '" + id + "'");
    }
    for (int i = 0; i < cls.arity; ++i) {
      const MorphismComponent& ci = components_.at(cls.component_ids[i]);
      if (!table.input_bases()[i]->same_as(*ci.basis)) {
        throw ValidationError("table input basis mismatch for '" + id + "'");
      }
    }
    const MorphismComponent& c0 = components_.at(cls.component_ids.back());
    if (!table.output_basis()->same_as(*c0.basis)) {
      throw ValidationError("table output basis mismatch for '" + id + "'");
    }
  }
}

const MorphismComponent& CategoryData::component(const std::string& id) const {
  auto it = components_.find(id);
  if (it == components_.end()) throw ValidationError("unknown component '" + id + "'");
  return it->second;
}

const LagrangianLabel& CategoryData::label(const std::string& name) const {
  for (const auto& obj : objects_) {
    if (obj.label.name == name) return obj.label;
  }
  throw ValidationError("unknown label '" + name + "'");
}

long long CategoryData::s0_prime_exp(const PolygonClass& cls, const RingConfig& cfg) const {
  if (cls.s0_prime_exponent) return *cls.s0_prime_exponent;
  const MorphismComponent& c0 = component(cls.component_ids.back());
  long long m = cfg.order();
  long long e = (c0.dim_c - half_dim() - cls.s_exponents.back()) % m;
  return e < 0 ? e + m : e;
}

BraneObject phi_object(const CategoryData& cat, const BraneObject& obj) {
  auto it = cat.el_systems().find(obj.label.name);
  if (it == cat.el_systems().end()) {
    throw MissingELSystemError("no E_L system registered for label '" + obj.label.name + "'");
  }
  return {obj.label, obj.character.pointwise_product(it->second)};
}

Complex phi1_scalar(const MorphismComponent& c, const Complex& s_c, int degree,
                    const Complex& zeta) {
  (void)c;
  return unit_pow(zeta, -degree) * s_c;
}

Complex twist_scale(const CategoryData& cat, const PolygonClass& cls, const RingConfig& cfg) {
  const MorphismComponent& c0 = cat.component(cls.component_ids.back());
  long long exponent = cls.maslov - (c0.dim_c - cat.half_dim()) + cat.s0_prime_exp(cls, cfg);
  for (int i = 0; i < cls.arity; ++i) exponent -= cls.s_exponents[i];
  return cfg.zeta_pow(exponent);
}

std::vector<std::string> validate_degree_rule(const CategoryData& cat) {
  std::vector<std::string> violations;
  for (const auto& cls : cat.classes()) {
    auto it = cat.tables().find(cls.id);
    if (it == cat.tables().end()) continue;
    const MultilinearTable& table = it->second;
    const MorphismComponent& c0 = cat.component(cls.component_ids.back());
    int shift = (c0.dim_c - cat.half_dim()) + 2 - cls.arity - cls.maslov;
    for (const auto& [key, out] : table.entries()) {
      int want = shift + table.input_total_degree(key);
      for (const auto& [name, value] : out.coords()) {
        (void)value;
        int got = table.output_basis()->degree_of(name);
        if (got != want) {
          std::ostringstream os;
          os << "class '" << cls.id << "' entry (";
          for (std::size_t i = 0; i < key.size(); ++i) os << (i ? "," : "") << key[i];
          os << ") outputs degree " << got << ", degree rule requires " << want;
          violations.push_back(os.str());
        }
      }
    }
  }
  return violations;
}

CategoryData build_twisted_structure(const CategoryData& cat, const RingConfig& cfg) {
  auto violations = validate_degree_rule(cat);
  if (!violations.empty()) {
    std::string msg = "degree rule violated:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw DegreeRuleError(msg);
  }
  std::vector<BraneObject> objects;
  objects.reserve(cat.objects().size());
  for (const auto& obj : cat.objects()) objects.push_back(phi_object(cat, obj));

  std::map<std::string, MultilinearTable> tables;
  for (const auto& cls : cat.classes()) {
    auto it = cat.tables().find(cls.id);
    if (it == cat.tables().end()) continue;
    tables.emplace(cls.id, it->second.scaled(twist_scale(cat, cls, cfg)));
  }
  return CategoryData(std::move(objects), cat.el_systems(), cat.components(), cat.classes(),
                      std::move(tables), cfg);
}

Report check_twisted_equations(const CategoryData& cat, const RingConfig& cfg) {
  Report report;
  report.suite = "twisted-equations";
  const Complex zeta = cfg.zeta();
  for (const auto& cls : cat.classes()) {
    auto it = cat.tables().find(cls.id);
    if (it == cat.tables().end()) continue;
    const MultilinearTable& table = it->second;
    const MorphismComponent& c0 = cat.component(cls.component_ids.back());
    const Complex scale = twist_scale(cat, cls, cfg);
    const long long s0p = cat.s0_prime_exp(cls, cfg);
    const int k = cls.arity;

    double dev = 0.0;
    bool exponent_identity = true;
    std::string detail;
    for (const auto& [key, out] : table.entries()) {
      // Left side: the twisted table applied to the twisted inputs
      // zeta^{-r_i} s_{C_i} a_i.
      long long input_factor = 0;
      int degree_sum = 0;
      for (std::size_t i = 0; i < key.size(); ++i) {
        int r = table.input_bases()[i]->degree_of(key[i]);
        degree_sum += r;
        input_factor += cls.s_exponents[i] - r;
      }
      GradedVector lhs = out.scaled(scale * cfg.zeta_pow(input_factor));
      // Right side: zeta^{2-k} applied after the twisted output map.
      GradedVector rhs =
          twist_apply(out, zeta).scaled(cfg.zeta_pow(2 - k + s0p));
      dev = std::max(dev, gv_max_dev(lhs, rhs, cfg));

      // Exponent identity implied by the degree rule:
      // -sum r_i + mu - (dim C0 - dim X / 2) = (2 - k) - r_0.
      for (const auto& [name, value] : out.coords()) {
        (void)value;
        int r0 = table.output_basis()->degree_of(name);
        long long left = -degree_sum + cls.maslov - (c0.dim_c - cat.half_dim());
        long long right = (2 - k) - r0;
        if (left != right && exponent_identity) {
          exponent_identity = false;
          detail = "exponent identity broken: " + std::to_string(left) +
                   " != " + std::to_string(right);
        }
      }
    }
    bool ok = dev <= cfg.tol && exponent_identity;
    report.add_check(cls.id, ok, dev, "m_twisted o (f_zeta)^k", "zeta^{2-k} f_zeta o m", detail);
  }
  report.sort_cases();
  return report;
}

Report check_functor_order(const CategoryData& cat, const RingConfig& cfg) {
  Report report;
  report.suite = "functor-order";

  for (const auto& obj : cat.objects()) {
    BraneObject current = obj;
    for (int i = 0; i < cfg.order(); ++i) current = phi_object(cat, current);
    double dev = current.character.max_dev_from(obj.character);
    report.add_check("object:" + obj.label.name, dev <= cfg.tol, dev, "phi^{2n}", "id");
    if (obj.label.oriented) {
      BraneObject half = obj;
      for (int i = 0; i < cfg.n; ++i) half = phi_object(cat, half);
      double dev_n = half.character.max_dev_from(obj.character);
      report.add_check("object-oriented:" + obj.label.name, dev_n <= cfg.tol, dev_n, "phi^n",
                       "id");
    }
  }

  // 2n-fold composite of the morphism scalars, per class, component and
  // basis degree.
  const Complex zeta = cfg.zeta();
  for (const auto& cls : cat.classes()) {
    double dev = 0.0;
    for (std::size_t i = 0; i < cls.component_ids.size(); ++i) {
      const MorphismComponent& comp = cat.component(cls.component_ids[i]);
      const Complex s = cfg.zeta_pow(cls.s_exponents[i]);
      for (const auto& elem : comp.basis->elements()) {
        Complex acc{1.0, 0.0};
        for (int rep = 0; rep < cfg.order(); ++rep) {
          acc *= phi1_scalar(comp, s, elem.degree, zeta);
        }
        dev = std::max(dev, std::abs(acc - Complex(1.0, 0.0)));
      }
    }
    report.add_check("morphism-scalars:" + cls.id, dev <= cfg.tol, dev, "(zeta^{-r} s_C)^{2n}",
                     "1");
  }
  report.sort_cases();
  return report;
}

}  // namespace fukaya
