#include "fukaya/graded.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "fukaya/errors.hpp"

namespace fukaya {

GradedBasis::GradedBasis(std::vector<BasisElement> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].name.empty()) throw ValidationError("basis element with empty name");
    if (!index_.emplace(elements_[i].name, i).second) {
      throw ValidationError("duplicate basis element name '" + elements_[i].name + "'");
    }
  }
}

std::string GradedBasis::torus_name(unsigned mask) {
  if (mask == 0) return "1";
  std::string name = "e";
  for (int i = 0; i < 32; ++i) {
    if (mask & (1u << i)) name += std::to_string(i + 1);
  }
  return name;
}

std::shared_ptr<const GradedBasis> GradedBasis::torus(int rank) {
  if (rank < 0 || rank > 9) throw ValidationError("torus basis rank must be in [0, 9]");
  std::vector<BasisElement> elems;
  elems.reserve(std::size_t(1) << rank);
  for (unsigned mask = 0; mask < (1u << rank); ++mask) {
    elems.push_back({torus_name(mask), std::popcount(mask)});
  }
  auto basis = std::make_shared<GradedBasis>(std::move(elems));
  basis->torus_rank_ = rank;
  return basis;
}

std::shared_ptr<const GradedBasis> GradedBasis::make(std::vector<BasisElement> elements) {
  return std::make_shared<GradedBasis>(std::move(elements));
}

bool GradedBasis::contains(const std::string& name) const { return index_.count(name) > 0; }

int GradedBasis::degree_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown basis element '" + name + "'");
  return elements_[it->second].degree;
}

unsigned GradedBasis::mask_of(const std::string& name) const {
  if (!torus_rank_) throw ValidationError("mask_of requires a torus basis");
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown basis element '" + name + "'");
  return static_cast<unsigned>(it->second);
}

const std::string& GradedBasis::name_of_mask(unsigned mask) const {
  if (!torus_rank_) throw ValidationError("name_of_mask requires a torus basis");
  if (mask >= elements_.size()) throw ValidationError("basis mask out of range");
  return elements_[mask].name;
}

bool GradedBasis::same_as(const GradedBasis& other) const {
  if (this == &other) return true;
  if (elements_.size() != other.elements_.size()) return false;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].name != other.elements_[i].name ||
        elements_[i].degree != other.elements_[i].degree) {
      return false;
    }
  }
  return true;
}

GradedVector::GradedVector(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw ValidationError("graded vector without a basis");
}

GradedVector::GradedVector(BasisPtr basis, std::map<std::string, NovikovScalar> coords)
    : basis_(std::move(basis)) {
  if (!basis_) throw ValidationError("graded vector without a basis");
  for (auto& [name, value] : coords) {
    if (!basis_->contains(name)) {
      throw ValidationError("coordinate on unknown basis element '" + name + "'");
    }
    if (!value.is_zero()) coords_.emplace(name, std::move(value));
  }
}

NovikovScalar GradedVector::coord(const std::string& name) const {
  auto it = coords_.find(name);
  return it == coords_.end() ? NovikovScalar() : it->second;
}

void GradedVector::set(const std::string& name, NovikovScalar value) {
  if (!basis_->contains(name)) {
    throw ValidationError("coordinate on unknown basis element '" + name + "'");
  }
  if (value.is_zero()) {
    coords_.erase(name);
  } else {
    coords_[name] = std::move(value);
  }
}

GradedVector GradedVector::scaled(const Complex& c) const {
  GradedVector out(basis_);
  for (const auto& [name, value] : coords_) out.set(name, value.scaled(c));
  return out;
}

GradedVector GradedVector::scaled(const NovikovScalar& s) const {
  GradedVector out(basis_);
  for (const auto& [name, value] : coords_) out.set(name, value * s);
  return out;
}

GradedVector operator+(const GradedVector& a, const GradedVector& b) {
  if (!a.basis_) return b;
  if (!b.basis_) return a;
  if (!a.basis_->same_as(*b.basis_)) throw ValidationError("vector addition across bases");
  GradedVector out(a.basis_);
  out.coords_ = a.coords_;
  for (const auto& [name, value] : b.coords_) {
    auto it = out.coords_.find(name);
    if (it == out.coords_.end()) {
      out.coords_.emplace(name, value);
    } else {
      NovikovScalar sum = it->second + value;
      if (sum.is_zero()) {
        out.coords_.erase(it);
      } else {
        it->second = std::move(sum);
      }
    }
  }
  return out;
}

GradedVector operator-(const GradedVector& a, const GradedVector& b) {
  return a + b.scaled({-1.0, 0.0});
}

GradedVector GradedVector::part_of_degree(int degree) const {
  GradedVector out(basis_);
  for (const auto& [name, value] : coords_) {
    if (basis_->degree_of(name) == degree) out.set(name, value);
  }
  return out;
}

std::string GradedVector::str() const {
  if (coords_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, value] : coords_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << value.str() << "]*" << name;
  }
  return os.str();
}

double gv_max_dev(const GradedVector& a, const GradedVector& b, const RingConfig& cfg) {
  double dev = 0.0;
  for (const auto& [name, value] : a.coords()) {
    dev = std::max(dev, nv_max_dev(value, b.coord(name), cfg));
  }
  for (const auto& [name, value] : b.coords()) {
    if (!a.coords().count(name)) dev = std::max(dev, nv_max_dev(value, NovikovScalar(), cfg));
  }
  return dev;
}

bool gv_eq(const GradedVector& a, const GradedVector& b, const RingConfig& cfg) {
  return gv_max_dev(a, b, cfg) <= cfg.tol;
}

GradedVector twist_apply(const GradedVector& v, const Complex& zeta) {
  if (!v.basis()) return v;
  GradedVector out(v.basis());
  for (const auto& [name, value] : v.coords()) {
    int r = v.basis()->degree_of(name);
    out.set(name, value.scaled(unit_pow(zeta, -r)));
  }
  return out;
}

std::pair<GradedVector, GradedVector> split_pr1(const GradedVector& v) {
  GradedVector deg1(v.basis() ? v.basis() : GradedBasis::torus(0));
  GradedVector rest(deg1.basis());
  if (!v.basis()) return {deg1, rest};
  for (const auto& [name, value] : v.coords()) {
    if (v.basis()->degree_of(name) == 1) {
      deg1.set(name, value);
    } else {
      rest.set(name, value);
    }
  }
  return {deg1, rest};
}

MultilinearTable::MultilinearTable(int arity, std::vector<BasisPtr> input_bases,
                                   BasisPtr output_basis,
                                   std::map<std::vector<std::string>, GradedVector> entries)
    : arity_(arity),
      input_bases_(std::move(input_bases)),
      output_basis_(std::move(output_basis)),
      entries_(std::move(entries)) {
  if (arity_ < 0) throw ValidationError("table arity must be >= 0");
  if (input_bases_.size() != static_cast<std::size_t>(arity_)) {
    throw ValidationError("table needs one input basis per argument");
  }
  if (!output_basis_) throw ValidationError("table without an output basis");
  for (const auto& [key, out] : entries_) {
    if (key.size() != static_cast<std::size_t>(arity_)) {
      throw ArityMismatchError("table entry key length differs from arity");
    }
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (!input_bases_[i]->contains(key[i])) {
        throw ValidationError("table entry input '" + key[i] + "' not in its basis");
      }
    }
    if (!out.basis() || !out.basis()->same_as(*output_basis_)) {
      throw ValidationError("table entry output on the wrong basis");
    }
    std::optional<int> entry_degree;
    for (const auto& [name, value] : out.coords()) {
      (void)value;
      int d = output_basis_->degree_of(name);
      if (entry_degree && *entry_degree != d) {
        throw ValidationError("table entry output is not homogeneous");
      }
      entry_degree = d;
    }
    if (!entry_degree) continue;  // zero outputs do not pin a degree
    if (output_degree_ && *output_degree_ != *entry_degree) {
      throw ValidationError("table entries have mixed output degrees");
    }
    output_degree_ = entry_degree;
  }
}

int MultilinearTable::input_total_degree(const std::vector<std::string>& key) const {
  int total = 0;
  for (std::size_t i = 0; i < key.size(); ++i) {
    total += input_bases_[i]->degree_of(key[i]);
  }
  return total;
}

MultilinearTable MultilinearTable::scaled(const Complex& c) const {
  std::map<std::vector<std::string>, GradedVector> out;
  for (const auto& [key, value] : entries_) out.emplace(key, value.scaled(c));
  return MultilinearTable(arity_, input_bases_, output_basis_, std::move(out));
}

GradedVector ml_apply(const MultilinearTable& t, const std::vector<GradedVector>& args) {
  if (args.size() != static_cast<std::size_t>(t.arity())) {
    throw ArityMismatchError("ml_apply: expected " + std::to_string(t.arity()) +
                             " arguments, got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].basis() || !args[i].basis()->same_as(*t.input_bases()[i])) {
      throw ValidationError("ml_apply: argument " + std::to_string(i) + " on the wrong basis");
    }
  }
  GradedVector result(t.output_basis());
  for (const auto& [key, out] : t.entries()) {
    NovikovScalar weight = NovikovScalar::constant({1.0, 0.0});
    bool vanished = false;
    for (std::size_t i = 0; i < key.size(); ++i) {
      NovikovScalar c = args[i].coord(key[i]);
      if (c.is_zero()) {
        vanished = true;
        break;
      }
      weight = weight * c;
    }
    if (vanished || weight.is_zero()) continue;
    result = result + out.scaled(weight);
  }
  return result;
}

}  // namespace fukaya
