#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fukaya/novikov.hpp"

namespace fukaya {

struct BasisElement {
  std::string name;
  int degree = 0;
};

// Finite graded basis with unique element names. The torus variant indexes
// elements by subsets of {1..rank}: the empty subset is the unit "1" of
// degree 0 and a subset {i1<...<id} is the wedge monomial "e i1...id" of
// degree d (rank <= 9 so names stay unambiguous).
class GradedBasis {
 public:
  explicit GradedBasis(std::vector<BasisElement> elements);

  static std::shared_ptr<const GradedBasis> torus(int rank);
  static std::shared_ptr<const GradedBasis> make(std::vector<BasisElement> elements);

  std::size_t size() const { return elements_.size(); }
  const std::vector<BasisElement>& elements() const { return elements_; }

  bool contains(const std::string& name) const;
  int degree_of(const std::string& name) const;  // throws ValidationError if unknown

  std::optional<int> torus_rank() const { return torus_rank_; }

  // Torus-only mask helpers; bit i set means generator e_{i+1} is present.
  unsigned mask_of(const std::string& name) const;
  const std::string& name_of_mask(unsigned mask) const;
  static std::string torus_name(unsigned mask);

  bool same_as(const GradedBasis& other) const;

 private:
  std::vector<BasisElement> elements_;
  std::map<std::string, std::size_t> index_;
  std::optional<int> torus_rank_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

// Sparse vector over NovikovScalar coordinates on a fixed basis. Coordinates
// whose scalar has no terms are dropped.
class GradedVector {
 public:
  GradedVector() = default;
  explicit GradedVector(BasisPtr basis);
  GradedVector(BasisPtr basis, std::map<std::string, NovikovScalar> coords);

  const BasisPtr& basis() const { return basis_; }
  const std::map<std::string, NovikovScalar>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  NovikovScalar coord(const std::string& name) const;
  void set(const std::string& name, NovikovScalar value);

  GradedVector scaled(const Complex& c) const;
  GradedVector scaled(const NovikovScalar& s) const;
  friend GradedVector operator+(const GradedVector& a, const GradedVector& b);
  friend GradedVector operator-(const GradedVector& a, const GradedVector& b);

  // Coordinates of exactly the given degree.
  GradedVector part_of_degree(int degree) const;

  std::string str() const;

 private:
  BasisPtr basis_;
  std::map<std::string, NovikovScalar> coords_;
};

double gv_max_dev(const GradedVector& a, const GradedVector& b, const RingConfig& cfg);
bool gv_eq(const GradedVector& a, const GradedVector& b, const RingConfig& cfg);

// zeta^{-r} on each degree-r homogeneous component.
GradedVector twist_apply(const GradedVector& v, const Complex& zeta);

// (degree-1 part, everything else); the two parts sum back to the input.
std::pair<GradedVector, GradedVector> split_pr1(const GradedVector& v);

// Sparse multilinear map given by structure constants on basis tuples. All
// stored outputs are homogeneous of one shared degree.
class MultilinearTable {
 public:
  MultilinearTable(int arity, std::vector<BasisPtr> input_bases, BasisPtr output_basis,
                   std::map<std::vector<std::string>, GradedVector> entries);

  int arity() const { return arity_; }
  const std::vector<BasisPtr>& input_bases() const { return input_bases_; }
  const BasisPtr& output_basis() const { return output_basis_; }
  const std::map<std::vector<std::string>, GradedVector>& entries() const { return entries_; }

  // Shared degree of the stored outputs; empty for a table with no entries.
  std::optional<int> output_degree() const { return output_degree_; }

  int input_total_degree(const std::vector<std::string>& key) const;

  MultilinearTable scaled(const Complex& c) const;

 private:
  int arity_ = 0;
  std::vector<BasisPtr> input_bases_;
  BasisPtr output_basis_;
  std::map<std::vector<std::string>, GradedVector> entries_;
  std::optional<int> output_degree_;
};

// Multilinear extension of the entry table.
GradedVector ml_apply(const MultilinearTable& t, const std::vector<GradedVector>& args);

}  // namespace fukaya
