#pragma once

#include <string>
#include <vector>

#include "fukaya/json_io.hpp"

namespace fukaya {

// Embedded example dataset: the schema payload under "data", the cyclic
// order it is designed for under "n".
struct BuiltinDataset {
  std::string name;
  std::string kind;  // "polytope" | "fiber" | "isotopy" | "generator-spec"
  int n = 1;
  Json data;
};

std::vector<std::string> builtin_names();
BuiltinDataset builtin_dataset(const std::string& name);  // throws ValidationError if unknown

}  // namespace fukaya
