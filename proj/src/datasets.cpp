#include "fukaya/datasets.hpp"

#include <map>

#include "fukaya/errors.hpp"

namespace fukaya {

namespace {

// Moment polytope of the projective plane, fiber point at the barycenter:
// three basic classes of energy 1/3.
const char* kCp2Toric = R"json({
  "kind": "polytope",
  "n": 3,
  "data": {
    "facets": [
      {"normal": [1, 0], "lambda": [0, 1]},
      {"normal": [0, 1], "lambda": [0, 1]},
      {"normal": [-1, -1], "lambda": [-1, 1]}
    ],
    "point": [[1, 3], [1, 3]]
  }
})json";

// Unit square (product of two projective lines), fiber point at the center.
const char* kP1xP1Toric = R"json({
  "kind": "polytope",
  "n": 2,
  "data": {
    "facets": [
      {"normal": [1, 0], "lambda": [0, 1]},
      {"normal": [0, 1], "lambda": [0, 1]},
      {"normal": [-1, 0], "lambda": [-1, 1]},
      {"normal": [0, -1], "lambda": [-1, 1]}
    ],
    "point": [[1, 2], [1, 2]]
  }
})json";

// Rank-3 fiber with the three basic classes extended by zeros plus one
// Maslov-4 class fed by the top wedge generator. At the reference point
// W = 3 T^(1/3) + T^(3/4).
const char* kT3Synthetic = R"json({
  "kind": "fiber",
  "n": 3,
  "data": {
    "rank": 3,
    "classes": [
      {"label": "b1", "energy": [1, 3], "maslov": 2, "boundary": [1, 0, 0]},
      {"label": "b2", "energy": [1, 3], "maslov": 2, "boundary": [0, 1, 0]},
      {"label": "b3", "energy": [1, 3], "maslov": 2, "boundary": [-1, -1, 0]},
      {"label": "bp", "energy": [1, 2], "maslov": 4, "boundary": [2, 0, 0]}
    ],
    "tables": {
      "b1": {"arity": 0, "entries": [{"in": [], "out": {"coords": {"1": {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"}}}}]},
      "b2": {"arity": 0, "entries": [{"in": [], "out": {"coords": {"1": {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"}}}}]},
      "b3": {"arity": 0, "entries": [{"in": [], "out": {"coords": {"1": {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"}}}}]},
      "bp": {"arity": 1, "entries": [{"in": ["e123"], "out": {"coords": {"1": {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"}}}}]}
    },
    "point": {
      "y": [
        {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"},
        {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"},
        {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"}
      ],
      "b_high": {"coords": {"e123": {"terms": [[1, 4, 1.0, 0.0]], "cutoff": "inf"}}}
    }
  }
})json";

// Single-class pseudo-isotopy with F_0 = e1 - e2 and a pure valuation shift,
// the basic wall-crossing example.
const char* kWallcrossBasic = R"json({
  "kind": "isotopy",
  "n": 3,
  "data": {
    "rank": 2,
    "classes": [
      {"label": "beta", "energy": [1, 1], "maslov": 0, "boundary": [1, -1]}
    ],
    "tables": {
      "beta": {"arity": 0, "entries": [{"in": [], "out": {"coords": {
        "e1": {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"},
        "e2": {"terms": [[0, 1, -1.0, 0.0]], "cutoff": "inf"}
      }}}]}
    },
    "reparam": {"v": [[1, 3], [0, 1]], "M": [[1, 0], [0, 1]]},
    "gamma": [2, 2],
    "point": {
      "y": [
        {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"},
        {"terms": [[0, 1, 1.0, 0.0]], "cutoff": "inf"}
      ],
      "b_high": {"coords": {}}
    }
  }
})json";

// Parameters of the randomized category generator.
const char* kFukcatRandomSpec = R"json({
  "kind": "generator-spec",
  "n": 3,
  "data": {
    "categories": 100,
    "max_arity": 4,
    "max_components": 6,
    "n_values": [1, 2, 3, 5]
  }
})json";

const std::map<std::string, const char*>& raw_datasets() {
  static const std::map<std::string, const char*> data = {
      {"cp2-toric", kCp2Toric},
      {"p1xp1-toric", kP1xP1Toric},
      {"t3-synthetic", kT3Synthetic},
      {"wallcross-basic", kWallcrossBasic},
      {"fukcat-random-spec", kFukcatRandomSpec},
  };
  return data;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : raw_datasets()) {
    (void)text;
    names.push_back(name);
  }
  return names;
}

BuiltinDataset builtin_dataset(const std::string& name) {
  auto it = raw_datasets().find(name);
  if (it == raw_datasets().end()) {
    throw ValidationError("unknown builtin dataset '" + name + "'");
  }
  Json j = parse_json_text(it->second);
  return {name, j.at("kind").get<std::string>(), j.at("n").get<int>(), j.at("data")};
}

}  // namespace fukaya
