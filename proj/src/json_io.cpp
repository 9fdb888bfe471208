#include "fukaya/json_io.hpp"

#include <fstream>

#include "fukaya/errors.hpp"

namespace fukaya {

namespace {

// Json accessors that fail with ParseError instead of nlohmann exceptions.
const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

long long as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string("expected integer for ") + what);
  return j.get<long long>();
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected number for ") + what);
  return j.get<double>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string("expected string for ") + what);
  return j.get<std::string>();
}

std::vector<long long> int_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("expected array for ") + what);
  std::vector<long long> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

}  // namespace

Json rational_to_json(const Rational& r) { return Json::array({r.num(), r.den()}); }

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("rational must be [num, den]");
  return Rational(as_int(j[0], "rational numerator"), as_int(j[1], "rational denominator"));
}

Json novikov_to_json(const NovikovScalar& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    terms.push_back(Json::array(
        {t.exponent.num(), t.exponent.den(), t.coefficient.real(), t.coefficient.imag()}));
  }
  Json cutoff = s.cutoff() ? rational_to_json(*s.cutoff()) : Json("inf");
  return Json{{"terms", std::move(terms)}, {"cutoff", std::move(cutoff)}};
}

NovikovScalar novikov_from_json(const Json& j) {
  std::vector<NovikovTerm> terms;
  for (const auto& t : field(j, "terms")) {
    if (!t.is_array() || t.size() != 4) {
      throw ParseError("scalar term must be [num, den, re, im]");
    }
    terms.push_back({Rational(as_int(t[0], "exponent numerator"), as_int(t[1], "exponent denominator")),
                     Complex(as_double(t[2], "coefficient"), as_double(t[3], "coefficient"))});
  }
  Cutoff cutoff;
  if (j.contains("cutoff") && !(j.at("cutoff").is_string() && j.at("cutoff") == "inf")) {
    cutoff = rational_from_json(j.at("cutoff"));
  }
  return NovikovScalar(std::move(terms), std::move(cutoff));
}

Json basis_to_json(const GradedBasis& b) {
  if (b.torus_rank()) return Json{{"torus_rank", *b.torus_rank()}};
  Json elems = Json::array();
  for (const auto& e : b.elements()) {
    elems.push_back(Json{{"name", e.name}, {"degree", e.degree}});
  }
  return Json{{"elements", std::move(elems)}};
}

BasisPtr basis_from_json(const Json& j) {
  if (j.contains("torus_rank")) {
    return GradedBasis::torus(static_cast<int>(as_int(j.at("torus_rank"), "torus_rank")));
  }
  std::vector<BasisElement> elems;
  for (const auto& e : field(j, "elements")) {
    elems.push_back({as_string(field(e, "name"), "element name"),
                     static_cast<int>(as_int(field(e, "degree"), "element degree"))});
  }
  return GradedBasis::make(std::move(elems));
}

Json vector_to_json(const GradedVector& v) {
  Json coords = Json::object();
  for (const auto& [name, value] : v.coords()) coords[name] = novikov_to_json(value);
  return Json{{"coords", std::move(coords)}};
}

GradedVector vector_from_json(const Json& j, const BasisPtr& basis) {
  std::map<std::string, NovikovScalar> coords;
  for (const auto& [name, value] : field(j, "coords").items()) {
    coords.emplace(name, novikov_from_json(value));
  }
  return GradedVector(basis, std::move(coords));
}

Json table_to_json(const MultilinearTable& t) {
  Json entries = Json::array();
  for (const auto& [key, out] : t.entries()) {
    entries.push_back(Json{{"in", key}, {"out", vector_to_json(out)}});
  }
  return Json{{"arity", t.arity()}, {"entries", std::move(entries)}};
}

MultilinearTable table_from_json(const Json& j, const std::vector<BasisPtr>& input_bases,
                                 const BasisPtr& output_basis) {
  int arity = static_cast<int>(as_int(field(j, "arity"), "table arity"));
  std::map<std::vector<std::string>, GradedVector> entries;
  for (const auto& e : field(j, "entries")) {
    std::vector<std::string> key;
    for (const auto& name : field(e, "in")) key.push_back(as_string(name, "entry input"));
    entries.emplace(std::move(key), vector_from_json(field(e, "out"), output_basis));
  }
  return MultilinearTable(arity, input_bases, output_basis, std::move(entries));
}

Json disk_class_to_json(const DiskClass& c) {
  return Json{{"label", c.label},
              {"energy", rational_to_json(c.energy)},
              {"maslov", c.maslov},
              {"boundary", c.boundary}};
}

DiskClass disk_class_from_json(const Json& j) {
  return {as_string(field(j, "label"), "class label"), rational_from_json(field(j, "energy")),
          static_cast<int>(as_int(field(j, "maslov"), "maslov")),
          int_vector(field(j, "boundary"), "boundary")};
}

namespace {

std::vector<ClassTable> class_tables_from_json(const Json& j, int rank) {
  BasisPtr basis = GradedBasis::torus(rank);
  std::vector<ClassTable> entries;
  for (const auto& c : field(j, "classes")) {
    DiskClass cls = disk_class_from_json(c);
    const Json& tables = field(j, "tables");
    if (!tables.contains(cls.label)) {
      throw ParseError("no table for class '" + cls.label + "'");
    }
    const Json& tj = tables.at(cls.label);
    int arity = static_cast<int>(as_int(field(tj, "arity"), "table arity"));
    std::vector<BasisPtr> inputs(static_cast<std::size_t>(arity), basis);
    entries.emplace_back(std::move(cls), table_from_json(tj, inputs, basis));
  }
  return entries;
}

}  // namespace

Json fiber_to_json(const FiberAlgebra& alg) {
  Json classes = Json::array();
  Json tables = Json::object();
  for (const auto& [cls, table] : alg.entries()) {
    classes.push_back(disk_class_to_json(cls));
    tables[cls.label] = table_to_json(table);
  }
  return Json{{"rank", alg.rank()}, {"classes", std::move(classes)}, {"tables", std::move(tables)}};
}

FiberAlgebra fiber_from_json(const Json& j) {
  int rank = static_cast<int>(as_int(field(j, "rank"), "rank"));
  return FiberAlgebra(rank, class_tables_from_json(j, rank));
}

Json point_to_json(const MCPoint& pt) {
  Json y = Json::array();
  for (const auto& s : pt.y()) y.push_back(novikov_to_json(s));
  return Json{{"y", std::move(y)}, {"b_high", vector_to_json(pt.b_high())}};
}

MCPoint point_from_json(const Json& j, const BasisPtr& basis) {
  std::vector<NovikovScalar> y;
  for (const auto& s : field(j, "y")) y.push_back(novikov_from_json(s));
  GradedVector b(basis);
  if (j.contains("b_high")) b = vector_from_json(j.at("b_high"), basis);
  return MCPoint(std::move(y), std::move(b));
}

Json polytope_to_json(const Polytope& p) {
  Json facets = Json::array();
  for (const auto& f : p.facets) {
    facets.push_back(Json{{"normal", f.normal}, {"lambda", rational_to_json(f.lambda)}});
  }
  Json point = Json::array();
  for (const auto& u : p.point) point.push_back(rational_to_json(u));
  return Json{{"facets", std::move(facets)}, {"point", std::move(point)}};
}

Polytope polytope_from_json(const Json& j) {
  Polytope p;
  for (const auto& f : field(j, "facets")) {
    p.facets.push_back(
        {int_vector(field(f, "normal"), "facet normal"), rational_from_json(field(f, "lambda"))});
  }
  for (const auto& u : field(j, "point")) p.point.push_back(rational_from_json(u));
  return p;
}

Json isotopy_to_json(const IsotopyData& d) {
  Json classes = Json::array();
  Json tables = Json::object();
  for (const auto& [cls, table] : d.isotopy.entries()) {
    classes.push_back(disk_class_to_json(cls));
    tables[cls.label] = table_to_json(table);
  }
  Json v = Json::array();
  for (const auto& r : d.reparam.v) v.push_back(rational_to_json(r));
  Json out{{"rank", d.isotopy.rank()},
           {"classes", std::move(classes)},
           {"tables", std::move(tables)},
           {"reparam", Json{{"v", std::move(v)}, {"M", d.reparam.m}}}};
  if (!d.gamma_exponents.empty()) out["gamma"] = d.gamma_exponents;
  if (d.point) out["point"] = *d.point;
  return out;
}

IsotopyData isotopy_from_json(const Json& j) {
  int rank = static_cast<int>(as_int(field(j, "rank"), "rank"));
  PseudoIsotopy iso(rank, class_tables_from_json(j, rank));
  const Json& rj = field(j, "reparam");
  std::vector<Rational> v;
  for (const auto& r : field(rj, "v")) v.push_back(rational_from_json(r));
  IntMatrix m;
  for (const auto& row : field(rj, "M")) m.push_back(int_vector(row, "reparam matrix row"));
  IsotopyData out{std::move(iso), IsotopyReparam(std::move(v), std::move(m)), {}, {}};
  if (j.contains("gamma")) out.gamma_exponents = int_vector(j.at("gamma"), "gamma");
  if (j.contains("point")) out.point = j.at("point");
  return out;
}

Json category_to_json(const CategoryData& cat) {
  Json objects = Json::array();
  for (const auto& obj : cat.objects()) {
    Json character = Json::array();
    for (const auto& c : obj.character.values()) character.push_back(Json::array({c.real(), c.imag()}));
    Json o{{"name", obj.label.name},
           {"h1_rank", obj.label.h1_rank},
           {"oriented", obj.label.oriented},
           {"ambient_dim", obj.label.ambient_dim},
           {"character", std::move(character)}};
    objects.push_back(std::move(o));
  }
  Json el = Json::object();
  for (const auto& [name, character] : cat.el_systems()) {
    Json values = Json::array();
    for (const auto& c : character.values()) values.push_back(Json::array({c.real(), c.imag()}));
    el[name] = std::move(values);
  }
  Json components = Json::array();
  for (const auto& [id, comp] : cat.components()) {
    (void)id;
    components.push_back(Json{{"id", comp.id},
                              {"source", comp.source},
                              {"target", comp.target},
                              {"dim_c", comp.dim_c},
                              {"basis", basis_to_json(*comp.basis)}});
  }
  Json classes = Json::array();
  Json tables = Json::object();
  for (const auto& cls : cat.classes()) {
    Json c{{"id", cls.id},
           {"k", cls.arity},
           {"energy", rational_to_json(cls.energy)},
           {"maslov", cls.maslov},
           {"components", cls.component_ids},
           {"s", cls.s_exponents}};
    if (cls.s0_prime_exponent) c["s0_prime"] = *cls.s0_prime_exponent;
    classes.push_back(std::move(c));
    auto it = cat.tables().find(cls.id);
    if (it != cat.tables().end()) tables[cls.id] = table_to_json(it->second);
  }
  return Json{{"objects", std::move(objects)},
              {"el_systems", std::move(el)},
              {"components", std::move(components)},
              {"classes", std::move(classes)},
              {"tables", std::move(tables)}};
}

namespace {

HolonomyCharacter character_from_json(const Json& j, const RingConfig& cfg) {
  std::vector<Complex> values;
  for (const auto& v : j) {
    if (v.is_number_integer()) {
      values.push_back(cfg.zeta_pow(v.get<long long>()));
    } else if (v.is_array() && v.size() == 2) {
      values.emplace_back(as_double(v[0], "character value"), as_double(v[1], "character value"));
    } else {
      throw ParseError("character value must be a zeta exponent or [re, im]");
    }
  }
  return HolonomyCharacter(std::move(values));
}

}  // namespace

CategoryData category_from_json(const Json& j, const RingConfig& cfg) {
  std::vector<BraneObject> objects;
  for (const auto& o : field(j, "objects")) {
    LagrangianLabel label{as_string(field(o, "name"), "object name"),
                          static_cast<int>(as_int(field(o, "h1_rank"), "h1_rank")),
                          field(o, "oriented").get<bool>(),
                          static_cast<int>(as_int(field(o, "ambient_dim"), "ambient_dim"))};
    HolonomyCharacter character = o.contains("character")
                                      ? character_from_json(o.at("character"), cfg)
                                      : HolonomyCharacter::trivial(label.h1_rank);
    objects.push_back({std::move(label), std::move(character)});
  }
  std::map<std::string, HolonomyCharacter> el;
  if (j.contains("el_systems")) {
    for (const auto& [name, values] : j.at("el_systems").items()) {
      el.emplace(name, character_from_json(values, cfg));
    }
  }
  std::map<std::string, MorphismComponent> components;
  for (const auto& c : field(j, "components")) {
    MorphismComponent comp{as_string(field(c, "id"), "component id"),
                           as_string(field(c, "source"), "component source"),
                           as_string(field(c, "target"), "component target"),
                           static_cast<int>(as_int(field(c, "dim_c"), "dim_c")),
                           basis_from_json(field(c, "basis"))};
    components.emplace(comp.id, std::move(comp));
  }
  std::vector<PolygonClass> classes;
  std::map<std::string, MultilinearTable> tables;
  for (const auto& c : field(j, "classes")) {
    PolygonClass cls;
    cls.id = as_string(field(c, "id"), "class id");
    cls.arity = static_cast<int>(as_int(field(c, "k"), "class arity"));
    cls.energy = rational_from_json(field(c, "energy"));
    cls.maslov = static_cast<int>(as_int(field(c, "maslov"), "maslov"));
    for (const auto& id : field(c, "components")) {
      cls.component_ids.push_back(as_string(id, "class component id"));
    }
    cls.s_exponents = int_vector(field(c, "s"), "s exponents");
    if (c.contains("s0_prime")) cls.s0_prime_exponent = as_int(c.at("s0_prime"), "s0_prime");

    const Json& tj = field(j, "tables");
    if (tj.contains(cls.id)) {
      std::vector<BasisPtr> inputs;
      for (int i = 0; i < cls.arity; ++i) {
        auto it = components.find(cls.component_ids.at(i));
        if (it == components.end()) throw ParseError("class references unknown component");
        inputs.push_back(it->second.basis);
      }
      auto out_it = components.find(cls.component_ids.back());
      if (out_it == components.end()) throw ParseError("class references unknown component");
      tables.emplace(cls.id, table_from_json(tj.at(cls.id), inputs, out_it->second.basis));
    }
    classes.push_back(std::move(cls));
  }
  return CategoryData(std::move(objects), std::move(el), std::move(components), std::move(classes),
                      std::move(tables), cfg);
}

Json report_to_json(const Report& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    Json entry{{"id", c.id},
               {"status", status_name(c.status)},
               {"lhs", c.lhs},
               {"rhs", c.rhs},
               {"max_deviation", c.max_dev}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    cases.push_back(std::move(entry));
  }
  return Json{{"suite", r.suite},
              {"config", r.config},
              {"cases", std::move(cases)},
              {"all_passed", r.all_passed()},
              {"max_deviation", r.max_dev()}};
}

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_json_text(text);
}

}  // namespace fukaya
