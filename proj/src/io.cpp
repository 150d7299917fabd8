#include "hopfolog/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hopfolog {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

long need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

std::string need_str(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Scalar parse_entry_scalar(const FieldPtr& f, const json& v) {
  if (v.is_number_integer()) return Scalar::from_int(f, v.get<long>());
  if (v.is_string()) {
    try {
      return parse_scalar(f, v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad scalar literal '") + v.get<std::string>() + "': " + e.what());
    }
  }
  throw ParseError("matrix entry must be an integer or a scalar literal string");
}

Matrix parse_triples(const FieldPtr& f, const json& j, long rows, long cols, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of [row, col, value]");
  Matrix out(f, rows, cols);
  for (const json& t : j) {
    if (!t.is_array() || t.size() != 3) throw ParseError(std::string(what) + ": each entry must be [row, col, value]");
    long r = t[0].get<long>(), c = t[1].get<long>();
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw ParseError(std::string(what) + ": index (" + std::to_string(r) + ", " + std::to_string(c) + ") out of range");
    out.set(r, c, out.at(r, c) + parse_entry_scalar(f, t[2]));
  }
  return out;
}

json triples_json(const Matrix& m) {
  json out = json::array();
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) out.push_back({r, c, m.at(r, c).to_string()});
  return out;
}

DerivationAlgebra parse_algebra(const FieldPtr& f, const json& j) {
  long d = need_int(j, "dim");
  if (d < 1) throw ParseError("algebra dim must be positive");
  long mod2 = need_int(j, "grading_modulus2");
  const json& degs = need(j, "degrees");
  if (!degs.is_array() || long(degs.size()) != d) throw ParseError("algebra degrees must list one entry per basis element");
  std::vector<long> deg2;
  for (const json& v : degs) deg2.push_back(parse_deg2(v));
  long unit = need_int(j, "unit");
  const json& sc = need(j, "structure_constants");
  if (!sc.is_array() || long(sc.size()) != d)
    throw ParseError("structure_constants must list one matrix per basis element");
  std::vector<Matrix> lmul;
  for (const json& m : sc) lmul.push_back(parse_triples(f, m, d, d, "structure_constants"));
  Matrix partial = parse_triples(f, need(j, "derivation"), d, d, "derivation");
  return make_derivation_algebra(f, mod2, std::move(deg2), unit, std::move(lmul),
                                 std::move(partial));
}

json algebra_json(const DerivationAlgebra& b) {
  json degs = json::array();
  for (long d : b.deg2) degs.push_back(deg2_json(d));
  json sc = json::array();
  for (const Matrix& m : b.lmul) sc.push_back(triples_json(m));
  return json{{"degrees", std::move(degs)},
              {"derivation", triples_json(b.partial)},
              {"dim", b.dim()},
              {"grading_modulus2", b.grading_modulus2},
              {"structure_constants", std::move(sc)},
              {"unit", b.unit}};
}

std::pair<long, long> line_col(const std::string& text, size_t byte) {
  long line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    std::ostringstream os;
    os << where << ": json syntax error at line " << line << ", column " << col;
    throw ParseError(os.str());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

FamilyPtr parse_family(const json& j) {
  std::string kind = need_str(j, "kind");
  if (kind == "truncated") {
    long p = need_int(j, "p");
    long m = j.contains("m") ? need_int(j, "m") : 1;
    std::string grading = j.contains("grading") ? need_str(j, "grading") : "Z";
    if (grading != "Z" && grading != "Zn") throw ParseError("grading must be \"Z\" or \"Zn\"");
    return HopfFamily::truncated(p, m, grading == "Zn");
  }
  if (kind == "taft") return HopfFamily::taft(need_int(j, "n"));
  if (kind == "group_ring_z2") return HopfFamily::group_ring_z2();
  throw ParseError("unknown family kind '" + kind + "'");
}

json family_json(const FamilyPtr& fam) {
  switch (fam->kind()) {
    case HopfFamily::Kind::Truncated:
      return json{{"grading", fam->cyclic() ? "Zn" : "Z"},
                  {"kind", "truncated"},
                  {"m", fam->exponent_m()},
                  {"p", fam->characteristic_p()}};
    case HopfFamily::Kind::Taft:
      return json{{"kind", "taft"}, {"n", fam->nilpotency()}};
    case HopfFamily::Kind::GroupRingZ2:
      return json{{"kind", "group_ring_z2"}};
  }
  throw std::logic_error("unreachable family kind");
}

long parse_deg2(const json& j) {
  if (j.is_number_integer()) return 2 * j.get<long>();
  if (j.is_string()) {
    const std::string& s = j.get<std::string>();
    size_t slash = s.find('/');
    if (slash == std::string::npos || s.substr(slash + 1) != "2")
      throw ParseError("degree string must look like \"k/2\", got '" + s + "'");
    try {
      return std::stol(s.substr(0, slash));
    } catch (const std::exception&) {
      throw ParseError("bad degree numerator in '" + s + "'");
    }
  }
  throw ParseError("degree must be an integer or a \"k/2\" string");
}

json deg2_json(long deg2) {
  if (deg2 % 2 == 0) return json(deg2 / 2);
  return json(std::to_string(deg2) + "/2");
}

LoadedModule parse_module(const json& j) {
  if (!j.is_object()) throw ParseError("module file must be a json object");
  FamilyPtr fam = parse_family(need(j, "family"));
  const json& basis = need(j, "basis");
  if (!basis.is_array()) throw ParseError("basis must be an array");
  std::vector<long> deg2;
  for (const json& b : basis) {
    if (!b.is_object()) throw ParseError("each basis entry must be an object");
    deg2.push_back(parse_deg2(need(b, "degree")));
  }
  long d = long(deg2.size());
  Matrix X = parse_triples(fam->field(), need(j, "X"), d, d, "X");
  LoadedModule out{make_module(fam, std::move(deg2), std::move(X)), std::nullopt};

  bool has_algebra = j.contains("algebra"), has_action = j.contains("action");
  if (has_algebra != has_action)
    throw ParseError("smash modules need both 'algebra' and 'action'");
  if (has_algebra) {
    DerivationAlgebra b = parse_algebra(fam->field(), j.at("algebra"));
    const json& act = j.at("action");
    if (!act.is_array() || long(act.size()) != b.dim())
      throw ParseError("action must list one matrix per algebra basis element");
    std::vector<Matrix> action;
    for (const json& m : act) action.push_back(parse_triples(fam->field(), m, d, d, "action"));
    out.smash = make_smash_module(std::move(b), out.module, std::move(action));
  }
  return out;
}

LoadedModule load_module_file(const std::string& path) {
  return parse_module(parse_text(read_file(path), path));
}

json module_json(const GradedModule& m) {
  json basis = json::array();
  for (long i = 0; i < m.dim(); ++i)
    basis.push_back(json{{"degree", deg2_json(m.deg2[i])}, {"name", "e" + std::to_string(i)}});
  return json{{"X", triples_json(m.X)},
              {"basis", std::move(basis)},
              {"family", family_json(m.family)}};
}

json module_json(const SmashModule& m) {
  json out = module_json(m.module);
  out["algebra"] = algebra_json(m.algebra);
  json act = json::array();
  for (const Matrix& a : m.action) act.push_back(triples_json(a));
  out["action"] = std::move(act);
  return out;
}

json module_json(const LoadedModule& m) {
  return m.smash ? module_json(*m.smash) : module_json(m.module);
}

LoadedHom parse_hom(const json& j) {
  if (!j.is_object()) throw ParseError("morphism file must be a json object");
  LoadedModule src = parse_module(need(j, "source"));
  LoadedModule tgt = parse_module(need(j, "target"));
  Matrix mat = parse_triples(src.h_module().family->field(), need(j, "mat"),
                             tgt.h_module().dim(), src.h_module().dim(), "mat");
  LoadedHom out{make_hom(src.h_module(), tgt.h_module(), mat), std::nullopt};
  if (src.smash && tgt.smash)
    out.smash = make_smash_hom(*src.smash, *tgt.smash, std::move(mat));
  return out;
}

LoadedHom load_hom_file(const std::string& path) {
  return parse_hom(parse_text(read_file(path), path));
}

json hom_json(const ModuleHom& f) {
  return json{{"mat", triples_json(f.mat)},
              {"source", module_json(f.source)},
              {"target", module_json(f.target)}};
}

json hom_json(const SmashHom& f) {
  return json{{"mat", triples_json(f.mat)},
              {"source", module_json(f.source)},
              {"target", module_json(f.target)}};
}

std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hopfolog
