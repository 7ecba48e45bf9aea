#include "tb/json_io.hpp"

#include <map>

namespace tb {

namespace {

Error bad(const std::string& msg) { return Error(ErrorCode::InvalidInput, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Int v = int_from_json(field(j, key));
  if (!v.fits_sint_p()) throw bad(std::string("field '") + key + "' out of range");
  return static_cast<int>(v.get_si());
}

}  // namespace

Int int_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw bad("malformed integer string '" + j.get<std::string>() + "'");
    return v;
  }
  throw bad("expected an integer, got " + j.dump());
}

Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

IntVec vec_from_json(const Json& j) {
  if (!j.is_array()) throw bad("expected an integer array");
  IntVec v;
  for (const Json& x : j) v.push_back(int_from_json(x));
  return v;
}

Json vec_to_json(const IntVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

IntMat mat_from_json(const Json& j) {
  if (!j.is_array()) throw bad("expected an array of integer arrays");
  std::vector<IntVec> rows;
  for (const Json& r : j) rows.push_back(vec_from_json(r));
  return IntMat::from_rows(rows);
}

Json mat_to_json(const IntMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_to_json(m.row(i)));
  return a;
}

bool is_profile_json(const Json& j) { return j.is_object() && j.contains("betti"); }

Summand summand_from_json(const Json& j, int dim) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "sphere_product") return Summand::sphere_product(int_field(j, "k"), int_field(j, "l"));
  if (type == "twisted_s2") return Summand::twisted_s2(j.contains("n") ? int_field(j, "n") : dim);
  if (type == "cp") return Summand::complex_projective(int_field(j, "m"));
  if (type == "cp_sphere_bundle")
    return Summand::cp_sphere_bundle(int_field(j, "m"), int_field(j, "r"), j.value("twisted", false));
  if (type == "proj_bundle_s2") return Summand::proj_bundle_s2(int_field(j, "r"));
  if (type == "sphere") return Summand::sphere(j.contains("n") ? int_field(j, "n") : dim);
  throw bad("unknown summand type '" + type + "'");
}

Json summand_to_json(const Summand& s) {
  switch (s.kind) {
    case SummandKind::SphereProduct: return Json{{"type", "sphere_product"}, {"k", s.k}, {"l", s.l}};
    case SummandKind::TwistedS2: return Json{{"type", "twisted_s2"}};
    case SummandKind::ComplexProjective: return Json{{"type", "cp"}, {"m", s.m}};
    case SummandKind::CPSphereBundle:
      return Json{{"type", "cp_sphere_bundle"}, {"m", s.m}, {"r", s.r}, {"twisted", s.twisted}};
    case SummandKind::ProjBundleS2: return Json{{"type", "proj_bundle_s2"}, {"r", s.r}};
    case SummandKind::Sphere: return Json{{"type", "sphere"}};
  }
  return Json();
}

ConnectedSumExpr expr_from_json(const Json& j) {
  ConnectedSumExpr e;
  e.dim = int_field(j, "dim");
  const Json& list = field(j, "summands");
  if (!list.is_array()) throw bad("'summands' must be an array");
  for (const Json& s : list) {
    const int count = s.contains("count") ? int_field(s, "count") : 1;
    if (count < 0 || count > 100000) throw bad("summand count out of range");
    const Summand x = summand_from_json(s, e.dim);
    for (int c = 0; c < count; ++c) e.summands.push_back(x);
  }
  validate(e);
  return e;
}

Json expr_to_json(const ConnectedSumExpr& e) {
  Json list = Json::array();
  for (const Summand& s : e.summands) list.push_back(summand_to_json(s));
  return Json{{"dim", e.dim}, {"summands", list}, {"name", e.name()}};
}

BettiProfile profile_from_json(const Json& j) {
  BettiProfile p;
  p.dim = int_field(j, "dim");
  if (p.dim < 4 || p.dim > 100000) throw bad("profile dimension out of range");
  p.spin = j.value("spin", true);
  p.betti.assign(static_cast<std::size_t>(p.dim + 1), 0);
  p.betti[0] = p.betti[static_cast<std::size_t>(p.dim)] = 1;
  std::map<int, Int> given;
  const Json& b = field(j, "betti");
  if (!b.is_object()) throw bad("'betti' must be an object keyed by degree");
  for (auto it = b.begin(); it != b.end(); ++it) {
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw bad("");
    } catch (...) {
      throw bad("Betti key '" + it.key() + "' is not a degree");
    }
    if (i < 2 || i > p.dim - 2) throw bad("Betti degree " + it.key() + " outside 2..n-2");
    given[i] = int_from_json(it.value());
  }
  for (const auto& [i, v] : given) {
    auto other = given.find(p.dim - i);
    if (other != given.end() && other->second != v)
      throw Error(ErrorCode::InvariantViolation, "Betti numbers violate Poincare duality",
                  {{"degree", std::to_string(i)}, {"value", v.get_str()}, {"dual", other->second.get_str()}});
    p.betti[static_cast<std::size_t>(i)] = v;
    p.betti[static_cast<std::size_t>(p.dim - i)] = v;
  }
  validate_profile(p);
  return p;
}

Json profile_to_json(const BettiProfile& p) {
  Json betti = Json::object();
  for (int i = 2; i <= p.dim - 2; ++i) betti[std::to_string(i)] = int_to_json(p.b(i));
  Json out{{"dim", p.dim}, {"betti", betti}, {"spin", p.spin}, {"euler_characteristic", int_to_json(p.euler_characteristic())}};
  try {
    out["name"] = from_betti(p).name();
  } catch (const Error&) {
    out["name"] = p.name();
  }
  return out;
}

BettiProfile any_profile_from_json(const Json& j) {
  if (is_profile_json(j)) return profile_from_json(j);
  return betti_profile(expr_from_json(j));
}

FourManifoldSpec four_from_json(const Json& j) {
  FourManifoldSpec f;
  const Int b2 = int_from_json(field(j, "b2"));
  if (b2 < 0 || b2 > 100000) throw bad("b2 out of range");
  f.b2 = b2.get_ui();
  f.w2 = vec_from_json(field(j, "w2"));
  for (const Int& x : f.w2)
    if (x != 0 && x != 1) throw bad("w2 entries must be 0 or 1");
  return f;
}

Json four_to_json(const FourManifoldSpec& f) { return Json{{"b2", f.b2}, {"w2", vec_to_json(f.w2)}}; }

Json error_to_json(const Error& e) {
  Json diag = Json::object();
  for (const auto& [k, v] : e.diagnostics()) {
    if (!diag.contains(k)) diag[k] = v;
    else if (diag[k].is_array()) diag[k].push_back(v);
    else diag[k] = Json::array({diag[k], v});
  }
  return Json{{"error", {{"code", error_code_name(e.code())}, {"message", e.what()}, {"diagnostics", diag}}}};
}

Json report_to_json(const FeasibilityReport& r) {
  Json per = Json::array();
  for (const ConditionAudit& a : r.per_m) {
    Json c1 = Json::object();
    for (const auto& [i, v] : a.sign_values) c1[std::to_string(i)] = int_to_json(v);
    Json mid = nullptr;
    if (a.middle)
      mid = Json{{"degree", a.middle->first},
                 {"value", int_to_json(a.middle->second)},
                 {"even", mpz_even_p(a.middle->second.get_mpz_t()) != 0}};
    per.push_back(Json{{"m", a.m}, {"condition1", c1}, {"middle", mid}, {"chi_n", int_to_json(a.chi_n)}, {"ok", a.ok}});
  }
  return Json{{"kind", "(*)-quotient feasibility"}, {"k", r.k}, {"verdict", r.verdict}, {"stagewise", r.stagewise}, {"per_m", per}};
}

Json tower_to_json(const Tower& t) {
  Json stages = Json::array();
  for (const TowerStage& s : t.stages)
    stages.push_back(Json{{"base", profile_to_json(s.base)},
                          {"base_expr", expr_to_json(s.base_expr)},
                          {"euler", vec_to_json(s.euler)},
                          {"total", profile_to_json(s.total)},
                          {"verified", s.verified}});
  return Json{{"stages", stages}};
}

Json cohom4_to_json(const Cohom4Witness& w) { return Json{{"base", four_to_json(w.base)}, {"E", mat_to_json(w.E)}}; }

Json witness_to_json(const CircleWitness& w) {
  Json notes = Json::array();
  for (const std::string& s : w.notes) notes.push_back(s);
  return Json{{"source", w.source},
              {"row", w.row_id.empty() ? Json(nullptr) : Json(w.row_id)},
              {"base", w.base ? expr_to_json(*w.base) : Json(nullptr)},
              {"base4", w.base4 ? four_to_json(*w.base4) : Json(nullptr)},
              {"euler", vec_to_json(w.euler)},
              {"total", profile_to_json(w.total)},
              {"notes", notes}};
}

Json stabilization_to_json(const StabilizationResult& s) {
  Json checked = Json::array();
  for (const StabilizationInstance& i : s.checked)
    checked.push_back(Json{{"m", i.m}, {"l", i.l}, {"base", expr_to_json(i.base)}, {"euler", vec_to_json(i.euler)},
                           {"total", profile_to_json(i.total)}});
  return Json{{"m0", s.m0}, {"twisted", s.twisted}, {"family", s.family}, {"checked", checked}};
}

Json rows_to_json(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const TableRow& r : rows)
    out.push_back(Json{{"id", r.id}, {"n", r.n}, {"w2", r.spin ? 0 : 1}, {"betti", r.betti}, {"condition", r.condition},
                       {"base", r.base}, {"choice", r.has_choice}});
  return out;
}

Json sweep_to_json(const SweepReport& s) {
  Json list = Json::array();
  for (const std::string& c : s.counterexamples) list.push_back(c);
  return Json{{"cases", s.cases}, {"counterexamples", list}};
}

Json acceptance_to_json(const std::vector<CriterionResult>& results) {
  Json out = Json::array();
  for (const CriterionResult& r : results)
    out.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  return out;
}

}  // namespace tb
