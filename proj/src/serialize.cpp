#include "salem/serialize.hpp"

#include "salem/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace salem {

double rounded(double x, int digits) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return buf;
}

namespace {

void expect_schema(const Json& j, const char* what) {
  if (!j.is_object()) fail(ErrorCode::ParseError, std::string(what) + ": expected a JSON object");
  if (j.contains("schema") && j.at("schema").get<int>() != kSchemaVersion)
    fail(ErrorCode::ParseError, std::string(what) + ": unsupported schema " + j.at("schema").dump());
}

template <class T>
T field(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) fail(ErrorCode::ParseError, std::string(what) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string(what) + ": bad \"" + key + "\": " + e.what());
  }
}

Json rational_json(const Rational& r) { return salem::to_string(r); }

std::int64_t to_i64(const BigInt& b) {
  if (b > std::numeric_limits<std::int64_t>::max() || b < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::InvalidArgument, "integer does not fit in 64 bits");
  return b.convert_to<std::int64_t>();
}

}  // namespace

Json to_json(const LinearForm& f) { return Json{{"m0", f.m0()}, {"m", f.m()}}; }

LinearForm form_from_json(const Json& j) {
  return LinearForm::make(field<std::int64_t>(j, "m0", "form"), field<std::vector<std::int64_t>>(j, "m", "form"));
}

Json forms_to_json(const std::vector<LinearForm>& forms) {
  Json arr = Json::array();
  for (const auto& f : forms) arr.push_back(to_json(f));
  return Json{{"schema", kSchemaVersion}, {"forms", arr}};
}

std::vector<LinearForm> forms_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    expect_schema(j, "forms");
    if (!j.contains("forms")) fail(ErrorCode::ParseError, "forms: missing \"forms\"");
    arr = &j.at("forms");
  }
  if (!arr->is_array()) fail(ErrorCode::ParseError, "forms: expected an array");
  std::vector<LinearForm> out;
  for (const auto& f : *arr) out.push_back(form_from_json(f));
  return out;
}

Json to_json(const IntervalFamily& F) { return Json{{"M", F.M}, {"residues", F.residues}}; }

IntervalFamily family_from_json(const Json& j) {
  IntervalFamily F{field<std::int64_t>(j, "M", "family"), field<std::vector<std::int64_t>>(j, "residues", "family")};
  for (auto r : F.residues)
    if (r < 0 || r >= F.M) fail(ErrorCode::ResidueOutOfRange, "family residue " + std::to_string(r));
  return F;
}

Json to_json(const BehrendProvenance& p) {
  return Json{{"N", p.N},
              {"A", p.A},
              {"mode", p.mode == BehrendMode::FixedParams ? "fixed" : "search"},
              {"d", p.d},
              {"n", p.n},
              {"k0", p.k0},
              {"base", p.base},
              {"cardinality_bound", rounded(p.cardinality_bound)},
              {"bound_holds", p.bound_holds},
              {"bound_applicable", p.bound_applicable}};
}

Json to_json(const AvoidingSet& s) {
  return Json{{"schema", kSchemaVersion},
              {"size", s.elements.size()},
              {"elements", s.elements},
              {"provenance", to_json(s.provenance)}};
}

Json to_json(const AvoidanceWitness& w) { return Json{{"form", to_json(w.form)}, {"tuple", w.tuple}}; }

Json to_json(const BlockRecord& r) {
  Json forms = Json::array();
  for (const auto& f : r.forms) forms.push_back(to_json(f));
  Json j{{"kind", r.kind},
         {"M", r.M},
         {"inner_size", r.inner_size},
         {"multiplier", r.multiplier},
         {"coefficient_bound", r.coefficient_bound},
         {"inner_set", r.inner_set},
         {"forms", forms},
         {"kappa_valid", r.kappa_valid},
         {"size_lower_bound", rounded(r.size_lower_bound)},
         {"size_bound_holds", r.size_bound_holds},
         {"size_bound_applicable", r.size_bound_applicable}};
  if (r.behrend) j["behrend"] = to_json(*r.behrend);
  if (r.kappa) j["kappa"] = rational_json(*r.kappa);
  return j;
}

Json to_json(const Schedule& s) {
  Json levels = Json::array();
  for (const auto& l : s.levels) {
    Json forms = Json::array();
    for (const auto& f : l.forms) forms.push_back(to_json(f));
    levels.push_back(Json{{"M", l.M}, {"block", l.block}, {"forms", forms}});
  }
  Json params = Json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  return Json{{"kind", std::string(to_string(s.kind))},
              {"params", params},
              {"depth", s.depth()},
              {"sigma_report", rounded(s.sigma_report)},
              {"levels", levels}};
}

Schedule schedule_from_json(const Json& j) {
  Schedule s;
  std::string kind = field<std::string>(j, "kind", "schedule");
  bool known = false;
  for (auto k : {ScheduleKind::Uniform, ScheduleKind::Growing, ScheduleKind::ScaleAdapted, ScheduleKind::Stuttered})
    if (to_string(k) == kind) {
      s.kind = k;
      known = true;
    }
  if (!known) fail(ErrorCode::ParseError, "schedule: unknown kind " + kind);
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) s.params[k] = v.get<std::string>();
  if (!j.contains("levels") || !j.at("levels").is_array()) fail(ErrorCode::ParseError, "schedule: missing levels");
  for (const auto& l : j.at("levels")) {
    ScheduleLevel lvl{field<std::int64_t>(l, "M", "schedule level"),
                      field<std::vector<std::int64_t>>(l, "block", "schedule level"),
                      {}};
    if (l.contains("forms")) lvl.forms = forms_from_json(l.at("forms"));
    s.levels.push_back(std::move(lvl));
  }
  return finalize_schedule(std::move(s), std::numeric_limits<double>::infinity());
}

Json to_json(const CantorTree& t) {
  Json nodes = Json::array();
  for (std::size_t n = 0; n + 1 < t.levels.size(); ++n)
    for (const auto& node : t.levels[n]) nodes.push_back(Json{{"index", node.index}, {"ell", node.ell}});
  return Json{{"schema", kSchemaVersion}, {"schedule", to_json(t.schedule)}, {"seed", t.seed}, {"nodes", nodes}};
}

CantorTree tree_from_json(const Json& j) {
  expect_schema(j, "tree");
  if (!j.contains("schedule")) fail(ErrorCode::ParseError, "tree: missing \"schedule\"");
  Schedule s = schedule_from_json(j.at("schedule"));
  auto seed = field<std::uint64_t>(j, "seed", "tree");
  if (!j.contains("nodes") || !j.at("nodes").is_array()) fail(ErrorCode::ParseError, "tree: missing \"nodes\"");
  // Nodes are stored in level order; the index length gives the level.
  std::vector<std::vector<std::int64_t>> translates(s.depth());
  for (const auto& node : j.at("nodes")) {
    auto index = field<std::vector<std::int64_t>>(node, "index", "tree node");
    if (index.size() >= translates.size()) fail(ErrorCode::ParseError, "tree: node deeper than the schedule");
    translates[index.size()].push_back(field<std::int64_t>(node, "ell", "tree node"));
  }
  return tree_from_translates(s, seed, translates);
}

Json to_json(const TreeWitness& w) {
  return Json{{"level", w.level}, {"node", w.node}, {"target", w.target}, {"residues", w.residues}};
}

Json to_json(const CantorMeasure& mu) {
  return Json{{"schema", kSchemaVersion}, {"level", mu.level}, {"denominator", mu.denominator}, {"left", mu.left}};
}

CantorMeasure measure_from_json(const Json& j) {
  expect_schema(j, "measure");
  CantorMeasure mu;
  mu.level = j.contains("level") ? j.at("level").get<int>() : 0;
  mu.denominator = field<std::int64_t>(j, "denominator", "measure");
  mu.left = field<std::vector<std::int64_t>>(j, "left", "measure");
  if (mu.denominator < 1) fail(ErrorCode::ParseError, "measure: denominator must be positive");
  if (mu.left.empty()) fail(ErrorCode::ParseError, "measure: no intervals");
  std::sort(mu.left.begin(), mu.left.end());
  for (std::size_t i = 0; i < mu.left.size(); ++i)
    if (mu.left[i] < 0 || mu.left[i] >= mu.denominator || (i && mu.left[i] == mu.left[i - 1]))
      fail(ErrorCode::ParseError, "measure: left endpoints must be distinct and in [0, D)");
  return mu;
}

Json to_json(const MassReport& r) {
  Json j{{"schema", kSchemaVersion},
         {"value", rounded(r.value)},
         {"method", std::string(to_string(r.method))},
         {"error_estimate", rounded(r.error_estimate)},
         {"diagonal", rounded(r.diagonal)},
         {"cross", rounded(r.cross)}};
  if (r.exact) j["exact"] = rational_json(*r.exact);
  if (r.exact_diagonal) j["exact_diagonal"] = rational_json(*r.exact_diagonal);
  if (r.exact_cross) j["exact_cross"] = rational_json(*r.exact_cross);
  if (r.K) j["K"] = *r.K;
  return j;
}

Json to_json(const ExponentFit& fit) {
  return Json{{"schema", kSchemaVersion}, {"beta", rounded(fit.beta)}, {"c", rounded(fit.c)}, {"bands_used", fit.bands_used}};
}

std::string profile_csv(const FourierProfile& p) {
  std::ostringstream os;
  os << "k_band_lo,k_band_hi,band_max\n";
  for (const auto& b : p.bands) os << b.lo << ',' << b.hi << ',' << fixed(b.max) << '\n';
  return os.str();
}

std::string F_profile_csv(const std::vector<ProfileRow>& rows) {
  std::ostringstream os;
  std::size_t v = rows.empty() ? 0 : rows.front().t.size();
  for (std::size_t i = 0; i < v; ++i) os << 't' << i + 1 << ',';
  os << "value\n";
  for (const auto& r : rows) {
    for (double t : r.t) os << fixed(t) << ',';
    os << fixed(r.mass.value) << '\n';
  }
  return os.str();
}

Json to_json(const IntervalUnion& u) {
  Json arr = Json::array();
  for (const auto& part : u.parts()) {
    auto [ln, le] = dyadic_pair(part.lo);
    auto [hn, he] = dyadic_pair(part.hi);
    arr.push_back(Json::array({Json::array({to_i64(ln), le}), Json::array({to_i64(hn), he})}));
  }
  return arr;
}

IntervalUnion interval_union_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "interval union: expected an array");
  std::vector<RationalInterval> parts;
  auto endpoint = [](const Json& e) {
    if (!e.is_array() || e.size() != 2) fail(ErrorCode::ParseError, "interval union: endpoint must be [num, exp]");
    return Rational(e[0].get<std::int64_t>()) * pow2(-e[1].get<long>());
  };
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) fail(ErrorCode::ParseError, "interval union: part must be [lo, hi]");
    parts.push_back({endpoint(p[0]), endpoint(p[1])});
  }
  return IntervalUnion(std::move(parts));
}

Json to_json(const BadApproxResult& r) {
  Json j{{"schema", kSchemaVersion},
         {"status", std::string(to_string(r.status))},
         {"checked_up_to", r.checked_up_to},
         {"candidates_checked", r.candidates_checked}};
  if (r.witness) j["witness"] = rational_json(*r.witness);
  return j;
}

Json to_json(const FrakC& c) {
  Json levels = Json::array();
  for (const auto& l : c.levels)
    levels.push_back(Json{{"n", l.n},
                          {"p", l.p},
                          {"N", l.N},
                          {"kappa", rational_json(l.kappa)},
                          {"kappa_valid", l.kappa_valid},
                          {"R", l.R},
                          {"block", l.block},
                          {"inner_modulus_nontrivial", l.inner_modulus_nontrivial},
                          {"alpha", rounded(l.alpha)},
                          {"size_target_holds", l.size_target_holds},
                          {"parametric_ok", l.parametric_ok},
                          {"spot_ok", l.spot_ok}});
  Json schedule = Json::array();
  for (const auto& nb : c.set.schedule) schedule.push_back(Json{{"P", nb.P}, {"R", nb.R}});
  return Json{{"schema", kSchemaVersion},
              {"depth", c.set.depth},
              {"schedule", schedule},
              {"components", c.set.set.parts().size()},
              {"set", to_json(c.set.set)},
              {"levels", levels}};
}

Json to_json(const RunManifest& m) {
  return Json{{"schema", kSchemaVersion},
              {"subcommand", m.subcommand},
              {"argv", m.argv},
              {"params", m.params},
              {"seed", m.seed},
              {"tool_version", m.tool_version},
              {"outputs", m.outputs},
              {"wall_clock_seconds", m.wall_clock_seconds}};
}

RunManifest manifest_from_json(const Json& j) {
  expect_schema(j, "manifest");
  RunManifest m;
  m.subcommand = field<std::string>(j, "subcommand", "manifest");
  m.argv = field<std::vector<std::string>>(j, "argv", "manifest");
  if (j.contains("params")) m.params = j.at("params");
  if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tool_version")) m.tool_version = j.at("tool_version").get<std::string>();
  if (j.contains("outputs")) m.outputs = j.at("outputs").get<std::vector<std::string>>();
  if (j.contains("wall_clock_seconds")) m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace salem
