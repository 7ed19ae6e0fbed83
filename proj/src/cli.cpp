#include "salem/cli.hpp"

#include "salem/error.hpp"
#include "salem/parallel.hpp"
#include "salem/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>

namespace salem {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitWitness = 1;
constexpr int kExitUsage = 2;

struct Context {
  std::string out_dir = ".";
  std::vector<std::string> outputs;
  std::ostream* out = nullptr;

  std::string path(const std::string& name) const { return (fs::path(out_dir) / name).string(); }

  void write(const std::string& name, const std::string& text) {
    write_text_file(path(name), text);
    outputs.push_back(name);
  }
  void write(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }
};

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& r : parse_rational_list(text)) {
    if (denominator(r) != 1) fail(ErrorCode::ParseError, "expected integers in \"" + text + "\"");
    out.push_back(floor_to_int64(r));
  }
  return out;
}

CantorMeasure load_measure(const std::string& measure_file, const std::string& tree_file, int level) {
  if (!measure_file.empty() && !tree_file.empty())
    fail(ErrorCode::InvalidArgument, "give either --measure or --tree, not both");
  if (!measure_file.empty()) return measure_from_json(read_json_file(measure_file));
  if (!tree_file.empty()) {
    CantorTree tree = tree_from_json(read_json_file(tree_file));
    return level_measure(tree, level < 0 ? tree.depth() : level);
  }
  return lebesgue_measure();
}

// --- behrend -------------------------------------------------------------

struct BehrendArgs {
  std::int64_t N = 0;
  int A = 0;
  std::string mode = "search";
  std::string forms;
  std::string out = "behrend.json";
};

int run_behrend(const BehrendArgs& a, Context& ctx) {
  AvoidingSet s = behrend_set(a.N, a.A, a.mode == "fixed" ? BehrendMode::FixedParams : BehrendMode::SearchBest);
  Json j = to_json(s);
  int code = kExitOk;
  if (!a.forms.empty()) {
    auto w = verify_avoidance(s.elements, forms_from_json(read_json_file(a.forms)));
    j["verification"] = w ? Json{{"pass", false}, {"witness", to_json(*w)}} : Json{{"pass", true}};
    if (w) code = kExitWitness;
  }
  ctx.write(a.out, j);
  *ctx.out << "behrend: " << s.elements.size() << " elements (d=" << s.provenance.d << ", n=" << s.provenance.n
           << ")" << (code ? ", witness found" : "") << "\n";
  return code;
}

// --- block ---------------------------------------------------------------

struct BlockArgs {
  std::string kind;
  std::int64_t M = 0;
  std::string forms;
  std::int64_t p = 0;
  std::string c = "2/5", tau = "1", eps0 = "1/4";
  std::int64_t ell = 0;
  bool verify = false;
  std::string out = "block.json";
};

int run_block(const BlockArgs& a, Context& ctx) {
  BlockKind kind;
  if (a.kind == "avoid-forms") {
    if (a.forms.empty()) fail(ErrorCode::InvalidArgument, "--kind avoid-forms needs --forms");
    kind = AvoidFormsBlock{forms_from_json(read_json_file(a.forms))};
  } else if (a.kind == "near-rational") {
    kind = NearRationalBlock{a.p};
  } else if (a.kind == "progression") {
    kind = ProgressionBlock{parse_rational(a.c), parse_rational(a.tau), parse_rational(a.eps0)};
  } else if (a.kind == "combined") {
    kind = CombinedBlock{parse_rational(a.c), parse_rational(a.tau), parse_rational(a.eps0), a.p};
  } else {
    fail(ErrorCode::InvalidArgument, "unknown block kind " + a.kind);
  }
  Block b = build_block({kind, a.M});
  if (a.ell < 0 || a.ell >= a.M) fail(ErrorCode::ResidueOutOfRange, "--ell must lie in [0, M)");
  IntervalFamily F = lift_translate(b.family.residues, a.M, a.ell);
  Json j{{"schema", kSchemaVersion}, {"ell", a.ell}, {"family", to_json(F)}, {"record", to_json(b.record)}};
  int code = kExitOk;
  if (a.verify) {
    Json v{{"pass", true}};
    if (!b.record.forms.empty() && a.kind == "avoid-forms") {
      auto targets = targets_from_forms(b.record.forms);
      for (std::size_t i = 0; i < targets.size(); ++i)
        if (auto w = cross_interval_witness(F, targets[i])) {
          v = Json{{"pass", false}, {"target", i}, {"residues", *w}};
          break;
        }
    }
    if (b.record.kappa && (a.kind == "near-rational" || a.kind == "combined")) {
      if (auto h = parametric_near_rational_hit(F, a.p, *b.record.kappa))
        v = Json{{"pass", false}, {"residues", {h->jx, h->jy, h->jz}}, {"q", h->q}};
    }
    j["verification"] = v;
    if (!v["pass"].get<bool>()) code = kExitWitness;
  }
  ctx.write(a.out, j);
  *ctx.out << "block " << b.record.kind << ": " << F.residues.size() << " residues mod " << a.M
           << (code ? ", witness found" : "") << "\n";
  return code;
}

// --- cantor-build / cantor-verify ----------------------------------------

struct CantorBuildArgs {
  std::string schedule = "uniform";
  std::int64_t M = 0;
  std::int64_t L = 0;
  std::string forms;
  std::int64_t N0 = 0;
  std::string moduli;
  std::int64_t first_class = 6;
  std::int64_t v_max = 2;
  int depth = 3;
  double cap = kDefaultModulusCap;
  std::uint64_t seed = 0;
  int measure_level = -1;
  std::string out = "tree.json";
  std::string measure_out = "measure.json";
};

Schedule make_schedule(const CantorBuildArgs& a) {
  std::vector<LinearForm> forms;
  if (!a.forms.empty()) forms = forms_from_json(read_json_file(a.forms));
  if (a.schedule == "uniform") {
    if (!forms.empty()) return uniform_avoiding_schedule(a.M, forms, a.depth, a.cap);
    if (a.L < 1) fail(ErrorCode::InvalidArgument, "uniform schedule needs --L or --forms");
    return uniform_schedule(a.M, a.L, a.depth, a.cap);
  }
  if (a.schedule == "growing") {
    if (forms.empty()) fail(ErrorCode::InvalidArgument, "growing schedule needs --forms");
    return growing_schedule(a.N0, forms, a.depth, a.cap);
  }
  if (a.schedule == "scale-adapted") return scale_adapted_schedule(parse_int_list(a.moduli), a.first_class, a.v_max, a.cap);
  if (a.schedule == "stuttered") {
    if (forms.empty()) fail(ErrorCode::InvalidArgument, "stuttered schedule needs --forms");
    std::vector<Stage> stages;
    for (auto N : parse_int_list(a.moduli)) stages.push_back({N, build_block({AvoidFormsBlock{forms}, N}).family.residues});
    return stuttered_schedule(stages, a.depth, a.cap);
  }
  fail(ErrorCode::InvalidArgument, "unknown schedule " + a.schedule);
}

int run_cantor_build(const CantorBuildArgs& a, Context& ctx) {
  CantorTree tree = sample_tree(make_schedule(a), a.seed);
  ctx.write(a.out, to_json(tree));
  int level = a.measure_level < 0 ? tree.depth() : a.measure_level;
  CantorMeasure mu = level_measure(tree, level);
  ctx.write(a.measure_out, to_json(mu));
  *ctx.out << "cantor-build: depth " << tree.depth() << ", " << mu.count() << " intervals of width 1/"
           << mu.denominator << " at level " << level << "\n";
  return kExitOk;
}

struct CantorVerifyArgs {
  std::string tree;
  std::string targets;
  int depth = -1;
  int from_level = 0;
  std::string out = "verify.json";
};

int run_cantor_verify(const CantorVerifyArgs& a, Context& ctx) {
  CantorTree tree = tree_from_json(read_json_file(a.tree));
  auto forms = forms_from_json(read_json_file(a.targets));
  auto targets = targets_from_forms(forms);
  int n = a.depth < 0 ? tree.depth() : a.depth;
  auto w = verify_tree_avoidance(tree, targets, n, a.from_level);
  Json j{{"schema", kSchemaVersion}, {"depth", n}, {"from_level", a.from_level}, {"pass", !w.has_value()}};
  if (w) {
    j["witness"] = to_json(*w);
    j["witness"]["form"] = to_json(forms[w->target]);
  }
  ctx.write(a.out, j);
  *ctx.out << "cantor-verify: " << (w ? "witness found" : "pass") << "\n";
  return w ? kExitWitness : kExitOk;
}

// --- fourier -------------------------------------------------------------

struct FourierArgs {
  std::string measure, tree;
  int level = -1;
  std::int64_t K = 0;
  int m_min = 4;
  int m_max = -1;
  std::string profile_out = "profile.csv";
  std::string fit_out = "fit.json";
};

int run_fourier(const FourierArgs& a, Context& ctx) {
  CantorMeasure mu = load_measure(a.measure, a.tree, a.level);
  FourierProfile p = decay_profile(mu, a.K);
  ctx.write(a.profile_out, profile_csv(p));
  Json fit{{"schema", kSchemaVersion}, {"K", a.K}, {"degenerate", p.degenerate}};
  if (!p.degenerate) {
    ExponentFit f = fit_exponent(p, a.m_min, a.m_max);
    fit["beta"] = rounded(f.beta);
    fit["c"] = rounded(f.c);
    fit["bands_used"] = f.bands_used;
    *ctx.out << "fourier: beta = " << fixed(f.beta, 6) << " over " << f.bands_used << " bands\n";
  } else {
    *ctx.out << "fourier: degenerate profile\n";
  }
  ctx.write(a.fit_out, fit);
  return kExitOk;
}

// --- lambda / mass-identity ----------------------------------------------

struct LambdaArgs {
  std::string measure, tree;
  int level = -1;
  std::string t;
  std::string f = "one";
  std::string method = "space";
  std::int64_t K = 0;
  double tol = 1e-6;
  int quad_points = 8;
  std::string gap;
  std::string grid;
  int v = 2;
  std::string out = "lambda.json";
  std::string profile_out = "F_profile.csv";
};

int run_lambda(const LambdaArgs& a, Context& ctx) {
  CantorMeasure mu = load_measure(a.measure, a.tree, a.level);
  if (!a.grid.empty()) {
    std::vector<std::vector<Rational>> grid;
    std::string rest = a.grid;
    for (std::size_t pos; !rest.empty();) {
      pos = rest.find(';');
      grid.push_back(parse_rational_list(rest.substr(0, pos)));
      rest = pos == std::string::npos ? "" : rest.substr(pos + 1);
    }
    ctx.write(a.profile_out, F_profile_csv(F_profile(mu, a.v, grid)));
    *ctx.out << "lambda: profile over " << grid.size() << " points\n";
    return kExitOk;
  }
  if (a.t.empty()) fail(ErrorCode::InvalidArgument, "--t is required unless --grid is given");
  CoefficientVector t = CoefficientVector::exact(parse_rational_list(a.t));
  TestFunctional f;
  if (a.f == "one") f = TestFunctional::one();
  else if (a.f == "absdiff") f = TestFunctional::abs_diff();
  else fail(ErrorCode::InvalidArgument, "--f must be one or absdiff");
  MassReport r;
  if (!a.gap.empty()) {
    r = off_diagonal_mass(mu, t, parse_rational(a.gap));
  } else if (a.method == "space") {
    r = lambda_mass_space(mu, t, f, a.quad_points);
  } else if (a.method == "fourier") {
    if (a.f != "one") fail(ErrorCode::InvalidArgument, "the Fourier method computes total mass only (--f one)");
    r = lambda_mass_fourier(mu, t, a.K > 0 ? a.K : auto_truncation(mu, t, a.tol));
  } else {
    fail(ErrorCode::InvalidArgument, "--method must be space or fourier");
  }
  ctx.write(a.out, to_json(r));
  *ctx.out << "lambda: " << fixed(r.value) << " (" << to_string(r.method) << ")\n";
  return kExitOk;
}

struct MassIdentityArgs {
  std::string measure, tree;
  int level = -1;
  int quad_points = 256;
  std::string out = "mass_identity.json";
};

int run_mass_identity(const MassIdentityArgs& a, Context& ctx) {
  CantorMeasure mu = load_measure(a.measure, a.tree, a.level);
  double value = mass_identity_check(mu, a.quad_points);
  ctx.write(a.out, Json{{"schema", kSchemaVersion},
                        {"quad_points", a.quad_points},
                        {"value", rounded(value)},
                        {"deviation", rounded(value - 1.0 / 3)}});
  *ctx.out << "mass-identity: " << fixed(value) << "\n";
  return kExitOk;
}

// --- coeffset ------------------------------------------------------------

struct CoeffBuildArgs {
  int depth = 2;
  std::string schedule;
  double budget = 1e9;
  std::size_t min_block = 1;
  std::string out = "coeffset.json";
};

int run_coeff_build(const CoeffBuildArgs& a, Context& ctx) {
  Json j;
  std::size_t components = 0;
  if (!a.schedule.empty()) {
    DyadicSchedule s;
    std::string rest = a.schedule;
    for (std::size_t pos; !rest.empty();) {
      pos = rest.find(',');
      std::string item = rest.substr(0, pos);
      auto colon = item.find(':');
      if (colon == std::string::npos) fail(ErrorCode::ParseError, "schedule entries look like P:R");
      try {
        s.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad schedule entry " + item);
      }
      rest = pos == std::string::npos ? "" : rest.substr(pos + 1);
    }
    NestedSetTruncation t = nested_set_build(s, a.depth);
    components = t.set.parts().size();
    j = Json{{"schema", kSchemaVersion}, {"depth", t.depth}, {"components", components}, {"set", to_json(t.set)}};
  } else {
    FrakC c = build_frakC(a.depth, a.budget, a.min_block);
    components = c.set.set.parts().size();
    j = to_json(c);
  }
  ctx.write(a.out, j);
  *ctx.out << "coeffset build: " << components << " components at depth " << a.depth << "\n";
  return kExitOk;
}

struct CoeffMemberArgs {
  std::string t;
  std::string quadratic;
  std::string c = "2/5", tau = "1";
  std::int64_t p_max = 1000000;
  std::int64_t p_min = 2;
  std::string out = "member.json";
};

int run_coeff_member(const CoeffMemberArgs& a, Context& ctx) {
  BadApproxParams prm{parse_rational(a.c), parse_rational(a.tau), a.p_max, a.p_min};
  BadApproxResult r;
  if (!a.t.empty() == !a.quadratic.empty()) fail(ErrorCode::InvalidArgument, "give exactly one of --t and --quadratic");
  if (!a.t.empty()) {
    r = badly_approx_member(parse_rational(a.t), prm);
  } else {
    auto q = parse_int_list(a.quadratic);
    if (q.size() != 4) fail(ErrorCode::InvalidArgument, "--quadratic takes a,b,d,e for (a + b sqrt d)/e");
    r = badly_approx_member(quadratic_irrational(q[0], q[1], q[2], q[3]), prm);
  }
  ctx.write(a.out, to_json(r));
  *ctx.out << "coeffset member: " << to_string(r.status);
  if (r.witness) *ctx.out << " (witness " << to_string(*r.witness) << ")";
  *ctx.out << "\n";
  return r.status == BadApproxStatus::NotMember ? kExitWitness : kExitOk;
}

// --- report --------------------------------------------------------------

struct ReportArgs {
  std::string tree;
  std::int64_t K = 0;
  int m_min = 4;
  std::string out = "report.json";
};

int run_report(const ReportArgs& a, Context& ctx) {
  CantorTree tree = tree_from_json(read_json_file(a.tree));
  Json levels = Json::array();
  for (const auto& l : tree.schedule.levels) levels.push_back(Json{{"M", l.M}, {"L", l.L()}});
  Json j{{"schema", kSchemaVersion},
         {"schedule", std::string(to_string(tree.schedule.kind))},
         {"seed", tree.seed},
         {"depth", tree.depth()},
         {"levels", levels},
         {"sigma_report", rounded(tree.schedule.sigma_report)},
         {"theoretical_sigma", rounded(theoretical_sigma(tree.schedule))}};
  if (a.K > 0) {
    FourierProfile p = decay_profile(level_measure(tree, tree.depth()), a.K);
    j["degenerate"] = p.degenerate;
    if (!p.degenerate) {
      ExponentFit f = fit_exponent(p, a.m_min);
      j["beta_fit"] = rounded(f.beta);
      j["beta_target"] = rounded(tree.schedule.sigma_report / 2);
    }
  }
  ctx.write(a.out, j);
  *ctx.out << j.dump(2) << "\n";
  return kExitOk;
}

// --- replay --------------------------------------------------------------

struct ReplayArgs {
  std::string manifest;
  bool check = false;
};

// Strips the global --out-dir option so a replay can redirect outputs.
std::vector<std::string> without_out_dir(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out-dir") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out-dir=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

Json option_echo(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    auto res = opt->results();
    params[opt->get_name()] = res.size() == 1 ? Json(res.front()) : Json(res);
  }
  for (const CLI::App* child : sub->get_subcommands()) params[child->get_name()] = option_echo(child);
  return params;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern-avoiding Cantor sets: constructions, verification and Fourier diagnostics", "salem"};
  app.require_subcommand(1);
  Context ctx;
  ctx.out = &out;
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  app.add_option("--out-dir", ctx.out_dir, "Directory for output files")->capture_default_str();

  BehrendArgs behrend;
  auto* sb = app.add_subcommand("behrend", "Digit-sphere set avoiding forms with small coefficients");
  sb->add_option("--N", behrend.N, "Interval [0, N)")->required();
  sb->add_option("--A", behrend.A, "Coefficient bound A > 2 max m0")->required();
  sb->add_option("--mode", behrend.mode)->check(CLI::IsMember({"fixed", "search"}))->capture_default_str();
  sb->add_option("--forms", behrend.forms, "Forms JSON to verify against");
  sb->add_option("--out", behrend.out)->capture_default_str();

  BlockArgs block;
  auto* sk = app.add_subcommand("block", "Interval block at modulus M");
  sk->add_option("--kind", block.kind)
      ->required()
      ->check(CLI::IsMember({"avoid-forms", "near-rational", "progression", "combined"}));
  sk->add_option("--M", block.M)->required();
  sk->add_option("--forms", block.forms, "Forms JSON (avoid-forms)");
  sk->add_option("--p", block.p, "Denominator p (near-rational, combined)");
  sk->add_option("--c", block.c)->capture_default_str();
  sk->add_option("--tau", block.tau)->capture_default_str();
  sk->add_option("--eps0", block.eps0)->capture_default_str();
  sk->add_option("--ell", block.ell, "Translate")->capture_default_str();
  sk->add_flag("--verify", block.verify, "Search for a witness in the translated block");
  sk->add_option("--out", block.out)->capture_default_str();

  CantorBuildArgs cb;
  auto* sc = app.add_subcommand("cantor-build", "Sample a random-translate Cantor tree");
  sc->add_option("--schedule", cb.schedule)
      ->check(CLI::IsMember({"uniform", "growing", "scale-adapted", "stuttered"}))
      ->capture_default_str();
  sc->add_option("--M", cb.M);
  sc->add_option("--L", cb.L, "Evenly spaced block size (uniform without forms)");
  sc->add_option("--forms", cb.forms);
  sc->add_option("--N0", cb.N0);
  sc->add_option("--moduli", cb.moduli, "Comma-separated moduli (scale-adapted, stuttered)");
  sc->add_option("--first-class", cb.first_class)->capture_default_str();
  sc->add_option("--v-max", cb.v_max)->capture_default_str();
  sc->add_option("--depth", cb.depth)->capture_default_str();
  sc->add_option("--cap", cb.cap, "Cap on the product of moduli")->capture_default_str();
  sc->add_option("--seed", cb.seed)->capture_default_str();
  sc->add_option("--measure-level", cb.measure_level, "Level of the emitted measure (default: depth)");
  sc->add_option("--out", cb.out)->capture_default_str();
  sc->add_option("--measure-out", cb.measure_out)->capture_default_str();

  CantorVerifyArgs cv;
  auto* sv = app.add_subcommand("cantor-verify", "Exhaustive avoidance check of a tree");
  sv->add_option("--tree", cv.tree)->required();
  sv->add_option("--targets", cv.targets, "Forms JSON")->required();
  sv->add_option("--depth", cv.depth, "Deepest level checked (default: tree depth)");
  sv->add_option("--from-level", cv.from_level)->capture_default_str();
  sv->add_option("--out", cv.out)->capture_default_str();

  FourierArgs fo;
  auto* sf = app.add_subcommand("fourier", "Dyadic band maxima of the Fourier transform and the decay fit");
  sf->add_option("--measure", fo.measure);
  sf->add_option("--tree", fo.tree);
  sf->add_option("--level", fo.level);
  sf->add_option("--K", fo.K)->required();
  sf->add_option("--m-min", fo.m_min)->capture_default_str();
  sf->add_option("--m-max", fo.m_max)->capture_default_str();
  sf->add_option("--profile-out", fo.profile_out)->capture_default_str();
  sf->add_option("--fit-out", fo.fit_out)->capture_default_str();

  LambdaArgs la;
  auto* sl = app.add_subcommand("lambda", "Configuration-measure mass");
  sl->add_option("--measure", la.measure);
  sl->add_option("--tree", la.tree);
  sl->add_option("--level", la.level);
  sl->add_option("--t", la.t, "Weights as p/q list, e.g. 1/2,1/2");
  sl->add_option("--f", la.f)->check(CLI::IsMember({"one", "absdiff"}))->capture_default_str();
  sl->add_option("--method", la.method)->check(CLI::IsMember({"space", "fourier"}))->capture_default_str();
  sl->add_option("--K", la.K, "Fourier truncation (default: automatic)");
  sl->add_option("--tol", la.tol, "Tail tolerance for the automatic truncation")->capture_default_str();
  sl->add_option("--quad-points", la.quad_points)->capture_default_str();
  sl->add_option("--gap", la.gap, "Restrict to |x1 - x2| >= gap");
  sl->add_option("--grid", la.grid, "Points t separated by ';', coordinates by ','");
  sl->add_option("--v", la.v, "Dimension of grid points")->capture_default_str();
  sl->add_option("--out", la.out)->capture_default_str();
  sl->add_option("--profile-out", la.profile_out)->capture_default_str();

  MassIdentityArgs mi;
  auto* sm = app.add_subcommand("mass-identity", "Integral over s of the |x1 - x2| mass; equals 1/3");
  sm->add_option("--measure", mi.measure);
  sm->add_option("--tree", mi.tree);
  sm->add_option("--level", mi.level);
  sm->add_option("--quad-points", mi.quad_points)->capture_default_str();
  sm->add_option("--out", mi.out)->capture_default_str();

  auto* so = app.add_subcommand("coeffset", "Forbidden-coefficient sets and badly approximable membership");
  so->require_subcommand(1);
  CoeffBuildArgs ob;
  auto* sob = so->add_subcommand("build", "Nested dyadic set, with blocks when no schedule is given");
  sob->add_option("--depth", ob.depth)->capture_default_str();
  sob->add_option("--schedule", ob.schedule, "Explicit P:R list, e.g. 1:3,5:7");
  sob->add_option("--budget", ob.budget, "Largest admissible modulus")->capture_default_str();
  sob->add_option("--min-block", ob.min_block, "Smallest block size accepted")->capture_default_str();
  sob->add_option("--out", ob.out)->capture_default_str();
  CoeffMemberArgs om;
  auto* som = so->add_subcommand("member", "Test |t - q/p| > c / p^(1+tau)");
  som->add_option("--t", om.t, "Rational t");
  som->add_option("--quadratic", om.quadratic, "a,b,d,e for t = (a + b sqrt d)/e");
  som->add_option("--c", om.c)->capture_default_str();
  som->add_option("--tau", om.tau)->capture_default_str();
  som->add_option("--p-max", om.p_max)->capture_default_str();
  som->add_option("--p-min", om.p_min)->capture_default_str();
  som->add_option("--out", om.out)->capture_default_str();

  ReportArgs rp;
  auto* sr = app.add_subcommand("report", "Summary of a tree: schedule, sigma and optional decay fit");
  sr->add_option("--tree", rp.tree)->required();
  sr->add_option("--K", rp.K);
  sr->add_option("--m-min", rp.m_min)->capture_default_str();
  sr->add_option("--out", rp.out)->capture_default_str();

  ReplayArgs re;
  auto* sp = app.add_subcommand("replay", "Re-run a manifest; --check compares outputs byte for byte");
  sp->add_option("--manifest", re.manifest)->required();
  sp->add_flag("--check", re.check);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }
  set_thread_count(threads);

  const auto start = std::chrono::steady_clock::now();
  CLI::App* chosen = app.get_subcommands().front();
  std::uint64_t seed = 0;
  int code = kExitOk;
  try {
    fs::create_directories(ctx.out_dir);
    if (chosen == sb) code = run_behrend(behrend, ctx);
    else if (chosen == sk) code = run_block(block, ctx);
    else if (chosen == sc) code = run_cantor_build(cb, ctx), seed = cb.seed;
    else if (chosen == sv) code = run_cantor_verify(cv, ctx);
    else if (chosen == sf) code = run_fourier(fo, ctx);
    else if (chosen == sl) code = run_lambda(la, ctx);
    else if (chosen == sm) code = run_mass_identity(mi, ctx);
    else if (chosen == so) code = so->got_subcommand(sob) ? run_coeff_build(ob, ctx) : run_coeff_member(om, ctx);
    else if (chosen == sr) code = run_report(rp, ctx);
    else if (chosen == sp) {
      RunManifest m = manifest_from_json(read_json_file(re.manifest));
      std::vector<std::string> again{"--out-dir", ctx.out_dir};
      again.insert(again.end(), m.argv.begin(), m.argv.end());
      int replayed = dispatch(again, out, err);
      if (!re.check) return replayed;
      fs::path original = fs::path(re.manifest).parent_path();
      bool same = true;
      for (const auto& name : m.outputs) {
        if (read_text_file((original / name).string()) != read_text_file(ctx.path(name))) {
          err << "replay: " << name << " differs\n";
          same = false;
        }
      }
      out << "replay: " << (same ? "outputs identical" : "outputs differ") << "\n";
      return same ? kExitOk : kExitWitness;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunManifest m;
  m.subcommand = chosen->get_name();
  if (chosen == so) m.subcommand += " " + so->get_subcommands().front()->get_name();
  m.argv = without_out_dir(args);
  m.params = option_echo(chosen);
  m.seed = seed;
  m.outputs = ctx.outputs;
  m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string manifest_name = chosen->get_name() + ".manifest.json";
  try {
    write_text_file(ctx.path(manifest_name), to_json(m).dump(2) + "\n");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return code;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace salem
