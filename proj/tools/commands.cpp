#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <envlab/complement.hpp>
#include <envlab/ergodic.hpp>
#include <envlab/verify.hpp>
#include <envlab/version.hpp>

namespace envlab::cli {

namespace {

Space load_space(const CommonOptions& opt) {
  if (opt.space_path.empty()) throw UsageError("--space is required");
  Space space = space_from_json(load_json(opt.space_path));
  if (opt.p) space = space.with_exponent(*opt.p);
  return space;
}

Subspace load_subspace(const CommonOptions& opt, const Space& space) {
  if (opt.subspace_path.empty()) throw UsageError("--subspace is required");
  try {
    return subspace_from_json(space, load_json(opt.subspace_path));
  } catch (const ParseError& e) {
    throw ParseError(opt.subspace_path + std::string(" ") + e.what());
  }
}

// Shortest representation that reads back to the same double.
std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Json echo_inputs(const CommonOptions& opt) {
  Json in = Json::object();
  if (!opt.space_path.empty()) in["space"] = load_json(opt.space_path);
  if (!opt.subspace_path.empty()) in["subspace"] = load_json(opt.subspace_path);
  if (opt.p) in["p"] = *opt.p;
  return in;
}

}  // namespace

Json RunReport::to_json() const {
  return Json{{"command", command},  {"inputs", inputs},   {"outputs", outputs},
              {"seed", seed},        {"tolerances", tolerances}, {"wall_time_ms", wall_time_ms},
              {"version", kVersion}, {"exit_code", exit_code}};
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("ENVLAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used == std::string(s).size()) return v;
    } catch (const std::exception&) {
    }
  }
  return 42;
}

RunReport cmd_env(const CommonOptions& opt) {
  RunReport rep;
  rep.command = "env";
  rep.seed = opt.seed;
  const double tol = opt.tol.value_or(kDefaultTol);
  rep.tolerances = {{"subspace", tol}, {"level_set", kLevelSetTol}};
  const Space space = load_space(opt);
  const Subspace y = load_subspace(opt, space);
  rep.inputs = echo_inputs(opt);

  Json out = Json::object();
  const EnvelopeReport iso = isometric_envelope_report(y, tol);
  const Subspace alg = algebraic_envelope(y, tol);
  const Subspace cond = conditional_envelope(y);
  const Subspace lat = lattice_closure(y, tol);
  std::optional<Subspace> minimal;
  if (space.is_hilbert()) {
    minimal = y;
  } else if (is_unital(y, tol)) {
    minimal = cond;
  }
  if (iso.hilbert_case) out["note"] = "p = 2: isometries are orthogonal maps; every envelope equals Y, no group enumeration";
  if (!iso.caveat.empty()) out["caveat"] = iso.caveat;

  auto entry = [&](const Subspace& s) { return Json{{"dim", s.dim()}, {"basis", to_json(s)["basis"]}}; };
  Json envs = {{"isometric", entry(iso.envelope)},
               {"algebraic", entry(alg)},
               {"conditional", entry(cond)},
               {"lattice", entry(lat)}};
  envs["minimal"] = minimal ? entry(*minimal) : Json(nullptr);
  out["subspace"] = entry(y);
  out["envelopes"] = envs;
  out["stabilizer_order"] = iso.stabilizer_order;

  std::vector<std::pair<std::string, const Subspace*>> named = {
      {"isometric", &iso.envelope}, {"algebraic", &alg}, {"conditional", &cond}, {"lattice", &lat}};
  if (minimal) named.emplace_back("minimal", &*minimal);
  Json eq = Json::object();
  for (std::size_t a = 0; a < named.size(); ++a) {
    for (std::size_t b = a + 1; b < named.size(); ++b) {
      eq[named[a].first + "=" + named[b].first] = equal(*named[a].second, *named[b].second, tol);
    }
  }
  out["equal"] = eq;
  Json chain = Json::object();
  if (minimal) {
    chain["minimal<=isometric"] = includes(iso.envelope, *minimal, tol);
    chain["minimal<isometric"] = includes(iso.envelope, *minimal, tol) && iso.envelope.dim() > minimal->dim();
  }
  chain["isometric<=algebraic"] = includes(alg, iso.envelope, tol);
  chain["isometric<algebraic"] = includes(alg, iso.envelope, tol) && alg.dim() > iso.envelope.dim();
  out["chain"] = chain;
  rep.outputs = out;
  return rep;
}

RunReport cmd_verify(const CommonOptions& opt, int threads) {
  RunReport rep;
  rep.command = "verify";
  rep.seed = opt.seed;
  if (opt.suite.empty()) throw UsageError("--suite is required");
  const Suite& suite = find_suite(opt.suite);
  SuiteOptions so;
  so.trials = opt.trials > 0 ? opt.trials : suite.default_trials;
  so.seed = opt.seed;
  so.threads = threads;
  const SuiteResult result = run_suite(suite, so);
  rep.inputs = {{"suite", suite.name}, {"trials", so.trials}};
  rep.outputs = envlab::to_json(result);
  rep.outputs["description"] = suite.description;
  rep.tolerances = rep.outputs["tolerances"];
  rep.exit_code = result.ok() ? kOk : kVerificationFailure;
  return rep;
}

RunReport cmd_c2(const CommonOptions& opt, const std::string& grid) {
  RunReport rep;
  rep.command = "c2";
  rep.seed = opt.seed;
  rep.inputs = {{"grid", grid}};
  const auto values = parse_grid(grid);
  const C2Table table = scan_c2(values);
  if (!opt.out.empty()) {
    std::ofstream csv(opt.out);
    if (!csv) throw Error("cannot write " + opt.out);
    csv << "p,c2,monotone_flag\n";
    for (const auto& r : table.rows) csv << shortest(r.p) << ',' << shortest(r.c2) << ',' << (r.monotone ? 1 : 0) << '\n';
  }
  Json rows = Json::array();
  for (const auto& r : table.rows) rows.push_back({{"p", r.p}, {"c2", r.c2}, {"monotone_flag", r.monotone}});
  rep.outputs = {{"rows", table.rows.size()},
                 {"decreasing_below_2", table.decreasing_below_2},
                 {"increasing_above_2", table.increasing_above_2},
                 {"table", rows}};
  if (!opt.out.empty()) rep.outputs["csv"] = opt.out;
  return rep;
}

RunReport cmd_proj(const CommonOptions& opt) {
  RunReport rep;
  rep.command = "proj";
  rep.seed = opt.seed;
  const Space space = load_space(opt);
  const Subspace y = load_subspace(opt, space);
  rep.inputs = echo_inputs(opt);
  const double tol = opt.tol.value_or(1e-6);
  rep.tolerances = {{"one_complemented", tol}};
  ProjectionSearchConfig cfg;
  cfg.seed = opt.seed;
  cfg.norm_options.seed = opt.seed;
  const auto verdict = is_one_complemented(space, y, space.p(), tol, cfg);
  rep.outputs = envlab::to_json(verdict.minimax);
  rep.outputs["one_complemented"] = verdict.verdict;
  rep.outputs["verdicts_agree"] = verdict.agree;
  rep.outputs["j_rank"] = verdict.j_rank;
  rep.outputs["j_linear"] = verdict.j_verdict ? Json(*verdict.j_verdict) : Json(nullptr);
  rep.outputs["douglas_ando"] = verdict.douglas_ando_verdict ? Json(*verdict.douglas_ando_verdict) : Json(nullptr);
  return rep;
}

RunReport cmd_pushout(const CommonOptions& opt) {
  RunReport rep;
  rep.command = "pushout";
  rep.seed = opt.seed;
  rep.tolerances = {{"screen_threshold", 1.01}};
  Json out = Json::object();
  std::optional<Space> space;
  std::optional<Subspace> y;
  if (!opt.subspace_path.empty()) {
    space = load_space(opt);
    y = load_subspace(opt, *space);
    rep.inputs = echo_inputs(opt);
  } else {
    const ScreeningReport screen = screen_pushout_base(1.01, opt.seed);
    space = Space::uniform(screen.n, 1.0);
    y = screen.y;
    rep.inputs = {{"screened", true}};
    out["screening"] = {{"n", screen.n},
                        {"candidates", screen.candidates},
                        {"escalated", screen.escalated},
                        {"lambda_x", screen.lambda_x},
                        {"subspace", to_json(screen.y)}};
  }
  const PushoutReport p = pushout(*space, *y, opt.seed);
  out["dim_w"] = p.w.dim();
  out["embedding_defect"] = p.embedding_defect;
  out["kernel_norm"] = p.kernel_norm;
  out["first_copy_projection_norm"] = p.first_copy_projection_norm;
  out["second_copy_projection_norm"] = p.second_copy_projection_norm;
  out["exact"] = p.exact;
  out["lambda_w"] = p.lambda_w ? Json(*p.lambda_w) : Json(nullptr);
  out["lambda_x"] = p.lambda_x ? Json(*p.lambda_x) : Json(nullptr);
  rep.outputs = out;
  return rep;
}

RunReport cmd_ergodic(const CommonOptions& opt, const std::string& operator_path, const std::string& method,
                      long long max_iter) {
  RunReport rep;
  rep.command = "ergodic";
  rep.seed = opt.seed;
  const Space space = load_space(opt);
  if (operator_path.empty()) throw UsageError("--operator is required");
  const Json op = load_json(operator_path);
  rep.inputs = echo_inputs(opt);
  rep.inputs["operator"] = op;

  ErgodicOptions eo;
  eo.tol = opt.tol.value_or(1e-6);
  eo.max_iter = max_iter;
  if (method == "auto") {
    eo.method = ErgodicMethod::automatic;
  } else if (method == "cesaro") {
    eo.method = ErgodicMethod::cesaro;
  } else if (method == "spectral") {
    eo.method = ErgodicMethod::spectral;
  } else {
    throw UsageError("--method must be auto, cesaro or spectral");
  }
  rep.tolerances = {{"tol", eo.tol}, {"max_iter", eo.max_iter}};

  auto build = [&]() -> ContractionOperator {
    if (op.is_array()) return ContractionOperator::certify(space, matrix_from_json(op));
    if (op.contains("blocks")) return ContractionOperator::conditional_expectation(space, partition_from_json(op));
    if (op.contains("elements")) {
      std::vector<SignedPermutation> elems;
      for (const auto& e : op["elements"]) elems.push_back(signed_permutation_from_json(e));
      std::vector<double> w(elems.size(), 1.0 / static_cast<double>(std::max<std::size_t>(1, elems.size())));
      if (op.contains("weights")) w = op["weights"].get<std::vector<double>>();
      return ContractionOperator::convex_combination(space, w, elems);
    }
    throw ParseError(operator_path + ": expected a matrix, {\"blocks\"} or {\"elements\"}");
  };
  const ContractionOperator t = build();
  try {
    const ErgodicReport r = cesaro_projection(t, eo);
    rep.outputs = envlab::to_json(r);
  } catch (const ConvergenceError& e) {
    rep.outputs = envlab::to_json(e.partial());
    rep.outputs["error"] = e.what();
    rep.exit_code = kNonConvergence;
  }
  rep.outputs["certification"] = to_string(t.certification());
  return rep;
}

}  // namespace envlab::cli
