#include "barricade/scenario.hpp"

#include "barricade/cones.hpp"
#include "barricade/horizon.hpp"
#include "barricade/separation.hpp"
#include "barricade/support.hpp"

#include <chrono>
#include <fstream>
#include <future>

namespace barricade {

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec vec_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw SchemaError(ctx + ": expected a nonempty array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(ctx + "[" + std::to_string(i) + "]: expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  if (!v.allFinite()) throw SchemaError(ctx + ": entries must be finite");
  return v;
}

namespace {

Mat mat_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw SchemaError(ctx + ": expected a nonempty array of rows");
  Vec first = vec_from_json(j[0], ctx + "[0]");
  Mat m(static_cast<Eigen::Index>(j.size()), first.size());
  m.row(0) = first.transpose();
  for (size_t i = 1; i < j.size(); ++i) {
    Vec row = vec_from_json(j[i], ctx + "[" + std::to_string(i) + "]");
    if (row.size() != first.size()) throw SchemaError(ctx + ": ragged rows");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

void expect_keys(const Json& j, const std::vector<std::string>& allowed,
                 const std::string& ctx) {
  if (!j.is_object()) throw SchemaError(ctx + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw SchemaError(ctx + ": unknown key '" + it.key() + "'");
  }
}

const Json& require_key(const Json& j, const std::string& key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ctx + ": missing key '" + key + "'");
  return *it;
}

Catalog1D parse_phi(const Json& j, const std::string& ctx) {
  expect_keys(j, {"tag", "slope"}, ctx);
  std::string tag = require_key(j, "tag", ctx).get<std::string>();
  if (tag == "square") return Catalog1D::square();
  if (tag == "exp") return Catalog1D::exponential();
  if (tag == "abs") return Catalog1D::absolute();
  if (tag == "negsqrt") return Catalog1D::neg_sqrt();
  if (tag == "linear") {
    const Json& s = require_key(j, "slope", ctx);
    if (!s.is_number()) throw SchemaError(ctx + ".slope: expected a number");
    return Catalog1D::linear(s.get<double>());
  }
  throw SchemaError(ctx + ".tag: unknown catalog tag '" + tag + "'");
}

CatalogFn parse_function(const Json& j, int dim, const std::string& ctx) {
  std::string kind = require_key(j, "kind", ctx).get<std::string>();
  try {
    if (kind == "affine") {
      expect_keys(j, {"kind", "g", "c"}, ctx);
      double c = j.value("c", 0.0);
      return CatalogFn::affine(vec_from_json(require_key(j, "g", ctx), ctx + ".g"), c);
    }
    if (kind == "quadratic") {
      expect_keys(j, {"kind", "Q", "b", "c"}, ctx);
      return CatalogFn::quadratic(mat_from_json(require_key(j, "Q", ctx), ctx + ".Q"),
                                  vec_from_json(require_key(j, "b", ctx), ctx + ".b"),
                                  j.value("c", 0.0));
    }
    if (kind == "norm") {
      expect_keys(j, {"kind", "W", "w", "g", "c"}, ctx);
      return CatalogFn::norm_affine(mat_from_json(require_key(j, "W", ctx), ctx + ".W"),
                                    vec_from_json(require_key(j, "w", ctx), ctx + ".w"),
                                    vec_from_json(require_key(j, "g", ctx), ctx + ".g"),
                                    j.value("c", 0.0));
    }
    if (kind == "lift1d") {
      expect_keys(j, {"kind", "index", "phi", "dim"}, ctx);
      int index = require_key(j, "index", ctx).get<int>();
      int d = j.value("dim", dim);
      return CatalogFn::lift(index, parse_phi(require_key(j, "phi", ctx), ctx + ".phi"), d);
    }
    if (kind == "exp_geomean") {
      expect_keys(j, {"kind"}, ctx);
      return CatalogFn::exp_geomean();
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(ctx + ": " + e.what());
  }
  throw SchemaError(ctx + ".kind: unknown function kind '" + kind + "'");
}

ConvexSet parse_set(const Json& j, int dim, const std::string& ctx) {
  std::string kind = require_key(j, "kind", ctx).get<std::string>();
  try {
    if (kind == "hpoly") {
      expect_keys(j, {"kind", "A", "b"}, ctx);
      return ConvexSet(HPolyhedron(mat_from_json(require_key(j, "A", ctx), ctx + ".A"),
                                   vec_from_json(require_key(j, "b", ctx), ctx + ".b")));
    }
    if (kind == "vset") {
      expect_keys(j, {"kind", "points", "rays"}, ctx);
      std::vector<Vec> points, rays;
      for (const auto& p : require_key(j, "points", ctx))
        points.push_back(vec_from_json(p, ctx + ".points[]"));
      if (j.contains("rays"))
        for (const auto& r : j["rays"]) rays.push_back(vec_from_json(r, ctx + ".rays[]"));
      return ConvexSet(VSet(std::move(points), std::move(rays)));
    }
    if (kind == "ball") {
      expect_keys(j, {"kind", "center", "radius"}, ctx);
      return ConvexSet(Ball(vec_from_json(require_key(j, "center", ctx), ctx + ".center"),
                            require_key(j, "radius", ctx).get<double>()));
    }
    if (kind == "epigraph1d") {
      expect_keys(j, {"kind", "phi"}, ctx);
      return ConvexSet(Epigraph1D(parse_phi(require_key(j, "phi", ctx), ctx + ".phi")));
    }
    if (kind == "sublevel") {
      expect_keys(j, {"kind", "constraints"}, ctx);
      std::vector<CatalogFn> fs;
      const Json& cs = require_key(j, "constraints", ctx);
      if (!cs.is_array() || cs.empty())
        throw SchemaError(ctx + ".constraints: expected a nonempty array");
      for (size_t i = 0; i < cs.size(); ++i)
        fs.push_back(parse_function(cs[i], dim, ctx + ".constraints[" + std::to_string(i) + "]"));
      return ConvexSet(SublevelSystem(std::move(fs)));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(ctx + ": " + e.what());
  }
  throw SchemaError(ctx + ".kind: unknown set kind '" + kind + "'");
}

}  // namespace

Scenario parse_scenario_json(const Json& j) {
  expect_keys(j, {"schema", "dimension", "sets", "functions", "tasks", "seed", "tolerances"},
              "scenario");
  if (require_key(j, "schema", "scenario").get<std::string>() != "barricade/1")
    throw SchemaError("scenario.schema: expected \"barricade/1\"");
  Scenario s;
  s.dimension = require_key(j, "dimension", "scenario").get<int>();
  if (s.dimension < 1) throw SchemaError("scenario.dimension: must be >= 1");
  s.seed = j.value("seed", 0u);

  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    expect_keys(t, {"membership", "projection", "separation", "cone", "kkt"},
                "scenario.tolerances");
    s.tol.membership = t.value("membership", kMembershipTol);
    s.tol.projection = t.value("projection", kProjectionTol);
    s.tol.separation = t.value("separation", kSeparationTol);
    s.tol.cone = t.value("cone", kConeTol);
    s.tol.kkt = t.value("kkt", kKktTol);
  }

  if (j.contains("sets")) {
    for (auto it = j["sets"].begin(); it != j["sets"].end(); ++it) {
      ConvexSet set = parse_set(it.value(), s.dimension, "scenario.sets." + it.key());
      if (set.dimension() != s.dimension)
        throw SchemaError("scenario.sets." + it.key() + ": dimension mismatch");
      s.sets.emplace(it.key(), std::move(set));
    }
  }
  if (j.contains("functions")) {
    for (auto it = j["functions"].begin(); it != j["functions"].end(); ++it) {
      CatalogFn f = parse_function(it.value(), s.dimension, "scenario.functions." + it.key());
      if (f.dimension() != s.dimension)
        throw SchemaError("scenario.functions." + it.key() + ": dimension mismatch");
      s.functions.emplace(it.key(), std::move(f));
    }
  }

  auto resolve_set = [&](const std::string& name, const std::string& ctx) {
    if (!s.sets.count(name)) throw SchemaError(ctx + ": undefined set '" + name + "'");
  };
  auto resolve_fn = [&](const std::string& name, const std::string& ctx) {
    if (!s.functions.count(name)) throw SchemaError(ctx + ": undefined function '" + name + "'");
  };

  const Json& tasks = require_key(j, "tasks", "scenario");
  if (!tasks.is_array()) throw SchemaError("scenario.tasks: expected an array");
  for (size_t i = 0; i < tasks.size(); ++i) {
    const Json& t = tasks[i];
    std::string ctx = "scenario.tasks[" + std::to_string(i) + "]";
    if (!t.is_object() || t.size() != 1) throw SchemaError(ctx + ": expected one task object");
    const std::string op = t.begin().key();
    const Json& body = t.begin().value();
    if (op == "analyze") {
      expect_keys(body, {"set", "directions", "radii"}, ctx);
      AnalyzeTask a;
      a.set = require_key(body, "set", ctx).get<std::string>();
      resolve_set(a.set, ctx);
      if (body.contains("directions"))
        for (const auto& d : body["directions"])
          a.directions.push_back(vec_from_json(d, ctx + ".directions[]"));
      if (body.contains("radii")) {
        for (const auto& r : body["radii"]) a.radii.push_back(r.get<double>());
        for (size_t k = 1; k < a.radii.size(); ++k)
          if (!(a.radii[k] > a.radii[k - 1]))
            throw SchemaError(ctx + ".radii: must be strictly increasing");
      }
      s.tasks.push_back(std::move(a));
    } else if (op == "separate") {
      expect_keys(body, {"a", "b"}, ctx);
      SeparateTask sp;
      sp.a = require_key(body, "a", ctx).get<std::string>();
      sp.b = require_key(body, "b", ctx).get<std::string>();
      resolve_set(sp.a, ctx);
      resolve_set(sp.b, ctx);
      s.tasks.push_back(std::move(sp));
    } else if (op == "ssp") {
      expect_keys(body, {"set"}, ctx);
      SspTask st;
      st.set = require_key(body, "set", ctx).get<std::string>();
      resolve_set(st.set, ctx);
      s.tasks.push_back(std::move(st));
    } else if (op == "solve") {
      expect_keys(body, {"set", "function"}, ctx);
      SolveTask sv;
      sv.set = require_key(body, "set", ctx).get<std::string>();
      sv.function = require_key(body, "function", ctx).get<std::string>();
      resolve_set(sv.set, ctx);
      resolve_fn(sv.function, ctx);
      s.tasks.push_back(std::move(sv));
    } else {
      throw SchemaError(ctx + ": unknown task '" + op + "'");
    }
  }
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("scenario: cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("scenario: JSON parse error: ") + e.what());
  }
  return parse_scenario_json(j);
}

// ---------------------------------------------------------------------------
// Task execution
// ---------------------------------------------------------------------------

namespace {

Json support_to_json(const SupportValue& sv) {
  Json j;
  if (sv.is_finite()) {
    j["status"] = "finite";
    j["value"] = sv.value;
    if (sv.argsup) j["argsup"] = to_json(*sv.argsup);
  } else {
    j["status"] = "infinite";
    if (sv.ray) j["ray"] = to_json(*sv.ray);
    if (!sv.growth_note.empty()) j["note"] = sv.growth_note;
  }
  return j;
}

Json classification_to_json(const BarrierClassification& bc) {
  Json j;
  switch (bc.verdict) {
    case BarrierClassification::Verdict::InteriorPoint:
      j["verdict"] = "interior_point";
      j["alpha"] = bc.alpha;
      j["R"] = bc.R;
      break;
    case BarrierClassification::Verdict::BoundaryPoint:
      j["verdict"] = "boundary_point";
      break;
    case BarrierClassification::Verdict::Outside:
      j["verdict"] = "outside";
      if (bc.ray) j["ray"] = to_json(*bc.ray);
      break;
  }
  return j;
}

Json cone_to_json(const ConeRep& K) {
  Json j;
  switch (K.kind) {
    case ConeRep::Kind::PolyhedralH: {
      j["kind"] = "polyhedral_h";
      Json rows = Json::array();
      for (int i = 0; i < K.A.rows(); ++i) rows.push_back(to_json(K.A.row(i).transpose()));
      j["rows"] = rows;
      break;
    }
    case ConeRep::Kind::PolyhedralV: {
      j["kind"] = "polyhedral_v";
      Json gens = Json::array();
      for (const Vec& g : K.generators) gens.push_back(to_json(g));
      j["generators"] = gens;
      break;
    }
    case ConeRep::Kind::Sampled: {
      j["kind"] = "sampled";
      j["count"] = K.directions.size();
      j["exhaustive"] = false;
      break;
    }
  }
  return j;
}

Json run_analyze(const Scenario& s, const AnalyzeTask& t) {
  const ConvexSet& S = s.sets.at(t.set);
  Json j;
  j["task"] = "analyze";
  j["set"] = t.set;
  j["dimension"] = S.dimension();
  j["bounded"] = to_string(is_bounded_exact(S));
  j["int_barc_nonempty"] = to_string(int_barc_nonempty(S));
  j["recession_cone"] = cone_to_json(recession_cone(S));
  Json dirs = Json::array();
  for (const Vec& d : t.directions) {
    Json dj;
    dj["xstar"] = to_json(d);
    try {
      dj["support"] = support_to_json(support(S, d, s.tol.membership));
    } catch (const InconclusiveError& e) {
      dj["support"] = {{"status", "inconclusive"}, {"best_lower_bound", e.best_lower_bound}};
    }
    try {
      dj["classification"] = classification_to_json(classify_barrier(S, d, s.tol.cone));
    } catch (const InconclusiveError&) {
      dj["classification"] = {{"verdict", "inconclusive"}};
    }
    if (!t.radii.empty() && is_bounded_rep(S) != Tribool::True) {
      try {
        dj["limsup_estimate"] = normalized_limsup_estimate(S, d, t.radii, s.seed);
      } catch (const InconclusiveError&) {
        dj["limsup_estimate"] = nullptr;
      }
    }
    dirs.push_back(std::move(dj));
  }
  j["directions"] = std::move(dirs);
  j["status"] = "ok";
  return j;
}

Json run_separate(const Scenario& s, const SeparateTask& t, const RunOptions& opt) {
  const ConvexSet& A = s.sets.at(t.a);
  const ConvexSet& B = s.sets.at(t.b);
  Json j;
  j["task"] = "separate";
  j["a"] = t.a;
  j["b"] = t.b;
  double tol = opt.tol_override.value_or(s.tol.separation);
  try {
    SeparationOutcome out = separate(A, B, tol, opt.max_iter);
    j["status"] = to_string(out.status);
    if (out.hyperplane) {
      j["certificate"] = {{"xstar", to_json(out.hyperplane->xstar)},
                          {"alpha", out.hyperplane->alpha},
                          {"margin", out.hyperplane->margin}};
    }
    switch (out.status) {
      case SeparationOutcome::Status::StronglySeparated:
        j["dist"] = out.dist;
        j["cp"] = to_json(out.cp);
        j["dp"] = to_json(out.dp);
        break;
      case SeparationOutcome::Status::NotStronglySeparable: {
        if (out.common_ray) j["common_ray"] = to_json(*out.common_ray);
        Json seq = Json::array();
        for (const GapStep& g : out.gap_sequence)
          seq.push_back({{"c", to_json(g.c)}, {"d", to_json(g.d)}, {"gap", g.gap}});
        j["gap_sequence"] = seq;
        break;
      }
      case SeparationOutcome::Status::Intersecting:
        if (out.point) j["point"] = to_json(*out.point);
        break;
      default:
        break;
    }
  } catch (const ConvergenceError& e) {
    j["status"] = "convergence_error";
    Json b;
    if (e.lower_bound) b["lower"] = *e.lower_bound;
    if (e.upper_bound) b["upper"] = *e.upper_bound;
    j["bounds"] = b;
  } catch (const InconclusiveError& e) {
    j["status"] = "inconclusive";
    j["best_lower_bound"] = e.best_lower_bound;
  }
  return j;
}

Json run_ssp(const Scenario& s, const SspTask& t) {
  const ConvexSet& S = s.sets.at(t.set);
  Json j;
  j["task"] = "ssp";
  j["set"] = t.set;
  SspVerdict v = ssp_verdict(S, s.tol.cone, s.seed);
  j["status"] = to_string(v.verdict);
  j["rationale"] = to_string(v.rationale);
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

Json condition_to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = to_string(r.condition);
  j["holds"] = to_string(r.holds);
  j["note"] = r.note;
  if (!r.witnesses.empty()) {
    const DirectionProbe& p = r.witnesses.front();
    Json w;
    w["v"] = to_json(p.v);
    if (p.base) w["base"] = to_json(*p.base);
    w["diverged"] = p.diverged;
    Json vals = Json::array();
    for (double x : p.values) vals.push_back(x);
    w["values"] = vals;
    j["witness"] = w;
  }
  return j;
}

Json run_solve(const Scenario& s, const SolveTask& t, const RunOptions& opt) {
  const ConvexSet& M = s.sets.at(t.set);
  const CatalogFn& f = s.functions.at(t.function);
  Json j;
  j["task"] = "solve";
  j["set"] = t.set;
  j["function"] = t.function;
  double tol = opt.tol_override.value_or(s.tol.kkt);
  try {
    ExistenceReport rep = certify_and_solve(M, f, tol, opt.max_iter, s.seed);
    j["status"] = to_string(rep.conclusion);
    j["failed"] = rep.failed;
    Json hyp;
    hyp["ssp"] = {{"status", to_string(rep.ssp.verdict)},
                  {"rationale", to_string(rep.ssp.rationale)}};
    if (rep.ssp.witness) hyp["ssp"]["witness"] = to_json(*rep.ssp.witness);
    hyp["ssp_via_constraints"] = rep.ssp_via_constraints;
    hyp["bounded_below"] = to_string(rep.bounded_below);
    hyp["bound_probe_value"] = rep.bound_probe_value;
    hyp["witnessed_descent"] = condition_to_json(rep.witnessed_descent);
    if (!rep.constraint_descent.empty()) {
      Json cs = Json::array();
      for (const auto& c : rep.constraint_descent) cs.push_back(condition_to_json(c));
      hyp["constraint_descent"] = cs;
    }
    j["hypotheses"] = hyp;
    if (rep.solution) {
      j["solution"] = {{"x", to_json(*rep.solution)},
                       {"value", rep.best_value},
                       {"kkt_residual", rep.kkt_residual}};
    } else {
      j["solution"] = nullptr;
    }
    j["best_value"] = rep.best_value;
    j["kkt_residual"] = rep.kkt_residual;
    j["nonattainment"] = rep.nonattainment;
    j["trace_len"] = rep.diverging_trace.size();
  } catch (const ConvergenceError& e) {
    j["status"] = "convergence_error";
    j["message"] = e.what();
  } catch (const InconclusiveError& e) {
    j["status"] = "inconclusive";
    j["best_lower_bound"] = e.best_lower_bound;
  }
  return j;
}

Json run_task(const Scenario& s, const Task& task, const RunOptions& opt) {
  return std::visit(
      [&](const auto& t) -> Json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, AnalyzeTask>) return run_analyze(s, t);
        else if constexpr (std::is_same_v<T, SeparateTask>) return run_separate(s, t, opt);
        else if constexpr (std::is_same_v<T, SspTask>) return run_ssp(s, t);
        else return run_solve(s, t, opt);
      },
      task);
}

}  // namespace

Json run(const Scenario& s, const RunOptions& opt) {
  Scenario local = s;
  if (opt.seed_override) local.seed = *opt.seed_override;

  Json out;
  out["schema"] = "barricade-report/1";
  out["seed"] = local.seed;
  Json tasks = Json::array();

  auto t_start = std::chrono::steady_clock::now();
  std::vector<Json> results(local.tasks.size());
  std::vector<double> wall(local.tasks.size(), 0.0);

  auto exec = [&](size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    Json r;
    try {
      r = run_task(local, local.tasks[i], opt);
    } catch (const SchemaError&) {
      throw;
    } catch (const std::bad_alloc&) {
      throw;
    } catch (const std::exception& e) {
      r["task"] = "unknown";
      r["status"] = "error";
      r["message"] = e.what();
    }
    wall[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
    results[i] = std::move(r);
  };

  if (opt.parallel) {
    std::vector<std::future<void>> futs;
    futs.reserve(local.tasks.size());
    for (size_t i = 0; i < local.tasks.size(); ++i)
      futs.push_back(std::async(std::launch::async, exec, i));
    for (auto& f : futs) f.get();
  } else {
    for (size_t i = 0; i < local.tasks.size(); ++i) exec(i);
  }

  for (size_t i = 0; i < results.size(); ++i) {
    results[i]["index"] = i;
    if (opt.with_meta) results[i]["wall_ms"] = wall[i];
    tasks.push_back(std::move(results[i]));
  }
  out["tasks"] = std::move(tasks);
  if (opt.with_meta) {
    out["meta"] = {
        {"wall_ms_total",
         std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
             .count()}};
  }
  return out;
}

bool json_subset_match(const Json& expected, const Json& actual, std::string* why) {
  if (expected.is_object()) {
    if (!actual.is_object()) {
      if (why) *why = "expected object, got " + std::string(actual.type_name());
      return false;
    }
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) {
        if (why) *why = "missing key '" + it.key() + "'";
        return false;
      }
      std::string sub;
      if (!json_subset_match(it.value(), actual[it.key()], &sub)) {
        if (why) *why = it.key() + ": " + sub;
        return false;
      }
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) {
      if (why) *why = "array size mismatch";
      return false;
    }
    for (size_t i = 0; i < expected.size(); ++i) {
      std::string sub;
      if (!json_subset_match(expected[i], actual[i], &sub)) {
        if (why) *why = "[" + std::to_string(i) + "]: " + sub;
        return false;
      }
    }
    return true;
  }
  if (expected != actual) {
    if (why) *why = "expected " + expected.dump() + ", got " + actual.dump();
    return false;
  }
  return true;
}

}  // namespace barricade
