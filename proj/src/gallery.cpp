#include "barricade/gallery.hpp"

#include <algorithm>

namespace barricade {

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

ConvexSet epigraph(Catalog1D phi) { return ConvexSet(Epigraph1D(phi)); }

Scenario base_scenario(int dim) {
  Scenario s;
  s.dimension = dim;
  s.seed = 0;
  return s;
}

GalleryItem make_hyperbola_line() {
  GalleryItem it;
  it.name = "hyperbola_line";
  it.anchor = "hyperbola region vs the horizontal axis: disjoint, gap shrinks to zero";
  auto pair = counterexample_pair("hyperbola_line", 2);
  it.scenario = base_scenario(2);
  it.scenario.sets.emplace("C", pair.C);
  it.scenario.sets.emplace("D", pair.D);
  it.scenario.tasks.push_back(SeparateTask{"C", "D"});
  it.expected = Json::array({Json{{"status", "not_strongly_separable"}}});
  return it;
}

GalleryItem make_barrier_probes() {
  GalleryItem it;
  it.name = "barrier_probes";
  it.anchor = "barrier-cone membership probes for the hyperbola region and the axis";
  auto pair = counterexample_pair("hyperbola_line", 2);
  it.scenario = base_scenario(2);
  it.scenario.sets.emplace("C", pair.C);
  it.scenario.sets.emplace("D", pair.D);
  AnalyzeTask ac;
  ac.set = "C";
  ac.directions = {vec2(-1, -1), vec2(1, 0)};
  ac.radii = {10, 100, 1000};
  it.scenario.tasks.push_back(ac);
  AnalyzeTask ad;
  ad.set = "D";
  ad.directions = {vec2(0, 1), vec2(1, 0)};
  it.scenario.tasks.push_back(ad);
  it.expected = Json::array(
      {Json{{"status", "ok"},
            {"directions",
             Json::array({Json{{"classification", Json{{"verdict", "interior_point"}}}},
                          Json{{"classification", Json{{"verdict", "outside"}}}}})}},
       Json{{"status", "ok"},
            {"directions",
             Json::array({Json{{"classification", Json{{"verdict", "boundary_point"}}}},
                          Json{{"classification", Json{{"verdict", "outside"}}}}})}}});
  return it;
}

GalleryItem make_parabola() {
  GalleryItem it;
  it.name = "parabola";
  it.anchor = "epigraph of the square: open barrier cone off the origin";
  it.scenario = base_scenario(2);
  it.scenario.sets.emplace("E", epigraph(Catalog1D::square()));
  AnalyzeTask a;
  a.set = "E";
  a.directions = {vec2(1, -1), vec2(0, -1)};
  it.scenario.tasks.push_back(a);
  it.scenario.tasks.push_back(SspTask{"E"});
  it.expected = Json::array(
      {Json{{"status", "ok"},
            {"directions",
             Json::array({Json{{"support", Json{{"status", "finite"}, {"value", 0.25}}}},
                          Json{{"classification", Json{{"verdict", "interior_point"}}}}})}},
       Json{{"status", "has_ssp"}}});
  return it;
}

GalleryItem make_exp_epigraph() {
  GalleryItem it;
  it.name = "exp_epigraph";
  it.anchor = "epigraph of the exponential: barrier cone with a closed boundary ray";
  it.scenario = base_scenario(2);
  it.scenario.sets.emplace("E", epigraph(Catalog1D::exponential()));
  AnalyzeTask a;
  a.set = "E";
  a.directions = {vec2(1, -1), vec2(0, -1)};
  it.scenario.tasks.push_back(a);
  it.scenario.tasks.push_back(SspTask{"E"});
  it.expected = Json::array(
      {Json{{"status", "ok"},
            {"directions",
             Json::array({Json{{"support", Json{{"status", "finite"}, {"value", -1.0}}}},
                          Json{{"classification", Json{{"verdict", "boundary_point"}}}}})}},
       Json{{"status", "lacks_ssp"}}});
  return it;
}

GalleryItem make_halfplane() {
  GalleryItem it;
  it.name = "halfplane";
  it.anchor = "lower halfplane: locally compact but its barrier cone has empty interior";
  it.scenario = base_scenario(2);
  Mat A(1, 2);
  A << 0, 1;
  it.scenario.sets.emplace("H", ConvexSet(HPolyhedron(A, Vec::Zero(1))));
  it.scenario.tasks.push_back(SspTask{"H"});
  it.expected = Json::array({Json{{"status", "lacks_ssp"}}});
  return it;
}

GalleryItem make_ball(int n) {
  GalleryItem it;
  it.name = "ball";
  it.anchor = "unit ball: bounded, hence strongly separable from everything disjoint";
  it.scenario = base_scenario(n);
  it.scenario.sets.emplace("B", ConvexSet(Ball(Vec::Zero(n), 1.0)));
  it.scenario.tasks.push_back(SspTask{"B"});
  it.expected = Json::array({Json{{"status", "has_ssp"}, {"rationale", "bounded"}}});
  return it;
}

GalleryItem make_products_cone(int n) {
  GalleryItem it;
  it.name = "products_cone";
  it.anchor = "cone of decreasing-products sequences, truncated: pointed but boundary-heavy";
  it.scenario = base_scenario(n);
  // 0 <= x_{i+1} <= (i/(i+1)) x_i for i = 1..n-1
  Mat A(2 * (n - 1), n);
  A.setZero();
  Vec b = Vec::Zero(2 * (n - 1));
  for (int i = 0; i < n - 1; ++i) {
    A(2 * i, i + 1) = -1.0;
    A(2 * i + 1, i + 1) = 1.0;
    A(2 * i + 1, i) = -static_cast<double>(i + 1) / (i + 2);
  }
  it.scenario.sets.emplace("K", ConvexSet(HPolyhedron(A, b)));
  it.scenario.tasks.push_back(SspTask{"K"});
  it.expected = Json::array({Json{{"status", "lacks_ssp"}}});
  return it;
}

GalleryItem make_parabola_min() {
  GalleryItem it;
  it.name = "parabola_min";
  it.anchor = "minimize y + x^2 over the parabola epigraph: compact solution set at the origin";
  it.scenario = base_scenario(2);
  it.scenario.sets.emplace("M", epigraph(Catalog1D::square()));
  Mat Q(2, 2);
  Q << 2, 0, 0, 0;
  it.scenario.functions.emplace("f", CatalogFn::quadratic(Q, vec2(0, 1), 0.0));
  it.scenario.tasks.push_back(SolveTask{"M", "f"});
  it.expected = Json::array({Json{{"status", "nonempty_compact"}}});
  return it;
}

GalleryItem make_unattained_min() {
  GalleryItem it;
  it.name = "unattained_min";
  it.anchor = "exp(-x) - sqrt(xy) minimized over the axis: infimum 0 never attained";
  it.scenario = base_scenario(2);
  Mat A(2, 2);
  A << 0, 1, 0, -1;
  it.scenario.sets.emplace("M", ConvexSet(HPolyhedron(A, Vec::Zero(2))));
  it.scenario.functions.emplace("f", CatalogFn::exp_geomean());
  it.scenario.tasks.push_back(SolveTask{"M", "f"});
  it.expected = Json::array({Json{{"status", "hypotheses_failed"},
                                  {"failed", Json::array({"ssp"})},
                                  {"nonattainment", true}}});
  return it;
}

GalleryItem make_negsqrt_min() {
  GalleryItem it;
  it.name = "negsqrt_min";
  it.anchor = "-sqrt(x) on the half-line: descent from every base point yet unbounded below";
  it.scenario = base_scenario(1);
  Mat A(1, 1);
  A << -1;
  it.scenario.sets.emplace("M", ConvexSet(HPolyhedron(A, Vec::Zero(1))));
  it.scenario.functions.emplace("f", CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1));
  it.scenario.tasks.push_back(SolveTask{"M", "f"});
  it.expected = Json::array({Json{{"status", "hypotheses_failed"},
                                  {"failed", Json::array({"bounded_below"})}}});
  return it;
}

GalleryItem make_slices(const std::string& name, int n) {
  GalleryItem it;
  it.name = name;
  it.anchor = name == "l2_slices"
                  ? "weighted-sum slice hulls: truncation separates, gaps 2/(k+1) vanish"
                  : "unit-coordinate slice hulls: truncation separates, gaps 1/k vanish";
  auto pair = counterexample_pair(name, n);
  it.scenario = base_scenario(n);
  it.scenario.sets.emplace("C", pair.C);
  it.scenario.sets.emplace("D", pair.D);
  it.scenario.tasks.push_back(SeparateTask{"C", "D"});
  it.expected = Json::array({Json{{"status", "strongly_separated"}}});
  it.embedded_pairs = pair.embedded_pairs;
  return it;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"hyperbola_line", "barrier_probes", "parabola",      "exp_epigraph",
          "halfplane",      "ball",           "products_cone", "parabola_min",
          "unattained_min", "negsqrt_min",    "l2_slices",     "l1_slices"};
}

GalleryItem gallery_item(const std::string& name, int n) {
  if (name == "hyperbola_line") return make_hyperbola_line();
  if (name == "barrier_probes") return make_barrier_probes();
  if (name == "parabola") return make_parabola();
  if (name == "exp_epigraph") return make_exp_epigraph();
  if (name == "halfplane") return make_halfplane();
  if (name == "ball") return make_ball(n);
  if (name == "products_cone") return make_products_cone(n);
  if (name == "parabola_min") return make_parabola_min();
  if (name == "unattained_min") return make_unattained_min();
  if (name == "negsqrt_min") return make_negsqrt_min();
  if (name == "l2_slices" || name == "l1_slices") return make_slices(name, n);
  throw std::out_of_range("gallery: unknown item '" + name + "'");
}

GalleryOutcome run_gallery_item(const std::string& name, const RunOptions& opt, int n) {
  GalleryItem item = gallery_item(name, n);
  GalleryOutcome out;
  out.report = run(item.scenario, opt);
  out.report["gallery"] = item.name;
  out.report["anchor"] = item.anchor;
  if (!item.embedded_pairs.empty()) {
    Json pairs = Json::array();
    for (const GapStep& g : item.embedded_pairs)
      pairs.push_back({{"c", to_json(g.c)}, {"d", to_json(g.d)}, {"gap", g.gap}});
    out.report["embedded_pairs"] = pairs;
  }
  const Json& tasks = out.report["tasks"];
  for (size_t i = 0; i < item.expected.size() && i < tasks.size(); ++i) {
    std::string why;
    if (!json_subset_match(item.expected[i], tasks[i], &why)) {
      out.matched = false;
      out.mismatches.push_back(item.name + ".tasks[" + std::to_string(i) + "]: " + why);
    }
  }
  if (item.expected.size() != tasks.size()) {
    out.matched = false;
    out.mismatches.push_back(item.name + ": task/expectation count mismatch");
  }
  return out;
}

}  // namespace barricade
