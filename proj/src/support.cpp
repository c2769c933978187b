#include "barricade/support.hpp"

#include "barricade/cones.hpp"
#include "barricade/simplex.hpp"

#include <algorithm>

namespace barricade {

namespace {

SupportValue finite_value(double v, std::optional<Vec> argsup = std::nullopt) {
  SupportValue s;
  s.status = SupportValue::Status::Finite;
  s.value = v;
  s.argsup = std::move(argsup);
  return s;
}

SupportValue infinite_value(std::optional<Vec> ray, std::string note = {}) {
  SupportValue s;
  s.status = SupportValue::Status::Infinite;
  s.value = kInf;
  s.ray = std::move(ray);
  s.growth_note = std::move(note);
  return s;
}

bool recession_probe(const ConvexSet& S, const Vec& dir, double tol) {
  Vec c0 = S.anchor();
  for (double lam : {1.0, 10.0, 100.0}) {
    if (!contains(S, c0 + lam * dir, std::max(tol, 1e-6 * lam))) return false;
  }
  return true;
}

SupportValue support_hpoly(const HPolyhedron& P, const Vec& w) {
  LinearProgram lp;
  lp.A_ub = P.A();
  lp.b_ub = P.b();
  lp.c = -w;  // maximize <w, x>
  LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::Optimal) return finite_value(w.dot(sol.x), sol.x);
  // Unbounded: normalize the improving ray as the certificate.
  Vec r = sol.ray;
  r /= r.norm();
  return infinite_value(r);
}

SupportValue support_vset(const VSet& V, const Vec& w) {
  for (const Vec& r : V.rays()) {
    if (w.dot(r) > 1e-12 * (1.0 + w.norm())) return infinite_value(r);
  }
  double best = -kInf;
  const Vec* argp = nullptr;
  for (const Vec& p : V.points()) {
    double v = w.dot(p);
    if (v > best) {
      best = v;
      argp = &p;
    }
  }
  return finite_value(best, *argp);
}

SupportValue support_ball(const Ball& B, const Vec& w) {
  double nw = w.norm();
  Vec arg = B.center();
  if (nw > 0.0) arg += (B.radius() / nw) * w;
  return finite_value(w.dot(B.center()) + B.radius() * nw, arg);
}

// Recession generators of an epigraph: always (0,1); plus the finite-slope
// boundary directions of epi(phi^inf).
std::vector<Vec> epigraph_recession_generators(const Catalog1D& phi) {
  std::vector<Vec> gens;
  Vec up(2);
  up << 0.0, 1.0;
  gens.push_back(up);
  double R = phi.horizon(1.0), L = phi.horizon(-1.0);
  if (std::isfinite(R)) {
    Vec g(2);
    g << 1.0, R;
    gens.push_back(g.normalized());
  }
  if (std::isfinite(L)) {
    Vec g(2);
    g << -1.0, L;
    gens.push_back(g.normalized());
  }
  return gens;
}

SupportValue support_epigraph(const Epigraph1D& E, const Vec& w) {
  const Catalog1D& phi = E.phi();
  const double u = w(0), v = w(1);

  auto ray_certificate = [&]() -> std::optional<Vec> {
    for (const Vec& g : epigraph_recession_generators(phi)) {
      if (w.dot(g) > 1e-12 * (1.0 + w.norm())) return g;
    }
    return std::nullopt;
  };

  if (v > 0.0) {
    Vec up(2);
    up << 0.0, 1.0;
    return infinite_value(up);
  }
  if (v == 0.0) {
    const Interval dom = phi.domain();
    if (u == 0.0) return finite_value(0.0, E.anchor());
    if (u > 0.0) {
      if (dom.bounded_above()) {
        Vec arg(2);
        arg << dom.hi, phi.value(dom.hi);
        return finite_value(u * dom.hi, arg);
      }
      return infinite_value(ray_certificate(), "sup u*x unbounded over dom(phi)");
    }
    if (dom.bounded_below()) {
      Vec arg(2);
      arg << dom.lo, phi.value(dom.lo);
      return finite_value(u * dom.lo, arg);
    }
    return infinite_value(ray_certificate(), "sup u*x unbounded over dom(phi)");
  }

  // v < 0: sigma(u, v) = (-v) * phi^*(u / -v) via the perspective of the
  // conjugate; infinite exactly off dom(phi^*).
  const double s = u / (-v);
  if (!phi.conjugate_domain().contains(s))
    return infinite_value(ray_certificate(), "conjugate argument outside dom(phi*)");
  double val = (-v) * phi.conjugate(s);
  std::optional<Vec> arg;
  if (auto xbar = phi.conjugate_argmax(s)) {
    Vec a(2);
    a << *xbar, phi.value(*xbar);
    arg = a;
  }
  return finite_value(val, arg);
}

// Projected ascent with a doubling trust region; returns the best value
// and iterate seen. `grew` reports that the iterates left the growth
// window while still improving.
struct AscentResult {
  double best;
  Vec bestx;
  bool grew = false;
};

AscentResult sublevel_ascent(const ConvexSet& S, const Vec& anchor, const Vec& w, int budget) {
  AscentResult res{w.dot(anchor), anchor, false};
  Vec x = anchor;
  Vec dir = w.normalized();
  double trust = 1.0 + x.norm();
  const double growth_limit = 1e7 * (1.0 + anchor.norm());
  for (int k = 0; k < budget; ++k) {
    Vec cand = project(S, x + trust * dir);
    double val = w.dot(cand);
    if (val > res.best + 1e-12 * (1.0 + std::abs(res.best))) {
      res.best = val;
      x = cand;
      res.bestx = cand;
      trust *= 2.0;
    } else {
      trust *= 0.25;
    }
    if (trust < 1e-10 * (1.0 + x.norm())) return res;
    if (x.norm() > growth_limit) {
      res.grew = true;
      return res;
    }
  }
  return res;
}

// The finite/infinite decision is certificate-based: the exact recession
// cone decides it whenever the horizons are closed form, and the ascent
// only supplies values. Growth alone never declares an infinite value.
SupportValue support_sublevel(const ConvexSet& S, const SublevelSystem& sys, const Vec& w,
                              double tol) {
  const Vec anchor = sys.anchor();
  const double wn = w.norm();
  ConeRep K = recession_cone(S);
  ConeMax cm = cone_linear_max(K, w / wn);

  auto infinite_via_ray = [&](Vec ray) -> SupportValue {
    ray.normalize();
    if (recession_probe(S, ray, tol) && w.dot(ray) > 0)
      return infinite_value(ray, "recession direction with positive pairing");
    throw InconclusiveError("support: cone certificate failed validation", w.dot(anchor));
  };

  if (cm.exact) {
    const double mu = std::isfinite(cm.mu) ? cm.mu : -1.0;
    if (mu > kConeTol && cm.argmax) return infinite_via_ray(*cm.argmax);
    if (mu < -kConeTol) {
      // Interior of the barrier cone: the supremum is finite and attained,
      // so the ascent converges to it.
      AscentResult res = sublevel_ascent(S, anchor, w, 200);
      if (res.grew)
        throw InconclusiveError("support: interior margin but unbounded iterates", res.best);
      return finite_value(res.best, res.bestx);
    }
    // Margin vanishes: the supremum may be finite-unattained or slowly
    // infinite; neither admits a certificate from probing.
    AscentResult res = sublevel_ascent(S, anchor, w, 60);
    throw InconclusiveError("support: vanishing recession margin is undecidable by probes",
                            res.best);
  }

  // Sampled cone: a certified direction with positive pairing still proves
  // the infinite case; otherwise rely on the ascent and stay honest.
  if (cm.mu > kConeTol && cm.argmax) return infinite_via_ray(*cm.argmax);
  AscentResult res = sublevel_ascent(S, anchor, w, 200);
  if (!res.grew) return finite_value(res.best, res.bestx);
  throw InconclusiveError("support: sampled cone with growing iterates", res.best);
}

}  // namespace

SupportValue support(const ConvexSet& S, const Vec& xstar, double tol) {
  require_finite(xstar, "support");
  require_dim(xstar, S.dimension(), "support");
  if (xstar.norm() == 0.0) return finite_value(0.0, S.anchor());
  return std::visit(
      [&](const auto& s) -> SupportValue {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) return support_hpoly(s, xstar);
        else if constexpr (std::is_same_v<T, VSet>) return support_vset(s, xstar);
        else if constexpr (std::is_same_v<T, Ball>) return support_ball(s, xstar);
        else if constexpr (std::is_same_v<T, Epigraph1D>) return support_epigraph(s, xstar);
        else return support_sublevel(S, s, xstar, tol);
      },
      S.rep());
}

bool in_barrier_cone(const ConvexSet& S, const Vec& xstar, double tol) {
  return support(S, xstar, tol).is_finite();
}

double normalized_limsup_estimate(const ConvexSet& S, const Vec& xstar,
                                  const std::vector<double>& radii, unsigned seed) {
  require_finite(xstar, "normalized_limsup_estimate");
  require_dim(xstar, S.dimension(), "normalized_limsup_estimate");
  if (is_bounded_rep(S) == Tribool::True)
    throw std::invalid_argument("normalized_limsup_estimate: set is bounded in representation");
  if (radii.empty()) throw std::invalid_argument("normalized_limsup_estimate: empty radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("normalized_limsup_estimate: radii must be increasing");

  const int n = S.dimension();
  const Vec anchor = S.anchor();
  const double wn = xstar.norm();
  Vec w = wn > 0 ? Vec(xstar / wn) : Vec(Vec::Zero(n));

  std::vector<double> s_of_r;
  Vec carry = anchor;
  for (double R : radii) {
    double best = -kInf;
    Vec bestc;
    auto consider = [&](const Vec& c) {
      double nc = c.norm();
      if (nc < 0.5 * R || nc > 2.0 * R) return;
      double val = xstar.dot(c) / nc;
      if (val > best) {
        best = val;
        bestc = c;
      }
    };
    // Seeds: scaled carry-over, coordinate pushes, the functional itself.
    std::vector<Vec> seeds;
    if (carry.norm() > 1e-9) seeds.push_back(anchor + (R / carry.norm()) * carry);
    for (int j = 0; j < n; ++j) {
      seeds.push_back(anchor + R * Vec::Unit(n, j));
      seeds.push_back(anchor - R * Vec::Unit(n, j));
    }
    if (wn > 0) seeds.push_back(anchor + R * w);
    Vec c = anchor;
    for (const Vec& sd : seeds) {
      Vec p = project(S, sd);
      consider(p);
      if (best > -kInf && p.norm() > 0.5 * R) c = p;
    }
    if (!(best > -kInf)) {
      // no shell point reached from seeds; walk outward from the anchor
      c = project(S, anchor + R * (wn > 0 ? w : Vec(Vec::Unit(n, 0))));
    }
    for (int it = 0; it < 50; ++it) {
      Vec cand = project(S, c + (0.15 * R) * (wn > 0 ? w : Vec::Unit(n, 0)));
      double nc = cand.norm();
      if (nc > 1e-9) {
        Vec scaled = project(S, cand * (R / nc));
        consider(scaled);
        consider(cand);
        if (scaled.norm() > 0.4 * R) {
          c = scaled;
        } else {
          c = cand;
        }
      }
    }
    (void)seed;
    if (best > -kInf) {
      s_of_r.push_back(best);
      carry = bestc;
    }
  }
  if (s_of_r.empty())
    throw InconclusiveError("normalized_limsup_estimate: no shell point found", -kInf);
  size_t tail = (s_of_r.size() + 1) / 2;
  double out = -kInf;
  for (size_t i = s_of_r.size() - tail; i < s_of_r.size(); ++i) out = std::max(out, s_of_r[i]);
  return out;
}

}  // namespace barricade
