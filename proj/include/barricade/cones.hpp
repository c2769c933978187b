#pragma once

#include "barricade/convex_set.hpp"
#include "barricade/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace barricade {

/// A convex cone, either exact (polyhedral in H- or V-form) or a certified
/// sampled subset of directions.
struct ConeRep {
  enum class Kind { PolyhedralH, PolyhedralV, Sampled };
  Kind kind = Kind::PolyhedralV;
  int dim = 0;
  Mat A;                        // PolyhedralH: {v : Av <= 0}; zero rows mean R^n
  std::vector<Vec> generators;  // PolyhedralV: cone(generators), unit length
  std::vector<Vec> directions;  // Sampled: unit directions verified in the cone

  bool exact() const { return kind != Kind::Sampled; }

  static ConeRep whole_space(int n);
  static ConeRep trivial(int n);
  static ConeRep from_rows(Mat A);
  static ConeRep from_generators(std::vector<Vec> gens, int n);
  static ConeRep sampled(std::vector<Vec> dirs, int n);
};

ConeRep recession_cone(const ConvexSet& S);

/// Largest pairing of w with the cone, measured over the unit box faces
/// (H-form) or the unit generators (V-form). The sign is exact for exact
/// cones; `argmax` is a nonzero attaining direction when mu > -inf.
struct ConeMax {
  double mu = -kInf;
  std::optional<Vec> argmax;
  bool exact = true;
};
ConeMax cone_linear_max(const ConeRep& K, const Vec& w);

bool cone_is_trivial(const ConeRep& K);      // exactly {0}; exact kinds only
bool cone_is_whole_space(const ConeRep& K);
bool cone_contains(const ConeRep& K, const Vec& v, double tol = 1e-9);
Tribool cone_pointed(const ConeRep& K);

/// Unit directions inside the cone: extreme rays (+- lineality basis) for
/// small polyhedral cones, LP face maximizers and filtered low-discrepancy
/// samples otherwise.
std::vector<Vec> cone_sample_directions(const ConeRep& K, int budget, unsigned seed);

/// Extreme-ray/lineality enumeration for {v : Av <= 0}; intended for small
/// dimensions (n <= 4) where subset enumeration is cheap.
std::vector<Vec> enumerate_cone_generators(const Mat& A);

struct BarrierClassification {
  enum class Verdict { InteriorPoint, BoundaryPoint, Outside };
  Verdict verdict = Verdict::BoundaryPoint;
  double alpha = 0.0;           // InteriorPoint: <x*,c> <= -alpha|c| for |c| >= R
  double R = 0.0;
  std::optional<Vec> ray;       // Outside: recession ray with positive pairing when available
  double mu = 0.0;              // cone margin that produced the verdict
};

/// Decide x* against Int barc(S) via the recession-cone margin
/// mu = sup{<x*,v> : v in rec(S), |v| = 1}; interior verdicts are
/// cross-checked against the direct far-points criterion.
BarrierClassification classify_barrier(const ConvexSet& S, const Vec& xstar,
                                       double tol = kConeTol);

struct SspVerdict {
  enum class Verdict { HasSSP, LacksSSP, Inconclusive };
  enum class Rationale {
    Bounded,
    OneDimensional,
    WholeSpace,
    AffineHullProper,
    PolyhedralBoundary,
    EpigraphConjugate,
    SublevelProbe,
    SampleBudgetExhausted,
    ConstraintDescent,
  };
  Verdict verdict = Verdict::Inconclusive;
  Rationale rationale = Rationale::SampleBudgetExhausted;
  std::optional<Vec> witness;  // LacksSSP: x* in barc \ (Int barc u {0})
};

const char* to_string(SspVerdict::Verdict v);
const char* to_string(SspVerdict::Rationale r);

SspVerdict ssp_verdict(const ConvexSet& S, double tol = kConeTol, unsigned seed = 0);

/// Boundedness decided exactly through the recession cone where possible.
Tribool is_bounded_exact(const ConvexSet& S);

/// Nonempty interior of the barrier cone == pointedness of the recession cone.
Tribool int_barc_nonempty(const ConvexSet& S);

/// Rank of the affine hull detected from 2n+2 projection probes.
int affine_hull_rank(const ConvexSet& S, Vec* normal_out = nullptr);

}  // namespace barricade
