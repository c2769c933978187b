#pragma once

#include "barricade/convex_set.hpp"
#include "barricade/types.hpp"

#include <optional>
#include <vector>

namespace barricade {

/// Value of sup{<xstar, c> : c in S} together with a certificate.
/// Infinite values carry a unit recession ray with positive pairing when
/// one exists; suprema can be genuinely infinite without any linear
/// certificate (e.g. along a parabolic boundary), in which case `ray` is
/// absent and `growth_note` explains the route taken.
struct SupportValue {
  enum class Status { Finite, Infinite };
  Status status = Status::Finite;
  double value = 0.0;              // Finite only
  std::optional<Vec> argsup;       // approximate maximizer when attained
  std::optional<Vec> ray;          // Infinite: certificate ray when available
  std::string growth_note;

  bool is_finite() const { return status == Status::Finite; }
};

SupportValue support(const ConvexSet& S, const Vec& xstar, double tol = kMembershipTol);

/// True iff support(S, xstar) is finite. Propagates InconclusiveError for
/// sublevel systems whose ray search exhausts its budget.
bool in_barrier_cone(const ConvexSet& S, const Vec& xstar, double tol = kMembershipTol);

/// Numeric probe of limsup_{c in S, |c|->inf} <xstar,c>/|c|: maximizes the
/// normalized pairing over shells |c| ~ R for each radius and returns the
/// max over the tail half of the radius list. Diagnostic only, not a proof.
double normalized_limsup_estimate(const ConvexSet& S, const Vec& xstar,
                                  const std::vector<double>& radii, unsigned seed = 0);

}  // namespace barricade
