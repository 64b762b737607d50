#pragma once

// Closed-form derivatives of the modeled norms and the directions that
// witness non-differentiability.  These are ground truth for diffengine, so
// they never call into it.

#include <optional>
#include <vector>

#include "gateaux/linear_functional.hpp"
#include "gateaux/spaces.hpp"

namespace gateaux {

/// l1 norm: (sig(x_n)) when no coordinate vanishes.
std::optional<LinearFunctionalRep> oracle_l1(const SpacePoint& x);

/// l-infinity norm: sig(x_p) h_p when |x_k| < |x_p| - eps for every k != p.
/// Coordinates beyond the truncation count as 0.  gap = eps.
std::optional<LinearFunctionalRep> oracle_linf(const SpacePoint& x, double eps);

/// +sig at the first sup index, -sig at the second; throws NOT_IN_COMPLEMENT
/// when fewer than two indices are within tie_tol of the sup.  The quotient
/// table (+1 / -1) is exact when the top two are tied exactly.
SpacePoint witness_linf(const SpacePoint& x, double tie_tol);

/// Distinct knot locations where |f| reaches its sup, in increasing order.
/// A flat maximal segment contributes both ends.
std::vector<double> sup_locations(const SpacePoint& f);

/// C[a, b] sup norm: sig(f(t0)) delta_{t0} when |f| peaks at a single point;
/// gap = sup|f| - sup_{|t - t0| >= rho} |f(t)| must be positive.
std::optional<LinearFunctionalRep> oracle_csup(const SpacePoint& f, double rho);

/// L-infinity(R) on the modeling window; same rule as oracle_csup, and
/// absent for discontinuous f.
std::optional<LinearFunctionalRep> oracle_linf_function(const SpacePoint& f, double rho);

/// Step direction split at the midpoint of the first two maxima of |f|,
/// oriented to lower |f| at the left maximum and raise it at the right one.
SpacePoint witness_linf_function(const SpacePoint& f);

/// Unit step placed at a continuity point of f near the midpoint of its
/// minimizer and maximizer locations.
SpacePoint witness_nbv(const SpacePoint& f);

/// Minimizer and maximizer locations (c, d) of the one-sided limits of f.
struct NbvExtremes {
    double c;
    double d;
};
NbvExtremes nbv_extremes(const SpacePoint& f);

}  // namespace gateaux
