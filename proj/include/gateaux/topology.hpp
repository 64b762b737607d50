#pragma once

// Membership in the differentiability set B of each modeled norm, and the
// constructions showing B is dense (and, for l-infinity, open).

#include <cstdint>
#include <optional>
#include <string>

#include "gateaux/spaces.hpp"

namespace gateaux {

struct MembershipReport {
    bool in_B = false;
    std::optional<std::size_t> p;    ///< 1-based certifying index (sequence spaces)
    std::optional<double> t0;        ///< certifying peak (function spaces)
    std::optional<double> gap;
    std::string certificate;
};

/// l1: min |x_n| > eps.  l-infinity / R^t: a dominant index with gap > eps
/// (truncated tail counts as 0).  C_AB / LINF_R: a single continuous peak of
/// |f| whose margin over every other knot value exceeds eps.  NBV: never.
MembershipReport classify(const SpacePoint& x, double eps);

/// Zero coordinates n (1-based) become eps / 2^(n+1); the l1 distance stays
/// below eps / 2.
SpacePoint densify_l1(const SpacePoint& x, double eps);

/// Raises the first coordinate with |x_p| > |x|_inf - eps/4 to
/// sig(x_p)(|x|_inf + eps/2).
SpacePoint densify_linf(const SpacePoint& x, double eps);

/// Samples points of B(x, eps/4) and checks each keeps |y_k| <= |y_p| - eps/2.
bool ball_check_linf(const SpacePoint& x, double eps, int trial_count, std::uint64_t seed);

/// Adds a triangular bump of height eps/2 at a maximizer of |f|, sign-aligned
/// with f there, supported inside the adjacent segments.
SpacePoint densify_csup(const SpacePoint& f, double eps);

}  // namespace gateaux
