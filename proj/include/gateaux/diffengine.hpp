#pragma once

// Numerical directional differentiation of real functionals on modeled spaces.
//
// One-sided limits are read off a geometric grid of steps: a side converges
// when its last two quotients agree within tol, widened by the floating-point
// resolution of the quotient itself (about eps * |f| / t).  On piecewise
// linear functionals and dyadic data the quotients are exactly constant below
// the structural gap, so the widening is zero in practice.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gateaux/linear_functional.hpp"
#include "gateaux/spaces.hpp"

namespace gateaux {

struct Functional {
    std::string name;
    SpaceTag space;
    std::function<double(const SpacePoint&)> evaluate;

    double operator()(const SpacePoint& x) const;
};

/// The norm of the given space as a functional.
Functional norm_functional(SpaceTag tag);

struct TGrid {
    double t0 = 0.125;
    double rho = 0.5;
    int count = 20;

    void validate() const;
    std::vector<double> steps() const;
};

inline constexpr double kDefaultTol = 1e-9;

struct QuotientTrace {
    std::vector<double> steps;
    std::vector<double> forward;   ///< (f(x + t h) - f(x)) / t
    std::vector<double> backward;  ///< same with -t
    std::optional<double> d_plus;
    std::optional<double> d_minus;
    bool plus_converged = false;
    bool minus_converged = false;
    double resolution = 0.0;       ///< tolerance widening applied to the last comparison
};

enum class DiffStatus { Frechet, Hadamard, Gateaux, NotGateaux, Inconclusive };
const char* to_string(DiffStatus status);

struct DiffVerdict {
    DiffStatus status = DiffStatus::Inconclusive;
    std::optional<LinearFunctionalRep> derivative;
    std::optional<SpacePoint> failure_witness;
    std::vector<QuotientTrace> traces;
    std::optional<double> value;               ///< derivative applied to the queried direction
    std::vector<double> remainder_profile;     ///< frechet_verdict: max |r(s h)| / s per radius
    std::string note;
};

double directional_quotient(const Functional& f, const SpacePoint& x, const SpacePoint& h, double t);

QuotientTrace one_sided_derivatives(const Functional& f, const SpacePoint& x, const SpacePoint& h,
                                    const TGrid& grid = {}, double tol = kDefaultTol);

/// For maps that are smooth along h: each side is Richardson-extrapolated
/// across consecutive grid steps, and the limit is read where consecutive
/// extrapolants agree best.  Exact on piecewise linear quotients as well.
QuotientTrace extrapolated_one_sided(const Functional& f, const SpacePoint& x, const SpacePoint& h,
                                     const TGrid& grid = {}, double tol = kDefaultTol);

/// Probes every direction, then fits the derivative on a basis adapted to x
/// (coordinate vectors, or nodal hats on x's mesh) and checks the fit against
/// the probes plus additivity and homogeneity on consecutive probe pairs.
DiffVerdict gateaux_verdict(const Functional& f, const SpacePoint& x, const std::vector<SpacePoint>& probe_dirs,
                            const TGrid& grid = {}, double tol = kDefaultTol);

/// Each perturbation family k_j -> h is paired with the grid step t_j.
DiffVerdict hadamard_verdict(const Functional& f, const SpacePoint& x, const SpacePoint& h,
                             const std::vector<std::vector<SpacePoint>>& perturbations,
                             const TGrid& grid = {}, double tol = kDefaultTol);

DiffVerdict frechet_verdict(const Functional& f, const SpacePoint& x, const LinearFunctionalRep& u,
                            const std::vector<SpacePoint>& sphere_samples, const std::vector<double>& radii,
                            double tol = kDefaultTol);

double local_lipschitz_estimate(const Functional& f, const SpacePoint& x, double radius, int pair_count,
                                std::uint64_t seed);

/// Sampled pair (y, z) inside B(x, radius); shared by the Lipschitz estimators.
struct BallPair {
    SpacePoint y;
    SpacePoint z;
};

/// Pairs used by local_lipschitz_estimate.  For sequence spaces each pair is
/// refined by greedy sign flips of the increment so that the ratio
/// |f(y) - f(z)| / |y - z| is locally maximal over the cube's vertices.
std::vector<BallPair> lipschitz_pairs(const Functional& f, const SpacePoint& x, double radius, int pair_count,
                                      std::uint64_t seed);

/// Unit coordinate direction e_p (1-based) with the shape of x.
SpacePoint unit_direction(const SpacePoint& x, std::size_t p);

/// Continuous hat on x's mesh: 1 at knot j (0-based), 0 at every other knot.
SpacePoint nodal_hat(const SpacePoint& x, std::size_t j);

}  // namespace gateaux
