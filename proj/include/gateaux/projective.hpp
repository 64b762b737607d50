#pragma once

// Truncation systems R^{d_1} <- R^{d_2} <- ..., cylindrical functionals
// f = m_t o p_t, and chain-rule propagation through 1-d outer maps.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gateaux/diffengine.hpp"
#include "gateaux/spaces.hpp"

namespace gateaux {

/// First t coordinates of a sequence point, as an RT point.
SpacePoint truncate(const SpacePoint& x, std::size_t t);

class ProjectiveSystem {
public:
    const std::vector<std::size_t>& dims() const { return dims_; }
    bool contains(std::size_t t) const;

    /// p_t, for any listed t.
    SpacePoint project(const SpacePoint& x, std::size_t t) const;
    /// p_st on an RT point of dim t, s <= t both listed.
    SpacePoint connect(std::size_t s, std::size_t t, const SpacePoint& xt) const;
    /// p_st o p_tw == p_sw for every listed triple, on the given point.
    bool consistent_on(const SpacePoint& x) const;

private:
    friend ProjectiveSystem make_truncation_system(std::vector<std::size_t> dims);
    std::vector<std::size_t> dims_;
};

/// Throws BAD_DIMS unless dims is nonempty, strictly increasing and >= 1.
ProjectiveSystem make_truncation_system(std::vector<std::size_t> dims);

struct CylindricalFunction {
    std::string base_name;
    std::size_t base_dim = 0;
    Functional base;  ///< m_t on RT of dim base_dim
    Functional full;  ///< evaluated directly on the whole sequence, not through base
};

/// Registry: "wseries_partial" (sum_{k<=t} |x_k| / k^2) and "supnorm"
/// (max_{k<=t} |x_k|).
CylindricalFunction make_cylindrical(const std::string& base, std::size_t t);
CylindricalFunction constant_cylindrical(double c, std::size_t t);
std::vector<std::string> cylindrical_registry();

/// sum_k |x_k| / k^2 over the truncation.
double wseries_eval(const SpacePoint& x);

/// sum_k sig(x_k) h_k / k^2, absent when some x_k = 0 has h_k != 0.
std::optional<double> wseries_gateaux(const SpacePoint& x, const SpacePoint& h);

double cyl_eval(const CylindricalFunction& cf, const ProjectiveSystem& sys, const SpacePoint& x);

/// gateaux_verdict of m_t at p_t(x) along p_t(h), lifted back: the value is
/// the fitted derivative applied to h and witnesses are padded with zeros.
DiffVerdict cyl_gateaux(const CylindricalFunction& cf, const ProjectiveSystem& sys, const SpacePoint& x,
                        const SpacePoint& h, const TGrid& grid = {}, double tol = kDefaultTol);

struct LipschitzFactor {
    double k_f = 0.0;
    double k_m = 0.0;
    bool flag = false;
};

/// k_m from pairs around p_t(x); k_f from pairs around x together with the
/// zero-tail lifts of the base pairs (which stay inside B(x, radius)).
LipschitzFactor lipschitz_factor_check(const CylindricalFunction& cf, const ProjectiveSystem& sys,
                                       const SpacePoint& x, double radius, int pair_count, std::uint64_t seed);

struct OuterMap {
    std::string name;
    std::function<double(double)> g;
};

/// Registry: "cubic" (u^3 + u), "abs", "square", "sin", "exp", "identity".
OuterMap outer_map(const std::string& name);
std::vector<std::string> outer_registry();

DiffVerdict compose_propagate(const OuterMap& outer, const CylindricalFunction& inner, const ProjectiveSystem& sys,
                              const SpacePoint& x, const SpacePoint& h, const TGrid& grid = {},
                              double tol = kDefaultTol);

/// One verdict per component of a vector-valued outer map.
std::vector<DiffVerdict> compose_propagate_componentwise(const std::vector<OuterMap>& outer,
                                                         const CylindricalFunction& inner,
                                                         const ProjectiveSystem& sys, const SpacePoint& x,
                                                         const SpacePoint& h, const TGrid& grid = {},
                                                         double tol = kDefaultTol);

}  // namespace gateaux
