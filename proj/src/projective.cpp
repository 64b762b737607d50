#include "gateaux/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gateaux/error.hpp"
#include "gateaux/linear_functional.hpp"

namespace gateaux {

namespace {

double inv_square(std::size_t k) { return 1.0 / (static_cast<double>(k) * static_cast<double>(k)); }

void require_sequence(const SpacePoint& x, const char* what) {
    if (!x.is_sequence()) throw Error(ErrorCode::SpaceMismatch, std::string(what) + " needs a sequence point");
}

void require_listed(const ProjectiveSystem& sys, std::size_t t) {
    if (!sys.contains(t)) throw Error(ErrorCode::BadDims, "dimension " + std::to_string(t) + " is not in the system");
}

SpacePoint pad(const SpacePoint& v, const SpacePoint& like) {
    std::vector<double> c(like.dim(), 0.0);
    std::copy(v.coords().begin(), v.coords().end(), c.begin());
    return SpacePoint::sequence(like.tag(), std::move(c));
}

LinearFunctionalRep scaled(const LinearFunctionalRep& rep, double s) {
    using K = LinearFunctionalRep::Kind;
    if (s == 0.0 || rep.kind == K::Zero) return LinearFunctionalRep::zero();
    if (rep.kind == K::CoeffSeq) {
        auto c = rep.coeffs;
        for (auto& v : c) v *= s;
        return LinearFunctionalRep::coeff_seq(std::move(c));
    }
    if (rep.kind == K::SignedIndex) {
        if (s == 1.0 || s == -1.0) return LinearFunctionalRep::signed_index(rep.p, rep.sigma * static_cast<int>(s));
        std::vector<double> c(rep.p, 0.0);
        c[rep.p - 1] = s * rep.sigma;
        return LinearFunctionalRep::coeff_seq(std::move(c));
    }
    throw Error(ErrorCode::SpaceMismatch, "point-mass derivatives do not arise on truncation systems");
}

}  // namespace

SpacePoint truncate(const SpacePoint& x, std::size_t t) {
    require_sequence(x, "truncate");
    if (x.dim() < t)
        throw Error(ErrorCode::DimTooSmall,
                    "point has dim " + std::to_string(x.dim()) + ", truncation needs " + std::to_string(t));
    return SpacePoint::sequence(SpaceTag::Rt, std::vector<double>(x.coords().begin(), x.coords().begin() + t));
}

bool ProjectiveSystem::contains(std::size_t t) const {
    return std::binary_search(dims_.begin(), dims_.end(), t);
}

SpacePoint ProjectiveSystem::project(const SpacePoint& x, std::size_t t) const {
    require_listed(*this, t);
    return truncate(x, t);
}

SpacePoint ProjectiveSystem::connect(std::size_t s, std::size_t t, const SpacePoint& xt) const {
    require_listed(*this, s);
    require_listed(*this, t);
    if (s > t) throw Error(ErrorCode::BadDims, "connecting maps go from larger to smaller dims");
    if (xt.tag() != SpaceTag::Rt || xt.dim() != t)
        throw Error(ErrorCode::SpaceMismatch, "connecting map expects an RT point of dim " + std::to_string(t));
    return truncate(xt, s);
}

bool ProjectiveSystem::consistent_on(const SpacePoint& x) const {
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        for (std::size_t j = i; j < dims_.size(); ++j) {
            for (std::size_t k = j; k < dims_.size(); ++k) {
                const auto s = dims_[i];
                const auto t = dims_[j];
                const auto w = dims_[k];
                const auto xw = project(x, w);
                if (connect(s, t, connect(t, w, xw)) != connect(s, w, xw)) return false;
                if (connect(s, w, xw) != project(x, s)) return false;
            }
        }
    }
    return true;
}

ProjectiveSystem make_truncation_system(std::vector<std::size_t> dims) {
    if (dims.empty()) throw Error(ErrorCode::BadDims, "no dimensions given");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1) throw Error(ErrorCode::BadDims, "dimensions must be >= 1");
        if (i > 0 && dims[i] <= dims[i - 1]) throw Error(ErrorCode::BadDims, "dimensions must be strictly increasing");
    }
    ProjectiveSystem sys;
    sys.dims_ = std::move(dims);
    std::vector<double> probe(sys.dims_.back());
    for (std::size_t k = 0; k < probe.size(); ++k) probe[k] = static_cast<double>(k + 1);
    if (!sys.consistent_on(SpacePoint::sequence(SpaceTag::Rt, std::move(probe))))
        throw Error(ErrorCode::BadDims, "connecting maps are not consistent");
    return sys;
}

double wseries_eval(const SpacePoint& x) {
    require_sequence(x, "wseries_eval");
    double s = 0.0;
    for (std::size_t k = 1; k <= x.dim(); ++k) s += std::abs(x.coord(k)) * inv_square(k);
    return s;
}

std::optional<double> wseries_gateaux(const SpacePoint& x, const SpacePoint& h) {
    require_sequence(x, "wseries_gateaux");
    require_sequence(h, "wseries_gateaux");
    if (x.dim() != h.dim()) throw Error(ErrorCode::SpaceMismatch, "x and h have different dims");
    double s = 0.0;
    for (std::size_t k = 1; k <= x.dim(); ++k) {
        if (h.coord(k) == 0.0) continue;
        if (x.coord(k) == 0.0) return std::nullopt;
        s += sig(x.coord(k)) * h.coord(k) * inv_square(k);
    }
    return s;
}

CylindricalFunction make_cylindrical(const std::string& base, std::size_t t) {
    if (t < 1) throw Error(ErrorCode::BadDims, "base dimension must be >= 1");
    CylindricalFunction cf;
    cf.base_name = base;
    cf.base_dim = t;
    auto need = [t](const SpacePoint& x) {
        if (x.dim() < t) throw Error(ErrorCode::DimTooSmall, "point has fewer than " + std::to_string(t) + " coords");
    };
    if (base == "wseries_partial") {
        cf.base = {"wseries_partial", SpaceTag::Rt, [](const SpacePoint& y) { return wseries_eval(y); }};
        cf.full = {"wseries_partial_full", SpaceTag::LinfSeq, [t, need](const SpacePoint& x) {
                       need(x);
                       double s = 0.0;
                       for (std::size_t k = 1; k <= t; ++k) s += std::abs(x.coord(k)) * inv_square(k);
                       return s;
                   }};
    } else if (base == "supnorm") {
        cf.base = {"supnorm", SpaceTag::Rt, [](const SpacePoint& y) { return eval_norm(y).value; }};
        cf.full = {"supnorm_full", SpaceTag::LinfSeq, [t, need](const SpacePoint& x) {
                       need(x);
                       double m = 0.0;
                       for (std::size_t k = 1; k <= t; ++k) m = std::max(m, std::abs(x.coord(k)));
                       return m;
                   }};
    } else {
        throw Error(ErrorCode::PreconditionFailed, "unknown cylindrical base '" + base + "'");
    }
    return cf;
}

CylindricalFunction constant_cylindrical(double c, std::size_t t) {
    if (t < 1) throw Error(ErrorCode::BadDims, "base dimension must be >= 1");
    CylindricalFunction cf;
    cf.base_name = "constant";
    cf.base_dim = t;
    cf.base = {"constant", SpaceTag::Rt, [c](const SpacePoint&) { return c; }};
    cf.full = {"constant_full", SpaceTag::LinfSeq, [c](const SpacePoint&) { return c; }};
    return cf;
}

std::vector<std::string> cylindrical_registry() { return {"wseries_partial", "supnorm"}; }

double cyl_eval(const CylindricalFunction& cf, const ProjectiveSystem& sys, const SpacePoint& x) {
    return cf.base(sys.project(x, cf.base_dim));
}

DiffVerdict cyl_gateaux(const CylindricalFunction& cf, const ProjectiveSystem& sys, const SpacePoint& x,
                        const SpacePoint& h, const TGrid& grid, double tol) {
    require_sequence(x, "cyl_gateaux");
    if (h.tag() != x.tag() || h.dim() != x.dim())
        throw Error(ErrorCode::SpaceMismatch, "direction does not match the point");
    const auto t = cf.base_dim;
    auto v = gateaux_verdict(cf.base, sys.project(x, t), {sys.project(h, t)}, grid, tol);
    if (v.failure_witness) v.failure_witness = pad(*v.failure_witness, x);
    if (v.derivative) v.value = apply(*v.derivative, h);
    return v;
}

LipschitzFactor lipschitz_factor_check(const CylindricalFunction& cf, const ProjectiveSystem& sys,
                                       const SpacePoint& x, double radius, int pair_count, std::uint64_t seed) {
    const auto xt = sys.project(x, cf.base_dim);
    LipschitzFactor out;
    const auto tail = x.coords().subspan(cf.base_dim);
    auto lift = [&](const SpacePoint& y) {
        std::vector<double> c(y.coords().begin(), y.coords().end());
        c.insert(c.end(), tail.begin(), tail.end());
        return SpacePoint::sequence(x.tag(), std::move(c));
    };
    auto ratio = [](const Functional& f, const SpacePoint& y, const SpacePoint& z) {
        const double d = distance(y, z);
        return d == 0.0 ? 0.0 : std::abs(f(y) - f(z)) / d;
    };
    for (const auto& pr : lipschitz_pairs(cf.base, xt, radius, pair_count, seed)) {
        out.k_m = std::max(out.k_m, ratio(cf.base, pr.y, pr.z));
        out.k_f = std::max(out.k_f, ratio(cf.full, lift(pr.y), lift(pr.z)));
    }
    for (const auto& pr : lipschitz_pairs(cf.full, x, radius, pair_count, seed ^ 0x5DEECE66DULL))
        out.k_f = std::max(out.k_f, ratio(cf.full, pr.y, pr.z));
    if (out.k_f == 0.0)
        throw Error(ErrorCode::NonconstancyUnverified, "f took a single value on every sampled pair");
    out.flag = std::isfinite(out.k_m) && out.k_m <= out.k_f;
    return out;
}

OuterMap outer_map(const std::string& name) {
    if (name == "cubic") return {name, [](double u) { return u * u * u + u; }};
    if (name == "abs") return {name, [](double u) { return std::abs(u); }};
    if (name == "square") return {name, [](double u) { return u * u; }};
    if (name == "sin") return {name, [](double u) { return std::sin(u); }};
    if (name == "exp") return {name, [](double u) { return std::exp(u); }};
    if (name == "identity") return {name, [](double u) { return u; }};
    throw Error(ErrorCode::PreconditionFailed, "unknown outer map '" + name + "'");
}

std::vector<std::string> outer_registry() { return {"cubic", "abs", "square", "sin", "exp", "identity"}; }

DiffVerdict compose_propagate(const OuterMap& outer, const CylindricalFunction& inner, const ProjectiveSystem& sys,
                              const SpacePoint& x, const SpacePoint& h, const TGrid& grid, double tol) {
    auto iv = cyl_gateaux(inner, sys, x, h, grid, tol);
    const double y = cyl_eval(inner, sys, x);
    const Functional g1{"outer_" + outer.name, SpaceTag::Rt, [&](const SpacePoint& u) { return outer.g(u.coord(1)); }};
    const auto otr = extrapolated_one_sided(g1, SpacePoint::sequence(SpaceTag::Rt, {y}),
                                            SpacePoint::sequence(SpaceTag::Rt, {1.0}), grid, tol);
    const bool outer_converged = otr.plus_converged && otr.minus_converged;
    const bool outer_kink = outer_converged && std::abs(*otr.d_plus - *otr.d_minus) > tol + otr.resolution;

    DiffVerdict v;
    v.traces = iv.traces;
    v.traces.push_back(otr);
    if (iv.status == DiffStatus::NotGateaux) {
        v.status = DiffStatus::NotGateaux;
        v.failure_witness = iv.failure_witness;
        v.note = "inner map is not Gateaux differentiable: " + iv.note;
        return v;
    }
    if (!iv.derivative) {
        v.note = "inner verdict inconclusive: " + iv.note;
        return v;
    }
    const auto& rep = *iv.derivative;

    if (outer_kink) {
        // d+(g o f) = g'_+ v and d-(g o f) = g'_- v along any h with v = Df(x)h != 0.
        std::optional<SpacePoint> w;
        if (apply(rep, h) != 0.0) w = h;
        for (std::size_t k = 1; !w && k <= x.dim(); ++k) {
            auto e = unit_direction(x, k);
            if (apply(rep, e) != 0.0) w = e;
        }
        if (!w) {
            v.note = "outer map has a kink at f(x) but the inner derivative vanishes";
            return v;
        }
        v.status = DiffStatus::NotGateaux;
        v.failure_witness = *w;
        v.note = "outer one-sided derivatives differ at f(x) and the inner derivative is nonzero along the witness";
        return v;
    }
    if (!outer_converged) {
        v.note = "outer derivative did not converge on the grid";
        return v;
    }

    const double gp = *otr.d_plus;
    const double value = gp * apply(rep, h);
    const Functional comp{outer.name + "_o_" + inner.base_name, inner.full.space,
                          [&](const SpacePoint& z) { return outer.g(inner.full(z)); }};
    const auto ctr = extrapolated_one_sided(comp, x, h, grid, tol);
    v.traces.push_back(ctr);
    // Error bars of all three estimates: the composition's quotients, g' scaled
    // by Df(x)h, and Df(x)h (read off the inner probe trace) scaled by g'.
    const double inner_bar = iv.traces.empty() ? 0.0 : tol + iv.traces.front().resolution;
    const double allow = tol + ctr.resolution + otr.resolution * std::abs(apply(rep, h)) + std::abs(gp) * inner_bar;
    if (!(ctr.plus_converged && ctr.minus_converged) || std::abs(*ctr.d_plus - value) > allow ||
        std::abs(*ctr.d_minus - value) > allow) {
        v.note = "direct quotients of the composition do not confirm g'(f(x)) * Df(x)h";
        return v;
    }
    v.status = DiffStatus::Gateaux;
    v.derivative = scaled(rep, gp);
    v.value = value;
    return v;
}

std::vector<DiffVerdict> compose_propagate_componentwise(const std::vector<OuterMap>& outer,
                                                         const CylindricalFunction& inner,
                                                         const ProjectiveSystem& sys, const SpacePoint& x,
                                                         const SpacePoint& h, const TGrid& grid, double tol) {
    std::vector<DiffVerdict> out;
    out.reserve(outer.size());
    for (const auto& g : outer) out.push_back(compose_propagate(g, inner, sys, x, h, grid, tol));
    return out;
}

}  // namespace gateaux
