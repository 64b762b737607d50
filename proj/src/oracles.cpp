#include "gateaux/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "gateaux/error.hpp"

namespace gateaux {

namespace {

void require_tag(const SpacePoint& x, SpaceTag tag, const char* op) {
    if (x.tag() != tag)
        throw Error(ErrorCode::SpaceMismatch, std::string(op) + " expects " + std::string(to_string(tag)));
}

int sig_or_plus(double v) { return v < 0.0 ? -1 : 1; }

// One-sided limit at `location` whose magnitude equals the sup.
double maximal_limit_at(const SpacePoint& f, double location, double sup) {
    for (const auto& kl : f.knot_limits()) {
        if (kl.location == location && std::abs(kl.value) == sup) return kl.value;
    }
    return f.value_at(location);
}

SpacePoint step_direction(const SpacePoint& like, double split, double left, double right) {
    std::vector<double> knots{like.a(), split, like.b()};
    std::vector<Segment> segs{{left, left}, {right, right}};
    return SpacePoint::piecewise(like.tag(), std::move(knots), std::move(segs));
}

std::optional<LinearFunctionalRep> unique_peak(const SpacePoint& f, double rho) {
    if (!(rho > 0.0)) throw Error(ErrorCode::PreconditionFailed, "rho must be positive");
    const auto locs = sup_locations(f);
    const double sup = eval_norm(f).value;
    if (locs.size() != 1 || sup == 0.0) return std::nullopt;
    const double t0 = locs.front();
    const double rest = std::max({0.0, f.sup_abs_on(f.a(), t0 - rho), f.sup_abs_on(t0 + rho, f.b())});
    const double gap = sup - rest;
    if (!(gap > 0.0)) return std::nullopt;
    return LinearFunctionalRep::point_mass(t0, sig(f.value_at(t0)), gap);
}

}  // namespace

std::optional<LinearFunctionalRep> oracle_l1(const SpacePoint& x) {
    require_tag(x, SpaceTag::L1Seq, "oracle_l1");
    std::vector<double> c;
    c.reserve(x.dim());
    for (double v : x.coords()) {
        if (v == 0.0) return std::nullopt;
        c.push_back(sig(v));
    }
    return LinearFunctionalRep::coeff_seq(std::move(c));
}

std::optional<LinearFunctionalRep> oracle_linf(const SpacePoint& x, double eps) {
    if (!(x.tag() == SpaceTag::LinfSeq || x.tag() == SpaceTag::Rt))
        throw Error(ErrorCode::SpaceMismatch, "oracle_linf expects LINF_SEQ or RT");
    if (!(eps > 0.0)) throw Error(ErrorCode::PreconditionFailed, "eps must be positive");
    const auto c = x.coords();
    const std::size_t p = *eval_norm(x).index;
    double others = 0.0;  // truncated tail
    for (std::size_t k = 1; k <= c.size(); ++k) {
        if (k != p) others = std::max(others, std::abs(c[k - 1]));
    }
    if (!(others < std::abs(c[p - 1]) - eps)) return std::nullopt;
    return LinearFunctionalRep::signed_index(p, sig(c[p - 1]), eps);
}

SpacePoint witness_linf(const SpacePoint& x, double tie_tol) {
    if (!(x.tag() == SpaceTag::LinfSeq || x.tag() == SpaceTag::Rt))
        throw Error(ErrorCode::SpaceMismatch, "witness_linf expects LINF_SEQ or RT");
    const auto c = x.coords();
    const double beta = eval_norm(x).value;
    std::vector<std::size_t> top;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (std::abs(c[k]) >= beta - tie_tol) top.push_back(k);
    }
    if (top.size() < 2) throw Error(ErrorCode::NotInComplement, "x has a strictly dominant coordinate");
    std::vector<double> h(c.size(), 0.0);
    h[top[0]] = sig_or_plus(c[top[0]]);
    h[top[1]] = -sig_or_plus(c[top[1]]);
    return SpacePoint::sequence(x.tag(), std::move(h));
}

std::vector<double> sup_locations(const SpacePoint& f) {
    if (f.is_sequence()) throw Error(ErrorCode::SpaceMismatch, "sup_locations needs a function space");
    const double sup = eval_norm(f).value;
    std::vector<double> locs;
    for (const auto& kl : f.knot_limits()) {
        if (std::abs(kl.value) == sup) locs.push_back(kl.location);
    }
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    return locs;
}

std::optional<LinearFunctionalRep> oracle_csup(const SpacePoint& f, double rho) {
    require_tag(f, SpaceTag::CAb, "oracle_csup");
    return unique_peak(f, rho);
}

std::optional<LinearFunctionalRep> oracle_linf_function(const SpacePoint& f, double rho) {
    require_tag(f, SpaceTag::LinfR, "oracle_linf_function");
    if (f.has_jumps()) return std::nullopt;
    return unique_peak(f, rho);
}

SpacePoint witness_linf_function(const SpacePoint& f) {
    require_tag(f, SpaceTag::LinfR, "witness_linf_function");
    const auto locs = sup_locations(f);
    if (locs.size() < 2) throw Error(ErrorCode::NoDoubleMax, "|f| reaches its sup at fewer than two points");
    const double sup = eval_norm(f).value;
    const double x0 = locs[0];
    const double x1 = locs[1];
    const double split = x0 + (x1 - x0) / 2.0;
    const double left = -sig_or_plus(maximal_limit_at(f, x0, sup));
    const double right = sig_or_plus(maximal_limit_at(f, x1, sup));
    return step_direction(f, split, left, right);
}

NbvExtremes nbv_extremes(const SpacePoint& f) {
    const auto limits = f.knot_limits();
    const KnotLimit* lo = &limits.front();
    const KnotLimit* hi = &limits.front();
    for (const auto& kl : limits) {
        if (kl.value < lo->value) lo = &kl;
        if (kl.value > hi->value) hi = &kl;
    }
    return {lo->location, hi->location};
}

SpacePoint witness_nbv(const SpacePoint& f) {
    require_tag(f, SpaceTag::NbvAb, "witness_nbv");
    const auto knots = f.knots();
    const auto segs = f.segments();
    auto segment_mid = [&](std::size_t i) { return knots[i] + (knots[i + 1] - knots[i]) / 2.0; };

    double target = f.is_zero() ? f.a() + (f.b() - f.a()) / 2.0 : 0.0;
    if (!f.is_zero()) {
        const auto [c, d] = nbv_extremes(f);
        target = c + (d - c) / 2.0;
    }

    // Adding a unit jump at a continuity point of f raises the total variation
    // by exactly |t|.  Interior continuity knots are used as is; otherwise the
    // step goes to the center of the segment holding the target, which splits
    // that segment without rounding on dyadic data.
    double split = segment_mid(0);
    if (target >= f.b()) {
        split = segment_mid(segs.size() - 1);
    } else if (target > f.a()) {
        auto it = std::upper_bound(knots.begin(), knots.end(), target);
        const auto i = static_cast<std::size_t>(it - knots.begin()) - 1;
        if (knots[i] == target) {
            split = f.jump(i - 1) == 0.0 ? target : segment_mid(i);
        } else {
            split = segment_mid(i);
        }
    }
    return step_direction(f, split, 0.0, 1.0);
}

}  // namespace gateaux
