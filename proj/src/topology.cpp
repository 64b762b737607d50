#include "gateaux/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gateaux/error.hpp"
#include "gateaux/linear_functional.hpp"
#include "gateaux/oracles.hpp"

namespace gateaux {

namespace {

struct Dominance {
    std::size_t p;     // 1-based
    double gap;        // |x_p| - max_{k != p} |x_k|, tail counted as 0
};

Dominance dominance(const SpacePoint& x) {
    const auto c = x.coords();
    const std::size_t p = *eval_norm(x).index;
    double others = 0.0;
    for (std::size_t k = 1; k <= c.size(); ++k) {
        if (k != p) others = std::max(others, std::abs(c[k - 1]));
    }
    return {p, std::abs(c[p - 1]) - others};
}

MembershipReport classify_peak(const SpacePoint& f, double eps) {
    MembershipReport r;
    if (f.has_jumps()) {
        r.certificate = "discontinuous element: sup is not attained at a single point";
        return r;
    }
    const auto locs = sup_locations(f);
    const double sup = eval_norm(f).value;
    if (locs.size() != 1 || sup == 0.0) {
        r.certificate = "|f| reaches its sup at " + std::to_string(locs.size()) + " knots";
        return r;
    }
    double runner_up = 0.0;
    for (const auto& kl : f.knot_limits()) {
        if (kl.location != locs.front()) runner_up = std::max(runner_up, std::abs(kl.value));
    }
    const double gap = sup - runner_up;
    if (!(gap > eps)) {
        r.certificate = "peak margin " + std::to_string(gap) + " does not exceed eps";
        return r;
    }
    r.in_B = true;
    r.t0 = locs.front();
    r.gap = gap;
    r.certificate = "|f(t0)| exceeds |f| at every other knot by gap";
    return r;
}

}  // namespace

MembershipReport classify(const SpacePoint& x, double eps) {
    if (!(eps >= 0.0)) throw Error(ErrorCode::PreconditionFailed, "eps must be >= 0");
    MembershipReport r;
    switch (x.tag()) {
        case SpaceTag::L1Seq: {
            const auto c = x.coords();
            std::size_t arg = 0;
            for (std::size_t k = 1; k < c.size(); ++k) {
                if (std::abs(c[k]) < std::abs(c[arg])) arg = k;
            }
            const double m = std::abs(c[arg]);
            if (m > eps) {
                r.in_B = true;
                r.p = arg + 1;
                r.gap = m;
                r.certificate = "min |x_n| > eps";
            } else {
                r.certificate = "coordinate " + std::to_string(arg + 1) + " has |x_n| <= eps";
            }
            return r;
        }
        case SpaceTag::LinfSeq:
        case SpaceTag::Rt: {
            const auto d = dominance(x);
            if (d.gap > eps) {
                r.in_B = true;
                r.p = d.p;
                r.gap = d.gap;
                r.certificate = "|x_k| < |x_p| - eps for all k != p";
            } else {
                r.certificate = "no coordinate dominates the others by more than eps";
            }
            return r;
        }
        case SpaceTag::CAb:
        case SpaceTag::LinfR:
            return classify_peak(x, eps);
        case SpaceTag::NbvAb:
            r.certificate = "total variation norm is nowhere Gateaux differentiable";
            return r;
    }
    return r;
}

SpacePoint densify_l1(const SpacePoint& x, double eps) {
    if (x.tag() != SpaceTag::L1Seq) throw Error(ErrorCode::SpaceMismatch, "densify_l1 expects L1_SEQ");
    if (!(eps > 0.0)) throw Error(ErrorCode::PreconditionFailed, "eps must be positive");
    std::vector<double> y(x.coords().begin(), x.coords().end());
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] == 0.0) y[k] = std::ldexp(eps, -static_cast<int>(k + 2));
    }
    return SpacePoint::sequence(x.tag(), std::move(y));
}

SpacePoint densify_linf(const SpacePoint& x, double eps) {
    if (!(x.tag() == SpaceTag::LinfSeq || x.tag() == SpaceTag::Rt))
        throw Error(ErrorCode::SpaceMismatch, "densify_linf expects LINF_SEQ or RT");
    if (!(eps > 0.0)) throw Error(ErrorCode::PreconditionFailed, "eps must be positive");
    const double phi = eval_norm(x).value;
    std::vector<double> y(x.coords().begin(), x.coords().end());
    std::size_t p = 0;
    if (phi > 0.0) {
        while (!(std::abs(y[p]) > phi - eps / 4.0)) ++p;
    }
    const int s = phi > 0.0 ? sig(y[p]) : 1;
    y[p] = s * (phi + eps / 2.0);
    return SpacePoint::sequence(x.tag(), std::move(y));
}

bool ball_check_linf(const SpacePoint& x, double eps, int trial_count, std::uint64_t seed) {
    if (!(x.tag() == SpaceTag::LinfSeq || x.tag() == SpaceTag::Rt))
        throw Error(ErrorCode::SpaceMismatch, "ball_check_linf expects LINF_SEQ or RT");
    const auto report = classify(x, eps);
    if (!report.in_B) throw Error(ErrorCode::PreconditionFailed, "x is not in B at this eps");
    const std::size_t p = *report.p;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto c = x.coords();
    std::vector<double> y(c.size());
    for (int trial = 0; trial < trial_count; ++trial) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            double u = unit(rng);
            if (u == -1.0) u = 0.0;  // keep the perturbation strictly inside the ball
            y[k] = c[k] + eps / 4.0 * u;
        }
        const double bound = std::abs(y[p - 1]) - eps / 2.0;
        if (bound < 0.0) return false;  // the truncated tail is 0
        for (std::size_t k = 0; k < y.size(); ++k) {
            if (k + 1 != p && !(std::abs(y[k]) <= bound)) return false;
        }
    }
    return true;
}

SpacePoint densify_csup(const SpacePoint& f, double eps) {
    if (f.tag() != SpaceTag::CAb) throw Error(ErrorCode::SpaceMismatch, "densify_csup expects C_AB");
    if (!(eps > 0.0)) throw Error(ErrorCode::PreconditionFailed, "eps must be positive");
    if (classify(f, 0.0).in_B) return f;

    const auto knots = f.knots();
    const auto segs = f.segments();
    const double sup = eval_norm(f).value;

    // First maximizing knot; if |f| stays maximal along the segment that starts
    // there, the bump goes to that segment's center instead.
    std::size_t j = 0;
    while (j < knots.size() && std::abs(f.value_at(knots[j])) != sup) ++j;
    double center = knots[j];
    double reach = 0.0;
    if (j + 1 < knots.size() && segs[j].left == segs[j].right && std::abs(segs[j].left) == sup) {
        center = knots[j] + (knots[j + 1] - knots[j]) / 2.0;
        reach = (knots[j + 1] - knots[j]) / 4.0;
    } else {
        reach = std::numeric_limits<double>::infinity();
        if (j > 0) reach = std::min(reach, (knots[j] - knots[j - 1]) / 2.0);
        if (j + 1 < knots.size()) reach = std::min(reach, (knots[j + 1] - knots[j]) / 2.0);
    }

    const double height = (f.value_at(center) < 0.0 ? -1.0 : 1.0) * eps / 2.0;
    std::vector<double> bk;
    std::vector<Segment> bs;
    const double lo = center - reach;
    const double hi = center + reach;
    bk.push_back(f.a());
    if (lo > f.a()) {
        bk.push_back(lo);
        bs.push_back({0.0, 0.0});
    }
    if (center > f.a()) {
        bk.push_back(center);
        bs.push_back({lo > f.a() ? 0.0 : height * (1.0 - (center - f.a()) / reach), height});
    }
    if (center < f.b()) {
        if (hi < f.b()) {
            bk.push_back(hi);
            bs.push_back({height, 0.0});
            bk.push_back(f.b());
            bs.push_back({0.0, 0.0});
        } else {
            bk.push_back(f.b());
            bs.push_back({height, height * (1.0 - (f.b() - center) / reach)});
        }
    }
    if (bk.back() != f.b()) bk.push_back(f.b());
    const auto bump = SpacePoint::piecewise(SpaceTag::CAb, std::move(bk), std::move(bs));
    auto g = linear_combine(1.0, f, 1.0, bump);
    if (!classify(g, 0.0).in_B) throw Error(ErrorCode::PreconditionFailed, "bump construction did not isolate a peak");
    return g;
}

}  // namespace gateaux
