#include "gateaux/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gateaux/error.hpp"

namespace gateaux {

namespace {

// Tolerance used only when importing slope/intercept data, where the
// conversion to one-sided limits can leave rounding-level discontinuities.
constexpr double kImportSnap = 1e-12;

double interp(std::span<const double> knots, std::span<const Segment> segs, std::size_t i, double s) {
    const double lo = knots[i];
    const double hi = knots[i + 1];
    if (s == lo) return segs[i].left;
    if (s == hi) return segs[i].right;
    const double lambda = (s - lo) / (hi - lo);
    return segs[i].left + (segs[i].right - segs[i].left) * lambda;
}

// Index of the segment containing [u, v], with u, v drawn from a refinement of knots.
std::size_t segment_containing(std::span<const double> knots, double u) {
    auto it = std::upper_bound(knots.begin(), knots.end(), u);
    auto idx = static_cast<std::size_t>(it - knots.begin());
    if (idx == 0) return 0;
    return std::min(idx - 1, knots.size() - 2);
}

}  // namespace

std::string_view to_string(SpaceTag tag) {
    switch (tag) {
        case SpaceTag::L1Seq: return "L1_SEQ";
        case SpaceTag::LinfSeq: return "LINF_SEQ";
        case SpaceTag::CAb: return "C_AB";
        case SpaceTag::LinfR: return "LINF_R";
        case SpaceTag::NbvAb: return "NBV_AB";
        case SpaceTag::Rt: return "RT";
    }
    return "?";
}

SpaceTag space_tag_from_string(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    if (s == "L1_SEQ" || s == "L1") return SpaceTag::L1Seq;
    if (s == "LINF_SEQ" || s == "LINF") return SpaceTag::LinfSeq;
    if (s == "C_AB" || s == "C" || s == "CSUP") return SpaceTag::CAb;
    if (s == "LINF_R" || s == "LINFR") return SpaceTag::LinfR;
    if (s == "NBV_AB" || s == "NBV") return SpaceTag::NbvAb;
    if (s == "RT") return SpaceTag::Rt;
    throw Error(ErrorCode::MalformedPoint, "unknown space tag '" + std::string(name) + "'");
}

bool is_sequence_space(SpaceTag tag) {
    return tag == SpaceTag::L1Seq || tag == SpaceTag::LinfSeq || tag == SpaceTag::Rt;
}

SpacePoint SpacePoint::sequence(SpaceTag tag, std::vector<double> coords) {
    SpacePoint x;
    x.tag_ = tag;
    x.coords_ = std::move(coords);
    x.validate();
    return x;
}

SpacePoint SpacePoint::piecewise(SpaceTag tag, std::vector<double> knots, std::vector<Segment> segments) {
    SpacePoint x;
    x.tag_ = tag;
    x.knots_ = std::move(knots);
    x.segments_ = std::move(segments);
    x.validate();
    return x;
}

SpacePoint SpacePoint::from_linear_parts(SpaceTag tag, double a, double b, std::vector<double> breakpoints,
                                         const std::vector<double>& slopes,
                                         const std::vector<double>& intercepts, std::vector<double> jumps) {
    if (is_sequence_space(tag)) throw Error(ErrorCode::MalformedPoint, "linear parts given for a sequence space");
    const std::size_t m = breakpoints.size() + 1;
    if (slopes.size() != m || intercepts.size() != m)
        throw Error(ErrorCode::MalformedPoint, "need one slope/intercept per segment");
    if (jumps.empty()) jumps.assign(breakpoints.size(), 0.0);
    if (jumps.size() != breakpoints.size())
        throw Error(ErrorCode::MalformedPoint, "need one jump per breakpoint");

    std::vector<double> knots;
    knots.reserve(m + 1);
    knots.push_back(a);
    knots.insert(knots.end(), breakpoints.begin(), breakpoints.end());
    knots.push_back(b);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i] < knots[i + 1]))
            throw Error(ErrorCode::MalformedPoint, "breakpoints must be strictly increasing inside (a, b)");
    }

    std::vector<Segment> segs(m);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0) cumulative += jumps[i - 1];
        segs[i].left = slopes[i] * knots[i] + intercepts[i] + cumulative;
        segs[i].right = slopes[i] * knots[i + 1] + intercepts[i] + cumulative;
    }

    auto scale = [&](double u, double v) { return kImportSnap * (1.0 + std::abs(u) + std::abs(v)); };
    if (tag == SpaceTag::CAb || tag == SpaceTag::LinfR) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (std::abs(segs[i + 1].left - segs[i].right) <= scale(segs[i + 1].left, segs[i].right))
                segs[i + 1].left = segs[i].right;
        }
    }
    if (tag == SpaceTag::NbvAb && std::abs(segs[0].left) <= scale(segs[0].left, 0.0)) segs[0].left = 0.0;

    return piecewise(tag, std::move(knots), std::move(segs));
}

SpacePoint SpacePoint::zero_like(const SpacePoint& x) {
    SpacePoint z;
    z.tag_ = x.tag_;
    if (x.is_sequence()) {
        z.coords_.assign(x.coords_.size(), 0.0);
    } else {
        z.knots_ = {x.a(), x.b()};
        z.segments_.assign(1, Segment{});
    }
    return z;
}

void SpacePoint::validate() const {
    if (is_sequence()) {
        if (coords_.empty()) throw Error(ErrorCode::MalformedPoint, "sequence point needs dimension >= 1");
        for (double c : coords_) {
            if (!std::isfinite(c)) throw Error(ErrorCode::MalformedPoint, "non-finite coordinate");
        }
        return;
    }
    if (knots_.size() < 2 || segments_.size() + 1 != knots_.size())
        throw Error(ErrorCode::MalformedPoint, "piecewise point needs knots.size() == segments.size() + 1 >= 2");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i]) || !std::isfinite(knots_[i + 1]) || !(knots_[i] < knots_[i + 1]))
            throw Error(ErrorCode::MalformedPoint, "knots must be finite and strictly increasing");
    }
    for (const auto& s : segments_) {
        if (!std::isfinite(s.left) || !std::isfinite(s.right))
            throw Error(ErrorCode::MalformedPoint, "non-finite segment value");
    }
    if (tag_ == SpaceTag::CAb && has_jumps())
        throw Error(ErrorCode::MalformedPoint, "C_AB elements must be continuous");
    if (tag_ == SpaceTag::NbvAb && segments_.front().left != 0.0)
        throw Error(ErrorCode::MalformedPoint, "NBV elements must vanish at a");
}

std::vector<double> SpacePoint::breakpoints() const {
    if (knots_.size() <= 2) return {};
    return {knots_.begin() + 1, knots_.end() - 1};
}

double SpacePoint::slope(std::size_t i) const {
    const auto& s = segments_.at(i);
    return (s.right - s.left) / (knots_[i + 1] - knots_[i]);
}

double SpacePoint::intercept(std::size_t i) const { return segments_.at(i).left - slope(i) * knots_[i]; }

double SpacePoint::jump(std::size_t j) const { return segments_.at(j + 1).left - segments_.at(j).right; }

bool SpacePoint::has_jumps() const {
    for (std::size_t j = 0; j + 1 < segments_.size(); ++j) {
        if (segments_[j + 1].left != segments_[j].right) return true;
    }
    return false;
}

double SpacePoint::value_at(double s) const {
    if (is_sequence()) throw Error(ErrorCode::SpaceMismatch, "value_at on a sequence point");
    if (s <= a()) return segments_.front().left;
    if (s >= b()) return segments_.back().right;
    return interp(knots_, segments_, segment_containing(knots_, s), s);
}

std::vector<KnotLimit> SpacePoint::knot_limits() const {
    std::vector<KnotLimit> out;
    out.reserve(2 * segments_.size());
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        out.push_back({knots_[i], segments_[i].left});
        out.push_back({knots_[i + 1], segments_[i].right});
    }
    return out;
}

double SpacePoint::sup_abs_on(double lo, double hi) const {
    lo = std::max(lo, a());
    hi = std::min(hi, b());
    if (lo > hi) return -1.0;
    double best = -1.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const double u = std::max(knots_[i], lo);
        const double v = std::min(knots_[i + 1], hi);
        if (u > v) continue;
        best = std::max({best, std::abs(interp(knots_, segments_, i, u)), std::abs(interp(knots_, segments_, i, v))});
    }
    return best;
}

bool SpacePoint::is_zero() const {
    if (is_sequence()) return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
    return std::all_of(segments_.begin(), segments_.end(),
                       [](const Segment& s) { return s.left == 0.0 && s.right == 0.0; });
}

NormValue eval_norm(const SpacePoint& x) {
    NormValue out;
    switch (x.tag()) {
        case SpaceTag::L1Seq: {
            for (double c : x.coords()) out.value += std::abs(c);
            break;
        }
        case SpaceTag::LinfSeq:
        case SpaceTag::Rt: {
            std::size_t best = 0;
            const auto c = x.coords();
            for (std::size_t k = 1; k < c.size(); ++k) {
                if (std::abs(c[k]) > std::abs(c[best])) best = k;
            }
            out.value = std::abs(c[best]);
            out.index = best + 1;
            break;
        }
        case SpaceTag::CAb:
        case SpaceTag::LinfR: {
            const auto limits = x.knot_limits();
            const KnotLimit* best = &limits.front();
            for (const auto& kl : limits) {
                if (std::abs(kl.value) > std::abs(best->value)) best = &kl;
            }
            out.value = std::abs(best->value);
            out.location = best->location;
            break;
        }
        case SpaceTag::NbvAb: {
            const auto segs = x.segments();
            for (std::size_t i = 0; i < segs.size(); ++i) {
                out.value += std::abs(segs[i].right - segs[i].left);
                if (i + 1 < segs.size()) out.value += std::abs(segs[i + 1].left - segs[i].right);
            }
            break;
        }
    }
    return out;
}

SpacePoint linear_combine(double alpha, const SpacePoint& x, double beta, const SpacePoint& y) {
    if (x.tag() != y.tag())
        throw Error(ErrorCode::SpaceMismatch,
                    std::string(to_string(x.tag())) + " vs " + std::string(to_string(y.tag())));
    if (x.is_sequence()) {
        if (x.dim() != y.dim()) throw Error(ErrorCode::SpaceMismatch, "dimension mismatch");
        std::vector<double> out(x.dim());
        const auto cx = x.coords();
        const auto cy = y.coords();
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = alpha * cx[k] + beta * cy[k];
        return SpacePoint::sequence(x.tag(), std::move(out));
    }
    if (x.a() != y.a() || x.b() != y.b()) throw Error(ErrorCode::SpaceMismatch, "domain mismatch");

    std::vector<double> knots;
    knots.reserve(x.knots().size() + y.knots().size());
    std::merge(x.knots().begin(), x.knots().end(), y.knots().begin(), y.knots().end(), std::back_inserter(knots));
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<Segment> segs(knots.size() - 1);
    const auto xk = x.knots();
    const auto yk = y.knots();
    for (std::size_t j = 0; j < segs.size(); ++j) {
        const double u = knots[j];
        const double v = knots[j + 1];
        const std::size_t ix = segment_containing(xk, u);
        const std::size_t iy = segment_containing(yk, u);
        segs[j].left = alpha * interp(xk, x.segments(), ix, u) + beta * interp(yk, y.segments(), iy, u);
        segs[j].right = alpha * interp(xk, x.segments(), ix, v) + beta * interp(yk, y.segments(), iy, v);
    }
    return SpacePoint::piecewise(x.tag(), std::move(knots), std::move(segs));
}

double distance(const SpacePoint& x, const SpacePoint& y) { return eval_norm(linear_combine(1.0, x, -1.0, y)).value; }

bool same_element(const SpacePoint& x, const SpacePoint& y) {
    return linear_combine(1.0, x, -1.0, y).is_zero();
}

}  // namespace gateaux
