#include "gateaux/json_io.hpp"

#include <cmath>

#include "gateaux/error.hpp"

namespace gateaux {

namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
Json opt(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_floating_point_v<T>) return num(*v);
    else return *v;
}

Json nums(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

template <class T>
T field(const Json& j, const char* key, ErrorCode code) {
    if (!j.is_object() || !j.contains(key)) throw Error(code, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(code, std::string("field '") + key + "': " + e.what());
    }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback, ErrorCode code) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
    return field<T>(j, key, code);
}

}  // namespace

Json to_json(const SpacePoint& x) {
    Json j;
    j["space"] = std::string(to_string(x.tag()));
    if (x.is_sequence()) {
        j["coords"] = nums({x.coords().begin(), x.coords().end()});
        return j;
    }
    const auto bps = x.breakpoints();
    const std::size_t m = x.segments().size();
    j["a"] = num(x.a());
    j["b"] = num(x.b());
    j["breakpoints"] = nums(bps);
    Json segs = Json::array();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0) cumulative += x.jump(i - 1);
        segs.push_back({{"slope", num(x.slope(i))}, {"intercept", num(x.intercept(i) - cumulative)}});
    }
    j["segments"] = segs;
    std::vector<double> jumps;
    for (std::size_t i = 0; i < bps.size(); ++i) jumps.push_back(x.jump(i));
    j["jumps"] = nums(jumps);
    j["knots"] = nums({x.knots().begin(), x.knots().end()});
    Json lim = Json::array();
    for (const auto& s : x.segments()) lim.push_back({num(s.left), num(s.right)});
    j["limits"] = lim;
    return j;
}

SpacePoint point_from_json(const Json& j) {
    constexpr auto E = ErrorCode::MalformedPoint;
    const auto tag = space_tag_from_string(field<std::string>(j, "space", E));
    if (is_sequence_space(tag)) return SpacePoint::sequence(tag, field<std::vector<double>>(j, "coords", E));
    if (j.contains("knots") && j.contains("limits")) {
        auto knots = field<std::vector<double>>(j, "knots", E);
        auto lim = field<std::vector<std::vector<double>>>(j, "limits", E);
        std::vector<Segment> segs;
        for (const auto& l : lim) {
            if (l.size() != 2) throw Error(E, "each limits entry is [left, right]");
            segs.push_back({l[0], l[1]});
        }
        return SpacePoint::piecewise(tag, std::move(knots), std::move(segs));
    }
    std::vector<double> slopes;
    std::vector<double> intercepts;
    if (!j.contains("segments") || !j.at("segments").is_array()) throw Error(E, "missing field 'segments'");
    for (const auto& s : j.at("segments")) {
        slopes.push_back(field<double>(s, "slope", E));
        intercepts.push_back(field<double>(s, "intercept", E));
    }
    return SpacePoint::from_linear_parts(tag, field<double>(j, "a", E), field<double>(j, "b", E),
                                         field_or<std::vector<double>>(j, "breakpoints", {}, E), slopes, intercepts,
                                         field_or<std::vector<double>>(j, "jumps", {}, E));
}

Json to_json(const LinearFunctionalRep& rep) {
    using K = LinearFunctionalRep::Kind;
    Json j;
    j["kind"] = to_string(rep.kind);
    j["coeffs"] = rep.kind == K::CoeffSeq ? nums(rep.coeffs) : Json(nullptr);
    j["p"] = rep.kind == K::SignedIndex ? Json(rep.p) : Json(nullptr);
    j["sigma"] = rep.kind == K::SignedIndex || rep.kind == K::PointMass ? Json(rep.sigma) : Json(nullptr);
    j["t0"] = rep.kind == K::PointMass ? num(rep.t0) : Json(nullptr);
    j["gap"] = opt(rep.gap);
    return j;
}

LinearFunctionalRep rep_from_json(const Json& j) {
    constexpr auto E = ErrorCode::MalformedPoint;
    const auto kind = field<std::string>(j, "kind", E);
    const auto gap = j.contains("gap") && !j.at("gap").is_null() ? std::optional<double>(field<double>(j, "gap", E))
                                                                 : std::nullopt;
    LinearFunctionalRep rep;
    if (kind == "ZERO") {
        rep = LinearFunctionalRep::zero();
    } else if (kind == "COEFF_SEQ") {
        rep = LinearFunctionalRep::coeff_seq(field<std::vector<double>>(j, "coeffs", E));
    } else if (kind == "SIGNED_INDEX") {
        rep = LinearFunctionalRep::signed_index(field<std::size_t>(j, "p", E), field<int>(j, "sigma", E), gap);
    } else if (kind == "POINT_MASS") {
        rep = LinearFunctionalRep::point_mass(field<double>(j, "t0", E), field<int>(j, "sigma", E), gap);
    } else {
        throw Error(E, "unknown functional kind '" + kind + "'");
    }
    rep.validate();
    return rep;
}

Json to_json(const NormValue& v) {
    return {{"value", num(v.value)}, {"index", opt(v.index)}, {"location", opt(v.location)}};
}

Json to_json(const QuotientTrace& tr) {
    return {{"t", nums(tr.steps)},
            {"fq", nums(tr.forward)},
            {"bq", nums(tr.backward)},
            {"d_plus", opt(tr.d_plus)},
            {"d_minus", opt(tr.d_minus)},
            {"plus_converged", tr.plus_converged},
            {"minus_converged", tr.minus_converged},
            {"resolution", num(tr.resolution)}};
}

Json to_json(const DiffVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["derivative"] = v.derivative ? to_json(*v.derivative) : Json(nullptr);
    j["value"] = opt(v.value);
    j["witness"] = v.failure_witness ? to_json(*v.failure_witness) : Json(nullptr);
    Json traces = Json::array();
    for (const auto& tr : v.traces) traces.push_back(to_json(tr));
    j["traces"] = traces;
    if (!v.remainder_profile.empty()) j["remainder_profile"] = nums(v.remainder_profile);
    j["note"] = v.note;
    return j;
}

Json to_json(const MembershipReport& r) {
    return {{"in_B", r.in_B}, {"p", opt(r.p)}, {"t0", opt(r.t0)}, {"gap", opt(r.gap)}, {"certificate", r.certificate}};
}

Json to_json(const MeasureEstimate& e) {
    return {{"fraction", num(e.fraction)}, {"std_error", num(e.std_error)}, {"n", e.n},
            {"delta", num(e.delta)},       {"count", e.sample_count},       {"seed", e.seed},
            {"exact_ties", e.exact_ties}};
}

Json to_json(const VakhaniaResult& r) {
    return {{"summable", r.summable}, {"partial_sum", num(r.partial_sum)}, {"raabe", num(r.raabe)}};
}

Json to_json(const GaussianSpec& spec) {
    Json j;
    if (spec.law) j["law"] = *spec.law;
    j["r"] = num(spec.r);
    j["means"] = nums(spec.means);
    j["variances"] = nums(spec.variances);
    return j;
}

GaussianSpec spec_from_json(const Json& j) {
    constexpr auto E = ErrorCode::PreconditionFailed;
    if (!j.is_object()) throw Error(E, "spec must be a JSON object");
    GaussianSpec spec;
    if (j.contains("law")) {
        spec = default_gaussian_spec(field_or<std::size_t>(j, "listed", 64, E));
        spec.law = field<std::string>(j, "law", E);
        spec.r = field_or<double>(j, "r", 2.0, E);
        if (j.contains("variances") || j.contains("means")) {
            spec.variances = field_or<std::vector<double>>(j, "variances", {}, E);
            spec.means = field_or<std::vector<double>>(j, "means", {}, E);
        }
    } else {
        spec.variances = field<std::vector<double>>(j, "variances", E);
        spec.means = field_or<std::vector<double>>(j, "means", std::vector<double>(spec.variances.size(), 0.0), E);
        spec.r = field_or<double>(j, "r", 2.0, E);
    }
    spec.validate();
    return spec;
}

Json to_json(const TGrid& g) { return {{"t0", num(g.t0)}, {"rho", num(g.rho)}, {"count", g.count}}; }

TGrid grid_from_json(const Json& j, TGrid base) {
    constexpr auto E = ErrorCode::BadGrid;
    base.t0 = field_or<double>(j, "t0", base.t0, E);
    base.rho = field_or<double>(j, "rho", base.rho, E);
    base.count = field_or<int>(j, "count", base.count, E);
    base.validate();
    return base;
}

CylindricalFunction cylindrical_from_json(const Json& j) {
    constexpr auto E = ErrorCode::PreconditionFailed;
    return make_cylindrical(field<std::string>(j, "base", E), field<std::size_t>(j, "t", E));
}

}  // namespace gateaux
