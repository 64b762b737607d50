#include "gateaux/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "gateaux/error.hpp"
#include "gateaux/oracles.hpp"

namespace gateaux {

namespace {

// Bad request shape, reported with the offending parameter name.
struct ParamError : std::runtime_error {
    std::string field;
    ParamError(std::string f, const std::string& what) : std::runtime_error(what), field(std::move(f)) {}
};

SuiteRunner& suite_runner() {
    static SuiteRunner runner;
    return runner;
}

const std::map<std::string, std::vector<std::string>>& schema() {
    static const std::map<std::string, std::vector<std::string>> s{
        {"norm", {"space", "point", "file"}},
        {"diff", {"space", "point", "file", "dir", "dirs", "grid", "tol", "config"}},
        {"classify", {"space", "point", "file", "eps", "config"}},
        {"witness", {"space", "point", "file", "tie_tol", "grid", "tol", "config"}},
        {"densify", {"space", "point", "file", "eps", "config"}},
        {"measure", {"n", "delta", "deltas", "count", "seed", "threads", "spec", "spec_file", "config"}},
        {"vakhania", {"spec", "spec_file", "N", "config"}},
        {"cyl", {"base", "t", "dims", "space", "point", "file", "dir", "grid", "tol", "radius", "pairs", "seed",
                 "config"}},
        {"compose", {"outer", "base", "t", "dims", "space", "point", "file", "dir", "grid", "tol", "config"}},
        {"suite", {"seed", "threads", "config"}},
    };
    return s;
}

Json read_json_file(const std::string& path, const std::string& field) {
    std::ifstream in(path);
    if (!in) throw ParamError(field, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(field, "'" + path + "' is not valid JSON: " + e.what());
    }
}

template <class T>
T param(const Json& p, const std::string& key, T fallback) {
    if (!p.contains(key) || p.at(key).is_null()) return fallback;
    try {
        return p.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParamError(key, "wrong type");
    }
}

template <class T>
T required(const Json& p, const std::string& key) {
    if (!p.contains(key) || p.at(key).is_null()) throw ParamError(key, "required");
    return param<T>(p, key, T{});
}

// Defaults from the config file sit underneath explicit params.
struct Context {
    Json p;
    TGrid grid;
    double tol = kDefaultTol;
    std::uint64_t seed = 1;
};

Context make_context(const Json& params) {
    Context c;
    c.p = params;
    if (params.contains("config")) {
        const auto cfg = read_json_file(required<std::string>(params, "config"), "config");
        if (!cfg.is_object()) throw ParamError("config", "config must be a JSON object");
        for (const auto& [k, v] : cfg.items()) {
            if (k == "grid") {
                c.grid = grid_from_json(v, c.grid);
            } else if (k == "tol") {
                c.tol = param<double>(cfg, "tol", c.tol);
            } else if (k == "dim") {
                if (!c.p.contains("n")) c.p["n"] = v;
            } else {
                throw ParamError("config." + k, "unknown config key");
            }
        }
    }
    if (c.p.contains("grid")) c.grid = grid_from_json(c.p.at("grid"), c.grid);
    c.tol = param<double>(c.p, "tol", c.tol);
    if (!(c.tol > 0.0)) throw ParamError("tol", "must be positive");
    c.seed = param<std::uint64_t>(c.p, "seed", c.seed);
    return c;
}

SpacePoint to_point(const Json& v, const Json& p, const std::string& field) {
    try {
        if (v.is_object()) return point_from_json(v);
        if (v.is_array()) {
            const auto tag = space_tag_from_string(required<std::string>(p, "space"));
            if (!is_sequence_space(tag)) throw ParamError(field, "function-space points need the object form");
            return SpacePoint::sequence(tag, v.get<std::vector<double>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(field, e.what());
    }
    throw ParamError(field, "expected an array of coordinates or a point object");
}

SpacePoint main_point(const Json& p) {
    if (p.contains("point")) return to_point(p.at("point"), p, "point");
    if (p.contains("file")) return to_point(read_json_file(required<std::string>(p, "file"), "file"), p, "file");
    throw ParamError("point", "required (or give file)");
}

GaussianSpec spec_param(const Json& p) {
    if (p.contains("spec")) {
        const auto& s = p.at("spec");
        return s.is_string() ? spec_from_json(read_json_file(s.get<std::string>(), "spec")) : spec_from_json(s);
    }
    if (p.contains("spec_file")) return spec_from_json(read_json_file(required<std::string>(p, "spec_file"), "spec_file"));
    return default_gaussian_spec();
}

Json sides(const QuotientTrace& tr) {
    return {{"d_plus", tr.d_plus ? Json(*tr.d_plus) : Json(nullptr)},
            {"d_minus", tr.d_minus ? Json(*tr.d_minus) : Json(nullptr)}};
}

Json cmd_norm(const Context& c) { return to_json(eval_norm(main_point(c.p))); }

Json cmd_diff(const Context& c) {
    const auto x = main_point(c.p);
    std::vector<SpacePoint> dirs;
    if (c.p.contains("dir")) dirs.push_back(to_point(c.p.at("dir"), c.p, "dir"));
    if (c.p.contains("dirs")) {
        if (!c.p.at("dirs").is_array()) throw ParamError("dirs", "expected a list of directions");
        for (const auto& d : c.p.at("dirs")) dirs.push_back(to_point(d, c.p, "dirs"));
    }
    if (dirs.empty()) throw ParamError("dir", "required (or give dirs)");
    return to_json(gateaux_verdict(norm_functional(x.tag()), x, dirs, c.grid, c.tol));
}

Json cmd_classify(const Context& c) {
    return to_json(classify(main_point(c.p), param<double>(c.p, "eps", 0.0)));
}

Json cmd_witness(const Context& c) {
    const auto x = main_point(c.p);
    SpacePoint w = x;
    switch (x.tag()) {
        case SpaceTag::LinfSeq:
        case SpaceTag::Rt:
            w = witness_linf(x, param<double>(c.p, "tie_tol", 0.0));
            break;
        case SpaceTag::LinfR:
            w = witness_linf_function(x);
            break;
        case SpaceTag::NbvAb:
            w = witness_nbv(x);
            break;
        default:
            throw ParamError("space", "witnesses exist for LINF_SEQ, RT, LINF_R and NBV_AB");
    }
    const auto tr = one_sided_derivatives(norm_functional(x.tag()), x, w, c.grid, c.tol);
    Json out{{"witness", to_json(w)}};
    out.update(sides(tr));
    out["trace"] = to_json(tr);
    return out;
}

Json cmd_densify(const Context& c) {
    const auto x = main_point(c.p);
    const double eps = required<double>(c.p, "eps");
    SpacePoint y = x;
    switch (x.tag()) {
        case SpaceTag::L1Seq:
            y = densify_l1(x, eps);
            break;
        case SpaceTag::LinfSeq:
        case SpaceTag::Rt:
            y = densify_linf(x, eps);
            break;
        case SpaceTag::CAb:
            y = densify_csup(x, eps);
            break;
        default:
            throw ParamError("space", "densify supports L1_SEQ, LINF_SEQ, RT and C_AB");
    }
    return {{"point", to_json(y)}, {"distance", distance(x, y)}, {"membership", to_json(classify(y, 0.0))}};
}

Json cmd_measure(const Context& c) {
    const auto spec = spec_param(c.p);
    const auto n = param<std::size_t>(c.p, "n", 10);
    const auto count = param<std::size_t>(c.p, "count", 100000);
    const auto threads = param<unsigned>(c.p, "threads", 0);
    std::vector<double> deltas;
    if (c.p.contains("deltas")) deltas = param<std::vector<double>>(c.p, "deltas", {});
    if (c.p.contains("delta")) deltas.push_back(param<double>(c.p, "delta", 0.0));
    if (deltas.empty()) throw ParamError("delta", "required (or give deltas)");
    Json rows = Json::array();
    for (const auto& e : estimate_nondiff_sweep(spec, n, deltas, count, c.seed, threads)) {
        auto row = to_json(e);
        if (n == 2) row["oracle"] = b2_tie_probability_oracle(spec, e.delta);
        rows.push_back(row);
    }
    return {{"spec", to_json(spec)}, {"estimates", rows}};
}

Json cmd_vakhania(const Context& c) {
    const auto spec = spec_param(c.p);
    return to_json(vakhania_check(spec, param<std::size_t>(c.p, "N", 10000)));
}

struct CylSetup {
    CylindricalFunction cf;
    ProjectiveSystem sys;
    SpacePoint x;
};

CylSetup cyl_setup(const Context& c) {
    Json p = c.p;
    if (!p.contains("space")) p["space"] = "LINF_SEQ";
    auto x = main_point(p);
    const auto t = required<std::size_t>(p, "t");
    auto cf = make_cylindrical(param<std::string>(p, "base", "wseries_partial"), t);
    std::vector<std::size_t> dims;
    if (p.contains("dims")) {
        dims = param<std::vector<std::size_t>>(p, "dims", {});
    } else {
        dims.push_back(t);
        if (x.dim() > t) dims.push_back(x.dim());
    }
    return {std::move(cf), make_truncation_system(dims), std::move(x)};
}

Json cmd_cyl(const Context& c) {
    auto s = cyl_setup(c);
    Json out{{"dims", s.sys.dims()}, {"value", cyl_eval(s.cf, s.sys, s.x)}, {"full_value", s.cf.full(s.x)}};
    if (c.p.contains("dir")) {
        Json p = c.p;
        if (!p.contains("space")) p["space"] = "LINF_SEQ";
        const auto h = to_point(p.at("dir"), p, "dir");
        out["verdict"] = to_json(cyl_gateaux(s.cf, s.sys, s.x, h, c.grid, c.tol));
        if (s.cf.base_name == "wseries_partial") {
            const auto d = wseries_gateaux(truncate(s.x, s.cf.base_dim), truncate(h, s.cf.base_dim));
            out["closed_form"] = d ? Json(*d) : Json(nullptr);
        }
    }
    if (c.p.contains("radius")) {
        const auto lf = lipschitz_factor_check(s.cf, s.sys, s.x, param<double>(c.p, "radius", 1.0),
                                               param<int>(c.p, "pairs", 200), c.seed);
        out["lipschitz"] = {{"k_f", lf.k_f}, {"k_m", lf.k_m}, {"flag", lf.flag}};
    }
    return out;
}

Json cmd_compose(const Context& c) {
    auto s = cyl_setup(c);
    Json p = c.p;
    if (!p.contains("space")) p["space"] = "LINF_SEQ";
    if (!p.contains("dir")) throw ParamError("dir", "required");
    const auto h = to_point(p.at("dir"), p, "dir");
    const auto& o = c.p.contains("outer") ? c.p.at("outer") : throw ParamError("outer", "required");
    if (o.is_array()) {
        std::vector<OuterMap> maps;
        for (const auto& name : o) maps.push_back(outer_map(name.get<std::string>()));
        Json rows = Json::array();
        for (const auto& v : compose_propagate_componentwise(maps, s.cf, s.sys, s.x, h, c.grid, c.tol))
            rows.push_back(to_json(v));
        return {{"components", rows}};
    }
    return to_json(compose_propagate(outer_map(o.get<std::string>()), s.cf, s.sys, s.x, h, c.grid, c.tol));
}

bool is_validation(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedPoint:
        case ErrorCode::SpaceMismatch:
        case ErrorCode::PreconditionFailed:
        case ErrorCode::NonpositiveVariance:
        case ErrorCode::BadDims:
        case ErrorCode::DimTooSmall:
        case ErrorCode::BadGrid:
            return true;
        default:
            return false;
    }
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names{"norm",     "diff", "classify", "witness", "densify",
                                                "measure",  "vakhania", "cyl", "compose", "suite"};
    return names;
}

const std::vector<std::string>& subcommand_params(const std::string& subcommand) {
    const auto it = schema().find(subcommand);
    if (it == schema().end()) throw Error(ErrorCode::PreconditionFailed, "unknown subcommand '" + subcommand + "'");
    return it->second;
}

void set_suite_runner(SuiteRunner runner) { suite_runner() = std::move(runner); }

CommandResult run(const CommandRequest& request) {
    CommandResult res;
    Json& r = res.report;
    r["version"] = kVersion;
    r["subcommand"] = request.subcommand;
    r["params"] = request.params;
    try {
        const auto it = schema().find(request.subcommand);
        if (it == schema().end()) throw ParamError("subcommand", "unknown subcommand '" + request.subcommand + "'");
        if (!request.params.is_object()) throw ParamError("params", "expected a JSON object");
        for (const auto& [k, v] : request.params.items()) {
            if (std::find(it->second.begin(), it->second.end(), k) == it->second.end())
                throw ParamError(k, "not a parameter of " + request.subcommand);
        }
        const auto c = make_context(request.params);
        if (std::find(it->second.begin(), it->second.end(), "seed") != it->second.end()) r["seed"] = c.seed;
        const auto& s = request.subcommand;
        if (s == "norm") r["result"] = cmd_norm(c);
        else if (s == "diff") r["result"] = cmd_diff(c);
        else if (s == "classify") r["result"] = cmd_classify(c);
        else if (s == "witness") r["result"] = cmd_witness(c);
        else if (s == "densify") r["result"] = cmd_densify(c);
        else if (s == "measure") r["result"] = cmd_measure(c);
        else if (s == "vakhania") r["result"] = cmd_vakhania(c);
        else if (s == "cyl") r["result"] = cmd_cyl(c);
        else if (s == "compose") r["result"] = cmd_compose(c);
        else {
            if (!suite_runner()) throw Error(ErrorCode::PreconditionFailed, "acceptance suite not available");
            Json sp = c.p;
            sp["seed"] = c.seed;
            bool all_pass = false;
            r["result"] = suite_runner()(sp, all_pass);
            if (!all_pass) res.exit_code = 1;
        }
    } catch (const ParamError& e) {
        res.exit_code = kExitValidation;
        r["error"] = {{"kind", "VALIDATION"}, {"field", e.field}, {"message", e.what()}};
    } catch (const Error& e) {
        res.exit_code = is_validation(e.code()) ? kExitValidation : kExitCompute;
        r["error"] = {{"kind", res.exit_code == kExitValidation ? "VALIDATION" : "COMPUTE"},
                      {"code", std::string(to_string(e.code()))},
                      {"message", e.what()}};
    } catch (const std::exception& e) {
        res.exit_code = kExitCompute;
        r["error"] = {{"kind", "COMPUTE"}, {"message", e.what()}};
    }
    if (request.output_path) {
        std::ofstream out(*request.output_path);
        out << r.dump(2) << '\n';
    }
    return res;
}

}  // namespace gateaux
