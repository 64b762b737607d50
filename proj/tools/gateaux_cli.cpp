#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "acceptance_suite.hpp"
#include "gateaux/cli.hpp"

namespace {

// Flag values are read as JSON when they parse ("[3,1]", "7", "0.01") and as
// plain strings otherwise ("linf").
gateaux::Json flag_value(const std::string& s) {
    auto j = gateaux::Json::parse(s, nullptr, false);
    return j.is_discarded() ? gateaux::Json(s) : j;
}

const std::map<std::string, std::string> kHelp{
    {"norm", "norm value and its attaining index or location"},
    {"diff", "one-sided derivatives along dir, or a Gateaux verdict over dirs"},
    {"classify", "membership in the differentiability set"},
    {"witness", "direction with unequal one-sided derivatives"},
    {"densify", "nearby point inside the differentiability set"},
    {"measure", "Monte-Carlo fraction of near-ties under a product Gaussian"},
    {"vakhania", "summability check of the variance law"},
    {"cyl", "cylindrical functional: value, derivative, Lipschitz factor"},
    {"compose", "chain rule through an outer map"},
    {"suite", "run the acceptance criteria"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directional derivatives of norms on truncated Banach-space models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gateaux::kVersion);

    std::optional<std::string> output;
    std::optional<std::string> params_json;
    std::map<std::string, std::map<std::string, std::optional<std::string>>> values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : gateaux::subcommand_names()) {
        auto* sub = app.add_subcommand(name, kHelp.at(name));
        sub->add_option("--output", output, "write the report here instead of stdout");
        sub->add_option("--params", params_json, "JSON object of parameters; flags override its keys");
        for (const auto& p : gateaux::subcommand_params(name)) sub->add_option("--" + p, values[name][p]);
        subs[name] = sub;
    }
    CLI11_PARSE(app, argc, argv);

    gateaux::CommandRequest req;
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) req.subcommand = name;
    }
    if (params_json) {
        auto j = gateaux::Json::parse(*params_json, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            std::cerr << "--params must be a JSON object\n";
            return gateaux::kExitValidation;
        }
        req.params = j;
    }
    for (const auto& [k, v] : values[req.subcommand]) {
        if (v) req.params[k] = flag_value(*v);
    }
    const auto& accepted = gateaux::subcommand_params(req.subcommand);
    if (!req.params.contains("seed") && std::find(accepted.begin(), accepted.end(), "seed") != accepted.end()) {
        if (const char* env = std::getenv("BS_SEED")) req.params["seed"] = flag_value(env);
    }
    req.output_path = output;

    gateaux::set_suite_runner([](const gateaux::Json& params, bool& all_pass) {
        gateaux::acceptance::Options opt;
        opt.seed = params.value("seed", opt.seed);
        opt.threads = params.value("threads", opt.threads);
        const auto report = gateaux::acceptance::run_all(opt, std::cerr);
        all_pass = report.all_pass();
        return gateaux::acceptance::to_json(report);
    });

    const auto res = gateaux::run(req);
    if (!output) std::cout << res.report.dump(2) << '\n';
    return res.exit_code;
}
