#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gateaux/json_io.hpp"

namespace gateaux {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCompute = 3;

struct CommandRequest {
    std::string subcommand;
    Json params = Json::object();
    std::optional<std::string> output_path;
};

struct CommandResult {
    int exit_code = kExitOk;
    Json report;
};

/// Parameter names accepted by each subcommand; flags mirror them.
const std::vector<std::string>& subcommand_names();
const std::vector<std::string>& subcommand_params(const std::string& subcommand);

/// The acceptance suite lives outside the library; the front end installs it.
/// Returns the suite report and sets all_pass.
using SuiteRunner = std::function<Json(const Json& params, bool& all_pass)>;
void set_suite_runner(SuiteRunner runner);

/// Validates params, dispatches, and builds the single report document.  The
/// report is written to output_path when set; otherwise the caller prints it.
CommandResult run(const CommandRequest& request);

}  // namespace gateaux
