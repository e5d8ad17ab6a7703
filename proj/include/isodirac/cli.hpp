#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace isodirac::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_numerical_failure = 3,
};

/// Fully resolved run configuration (defaults < config file < flags).
struct RunConfig {
    std::string preset = "kink";   // kink | pt
    bool preset_given = false;     // set when --preset came from a flag or the config file
    int ell = 2;                   // ladder index for the pt preset
    std::optional<std::string> f_expr;
    double x_min = -20.0;
    double x_max = 20.0;
    std::size_t n = 8001;
    std::vector<double> lambdas{-3.0, -1.5, 0.5, 1.0, 10.0};
    std::vector<double> betas;     // 25 log-spaced points on [1e-2, 1e3] by default
    std::size_t levels = 8;
    std::filesystem::path out = ".";
    std::vector<double> s_values;  // strengths classified by the pt command
};

RunConfig default_config();

/// Throws DomainError on an invalid grid, illegal lambda, non-positive beta,
/// levels outside [1, n - 3], an unknown preset, or a preset combined with f_expr.
void validate(const RunConfig& config);

/// Result of one subcommand: files written and whether some item failed.
struct CommandResult {
    std::vector<std::filesystem::path> files;
    bool partial_failure = false;
};

CommandResult cmd_partners(const RunConfig& config);
CommandResult cmd_family(const RunConfig& config);
CommandResult cmd_dirac(const RunConfig& config);
CommandResult cmd_index(const RunConfig& config);
CommandResult cmd_pt(const RunConfig& config);

/// Parses arguments, runs the selected subcommand and maps failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isodirac::cli
