// cli.hpp — Configuration ingestion and the four run modes (analytic, evolve,
// sweep, verify) behind the command-line tool. Configs are flat JSON objects;
// unknown keys are rejected. Data outputs are deterministic: fixed column
// order, 17-significant-digit serialization, no timestamps.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qucap/dynamics.hpp"
#include "qucap/verify.hpp"

namespace qucap::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by the library entry points and the binary.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int integration_failure = 3;
inline constexpr int sweep_partial_failure = 4;
inline constexpr int verification_failure = 5;
}  // namespace exit_code

// Raised for malformed configs, unknown keys, and out-of-range values.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json, jsonl };

struct AnalyticConfig {
    double omega0 = 0.0;
    double omega = 0.0;
    double gamma = 0.0;
    double t_final = 0.0;
    int points = 256;
    OutputFormat format = OutputFormat::csv;
    std::vector<std::string> columns;  // empty = all, in documented order
};

struct EvolveConfig {
    double omega0 = 0.0;
    DriveSchedule drive = DriveSchedule::constant(0.0);
    double gamma = 0.0;
    double kappa = 0.0;
    std::string initial = "ground";  // ground | excited | plus
    double t_final = 0.0;
    dynamics::SolverOptions solver{};
    OutputFormat format = OutputFormat::csv;
    std::vector<std::string> columns;
};

struct SweepConfig {
    std::vector<double> omega0_values;
    std::vector<double> omega_values;
    std::vector<double> gamma_values{0.0};
    std::vector<double> kappa_values{0.0};
    dynamics::SolverOptions solver{};
    OutputFormat format = OutputFormat::csv;
};

struct VerifyConfig {
    verify::ComparisonGrid grid{};
    dynamics::SolverOptions solver{.abs_tol = 1e-12, .rel_tol = 1e-10};
    OutputFormat format = OutputFormat::jsonl;
};

AnalyticConfig parse_analytic_config(const std::string& json_text);
EvolveConfig parse_evolve_config(const std::string& json_text);
SweepConfig parse_sweep_config(const std::string& json_text);
VerifyConfig parse_verify_config(const std::string& json_text);

// Run one mode against an output path ("-" = standard output). Diagnostics go
// to the given stream, never into the data output. Returns an exit code.
int run_analytic(const AnalyticConfig& config, const std::string& output_path,
                 std::ostream& diagnostics);
int run_evolve(const EvolveConfig& config, const std::string& output_path,
               std::ostream& diagnostics);
int run_sweep(const SweepConfig& config, const std::string& output_path,
              std::ostream& diagnostics);
int run_verify(const VerifyConfig& config, const std::string& output_path,
               std::ostream& diagnostics);

// Parse + dispatch; maps ConfigError to the usage exit code.
int run_mode(const std::string& mode, const std::string& config_text,
             const std::string& output_path, std::ostream& diagnostics);

}  // namespace qucap::cli
