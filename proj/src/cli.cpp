// cli.cpp — config parsing, run modes, and deterministic CSV/JSON emission.

#include "qucap/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace qucap::cli {

namespace {

using nlohmann::json;

// ----------------------------- serialization --------------------------------

// 17 significant digits round-trips every 64-bit float; std::to_chars is
// locale-independent by definition.
std::string format_17g(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp(path + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
    return out.str();
}

// ----------------------------- config helpers -------------------------------

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

void require_known_keys(const json& j, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& item : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) throw ConfigError("unknown config key: " + item.key());
    }
}

double get_number(const json& j, const char* key, std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("missing config key: ") + key);
    }
    if (!j[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
    return j[key].get<double>();
}

int get_integer(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    return j[key].get<int>();
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw ConfigError(std::string(key) + " must be a string");
    return j[key].get<std::string>();
}

// Scalar-or-list of numbers (sweep ranges).
std::vector<double> get_number_list(const json& j, const char* key,
                                    std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j[key];
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError(std::string(key) + " must hold numbers");
            out.push_back(x.get<double>());
        }
        if (out.empty()) throw ConfigError(std::string(key) + " must not be empty");
        return out;
    }
    throw ConfigError(std::string(key) + " must be a number or an array of numbers");
}

OutputFormat parse_format(const json& j, OutputFormat fallback, bool allow_jsonl) {
    const std::string s = get_string(j, "format", "");
    if (s.empty()) return fallback;
    if (s == "csv") return OutputFormat::csv;
    if (s == "json" && !allow_jsonl) return OutputFormat::json;
    if (s == "jsonl" && allow_jsonl) return OutputFormat::jsonl;
    throw ConfigError("unsupported format: " + s);
}

void apply_solver_keys(const json& j, dynamics::SolverOptions& opts) {
    opts.abs_tol = get_number(j, "abs_tol", opts.abs_tol);
    opts.rel_tol = get_number(j, "rel_tol", opts.rel_tol);
    opts.max_step = get_number(j, "max_step", opts.max_step);
    opts.sample_dt = get_number(j, "sample_dt", opts.sample_dt);
    try {
        opts.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<std::string> get_columns(const json& j,
                                     const std::vector<std::string>& available) {
    if (!j.contains("columns")) return available;
    if (!j["columns"].is_array()) throw ConfigError("columns must be an array of strings");
    std::vector<std::string> out;
    for (const auto& c : j["columns"]) {
        if (!c.is_string()) throw ConfigError("columns must be an array of strings");
        const std::string name = c.get<std::string>();
        if (std::find(available.begin(), available.end(), name) == available.end()) {
            throw ConfigError("unknown column: " + name);
        }
        if (std::find(out.begin(), out.end(), name) != out.end()) {
            throw ConfigError("duplicate column: " + name);
        }
        out.push_back(name);
    }
    if (out.empty()) throw ConfigError("columns must not be empty");
    return out;
}

const std::vector<std::string> kAnalyticColumns = {
    "t",      "p_e",           "energy",             "power",
    "capacitance", "energy_damped", "capacitance_damped", "power_damped"};

const std::vector<std::string> kEvolveColumns = {
    "t", "p_e", "energy", "power", "re_coherence", "im_coherence", "coherence_mag"};

const std::vector<std::string> kSweepColumns = {
    "omega0",       "omega",      "gamma",         "kappa",
    "max_energy",   "max_power",  "charging_time", "first_peak_energy_numeric",
    "peak_deviation", "error"};

const std::vector<std::string> kReportColumns = {
    "case_id", "quantity", "max_abs_error", "max_rel_error", "tolerance", "passed"};

json drive_to_json(const DriveSchedule& drive) {
    if (drive.is_constant()) {
        return json{{"type", "constant"}, {"omega", drive.segments().front().amplitude}};
    }
    json segs = json::array();
    for (const auto& s : drive.segments()) {
        segs.push_back(json::array({s.t_start, s.amplitude}));
    }
    return json{{"type", "piecewise"}, {"segments", segs}};
}

}  // namespace

// ----------------------------- parsers --------------------------------------

AnalyticConfig parse_analytic_config(const std::string& json_text) {
    const json j = parse_json_text(json_text);
    require_known_keys(j, {"omega0", "omega", "gamma", "t_final", "points", "format", "columns"});
    AnalyticConfig cfg;
    cfg.omega0 = get_number(j, "omega0");
    cfg.omega = get_number(j, "omega");
    cfg.gamma = get_number(j, "gamma", 0.0);
    cfg.t_final = get_number(j, "t_final");
    cfg.points = get_integer(j, "points", cfg.points);
    cfg.format = parse_format(j, OutputFormat::csv, false);
    cfg.columns = get_columns(j, kAnalyticColumns);
    if (!(cfg.omega0 >= 0.0)) throw ConfigError("omega0 must be >= 0");
    if (!(cfg.omega >= 0.0)) throw ConfigError("omega must be >= 0");
    if (!(cfg.gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
    if (!(cfg.t_final > 0.0)) throw ConfigError("t_final must be > 0");
    if (cfg.points < 1) throw ConfigError("points must be >= 1");
    return cfg;
}

EvolveConfig parse_evolve_config(const std::string& json_text) {
    const json j = parse_json_text(json_text);
    require_known_keys(j, {"omega0", "omega", "drive_segments", "gamma", "kappa", "initial",
                           "t_final", "abs_tol", "rel_tol", "max_step", "sample_dt", "format",
                           "columns"});
    EvolveConfig cfg;
    cfg.omega0 = get_number(j, "omega0");
    if (j.contains("omega") && j.contains("drive_segments")) {
        throw ConfigError("give either omega or drive_segments, not both");
    }
    try {
        if (j.contains("drive_segments")) {
            if (!j["drive_segments"].is_array()) {
                throw ConfigError("drive_segments must be an array of [t_start, amplitude]");
            }
            std::vector<DriveSchedule::Segment> segs;
            for (const auto& s : j["drive_segments"]) {
                if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
                    throw ConfigError("drive_segments must be an array of [t_start, amplitude]");
                }
                segs.push_back({s[0].get<double>(), s[1].get<double>()});
            }
            cfg.drive = DriveSchedule::piecewise(std::move(segs));
        } else {
            cfg.drive = DriveSchedule::constant(get_number(j, "omega", 0.0));
        }
        cfg.gamma = get_number(j, "gamma", 0.0);
        cfg.kappa = get_number(j, "kappa", 0.0);
        // full parameter validation up front so config errors stay exit-code 2
        SystemParams(cfg.omega0, cfg.drive, cfg.gamma, cfg.kappa);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    cfg.initial = get_string(j, "initial", "ground");
    if (cfg.initial != "ground" && cfg.initial != "excited" && cfg.initial != "plus") {
        throw ConfigError("initial must be one of: ground, excited, plus");
    }
    cfg.t_final = get_number(j, "t_final");
    if (!(cfg.t_final > 0.0)) throw ConfigError("t_final must be > 0");
    apply_solver_keys(j, cfg.solver);
    cfg.format = parse_format(j, OutputFormat::csv, false);
    cfg.columns = get_columns(j, kEvolveColumns);
    return cfg;
}

SweepConfig parse_sweep_config(const std::string& json_text) {
    const json j = parse_json_text(json_text);
    require_known_keys(j, {"omega0", "omega", "gamma", "kappa", "abs_tol", "rel_tol", "max_step",
                           "sample_dt", "format"});
    SweepConfig cfg;
    cfg.omega0_values = get_number_list(j, "omega0", {});
    cfg.omega_values = get_number_list(j, "omega", {});
    cfg.gamma_values = get_number_list(j, "gamma", {0.0});
    cfg.kappa_values = get_number_list(j, "kappa", {0.0});
    if (cfg.omega0_values.empty()) throw ConfigError("missing config key: omega0");
    if (cfg.omega_values.empty()) throw ConfigError("missing config key: omega");
    for (const auto* values : {&cfg.omega0_values, &cfg.omega_values, &cfg.gamma_values,
                               &cfg.kappa_values}) {
        for (double v : *values) {
            if (!(v >= 0.0)) throw ConfigError("sweep values must be >= 0");
        }
    }
    const double cases = static_cast<double>(cfg.omega0_values.size()) *
                         static_cast<double>(cfg.omega_values.size()) *
                         static_cast<double>(cfg.gamma_values.size()) *
                         static_cast<double>(cfg.kappa_values.size());
    if (cases > 1e6) throw ConfigError("sweep exceeds 1e6 cases");
    apply_solver_keys(j, cfg.solver);
    cfg.format = parse_format(j, OutputFormat::csv, false);
    return cfg;
}

VerifyConfig parse_verify_config(const std::string& json_text) {
    const json j = parse_json_text(json_text);
    require_known_keys(j, {"omega0_values", "omega_values", "gamma_values", "kappa_values",
                           "t_final_periods", "samples_per_period", "abs_tol", "rel_tol",
                           "max_step", "sample_dt", "format"});
    VerifyConfig cfg;
    cfg.grid.omega0_values = get_number_list(j, "omega0_values", cfg.grid.omega0_values);
    cfg.grid.omega_values = get_number_list(j, "omega_values", cfg.grid.omega_values);
    cfg.grid.gamma_values = get_number_list(j, "gamma_values", cfg.grid.gamma_values);
    cfg.grid.kappa_values = get_number_list(j, "kappa_values", cfg.grid.kappa_values);
    cfg.grid.t_final_periods = get_number(j, "t_final_periods", cfg.grid.t_final_periods);
    cfg.grid.samples_per_period =
        get_integer(j, "samples_per_period", cfg.grid.samples_per_period);
    try {
        cfg.grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    apply_solver_keys(j, cfg.solver);
    cfg.format = parse_format(j, OutputFormat::jsonl, true);
    return cfg;
}

// ----------------------------- run modes ------------------------------------

int run_analytic(const AnalyticConfig& config, const std::string& output_path,
                 std::ostream& diagnostics) {
    (void)diagnostics;
    const analytic::ConstantDriveParams p(config.omega0, config.omega);

    auto value_of = [&](const std::string& column, double t) -> double {
        if (column == "t") return t;
        if (column == "p_e") return analytic::excited_population(p, t);
        if (column == "energy") return analytic::stored_energy(p, t);
        if (column == "power") return analytic::instantaneous_power(p, t);
        if (column == "capacitance") return analytic::quantum_capacitance(p, t);
        if (column == "energy_damped") return analytic::damped_energy(p, config.gamma, t);
        if (column == "capacitance_damped")
            return analytic::damped_capacitance(p, config.gamma, t);
        return analytic::damped_power(p, config.gamma, t);  // power_damped
    };

    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(config.points));
    for (int k = 0; k < config.points; ++k) {
        const double t = config.t_final * static_cast<double>(k) /
                         static_cast<double>(config.points);
        std::vector<double> row;
        row.reserve(config.columns.size());
        for (const auto& c : config.columns) row.push_back(value_of(c, t));
        rows.push_back(std::move(row));
    }

    if (config.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> cells;
        cells.reserve(rows.size());
        for (const auto& row : rows) {
            std::vector<std::string> r;
            r.reserve(row.size());
            for (double v : row) r.push_back(format_17g(v));
            cells.push_back(std::move(r));
        }
        write_output(output_path, csv_table(config.columns, cells));
    } else {
        json doc;
        doc["meta"] = {{"mode", "analytic"},
                       {"version", kVersion},
                       {"omega0", config.omega0},
                       {"omega", config.omega},
                       {"gamma", config.gamma},
                       {"t_final", config.t_final},
                       {"points", config.points},
                       {"columns", config.columns}};
        doc["rows"] = rows;
        write_output(output_path, doc.dump() + "\n");
    }
    return exit_code::ok;
}

namespace {

double evolve_row_value(const std::string& column, const dynamics::TrajectorySample& s) {
    if (column == "t") return s.t;
    if (column == "p_e") return s.observables.p_e;
    if (column == "energy") return s.observables.energy;
    if (column == "power") return s.observables.power;
    if (column == "re_coherence") return s.observables.coherence.real();
    if (column == "im_coherence") return s.observables.coherence.imag();
    return s.observables.coherence_mag;  // coherence_mag
}

dynamics::InitialState initial_from_name(const std::string& name) {
    if (name == "excited") return PureState::excited();
    if (name == "plus") return PureState::plus();
    return PureState::ground();
}

}  // namespace

int run_evolve(const EvolveConfig& config, const std::string& output_path,
               std::ostream& diagnostics) {
    dynamics::EvolutionProblem problem{
        SystemParams(config.omega0, config.drive, config.gamma, config.kappa),
        initial_from_name(config.initial), config.t_final, config.solver};

    std::optional<dynamics::Trajectory> result;
    try {
        result = dynamics::evolve(problem);
    } catch (const dynamics::IntegrationError& e) {
        diagnostics << "integration failure at t=" << format_17g(e.t_reached) << ": " << e.what()
                    << "\n";
        return exit_code::integration_failure;
    } catch (const InvariantError& e) {
        diagnostics << "state integrity failure: " << e.what() << "\n";
        return exit_code::integration_failure;
    }
    const dynamics::Trajectory& traj = *result;

    if (config.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> cells;
        cells.reserve(traj.samples.size());
        for (const auto& s : traj.samples) {
            std::vector<std::string> r;
            r.reserve(config.columns.size());
            for (const auto& c : config.columns) r.push_back(format_17g(evolve_row_value(c, s)));
            cells.push_back(std::move(r));
        }
        write_output(output_path, csv_table(config.columns, cells));
    } else {
        json rows = json::array();
        for (const auto& s : traj.samples) {
            json row = json::array();
            for (const auto& c : config.columns) row.push_back(evolve_row_value(c, s));
            rows.push_back(std::move(row));
        }
        json doc;
        doc["meta"] = {{"mode", "evolve"},
                       {"version", kVersion},
                       {"omega0", config.omega0},
                       {"drive", drive_to_json(config.drive)},
                       {"gamma", config.gamma},
                       {"kappa", config.kappa},
                       {"initial", config.initial},
                       {"t_final", config.t_final},
                       {"solver",
                        {{"abs_tol", traj.meta.options.abs_tol},
                         {"rel_tol", traj.meta.options.rel_tol},
                         {"max_step", traj.meta.options.max_step},
                         {"sample_dt", traj.meta.options.sample_dt}}},
                       {"columns", config.columns}};
        doc["rows"] = rows;
        write_output(output_path, doc.dump() + "\n");
    }
    return exit_code::ok;
}

int run_sweep(const SweepConfig& config, const std::string& output_path,
              std::ostream& diagnostics) {
    auto sorted = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto omega0s = sorted(config.omega0_values);
    const auto omegas = sorted(config.omega_values);
    const auto gammas = sorted(config.gamma_values);
    const auto kappas = sorted(config.kappa_values);

    struct Row {
        double omega0 = 0, omega = 0, gamma = 0, kappa = 0;
        std::string error{};
        double max_energy = std::nan("");
        double max_power = std::nan("");
        double charging_time = std::nan("");
        double first_peak = std::nan("");
        double peak_deviation = std::nan("");
    };

    std::vector<Row> rows;
    bool any_failed = false;
    for (double w0 : omega0s) {
        for (double om : omegas) {
            for (double g : gammas) {
                for (double k : kappas) {
                    Row row{w0, om, g, k};
                    const analytic::ConstantDriveParams p(w0, om);
                    row.max_energy = analytic::max_energy(p);
                    row.max_power = analytic::max_power(p);
                    const double wr = analytic::rabi_frequency(p);
                    if (wr > 0.0) {
                        row.charging_time = analytic::charging_time(p);
                    } else {
                        row.error = "no_charging_time";
                    }
                    if (om == 0.0 || w0 == 0.0) {
                        // stored energy is identically zero; no peak to locate
                        row.first_peak = 0.0;
                        row.peak_deviation = 0.0;
                    } else {
                        try {
                            const double t_final = 1.25 * std::numbers::pi / wr;
                            const double dt = std::numbers::pi / (200.0 * wr);
                            std::vector<double> times;
                            for (double t = 0.0; t < t_final; t += dt) times.push_back(t);
                            times.push_back(t_final);
                            dynamics::EvolutionProblem problem{
                                SystemParams(w0, DriveSchedule::constant(om), g, k),
                                PureState::ground(), t_final, config.solver};
                            const auto traj = dynamics::evolve_at(problem, times);
                            std::vector<double> ts, es;
                            double ref_max = 0.0;
                            for (const auto& s : traj.samples) {
                                ts.push_back(s.t);
                                es.push_back(s.observables.energy);
                                ref_max = std::max(ref_max, analytic::damped_energy(p, g, s.t));
                            }
                            const auto peak = verify::interpolate_peak(ts, es);
                            if (peak.found) {
                                row.first_peak = peak.value;
                                const double ref = analytic::damped_energy(p, g, peak.t);
                                row.peak_deviation =
                                    ref_max > 0.0 ? std::abs(peak.value - ref) / ref_max : 0.0;
                            } else {
                                row.error = "no_energy_peak";
                            }
                        } catch (const dynamics::IntegrationError&) {
                            row.error = "integration_failure";
                        } catch (const InvariantError&) {
                            row.error = "integrity_failure";
                        }
                    }
                    if (!row.error.empty()) any_failed = true;
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    if (config.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> cells;
        cells.reserve(rows.size());
        for (const auto& r : rows) {
            cells.push_back({format_17g(r.omega0), format_17g(r.omega), format_17g(r.gamma),
                             format_17g(r.kappa), format_17g(r.max_energy),
                             format_17g(r.max_power), format_17g(r.charging_time),
                             format_17g(r.first_peak), format_17g(r.peak_deviation), r.error});
        }
        write_output(output_path, csv_table(kSweepColumns, cells));
    } else {
        json jrows = json::array();
        for (const auto& r : rows) {
            jrows.push_back(json::array({r.omega0, r.omega, r.gamma, r.kappa, r.max_energy,
                                         r.max_power, r.charging_time, r.first_peak,
                                         r.peak_deviation, r.error}));
        }
        json doc;
        doc["meta"] = {{"mode", "sweep"}, {"version", kVersion}, {"columns", kSweepColumns}};
        doc["rows"] = jrows;
        write_output(output_path, doc.dump() + "\n");
    }

    if (any_failed) {
        diagnostics << "sweep: " << rows.size() << " cases, some failed\n";
        return exit_code::sweep_partial_failure;
    }
    return exit_code::ok;
}

int run_verify(const VerifyConfig& config, const std::string& output_path,
               std::ostream& diagnostics) {
    std::vector<verify::VerificationReport> reports;

    try {
        auto pop = verify::check_population_formula(config.grid, config.solver);
        reports.insert(reports.end(), pop.begin(), pop.end());

        for (double w0 : config.grid.omega0_values) {
            for (double om : config.grid.omega_values) {
                if (!(om > 0.0)) continue;
                const analytic::ConstantDriveParams p(w0, om);
                const double wr = analytic::rabi_frequency(p);
                std::vector<double> t_grid;
                for (int i = 0; i <= 32; ++i) {
                    t_grid.push_back(4.0 * std::numbers::pi / wr * i / 32.0);
                }
                reports.push_back(
                    verify::check_capacitance_derivative(p, t_grid, 1e-6 * std::max(1.0, om)));
                reports.push_back(verify::check_peak_structure(p, config.solver));
                for (double g : config.grid.gamma_values) {
                    reports.push_back(verify::check_dephasing_approximation(p, g, config.solver));
                    reports.push_back(verify::check_coherence_envelope(p, g, config.solver));
                }
            }
        }
        for (double k : config.grid.kappa_values) {
            std::vector<double> t_grid;
            if (k > 0.0) {
                t_grid = {0.1 / k, 0.5 / k, 1.0 / k, 2.0 / k, 3.0 / k};
            } else {
                t_grid = {1.0, 5.0, 10.0};
            }
            reports.push_back(verify::check_relaxation(k, t_grid, config.solver));
        }
    } catch (const dynamics::IntegrationError& e) {
        diagnostics << "verify: integration failure at t=" << format_17g(e.t_reached) << ": "
                    << e.what() << "\n";
        return exit_code::integration_failure;
    } catch (const InvariantError& e) {
        diagnostics << "verify: state integrity failure: " << e.what() << "\n";
        return exit_code::integration_failure;
    }

    std::size_t passed = 0;
    double worst = 0.0;
    std::string worst_case = "-";
    for (const auto& r : reports) {
        if (r.passed) ++passed;
        if (r.max_rel_error >= worst) {
            worst = r.max_rel_error;
            worst_case = r.case_id + "/" + r.quantity;
        }
    }

    if (config.format == OutputFormat::csv) {
        std::vector<std::vector<std::string>> cells;
        cells.reserve(reports.size());
        for (const auto& r : reports) {
            cells.push_back({r.case_id, r.quantity, format_17g(r.max_abs_error),
                             format_17g(r.max_rel_error), format_17g(r.tolerance),
                             r.passed ? "true" : "false"});
        }
        write_output(output_path, csv_table(kReportColumns, cells));
    } else {
        std::ostringstream out;
        for (const auto& r : reports) {
            json line = {{"case_id", r.case_id},
                         {"quantity", r.quantity},
                         {"max_abs_error", r.max_abs_error},
                         {"max_rel_error", r.max_rel_error},
                         {"tolerance", r.tolerance},
                         {"passed", r.passed}};
            out << line.dump() << "\n";
        }
        write_output(output_path, out.str());
    }

    diagnostics << "verify: " << reports.size() << " cases, " << passed << " passed, worst error "
                << format_17g(worst) << " (" << worst_case << ")\n";
    return passed == reports.size() ? exit_code::ok : exit_code::verification_failure;
}

int run_mode(const std::string& mode, const std::string& config_text,
             const std::string& output_path, std::ostream& diagnostics) {
    try {
        if (mode == "analytic") {
            return run_analytic(parse_analytic_config(config_text), output_path, diagnostics);
        }
        if (mode == "evolve") {
            return run_evolve(parse_evolve_config(config_text), output_path, diagnostics);
        }
        if (mode == "sweep") {
            return run_sweep(parse_sweep_config(config_text), output_path, diagnostics);
        }
        if (mode == "verify") {
            return run_verify(parse_verify_config(config_text), output_path, diagnostics);
        }
        throw ConfigError("unknown mode: " + mode);
    } catch (const ConfigError& e) {
        diagnostics << "config error: " << e.what() << "\n";
        return exit_code::usage;
    }
}

}  // namespace qucap::cli
