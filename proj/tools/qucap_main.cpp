// qucap — command-line front end for the two-level energy-storage simulator.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qucap/cli.hpp"

namespace {

std::string read_config(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qucap::cli::ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qucap — driven two-level quantum energy-storage simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path = "-";

    const struct {
        const char* name;
        const char* description;
    } modes[] = {
        {"analytic", "evaluate the constant-drive closed forms on a uniform time grid"},
        {"evolve",
         "integrate the equations of motion; gamma is the sigma_z dephasing rate "
         "(coherences decay as exp(-2*gamma*t)), kappa the relaxation rate"},
        {"sweep", "per-parameter-tuple charging summary over a cartesian grid"},
        {"verify", "run the oracle cross-check suite and emit verification reports"},
    };
    for (const auto& m : modes) {
        auto* sub = app.add_subcommand(m.name, m.description);
        sub->add_option("--config", config_path, "JSON config file, or - for standard input")
            ->required();
        sub->add_option("--output", output_path, "output file, or - for standard output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qucap::cli::exit_code::usage;
    }

    const std::string mode = app.get_subcommands().front()->get_name();
    std::string config_text;
    try {
        config_text = read_config(config_path);
    } catch (const qucap::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qucap::cli::exit_code::usage;
    }
    return qucap::cli::run_mode(mode, config_text, output_path, std::cerr);
}
