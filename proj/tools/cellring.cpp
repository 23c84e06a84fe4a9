#include <CLI11.hpp>

#include <iostream>

#include "cellring/config.hpp"
#include "cellring/error.hpp"
#include "cellring/io.hpp"
#include "cellring/run.hpp"

using namespace cellring;

namespace {

// Flags become config entries so both sources go through one validator.
struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

constexpr Flag value_flags[] = {
    {"--r", "r", "growth rate, 0 < r <= 4"},
    {"--c", "c", "coupling, scalar or list e.g. [0.02, 0.1]"},
    {"--p", "p", "affinity, scalar (two cells) or list summing to 1"},
    {"--x0", "x0", "initial state, e.g. [0.3, 0.5]"},
    {"--steps", "steps", "total iterations"},
    {"--transient", "transient", "discarded iterations"},
    {"--grid-step", "grid_step", "map resolution"},
    {"--x-range", "x_range", "map x axis [start, stop]"},
    {"--y-range", "y_range", "map y axis [start, stop]"},
    {"--out", "out", "output directory"},
    {"--seed", "seed", "random seed"},
    {"--convention", "convention", "coupling placement: two-cell or ring"},
    {"--workers", "workers", "threads for sweeps (0 = all cores)"},
    {"--cells", "n_cells", "number of cells N"},
    {"--samples", "samples", "ring-stability sample count"},
    {"--r-range", "r_range", "ring-stability r range [lo, hi]"},
    {"--p-cap", "p_cap", "ring-stability affinity cap"},
    {"--placement", "placement", "ring-stability equilibria: inside-s, uniform, outside-outer"},
    {"--eq", "eq", "stability2 equilibrium [x, y]"},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled logistic cells: simulation, complexity and stability"};
    std::string command_name, config_path;
    app.add_option("command", command_name,
                   "simulate | complexity | spectrum | stability2 | ring-stability | map-complexity | "
                   "map-stability | map-eigs")
        ->required();
    app.add_option("--config", config_path, "YAML config file");
    std::map<std::string, std::string> values;
    for (const Flag& f : value_flags) app.add_option(f.name, values[f.key], f.help);
    bool full_res = false, no_plot = false;
    app.add_flag("--full-res", full_res, "full map resolution (step 0.005, 5000 steps)");
    app.add_flag("--no-plot", no_plot, "skip gnuplot scripts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try {
        const auto command = parse_command(command_name);
        if (!command) throw ConfigError("unknown command '" + command_name + "'");
        ConfigSource src;
        if (!config_path.empty()) {
            std::string text;
            try {
                text = read_text(config_path);
            } catch (const IoError& e) {
                std::cerr << "i/o error: " << e.what() << '\n';
                return exit_io;
            }
            try {
                src = parse_config_text(text);
            } catch (const ConfigError& e) {
                throw ConfigError(config_path + ": " + e.what());
            }
        }
        for (const Flag& f : value_flags)
            if (app.count(f.name)) src.entries[f.key] = {values[f.key], std::string("flag ") + f.name};
        if (full_res) src.entries["full_res"] = {"true", "flag --full-res"};
        if (no_plot) src.entries["plot"] = {"false", "flag --no-plot"};
        const RunConfig cfg = resolve_config(src, command);
        return run(cfg, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
}
