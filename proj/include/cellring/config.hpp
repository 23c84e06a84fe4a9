#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellring/dynamics.hpp"
#include "cellring/grid.hpp"
#include "cellring/sweep.hpp"

namespace cellring {

enum class Command { Simulate, Complexity, Spectrum, Stability2, RingStability, MapComplexity, MapStability, MapEigs };

const char* to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

/// Fully resolved run configuration. Every field has a concrete value after
/// resolve_config; config_yaml() of a resolved config reproduces it exactly.
struct RunConfig {
    Command command = Command::Simulate;

    double r = 4.0;
    std::vector<double> c{0.02};
    std::vector<double> p{0.5};
    std::size_t n_cells = 2;
    CouplingConvention convention = CouplingConvention::TwoCell;

    std::vector<double> x0{0.3, 0.5};
    std::size_t steps = 5000;
    std::size_t transient = 1000;

    double grid_step = 0.02;
    bool full_res = false;
    std::array<double, 2> x_range{0.0, 0.0};
    std::array<double, 2> y_range{0.0, 0.0};

    /// ring-stability sampler
    std::array<double, 2> r_range{1.0, 4.0};
    std::size_t samples = 500;
    std::optional<double> p_cap;
    EquilibriumPlacement placement = EquilibriumPlacement::InsideS;

    /// stability2 equilibrium; found from x0 when absent
    std::optional<std::array<double, 2>> eq;

    std::string out = "out";
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    bool plot = true;

    ModelParams model() const;
    SimSettings sim() const { return {x0, steps, transient}; }
    AxisSpec x_axis() const;
    AxisSpec y_axis() const;
};

/// Raw key/value settings as parsed from text or flags, before defaults.
/// Values are YAML scalars or flow sequences in text form.
struct ConfigSource {
    struct Entry {
        std::string value;
        std::string origin; ///< "line N" or "flag --x"
    };
    std::map<std::string, Entry> entries;
};

/// Parses a flat YAML mapping. Throws ConfigError with the line of the
/// offending key for syntax errors, non-mapping documents and duplicate or
/// unknown keys.
ConfigSource parse_config_text(std::string_view text);

/// Recognized keys.
const std::vector<std::string>& config_keys();

/// Applies defaults for `command` (explicit `command` entries must agree),
/// converts and validates every value. Out-of-range parameters are reported
/// with the violated bound. Throws ConfigError.
RunConfig resolve_config(const ConfigSource& source, std::optional<Command> command);

/// Convenience: parse_config_text + resolve_config.
RunConfig parse_config(std::string_view text, std::optional<Command> command);

/// Flat YAML echo of a resolved configuration.
std::string config_yaml(const RunConfig& cfg);

} // namespace cellring
