#include "cellring/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cellring/error.hpp"
#include "cellring/io.hpp"

namespace cellring {

namespace {

constexpr std::array<std::pair<Command, const char*>, 8> command_names{{
    {Command::Simulate, "simulate"},
    {Command::Complexity, "complexity"},
    {Command::Spectrum, "spectrum"},
    {Command::Stability2, "stability2"},
    {Command::RingStability, "ring-stability"},
    {Command::MapComplexity, "map-complexity"},
    {Command::MapStability, "map-stability"},
    {Command::MapEigs, "map-eigs"},
}};

const char* placement_name(EquilibriumPlacement p) {
    switch (p) {
    case EquilibriumPlacement::InsideS: return "inside-s";
    case EquilibriumPlacement::UniformCube: return "uniform";
    case EquilibriumPlacement::OutsideOuter: return "outside-outer";
    }
    return "?";
}

std::string node_text(const YAML::Node& node) {
    if (node.IsScalar()) return node.Scalar();
    if (node.IsSequence()) {
        std::string s = "[";
        for (std::size_t i = 0; i < node.size(); ++i) {
            if (!node[i].IsScalar()) throw ConfigError("nested sequences are not supported");
            if (i) s += ", ";
            s += node[i].Scalar();
        }
        return s + "]";
    }
    if (node.IsNull()) return "";
    throw ConfigError("nested mappings are not supported");
}

// Typed access to one entry with diagnostics naming the key and its origin.
class Reader {
public:
    explicit Reader(const ConfigSource& src) : src_(src) {}

    bool has(const std::string& key) const { return src_.entries.count(key) > 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& why) const {
        const auto it = src_.entries.find(key);
        const std::string where = it == src_.entries.end() ? "" : it->second.origin + ": ";
        throw ConfigError(where + "key '" + key + "': " + why);
    }

    YAML::Node node(const std::string& key) const {
        try {
            return YAML::Load(src_.entries.at(key).value);
        } catch (const YAML::Exception& e) {
            fail(key, std::string("unparsable value (") + e.msg + ")");
        }
    }

    double number(const std::string& key) const { return to_number(key, node(key)); }

    std::vector<double> list(const std::string& key) const {
        const YAML::Node n = node(key);
        std::vector<double> out;
        if (n.IsScalar()) {
            out.push_back(to_number(key, n));
        } else if (n.IsSequence()) {
            for (std::size_t i = 0; i < n.size(); ++i) out.push_back(to_number(key, n[i]));
        } else {
            fail(key, "expected a number or a list of numbers");
        }
        if (out.empty()) fail(key, "empty list");
        return out;
    }

    std::array<double, 2> pair(const std::string& key) const {
        const auto v = list(key);
        if (v.size() != 2) fail(key, "expected [start, stop]");
        return {v[0], v[1]};
    }

    std::uint64_t integer(const std::string& key) const {
        const YAML::Node n = node(key);
        if (!n.IsScalar()) fail(key, "expected a non-negative integer");
        const std::string& s = n.Scalar();
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            fail(key, "expected a non-negative integer, got '" + s + "'");
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            fail(key, "integer out of range");
        }
    }

    bool boolean(const std::string& key) const {
        const YAML::Node n = node(key);
        bool v = false;
        if (!n.IsScalar() || !YAML::convert<bool>::decode(n, v)) fail(key, "expected true or false");
        return v;
    }

    std::string text(const std::string& key) const {
        const YAML::Node n = node(key);
        if (!n.IsScalar()) fail(key, "expected a string");
        return n.Scalar();
    }

private:
    double to_number(const std::string& key, const YAML::Node& n) const {
        double v = 0;
        if (!n.IsScalar() || !YAML::convert<double>::decode(n, v) || !std::isfinite(v))
            fail(key, "expected a finite number");
        return v;
    }

    const ConfigSource& src_;
};

} // namespace

const char* to_string(Command c) noexcept {
    for (const auto& [cmd, name] : command_names)
        if (cmd == c) return name;
    return "?";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
    for (const auto& [cmd, n] : command_names)
        if (name == n) return cmd;
    return std::nullopt;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "command", "r",       "c",       "p",       "n_cells",   "convention", "x0",   "steps",
        "transient", "grid_step", "full_res", "x_range", "y_range", "r_range", "samples", "p_cap",
        "placement", "eq",    "out",     "seed",    "workers",   "plot"};
    return keys;
}

ConfigSource parse_config_text(std::string_view text) {
    YAML::Node doc;
    try {
        doc = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    ConfigSource src;
    if (doc.IsNull()) return src;
    if (!doc.IsMap()) throw ConfigError("line " + std::to_string(doc.Mark().line + 1) + ": expected a key: value mapping");

    const auto& known = config_keys();
    for (const auto& kv : doc) {
        const std::string line = "line " + std::to_string(kv.first.Mark().line + 1);
        if (!kv.first.IsScalar()) throw ConfigError(line + ": keys must be plain strings");
        const std::string key = kv.first.Scalar();
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(line + ": unknown key '" + key + "'");
        if (src.entries.count(key)) throw ConfigError(line + ": duplicate key '" + key + "'");
        try {
            src.entries[key] = {node_text(kv.second), line};
        } catch (const ConfigError& e) {
            throw ConfigError(line + ": key '" + key + "': " + e.what());
        }
    }
    return src;
}

RunConfig resolve_config(const ConfigSource& source, std::optional<Command> command) {
    const Reader rd(source);
    for (const auto& [key, entry] : source.entries) {
        const auto& known = config_keys();
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(entry.origin + ": unknown key '" + key + "'");
    }

    RunConfig cfg;
    if (rd.has("command")) {
        const std::string name = rd.text("command");
        const auto parsed = parse_command(name);
        if (!parsed) rd.fail("command", "unknown command '" + name + "'");
        if (command && *command != *parsed)
            rd.fail("command", "config names '" + name + "' but '" + to_string(*command) + "' was requested");
        command = parsed;
    }
    if (!command) throw ConfigError("no command given");
    cfg.command = *command;

    const bool ring_cmd = cfg.command == Command::RingStability;
    const bool map_complexity = cfg.command == Command::MapComplexity;
    const bool unit_map = cfg.command == Command::MapStability || cfg.command == Command::MapEigs ||
                          cfg.command == Command::Stability2;

    if (rd.has("full_res")) cfg.full_res = rd.boolean("full_res");

    cfg.n_cells = ring_cmd ? 100 : 2;
    if (rd.has("n_cells")) {
        cfg.n_cells = rd.integer("n_cells");
        if (cfg.n_cells < 2) rd.fail("n_cells", "bound N >= 2 violated");
        if (cfg.n_cells > 1024) rd.fail("n_cells", "bound N <= 1024 violated");
    }
    if (unit_map && cfg.n_cells != 2) rd.fail("n_cells", std::string(to_string(cfg.command)) + " is two-cell only");
    if (map_complexity && cfg.n_cells != 2) rd.fail("n_cells", "map-complexity is two-cell only");

    cfg.convention = ring_cmd ? CouplingConvention::Ring : CouplingConvention::TwoCell;
    if (rd.has("convention")) {
        const std::string v = rd.text("convention");
        if (v == "two-cell")
            cfg.convention = CouplingConvention::TwoCell;
        else if (v == "ring")
            cfg.convention = CouplingConvention::Ring;
        else
            rd.fail("convention", "expected two-cell or ring");
    }

    if (rd.has("r")) cfg.r = rd.number("r");
    if (!(cfg.r > 0.0 && cfg.r <= 4.0)) rd.fail("r", "value " + format_double(cfg.r) + " violates bound 0 < r <= 4");

    if (rd.has("c")) cfg.c = rd.list("c");
    if (cfg.c.size() == 1) cfg.c.assign(cfg.n_cells, cfg.c.front());
    if (cfg.c.size() != cfg.n_cells) rd.fail("c", "expected 1 or " + std::to_string(cfg.n_cells) + " couplings");
    for (double v : cfg.c)
        if (!(v >= 0.0 && v <= 1.0)) rd.fail("c", "value " + format_double(v) + " violates bound 0 <= c <= 1");

    if (rd.has("p")) {
        cfg.p = rd.list("p");
        if (cfg.p.size() == 1 && cfg.n_cells == 2) cfg.p = {cfg.p[0], 1.0 - cfg.p[0]};
    } else {
        cfg.p = cfg.n_cells == 2 ? std::vector<double>{0.5, 0.5}
                                 : std::vector<double>(cfg.n_cells, 1.0 / static_cast<double>(cfg.n_cells));
    }
    if (cfg.p.size() != cfg.n_cells) rd.fail("p", "expected " + std::to_string(cfg.n_cells) + " affinities");
    for (double v : cfg.p)
        if (!(v > 0.0 && v < 1.0)) rd.fail("p", "value " + format_double(v) + " violates bound 0 < p < 1");
    try {
        (void)cfg.model();
    } catch (const DomainError& e) {
        rd.fail(rd.has("p") ? "p" : "c", e.what());
    }

    if (rd.has("x0")) {
        cfg.x0 = rd.list("x0");
    } else if (cfg.n_cells != 2 && !ring_cmd) {
        throw ConfigError("key 'x0': required when n_cells > 2");
    }
    if (!ring_cmd) {
        if (cfg.x0.size() != cfg.n_cells) rd.fail("x0", "expected " + std::to_string(cfg.n_cells) + " values");
        for (double v : cfg.x0)
            if (!(v > 0.0 && v < 1.0)) rd.fail("x0", "value " + format_double(v) + " violates bound 0 < x < 1");
    }

    if (map_complexity && !cfg.full_res) cfg.steps = 3000;
    if (rd.has("steps")) cfg.steps = rd.integer("steps");
    if (rd.has("transient")) cfg.transient = rd.integer("transient");
    if (cfg.steps <= cfg.transient) rd.fail(rd.has("steps") ? "steps" : "transient", "bound steps > transient violated");
    if (cfg.steps - cfg.transient < 2) rd.fail("steps", "at least 2 kept samples are needed");

    cfg.grid_step = map_complexity ? (cfg.full_res ? 0.005 : 0.02) : (cfg.full_res ? 0.005 : 0.01);
    if (rd.has("grid_step")) cfg.grid_step = rd.number("grid_step");
    if (!(cfg.grid_step > 0.0 && cfg.grid_step < 0.5)) rd.fail("grid_step", "bound 0 < grid_step < 0.5 violated");

    if (map_complexity) {
        cfg.x_range = {3.6, 4.0};
        cfg.y_range = {cfg.grid_step, 1.0 - cfg.grid_step};
    } else {
        const AxisSpec unit = AxisSpec::unit_interior("x", cfg.grid_step);
        cfg.x_range = {unit.start, unit.stop};
        cfg.y_range = cfg.x_range;
    }
    if (rd.has("x_range")) cfg.x_range = rd.pair("x_range");
    if (rd.has("y_range")) cfg.y_range = rd.pair("y_range");
    for (const char* key : {"x_range", "y_range"}) {
        const auto& rg = std::string(key) == "x_range" ? cfg.x_range : cfg.y_range;
        if (rg[0] > rg[1]) rd.fail(key, "start exceeds stop");
        if (map_complexity) {
            const bool is_r = std::string(key) == "x_range";
            if (is_r && !(rg[0] > 0.0 && rg[1] <= 4.0)) rd.fail(key, "r axis violates bound 0 < r <= 4");
            if (!is_r && !(rg[0] > 0.0 && rg[1] < 1.0)) rd.fail(key, "p axis violates bound 0 < p < 1");
        } else if (!(rg[0] > 0.0 && rg[1] < 1.0)) {
            rd.fail(key, "concentration axis violates bound 0 < x < 1");
        }
    }

    if (rd.has("r_range")) cfg.r_range = rd.pair("r_range");
    if (!(cfg.r_range[0] >= 0.0 && cfg.r_range[0] < cfg.r_range[1] && cfg.r_range[1] <= 4.0))
        rd.fail("r_range", "bound 0 <= start < stop <= 4 violated");
    if (rd.has("samples")) cfg.samples = rd.integer("samples");
    if (rd.has("p_cap")) {
        cfg.p_cap = rd.number("p_cap");
        if (!(*cfg.p_cap > 0.0 && *cfg.p_cap < 1.0)) rd.fail("p_cap", "bound 0 < p_cap < 1 violated");
    }
    if (rd.has("placement")) {
        const std::string v = rd.text("placement");
        if (v == "inside-s")
            cfg.placement = EquilibriumPlacement::InsideS;
        else if (v == "uniform")
            cfg.placement = EquilibriumPlacement::UniformCube;
        else if (v == "outside-outer")
            cfg.placement = EquilibriumPlacement::OutsideOuter;
        else
            rd.fail("placement", "expected inside-s, uniform or outside-outer");
    }

    if (rd.has("eq")) {
        const auto v = rd.list("eq");
        if (v.size() != 2) rd.fail("eq", "expected [x, y]");
        for (double e : v)
            if (!(e > 0.0 && e < 1.0)) rd.fail("eq", "value " + format_double(e) + " violates bound 0 < x < 1");
        cfg.eq = std::array<double, 2>{v[0], v[1]};
    }

    if (rd.has("out")) cfg.out = rd.text("out");
    if (cfg.out.empty()) rd.fail("out", "empty output directory");
    if (rd.has("seed")) cfg.seed = rd.integer("seed");
    if (rd.has("workers")) cfg.workers = rd.integer("workers");
    if (rd.has("plot")) cfg.plot = rd.boolean("plot");
    return cfg;
}

RunConfig parse_config(std::string_view text, std::optional<Command> command) {
    return resolve_config(parse_config_text(text), command);
}

ModelParams RunConfig::model() const { return ModelParams(r, c, p, convention); }

AxisSpec RunConfig::x_axis() const {
    return {command == Command::MapComplexity ? "r" : "x_eq", x_range[0], x_range[1], grid_step};
}

AxisSpec RunConfig::y_axis() const {
    return {command == Command::MapComplexity ? "p" : "y_eq", y_range[0], y_range[1], grid_step};
}

std::string config_yaml(const RunConfig& cfg) {
    std::string s;
    const auto line = [&](const char* key, const std::string& value) { s += std::string(key) + ": " + value + "\n"; };
    const auto pair = [](const std::array<double, 2>& v) { return format_list(v); };
    line("command", to_string(cfg.command));
    line("r", format_double(cfg.r));
    line("c", format_list(cfg.c));
    line("p", format_list(cfg.p));
    line("n_cells", std::to_string(cfg.n_cells));
    line("convention", to_string(cfg.convention));
    line("x0", format_list(cfg.x0));
    line("steps", std::to_string(cfg.steps));
    line("transient", std::to_string(cfg.transient));
    line("grid_step", format_double(cfg.grid_step));
    line("full_res", cfg.full_res ? "true" : "false");
    line("x_range", pair(cfg.x_range));
    line("y_range", pair(cfg.y_range));
    line("r_range", pair(cfg.r_range));
    line("samples", std::to_string(cfg.samples));
    if (cfg.p_cap) line("p_cap", format_double(*cfg.p_cap));
    line("placement", placement_name(cfg.placement));
    if (cfg.eq) line("eq", format_list(*cfg.eq));
    line("out", "\"" + cfg.out + "\"");
    line("seed", std::to_string(cfg.seed));
    line("workers", std::to_string(cfg.workers));
    line("plot", cfg.plot ? "true" : "false");
    return s;
}

} // namespace cellring
