#include "cellring/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "cellring/error.hpp"

namespace cellring {

namespace fs = std::filesystem;

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_list(std::span<const double> values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += format_double(values[i]);
    }
    return s + "]";
}

namespace {

std::string axis_line(const char* tag, const AxisSpec& a) {
    return std::string("# ") + tag + "=" + a.name + " start=" + format_double(a.start) + " stop=" +
           format_double(a.stop) + " step=" + format_double(a.step) + "\n";
}

double parse_double(std::string_view s) {
    if (s == "NaN" || s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw IoError("grid csv: bad number '" + std::string(s) + "'");
    return v;
}

AxisSpec parse_axis(std::string_view line, std::string_view tag) {
    // "# axis_x=name start=.. stop=.. step=.."
    std::istringstream is{std::string(line.substr(2))};
    AxisSpec a;
    std::string tok;
    bool seen_name = false;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw IoError("grid csv: malformed header token '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == tag) {
            a.name = val;
            seen_name = true;
        } else if (key == "start") {
            a.start = parse_double(val);
        } else if (key == "stop") {
            a.stop = parse_double(val);
        } else if (key == "step") {
            a.step = parse_double(val);
        } else {
            throw IoError("grid csv: unknown header key '" + key + "'");
        }
    }
    if (!seen_name) throw IoError("grid csv: missing " + std::string(tag));
    return a;
}

} // namespace

std::string grid_csv(const Grid& grid) {
    std::string out = axis_line("axis_x", grid.x_axis) + axis_line("axis_y", grid.y_axis) + "# kind=" +
                      to_string(grid.kind) + "\n";
    const std::size_t nx = grid.nx(), ny = grid.ny();
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            if (ix) out += ',';
            out += format_double(grid.at(ix, iy));
        }
        out += '\n';
    }
    return out;
}

Grid parse_grid_csv(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string l1, l2, l3;
    if (!std::getline(is, l1) || !std::getline(is, l2) || !std::getline(is, l3))
        throw IoError("grid csv: truncated header");
    if (!l1.starts_with("# axis_x=") || !l2.starts_with("# axis_y=") || !l3.starts_with("# kind="))
        throw IoError("grid csv: unexpected header layout");
    const std::string kind = l3.substr(7);
    GridKind k;
    if (kind == "scalar")
        k = GridKind::Scalar;
    else if (kind == "category")
        k = GridKind::Category;
    else
        throw IoError("grid csv: unknown kind '" + kind + "'");

    Grid g;
    try {
        g = Grid(parse_axis(l1, "axis_x"), parse_axis(l2, "axis_y"), k);
    } catch (const DomainError& e) {
        throw IoError(std::string("grid csv: ") + e.what());
    }
    const std::size_t nx = g.nx(), ny = g.ny();
    std::string row;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        if (!std::getline(is, row)) throw IoError("grid csv: expected " + std::to_string(ny) + " data rows");
        std::size_t ix = 0, pos = 0;
        for (;;) {
            const auto comma = row.find(',', pos);
            const auto field = std::string_view(row).substr(pos, comma == std::string::npos ? std::string::npos
                                                                                            : comma - pos);
            if (ix >= nx) throw IoError("grid csv: too many fields in row " + std::to_string(iy));
            g.at(ix++, iy) = parse_double(field);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (ix != nx) throw IoError("grid csv: row " + std::to_string(iy) + " has " + std::to_string(ix) + " fields");
    }
    if (std::getline(is, row) && !row.empty()) throw IoError("grid csv: trailing data");
    return g;
}

void write_grid_csv(const Grid& grid, const fs::path& path) { write_text(path, grid_csv(grid)); }

Grid read_grid_csv(const fs::path& path) { return parse_grid_csv(read_text(path)); }

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "step";
    const std::size_t n = traj.params.n_cells();
    for (std::size_t i = 0; i < n; ++i) out += ",x" + std::to_string(i + 1);
    out += '\n';
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        out += std::to_string(traj.n_transient + t + 1);
        for (double v : traj.states[t]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string spectrum_csv(const ComplexitySpectrum& spectrum) {
    std::vector<double> normalized;
    try {
        normalized = normalize_series(spectrum.thresholds);
    } catch (const DegenerateRange&) {
        normalized.assign(spectrum.thresholds.size(), std::numeric_limits<double>::quiet_NaN());
    }
    std::string out = "index,threshold,normalized,kc\n";
    for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
        out += std::to_string(k) + ',' + format_double(spectrum.thresholds[k]) + ',' + format_double(normalized[k]) +
               ',' + format_double(spectrum.values[k]) + '\n';
    }
    return out;
}

void write_text(const fs::path& path, std::string_view text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    os.close();
    if (!os) throw IoError("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace cellring
