#include "cellring/run.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>

#include "cellring/complexity.hpp"
#include "cellring/error.hpp"
#include "cellring/io.hpp"
#include "cellring/plot.hpp"
#include "cellring/stability.hpp"
#include "cellring/sweep.hpp"

namespace cellring {

namespace fs = std::filesystem;

namespace {

class Artifacts {
public:
    explicit Artifacts(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.out) {}

    void csv(const std::string& name, const std::string& text) {
        write_text(dir_ / name, text);
        files_.push_back(name);
    }

    void grid(const std::string& name, const Grid& g, const std::string& title) {
        csv(name, grid_csv(g));
        script(name, grid_plot_script(g, name, title));
        for (const auto& [k, v] : g.metadata) note(name + " " + k + ": " + v);
        if (g.escape_count) note(name + " escaped_cells: " + std::to_string(g.escape_count));
        if (g.singular_count) note(name + " singular_cells: " + std::to_string(g.singular_count));
    }

    void script(const std::string& csv_name, const std::string& text) {
        if (!cfg_.plot) return;
        const std::string name = csv_name.substr(0, csv_name.rfind('.')) + ".gp";
        write_text(dir_ / name, text);
        files_.push_back(name);
    }

    void note(const std::string& line) { notes_.push_back(line); }

    void finish(std::ostream& out) {
        std::string meta = config_yaml(cfg_);
        meta += "# results\n";
        for (const auto& n : notes_) meta += "#   " + n + "\n";
        for (const auto& f : files_) meta += "# file " + f + "\n";
        write_text(dir_ / "metadata.yaml", meta);
        for (const auto& n : notes_) out << n << '\n';
        out << "wrote " << files_.size() + 1 << " files to " << dir_.string() << '\n';
    }

private:
    const RunConfig& cfg_;
    fs::path dir_;
    std::vector<std::string> files_;
    std::vector<std::string> notes_;
};

std::string complex_text(std::complex<double> z) {
    if (z.imag() == 0.0) return format_double(z.real());
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
}

void run_simulate(const RunConfig& cfg, Artifacts& art) {
    const Trajectory traj = simulate(cfg.model(), cfg.x0, cfg.steps, cfg.transient);
    art.csv("trajectory.csv", trajectory_csv(traj));
    art.script("trajectory.csv", trajectory_plot_script("trajectory.csv", cfg.n_cells, "trajectory"));
    art.note("kept_steps: " + std::to_string(traj.size()));
}

void run_complexity(const RunConfig& cfg, Artifacts& art) {
    const Trajectory traj = simulate(cfg.model(), cfg.x0, cfg.steps, cfg.transient);
    std::string text = "cell,kc_mean,kc_max,threshold_at_max\n";
    for (std::size_t i = 0; i < cfg.n_cells; ++i) {
        const auto series = traj.component(i);
        const ComplexitySpectrum s = complexity_spectrum(series);
        const double kc = kc_single(series);
        text += std::to_string(i + 1) + ',' + format_double(kc) + ',' + format_double(s.max_value) + ',' +
                format_double(s.thresholds[s.max_index]) + '\n';
        art.note("x" + std::to_string(i + 1) + " kc_mean: " + format_double(kc) +
                 " kc_max: " + format_double(s.max_value));
    }
    art.csv("complexity.csv", text);
}

void run_spectrum(const RunConfig& cfg, Artifacts& art) {
    const Trajectory traj = simulate(cfg.model(), cfg.x0, cfg.steps, cfg.transient);
    for (std::size_t i = 0; i < cfg.n_cells; ++i) {
        const ComplexitySpectrum s = complexity_spectrum(traj.component(i));
        const std::string name = "spectrum_x" + std::to_string(i + 1) + ".csv";
        art.csv(name, spectrum_csv(s));
        art.script(name, spectrum_plot_script(name, "complexity spectrum x" + std::to_string(i + 1)));
        art.note("x" + std::to_string(i + 1) + " kc_max: " + format_double(s.max_value) +
                 " at_threshold: " + format_double(s.thresholds[s.max_index]));
    }
}

void run_stability2(const RunConfig& cfg, Artifacts& art) {
    const ModelParams params = cfg.model();
    std::array<double, 2> eq{};
    if (cfg.eq) {
        eq = *cfg.eq;
    } else {
        const StateVector fp = find_fixed_point(params, cfg.x0, 1e-13, 200);
        eq = {fp[0], fp[1]};
    }
    const Jacobian2 j = jacobian_two_cell(eq, params);
    const EigenPair e = eigenvalues_two_cell(j);
    art.note("equilibrium: " + format_list(eq));
    art.note("fixed_point_residual: " + format_double(fixed_point_residual(eq, params)));
    art.note("eigenvalues: [" + complex_text(e.first) + ", " + complex_text(e.second) + "]");
    art.note("max_abs: " + format_double(e.max_abs()) + " min_abs: " + format_double(e.min_abs()));
    art.note(std::string("classification: ") + to_string(classify_equilibrium(e)));
    art.grid("stability.csv", stability_region_map(cfg.x_axis(), cfg.y_axis(), params, cfg.workers),
             "stability regions");
}

void run_ring_stability(const RunConfig& cfg, Artifacts& art) {
    RingSamplerSpec spec;
    spec.n_max = cfg.n_cells;
    spec.r_min = cfg.r_range[0];
    spec.r_max = cfg.r_range[1];
    spec.p_cap = cfg.p_cap;
    spec.convention = cfg.convention;
    spec.placement = cfg.placement;
    const RingSampleReport rep = ring_stability_sample(spec, cfg.samples, cfg.seed, cfg.workers);
    std::string text = "index,n,r,in_s,norm_check,spectral_radius,infinity_norm,coupling_flip\n";
    for (std::size_t k = 0; k < rep.samples.size(); ++k) {
        const RingSample& s = rep.samples[k];
        text += std::to_string(k) + ',' + std::to_string(s.n_cells) + ',' + format_double(s.r) + ',' +
                std::to_string(s.in_s) + ',' + std::to_string(s.norm_check) + ',' +
                format_double(s.spectral_radius) + ',' + format_double(s.infinity_norm) + ',' +
                std::to_string(s.coupling_flip) + '\n';
    }
    art.csv("ring_samples.csv", text);
    art.note("samples: " + std::to_string(rep.samples.size()));
    art.note("in_s: " + std::to_string(rep.in_s));
    art.note("norm_check: " + std::to_string(rep.norm_check));
    art.note("rho_below_one: " + std::to_string(rep.rho_below_one));
    art.note("s_implication_violations: " + std::to_string(rep.s_implication_violations));
    art.note("norm_implication_violations: " + std::to_string(rep.norm_implication_violations));
    art.note("norm_bound_violations: " + std::to_string(rep.norm_bound_violations));
    art.note("coupling_flips: " + std::to_string(rep.coupling_flips));
    if (cfg.r_range[1] > 1.0) {
        const RegionSBounds b = region_s_bounds(std::max(cfg.r_range[1], std::nextafter(1.0, 2.0)), cfg.p_cap);
        art.note("inner_cube: [" + format_double(b.inner.lo) + ", " + format_double(b.inner.hi) + "]");
        art.note("outer_cube: [" + format_double(b.outer.lo) + ", " + format_double(b.outer.hi) + "]");
    }
}

void run_map_complexity(const RunConfig& cfg, Artifacts& art) {
    const Grid g = complexity_map(cfg.x_axis(), cfg.y_axis(), cfg.c.front(), cfg.convention, cfg.sim(), cfg.workers);
    art.grid("complexity_map.csv", g, "max complexity");
}

void run_map_stability(const RunConfig& cfg, Artifacts& art) {
    art.grid("stability.csv", stability_region_map(cfg.x_axis(), cfg.y_axis(), cfg.model(), cfg.workers),
             "stability regions");
}

void run_map_eigs(const RunConfig& cfg, Artifacts& art) {
    const auto [gmax, gmin] = eigen_surface_map(cfg.x_axis(), cfg.y_axis(), cfg.model(), cfg.workers);
    art.grid("eigen_max.csv", gmax, "max |lambda|");
    art.grid("eigen_min.csv", gmin, "min |lambda|");
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        Artifacts art(cfg);
        switch (cfg.command) {
        case Command::Simulate: run_simulate(cfg, art); break;
        case Command::Complexity: run_complexity(cfg, art); break;
        case Command::Spectrum: run_spectrum(cfg, art); break;
        case Command::Stability2: run_stability2(cfg, art); break;
        case Command::RingStability: run_ring_stability(cfg, art); break;
        case Command::MapComplexity: run_map_complexity(cfg, art); break;
        case Command::MapStability: run_map_stability(cfg, art); break;
        case Command::MapEigs: run_map_eigs(cfg, art); break;
        }
        art.finish(out);
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const RangeEscape& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const DomainError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_other;
    }
}

} // namespace cellring
