#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "cellring/config.hpp"
#include "cellring/error.hpp"
#include "cellring/io.hpp"
#include "cellring/plot.hpp"
#include "cellring/run.hpp"

using namespace cellring;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("cellring_test_" + name);
    fs::remove_all(p);
    return p;
}

int cli(const std::string& args, std::string* err_text = nullptr) {
    const fs::path err = fs::temp_directory_path() / "cellring_test_stderr.txt";
    const std::string cmd = std::string(CELLRING_CLI) + " " + args + " > /dev/null 2> " + err.string();
    const int status = std::system(cmd.c_str());
    if (err_text) *err_text = read_text(err);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_error(const std::string& text, std::optional<Command> cmd = Command::Complexity) {
    try {
        parse_config(text, cmd);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("number formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
    CHECK(format_double(4.0) == "4");
    CHECK(format_double(NAN) == "NaN");
    CHECK(format_list(std::vector<double>{0.3, 0.5}) == "[0.3, 0.5]");
}

TEST_CASE("grid csv layout") {
    SUBCASE("1x1") {
        Grid g({"r", 3.9, 3.9, 0.1}, {"p", 0.5, 0.5, 0.1}, GridKind::Scalar);
        g.values[0] = 0.5;
        const std::string csv = grid_csv(g);
        CHECK(csv == "# axis_x=r start=3.9 stop=3.9 step=0.1\n# axis_y=p start=0.5 stop=0.5 step=0.1\n"
                     "# kind=scalar\n0.5\n");
    }
    SUBCASE("2x2 with one missing cell") {
        Grid g({"x", 0.25, 0.75, 0.5}, {"y", 0.25, 0.75, 0.5}, GridKind::Category);
        g.values = {0, 1, 2, NAN};
        const std::string csv = grid_csv(g);
        CHECK(csv.substr(csv.find("category\n") + 9) == "0,1\n2,NaN\n");
    }
}

TEST_CASE("grid csv round trip") {
    Grid g({"r", 3.6, 4.0, 0.02}, {"p", 0.02, 0.98, 0.02}, GridKind::Scalar);
    for (std::size_t k = 0; k < g.values.size(); ++k) g.values[k] = std::sin(double(k)) / 3.0;
    g.values[17] = NAN;
    const fs::path dir = scratch("roundtrip");
    write_grid_csv(g, dir / "g.csv");
    const Grid back = read_grid_csv(dir / "g.csv");
    CHECK(back.x_axis == g.x_axis);
    CHECK(back.y_axis == g.y_axis);
    CHECK(back.kind == g.kind);
    REQUIRE(back.values.size() == g.values.size());
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        if (std::isnan(g.values[k]))
            CHECK(std::isnan(back.values[k]));
        else
            CHECK(back.values[k] == g.values[k]);
    }
    CHECK_THROWS_AS(parse_grid_csv("# axis_x=r start=0 stop=1 step=1\n"), IoError);
    CHECK_THROWS_AS(write_text("/proc/cellring/forbidden.csv", "x"), IoError);
}

TEST_CASE("plot scripts") {
    Grid cat(AxisSpec::unit_interior("x_eq", 0.1), AxisSpec::unit_interior("y_eq", 0.1), GridKind::Category);
    const std::string c = grid_plot_script(cat, "stability.csv", "t");
    CHECK(c.find("'#404040'") != std::string::npos);
    CHECK(c.find("'#c8c8c8'") != std::string::npos);
    CHECK(c.find("'#ffffff'") != std::string::npos);
    CHECK(c.find("xlabel 'x_eq'") != std::string::npos);
    Grid sc(AxisSpec::unit_interior("x_eq", 0.1), AxisSpec::unit_interior("y_eq", 0.1), GridKind::Scalar);
    CHECK(grid_plot_script(sc, "e.csv", "t").find("rgbformulae") != std::string::npos);
    CHECK(spectrum_plot_script("s.csv", "t").find("using 3:4") != std::string::npos);
}

TEST_CASE("config defaults") {
    const RunConfig cfg = parse_config("", Command::Complexity);
    CHECK(cfg.r == 4.0);
    CHECK(cfg.x0 == std::vector<double>{0.3, 0.5});
    CHECK(cfg.steps == 5000);
    CHECK(cfg.transient == 1000);
    CHECK(cfg.p == std::vector<double>{0.5, 0.5});
    CHECK(cfg.c == std::vector<double>{0.02, 0.02});

    const RunConfig map = parse_config("", Command::MapComplexity);
    CHECK(map.grid_step == 0.02);
    CHECK(map.steps - map.transient == 2000);
    CHECK(map.x_axis().count() == 21);
    CHECK(map.y_axis().count() == 49);
    const RunConfig full = parse_config("full_res: true", Command::MapComplexity);
    CHECK(full.grid_step == 0.005);
    CHECK(full.steps == 5000);
    CHECK(full.x_axis().count() == 81);

    const RunConfig ring = parse_config("", Command::RingStability);
    CHECK(ring.convention == CouplingConvention::Ring);
    CHECK(ring.n_cells == 100);

    const RunConfig n3 = parse_config("n_cells: 3\nx0: [0.1, 0.2, 0.3]\nc: [0.1, 0.2, 0.3]", Command::Simulate);
    CHECK(n3.p.size() == 3);
    CHECK(n3.p[0] == doctest::Approx(1.0 / 3));
    const RunConfig two = parse_config("p: 0.3", Command::Simulate);
    CHECK(two.p == std::vector<double>{0.3, 0.7});
}

TEST_CASE("config errors name the key and bound") {
    CHECK(config_error("r: 5").find("0 < r <= 4") != std::string::npos);
    CHECK(config_error("r: 5").find("'r'") != std::string::npos);
    CHECK(config_error("p: [0.5, 0.6]").find("sum") != std::string::npos);
    CHECK(config_error("bogus: 1").find("unknown key 'bogus'") != std::string::npos);
    CHECK(config_error("r: 3\nbogus: 1").find("line 2") != std::string::npos);
    CHECK(config_error("r: 3\nr: 4").find("duplicate key 'r'") != std::string::npos);
    CHECK(config_error("r: [1, 2").find("line") != std::string::npos);
    CHECK(config_error("steps: -4").find("'steps'") != std::string::npos);
    CHECK(config_error("steps: 100\ntransient: 200").find("steps > transient") != std::string::npos);
    CHECK(config_error("x0: [0.3]").find("'x0'") != std::string::npos);
    CHECK(config_error("c: 2").find("0 <= c <= 1") != std::string::npos);
    CHECK(config_error("command: simulate").find("'command'") != std::string::npos);
    CHECK(config_error("- 1\n- 2").find("mapping") != std::string::npos);
    CHECK(config_error("n_cells: 3", Command::Simulate).find("x0") != std::string::npos);
    CHECK(config_error("", std::nullopt).find("no command") != std::string::npos);
}

TEST_CASE("config echo reproduces identical outputs") {
    RunConfig cfg = parse_config("r: 3.97\np: 0.35\nsteps: 900\ntransient: 100\ngrid_step: 0.05\n"
                                 "x_range: [3.9, 4]\ny_range: [0.4, 0.6]",
                                 Command::MapComplexity);
    cfg.out = scratch("echo_a").string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == exit_ok);
    const std::string meta = read_text(fs::path(cfg.out) / "metadata.yaml");

    RunConfig again = parse_config(meta, std::nullopt);
    CHECK(config_yaml(again) == config_yaml(cfg));
    again.out = scratch("echo_b").string();
    REQUIRE(run(again, out, err) == exit_ok);
    CHECK(read_text(fs::path(cfg.out) / "complexity_map.csv") ==
          read_text(fs::path(again.out) / "complexity_map.csv"));
}

TEST_CASE("run artifacts per command") {
    const auto run_in = [](const std::string& yaml, Command c, const std::string& dir) {
        RunConfig cfg = parse_config(yaml, c);
        cfg.out = scratch(dir).string();
        std::ostringstream out, err;
        const int rc = run(cfg, out, err);
        return std::make_pair(rc, cfg.out);
    };
    SUBCASE("stability2 example") {
        const auto [rc, dir] = run_in("r: 4\np: 0.5\nc: 0.02\ngrid_step: 0.01\neq: [0.5, 0.5]", Command::Stability2,
                                      "stab2");
        CHECK(rc == exit_ok);
        const Grid g = read_grid_csv(fs::path(dir) / "stability.csv");
        CHECK(g.kind == GridKind::Category);
        CHECK(g.nx() == 99);
        CHECK(fs::exists(fs::path(dir) / "stability.gp"));
        CHECK(read_text(fs::path(dir) / "metadata.yaml").find("classification: stable") != std::string::npos);
    }
    SUBCASE("simulate") {
        const auto [rc, dir] = run_in("steps: 30\ntransient: 10", Command::Simulate, "sim");
        CHECK(rc == exit_ok);
        const std::string csv = read_text(fs::path(dir) / "trajectory.csv");
        CHECK(csv.starts_with("step,x1,x2\n11,"));
    }
    SUBCASE("spectrum") {
        const auto [rc, dir] = run_in("steps: 300\ntransient: 100\nplot: false", Command::Spectrum, "spec");
        CHECK(rc == exit_ok);
        CHECK(read_text(fs::path(dir) / "spectrum_x1.csv").starts_with("index,threshold,normalized,kc\n"));
        CHECK_FALSE(fs::exists(fs::path(dir) / "spectrum_x1.gp"));
    }
    SUBCASE("map-eigs and map-stability") {
        CHECK(run_in("grid_step: 0.1", Command::MapEigs, "eigs").first == exit_ok);
        CHECK(run_in("grid_step: 0.1", Command::MapStability, "mstab").first == exit_ok);
    }
    SUBCASE("ring-stability") {
        const auto [rc, dir] = run_in("samples: 20\nn_cells: 10", Command::RingStability, "ring");
        CHECK(rc == exit_ok);
        CHECK(read_text(fs::path(dir) / "metadata.yaml").find("s_implication_violations: 0") != std::string::npos);
    }
    SUBCASE("escape is a numerical failure") {
        CHECK(run_in("c: 0\nx0: [0.5, 0.3]", Command::Simulate, "esc").first == exit_numerical);
    }
}

TEST_CASE("command line exit codes") {
    std::string err;
    const std::string out = scratch("cli").string();
    CHECK(cli("simulate --steps 20 --transient 5 --out " + out) == exit_ok);
    CHECK(fs::exists(fs::path(out) / "metadata.yaml"));

    CHECK(cli("simulate --r 5 --out " + out, &err) == exit_config);
    CHECK(err.find("0 < r <= 4") != std::string::npos);
    CHECK(cli("nonsense --out " + out) == exit_config);
    CHECK(cli("simulate --bogus 1") == exit_config);

    CHECK(cli("simulate --c 0 --x0 '[0.5, 0.3]' --out " + out, &err) == exit_numerical);
    CHECK(err.find("step 1") != std::string::npos);

    CHECK(cli("simulate --config /nonexistent/cfg.yaml --out " + out) == exit_io);
    CHECK(cli("simulate --steps 20 --transient 5 --out /proc/cellring_out") == exit_io);

    const fs::path cfg = fs::path(out) / "bad.yaml";
    write_text(cfg, "r: 3.9\nwat: 2\n");
    CHECK(cli("simulate --config " + cfg.string() + " --out " + out, &err) == exit_config);
    CHECK(err.find("line 2") != std::string::npos);
    CHECK(err.find("wat") != std::string::npos);

    // flags override the file
    write_text(cfg, "r: 5\nsteps: 20\ntransient: 5\n");
    CHECK(cli("simulate --config " + cfg.string() + " --r 3.9 --out " + out) == exit_ok);
    CHECK(read_text(fs::path(out) / "metadata.yaml").starts_with("command: simulate\nr: 3.9\n"));
}
