#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "run_config.hpp"

using namespace abflux;
using namespace abflux::cli;
using nlohmann::json;

namespace {

const char* kWorkedConfig = R"({
  "coupling": {"q": 1.0, "K": 0.1, "hbar": 1.0},
  "cylinder_pre": {"j_min": 0, "amps": [[1, 0], [1, 0]]},
  "cylinder_post": {"j_min": 0, "amps": [[1, 0], [0, 1]]},
  "theta_grid": {"start": 0.0, "stop": 3.141592653589793, "steps": 4},
  "trials": 20000,
  "master_seed": 99,
  "epsilon": 0.1
})";

std::string run_cmd(void (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg) {
    std::ostringstream out;
    cmd(cfg, out);
    return out.str();
}

/// Runs a shell command, captures stdout, returns {exit_code, stdout}.
std::pair<int, std::string> capture(const std::string& command) {
    std::string output;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string binary_path() {
    const char* p = std::getenv("ABFLUX_BIN");
    return p ? p : "";
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/abflux_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    SUBCASE("full document") {
        const RunConfig cfg = parse_config_text(kWorkedConfig);
        CHECK(cfg.q == 1.0);
        CHECK(cfg.K == 0.1);
        CHECK(cfg.hbar == 1.0);
        REQUIRE(cfg.cylinder_pre.has_value());
        CHECK(cfg.cylinder_pre->j_min == 0);
        CHECK(cfg.cylinder_pre->amps.size() == 2);
        CHECK(cfg.cylinder_post->amps[1] == Complex{0.0, 1.0});
        REQUIRE(cfg.theta_grid.has_value());
        CHECK(cfg.theta_grid->steps == 4);
        CHECK(cfg.trials == 20000);
        CHECK(cfg.master_seed == 99);
        CHECK(cfg.epsilon.value() == 0.1);
        CHECK_FALSE(cfg.alpha_override.has_value());
        CHECK(cfg.output_format == "csv");
    }
    SUBCASE("defaults for a minimal document") {
        const RunConfig cfg = parse_config_text("{}");
        CHECK(cfg.hbar == 1.0);
        CHECK_FALSE(cfg.cylinder_pre.has_value());
        CHECK(cfg.output_path.empty());
    }
    SUBCASE("malformed inputs raise ConfigError") {
        CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("[1,2]"), ConfigError);
        CHECK_THROWS_AS(parse_config_text(R"({"coupling": {"q": "x", "K": 1}})"), ConfigError);
        CHECK_THROWS_AS(parse_config_text(R"({"cylinder_pre": {"j_min": 0, "amps": [[1]]}})"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config_text(R"({"output_format": "xml"})"), ConfigError);
        CHECK_THROWS_AS(parse_config_file("/nonexistent/path.json"), ConfigError);
    }
}

TEST_CASE("grid expansion") {
    CHECK_THROWS_AS(expand_grid({0.0, 1.0, 0}, 0.0, 4.0), ConfigError);
    CHECK_THROWS_AS(expand_grid({-0.5, 1.0, 3}, 0.0, 4.0), ConfigError);
    CHECK_THROWS_AS(expand_grid({0.0, 5.0, 3}, 0.0, 4.0), ConfigError);
    const auto single = expand_grid({0.7, 2.0, 1}, 0.0, 4.0);
    CHECK(single.size() == 1);
    CHECK(single[0] == 0.7);
    const auto grid = expand_grid({0.0, 2.0, 5}, 0.0, 4.0);
    CHECK(grid.size() == 5);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 2.0);
    CHECK(grid[2] == doctest::Approx(1.0));
}

TEST_CASE("command output") {
    RunConfig cfg = parse_config_text(kWorkedConfig);

    SUBCASE("matching eigenstate pre/post reports the eigenvalue") {
        const RunConfig eig = parse_config_text(R"({
          "coupling": {"q": 1.0, "K": 0.1},
          "cylinder_pre": {"j_min": 3, "amps": [[1, 0]]},
          "cylinder_post": {"j_min": 3, "amps": [[1, 0]]}
        })");
        const std::string out = run_cmd(cmd_weakvalue, eig);
        double wv_re, wv_im, alpha;
        REQUIRE(std::sscanf(out.c_str(), "%*[^\n]\n%lf,%lf,%lf", &wv_re, &wv_im, &alpha) == 3);
        CHECK(wv_re == doctest::Approx(3.0));
        CHECK(wv_im == doctest::Approx(0.0));
        CHECK(alpha == doctest::Approx(0.0));
    }
    SUBCASE("weakvalue CSV carries the fixed header and worked values") {
        const std::string out = run_cmd(cmd_weakvalue, cfg);
        std::istringstream lines(out);
        std::string header, row;
        std::getline(lines, header);
        std::getline(lines, row);
        CHECK(header ==
              "wv_re,wv_im,alpha,overlap_sq,regime_margin,postselect_margin,a_eff_re,a_eff_im");
        double wv_re, wv_im;
        CHECK(std::sscanf(row.c_str(), "%lf,%lf", &wv_re, &wv_im) == 2);
        CHECK(wv_re == doctest::Approx(0.5));
        CHECK(wv_im == doctest::Approx(-0.5));
    }
    SUBCASE("sweep-theta header is pinned") {
        const std::string out = run_cmd(cmd_sweep_theta, cfg);
        CHECK(out.rfind("theta,p_l_analytic,p_l_exact,p_r_analytic,visibility\n", 0) == 0);
        // header + 4 grid rows
        CHECK(std::count(out.begin(), out.end(), '\n') == 5);
    }
    SUBCASE("alpha = 0 sweep is flat at one half") {
        cfg.alpha_override = 0.0;
        cfg.K = 0.0;
        const std::string out = run_cmd(cmd_sweep_theta, cfg);
        std::istringstream lines(out);
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) {
            double theta, pl, ple, pr, vis;
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &theta, &pl, &ple, &pr,
                                &vis) == 5);
            CHECK(pl == doctest::Approx(0.5));
            CHECK(ple == doctest::Approx(0.5));
            CHECK(pr == doctest::Approx(0.5));
        }
    }
    SUBCASE("ring CSV appends the unit full-ring row") {
        const std::string out = run_cmd(cmd_ring, [&] {
            RunConfig r = cfg;
            r.theta_grid = ThetaGrid{0.0, 6.283185307179586, 5};
            return r;
        }());
        CHECK(out.rfind("theta,p_initial,p_final,ratio\n", 0) == 0);
        const auto last = out.rfind("full_ring,");
        REQUIRE(last != std::string::npos);
        double ti, tf, ratio;
        REQUIRE(std::sscanf(out.c_str() + last, "full_ring,%lf,%lf,%lf", &ti, &tf, &ratio) == 3);
        CHECK(ti == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tf == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("alpha = 0 makes the ring columns identical") {
        RunConfig r = cfg;
        r.alpha_override = 0.0;
        r.theta_grid = ThetaGrid{0.5, 5.5, 7};
        const std::string out = run_cmd(cmd_ring, r);
        std::istringstream lines(out);
        std::string line;
        std::getline(lines, line);
        int rows = 0;
        while (std::getline(lines, line) && line.rfind("full_ring", 0) != 0) {
            double theta, pi_col, pf_col, ratio;
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &theta, &pi_col, &pf_col,
                                &ratio) == 4);
            CHECK(pi_col == pf_col);
            ++rows;
        }
        CHECK(rows == 7);
    }
    SUBCASE("missing pieces raise ConfigError") {
        RunConfig empty;
        CHECK_THROWS_AS(run_cmd(cmd_weakvalue, empty), ConfigError);
        RunConfig no_grid = cfg;
        no_grid.theta_grid.reset();
        CHECK_THROWS_AS(run_cmd(cmd_sweep_theta, no_grid), ConfigError);
        RunConfig no_trials = cfg;
        no_trials.trials = 0;
        std::ostringstream sink;
        CHECK_THROWS_AS(cmd_montecarlo(no_trials, sink), ConfigError);
        RunConfig no_eps = cfg;
        no_eps.epsilon.reset();
        CHECK_THROWS_AS(run_cmd(cmd_ring, no_eps), ConfigError);
    }
}

TEST_CASE("numeric round trips") {
    SUBCASE("format_double survives strtod for awkward values") {
        for (const double v : {0.1, 1.0 / 3.0, -0.015915494309189534, 1e-300, 6.283185307179586,
                               0.49999999999999978}) {
            const std::string s = format_double(v);
            CHECK(std::strtod(s.c_str(), nullptr) == v);
        }
    }
    SUBCASE("emitted JSON reparses bit-for-bit") {
        RunConfig cfg = parse_config_text(kWorkedConfig);
        cfg.output_format = "json";
        for (auto* cmd : {&cmd_weakvalue, &cmd_sweep_theta, &cmd_ring}) {
            const std::string text = run_cmd(*cmd, cfg);
            const json parsed = json::parse(text);
            CHECK(parsed.dump(2) + "\n" == text);
        }
        std::ostringstream mc;
        cmd_montecarlo(cfg, mc);
        // csv default: switch to json and compare the mirror field names
        cfg.output_format = "json";
        std::ostringstream mcj;
        cmd_montecarlo(cfg, mcj);
        const json parsed = json::parse(mcj.str());
        for (const char* key : {"n", "detector_left", "postselected", "left_and_postselected",
                                "conditional_frequency", "wilson_low", "wilson_high",
                                "analytic_p_l", "z_score"})
            CHECK(parsed.contains(key));
    }
}

TEST_CASE("montecarlo command") {
    RunConfig cfg = parse_config_text(kWorkedConfig);
    cfg.theta_grid = ThetaGrid{3.141592653589793, 3.141592653589793, 1};

    SUBCASE("same seed, same bytes; different seed, different draws") {
        std::ostringstream a, b, c;
        cmd_montecarlo(cfg, a);
        cmd_montecarlo(cfg, b);
        CHECK(a.str() == b.str());
        cfg.master_seed = 100;
        cmd_montecarlo(cfg, c);
        CHECK(a.str() != c.str());
    }
    SUBCASE("per-trial dump matches the summary counts") {
        const std::string dump_path = "/tmp/abflux_test_trials.csv";
        std::ostringstream out;
        cfg.trials = 5000;
        cmd_montecarlo(cfg, out, dump_path);
        std::ifstream dump(dump_path);
        REQUIRE(dump.good());
        std::string line;
        std::getline(dump, line);
        CHECK(line == "trial_index,left_detector_fired,postselect_succeeded,seed");
        std::uint64_t rows = 0, lefts = 0;
        while (std::getline(dump, line)) {
            unsigned long long idx, seed;
            int left, ps;
            REQUIRE(std::sscanf(line.c_str(), "%llu,%d,%d,%llu", &idx, &left, &ps, &seed) == 4);
            lefts += left;
            ++rows;
        }
        CHECK(rows == 5000);
        unsigned long long n, detector_left;
        REQUIRE(std::sscanf(out.str().c_str(), "n,%*[^\n]\n%llu,%llu", &n, &detector_left) == 2);
        CHECK(n == 5000);
        CHECK(detector_left == lefts);
        std::remove(dump_path.c_str());
    }
}

TEST_CASE("binary exit codes and determinism" * doctest::skip(std::getenv("ABFLUX_BIN") == nullptr)) {
    const std::string bin = binary_path();
    const std::string cfg_path = write_temp("cfg.json", kWorkedConfig);

    SUBCASE("success is 0") {
        const auto [code, out] = capture(bin + " weakvalue --config " + cfg_path);
        CHECK(code == 0);
        CHECK(out.find("wv_re") == 0);
    }
    SUBCASE("bad config is 2") {
        const std::string bad = write_temp("bad.json", "{ nope");
        CHECK(capture(bin + " weakvalue --config " + bad).first == 2);
        CHECK(capture(bin + " sweep-theta --config " + cfg_path + " --theta-steps 0").first == 2);
        CHECK(capture(bin + " montecarlo --config " + cfg_path + " --trials 0").first == 2);
        CHECK(capture(bin + " nonsense").first == 2);
    }
    SUBCASE("orthogonal post-selection is 3 on every command") {
        const std::string ortho = write_temp("ortho.json", R"({
          "coupling": {"q": 1.0, "K": 0.1},
          "cylinder_pre": {"j_min": 0, "amps": [[1, 0]]},
          "cylinder_post": {"j_min": 5, "amps": [[1, 0]]},
          "theta_grid": {"start": 0.0, "stop": 3.0, "steps": 3},
          "trials": 10,
          "epsilon": 0.1
        })");
        CHECK(capture(bin + " weakvalue --config " + ortho).first == 3);
        CHECK(capture(bin + " sweep-theta --config " + ortho).first == 3);
        CHECK(capture(bin + " montecarlo --config " + ortho).first == 3);
        CHECK(capture(bin + " ring --config " + ortho).first == 3);
    }
    SUBCASE("montecarlo output is byte-identical across thread counts") {
        const std::string cmd = " montecarlo --config " + cfg_path + " --theta-start 3.14 --theta-steps 1";
        const auto one = capture("ABFLUX_THREADS=1 " + bin + cmd);
        const auto two = capture("ABFLUX_THREADS=2 " + bin + cmd);
        const auto four = capture("ABFLUX_THREADS=4 " + bin + cmd);
        CHECK(one.first == 0);
        CHECK(one.second == two.second);
        CHECK(one.second == four.second);
        const auto again = capture("ABFLUX_THREADS=2 " + bin + cmd);
        CHECK(two.second == again.second);
    }
    SUBCASE("output_path writes the same bytes as stdout") {
        const std::string out_path = "/tmp/abflux_test_out.csv";
        const auto direct = capture(bin + " ring --config " + cfg_path +
                                    " --theta-stop 6.283185307179586 --theta-steps 6");
        const auto filed = capture(bin + " ring --config " + cfg_path +
                                   " --theta-stop 6.283185307179586 --theta-steps 6 --output " +
                                   out_path);
        CHECK(filed.first == 0);
        CHECK(filed.second.empty());
        std::ifstream f(out_path);
        std::stringstream ss;
        ss << f.rdbuf();
        CHECK(ss.str() == direct.second);
        std::remove(out_path.c_str());
    }
}

}  // TEST_SUITE
