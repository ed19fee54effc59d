#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

using namespace abflux::cli;

struct CliOverrides {
    std::string config_path;
    std::optional<double> q, K, hbar;
    std::optional<double> theta_start, theta_stop;
    std::optional<std::uint64_t> theta_steps;
    std::optional<std::uint64_t> trials, master_seed;
    std::optional<double> epsilon, alpha_override;
    std::optional<std::string> output, format;
    std::string trials_out;
};

void add_common_options(CLI::App* sub, CliOverrides& o) {
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--q", o.q, "charge (overrides config)");
    sub->add_option("--K", o.K, "coupling constant (overrides config)");
    sub->add_option("--hbar", o.hbar, "action scale (overrides config)");
    sub->add_option("--theta-start", o.theta_start, "grid start (radians)");
    sub->add_option("--theta-stop", o.theta_stop, "grid stop (radians)");
    sub->add_option("--theta-steps", o.theta_steps, "grid point count");
    sub->add_option("--trials", o.trials, "Monte Carlo trial count");
    sub->add_option("--master-seed", o.master_seed, "Monte Carlo master seed");
    sub->add_option("--epsilon", o.epsilon, "ring detection half-width (radians)");
    sub->add_option("--alpha-override", o.alpha_override, "use this tilt constant instead of the weak value");
    sub->add_option("--output", o.output, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

RunConfig assemble(const CliOverrides& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) cfg = parse_config_file(o.config_path);
    if (o.q) cfg.q = *o.q;
    if (o.K) cfg.K = *o.K;
    if (o.hbar) cfg.hbar = *o.hbar;
    if (o.theta_start || o.theta_stop || o.theta_steps) {
        ThetaGrid grid = cfg.theta_grid.value_or(ThetaGrid{});
        if (o.theta_start) grid.start = *o.theta_start;
        if (o.theta_stop) grid.stop = *o.theta_stop;
        if (o.theta_steps) grid.steps = *o.theta_steps;
        cfg.theta_grid = grid;
    }
    if (o.trials) cfg.trials = *o.trials;
    if (o.master_seed) cfg.master_seed = *o.master_seed;
    if (o.epsilon) cfg.epsilon = *o.epsilon;
    if (o.alpha_override) cfg.alpha_override = *o.alpha_override;
    if (o.output) cfg.output_path = *o.output;
    if (o.format) cfg.output_format = *o.format;
    return cfg;
}

template <typename Fn>
int run_command(const CliOverrides& overrides, Fn&& command) {
    try {
        const RunConfig cfg = assemble(overrides);
        if (cfg.output_path.empty()) {
            command(cfg, std::cout);
        } else {
            std::ofstream file(cfg.output_path);
            if (!file) throw ConfigError("cannot open output file: " + cfg.output_path);
            command(cfg, file);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const abflux::OrthogonalPostSelection& e) {
        std::cerr << "physics error: " << e.what() << '\n';
        return kExitPhysicsError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abflux: two-path charge around a quantized flux source"};
    app.require_subcommand(1);

    CliOverrides wv_opts, sweep_opts, mc_opts, ring_opts;
    auto* wv = app.add_subcommand("weakvalue", "weak value, tilt constant, effective potential");
    add_common_options(wv, wv_opts);
    auto* sweep = app.add_subcommand("sweep-theta", "arm probabilities and visibility over theta");
    add_common_options(sweep, sweep_opts);
    auto* mc = app.add_subcommand("montecarlo", "seeded detector-then-postselect trials");
    add_common_options(mc, mc_opts);
    mc->add_option("--trials-out", mc_opts.trials_out, "per-trial CSV dump file");
    auto* ring = app.add_subcommand("ring", "ring detection probabilities p_i and p_f");
    add_common_options(ring, ring_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (wv->parsed())
        return run_command(wv_opts, [](const RunConfig& c, std::ostream& o) { cmd_weakvalue(c, o); });
    if (sweep->parsed())
        return run_command(sweep_opts,
                           [](const RunConfig& c, std::ostream& o) { cmd_sweep_theta(c, o); });
    if (mc->parsed())
        return run_command(mc_opts, [&](const RunConfig& c, std::ostream& o) {
            cmd_montecarlo(c, o, mc_opts.trials_out);
        });
    if (ring->parsed())
        return run_command(ring_opts, [](const RunConfig& c, std::ostream& o) { cmd_ring(c, o); });
    return kExitConfigError;
}
