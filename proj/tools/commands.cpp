#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace abflux::cli {

namespace {

using nlohmann::json;

const CylinderSpec& require_spec(const std::optional<CylinderSpec>& spec, const char* key) {
    if (!spec) throw ConfigError(std::string(key) + " is required for this command");
    return *spec;
}

const ThetaGrid& require_grid(const RunConfig& cfg) {
    if (!cfg.theta_grid) throw ConfigError("theta_grid is required for this command");
    return *cfg.theta_grid;
}

/// alpha_override wins; otherwise the tilt constant comes from the weak value.
double resolve_alpha(const RunConfig& cfg) {
    if (cfg.alpha_override) return *cfg.alpha_override;
    const auto pre = cylinder_from(require_spec(cfg.cylinder_pre, "cylinder_pre"));
    const auto post = cylinder_from(require_spec(cfg.cylinder_post, "cylinder_post"));
    return angular_momentum_weak_value(pre, post, coupling_from(cfg)).alpha;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

double z_score(double frequency, double target, std::uint64_t samples) {
    if (samples == 0 || !(target > 0.0) || !(target < 1.0))
        return std::numeric_limits<double>::quiet_NaN();
    const double se = std::sqrt(target * (1.0 - target) / static_cast<double>(samples));
    return (frequency - target) / se;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

unsigned threads_from_env() {
    const char* raw = std::getenv("ABFLUX_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (end == raw || *end != '\0') return 0;
    return static_cast<unsigned>(std::min<unsigned long>(v, 64));
}

void cmd_weakvalue(const RunConfig& cfg, std::ostream& out) {
    const auto coupling = coupling_from(cfg);
    const auto pre = cylinder_from(require_spec(cfg.cylinder_pre, "cylinder_pre"));
    const auto post = cylinder_from(require_spec(cfg.cylinder_post, "cylinder_post"));

    const auto report = angular_momentum_weak_value(pre, post, coupling);
    const Complex a_eff = effective_vector_potential(pre, post, coupling, 1.0);

    if (cfg.output_format == "json") {
        json doc{{"wv_re", report.weak_value.real()},
                 {"wv_im", report.weak_value.imag()},
                 {"alpha", report.alpha},
                 {"overlap_sq", std::norm(report.overlap)},
                 {"regime_margin", report.regime_margin},
                 {"postselect_margin", report.postselect_margin},
                 {"a_eff_re", a_eff.real()},
                 {"a_eff_im", a_eff.imag()}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "wv_re,wv_im,alpha,overlap_sq,regime_margin,postselect_margin,a_eff_re,a_eff_im\n";
    write_csv_row(out, {format_double(report.weak_value.real()),
                        format_double(report.weak_value.imag()), format_double(report.alpha),
                        format_double(std::norm(report.overlap)),
                        format_double(report.regime_margin),
                        format_double(report.postselect_margin), format_double(a_eff.real()),
                        format_double(a_eff.imag())});
}

void cmd_sweep_theta(const RunConfig& cfg, std::ostream& out) {
    const auto coupling = coupling_from(cfg);
    const auto pre = cylinder_from(require_spec(cfg.cylinder_pre, "cylinder_pre"));
    const auto post = cylinder_from(require_spec(cfg.cylinder_post, "cylinder_post"));
    const auto thetas = expand_grid(require_grid(cfg), 0.0, std::numbers::pi);
    const double alpha = resolve_alpha(cfg);

    struct Row {
        double theta, p_l_analytic, p_l_exact, p_r_analytic, vis;
    };
    std::vector<Row> rows;
    rows.reserve(thetas.size());
    for (const double theta : thetas) {
        const auto evolved =
            encircle(tensor(PathAmplitudes::equal_superposition(), pre), coupling,
                     EncircleAngle(theta));
        const auto selected = postselect_exact(evolved, post);
        rows.push_back({theta, left_arm_probability(alpha, theta), selected.left_probability(),
                        right_arm_probability(alpha, theta), visibility(evolved)});
    }

    if (cfg.output_format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(json{{"theta", r.theta},
                               {"p_l_analytic", r.p_l_analytic},
                               {"p_l_exact", r.p_l_exact},
                               {"p_r_analytic", r.p_r_analytic},
                               {"visibility", r.vis}});
        out << json{{"rows", arr}}.dump(2) << '\n';
        return;
    }
    out << "theta,p_l_analytic,p_l_exact,p_r_analytic,visibility\n";
    for (const auto& r : rows)
        write_csv_row(out, {format_double(r.theta), format_double(r.p_l_analytic),
                            format_double(r.p_l_exact), format_double(r.p_r_analytic),
                            format_double(r.vis)});
}

void cmd_montecarlo(const RunConfig& cfg, std::ostream& out, const std::string& trials_out_path) {
    const auto coupling = coupling_from(cfg);
    const auto pre = cylinder_from(require_spec(cfg.cylinder_pre, "cylinder_pre"));
    const auto post = cylinder_from(require_spec(cfg.cylinder_post, "cylinder_post"));
    const auto& grid = require_grid(cfg);
    if (grid.start < 0.0 || grid.start > std::numbers::pi)
        throw ConfigError("montecarlo theta (theta_grid.start) must lie in [0, pi]");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1 for montecarlo");

    const double theta = grid.start;
    const double alpha = resolve_alpha(cfg);
    const double analytic = left_arm_probability(alpha, theta);

    const auto run = run_trials(pre, post, coupling, EncircleAngle(theta), cfg.trials,
                                cfg.master_seed, threads_from_env());
    const auto& s = run.summary;
    const double z = z_score(s.conditional_left_frequency, analytic, s.postselected);

    if (!trials_out_path.empty()) {
        std::ofstream dump(trials_out_path);
        if (!dump) throw ConfigError("cannot open trials output file: " + trials_out_path);
        dump << "trial_index,left_detector_fired,postselect_succeeded,seed\n";
        for (const auto& rec : run.records) {
            dump << rec.trial_index << ',' << (rec.left_detector_fired ? 1 : 0) << ','
                 << (rec.postselect_succeeded ? 1 : 0) << ',' << rec.seed << '\n';
        }
    }

    if (cfg.output_format == "json") {
        json doc{{"n", s.trials},
                 {"detector_left", s.left_clicks},
                 {"postselected", s.postselected},
                 {"left_and_postselected", s.left_and_postselected},
                 {"conditional_frequency", s.conditional_left_frequency},
                 {"wilson_low", s.conditional_ci.low},
                 {"wilson_high", s.conditional_ci.high},
                 {"analytic_p_l", analytic},
                 {"z_score", z}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "n,detector_left,postselected,left_and_postselected,conditional_frequency,"
           "wilson_low,wilson_high,analytic_p_l,z_score\n";
    write_csv_row(out, {std::to_string(s.trials), std::to_string(s.left_clicks),
                        std::to_string(s.postselected), std::to_string(s.left_and_postselected),
                        format_double(s.conditional_left_frequency),
                        format_double(s.conditional_ci.low), format_double(s.conditional_ci.high),
                        format_double(analytic), format_double(z)});
}

void cmd_ring(const RunConfig& cfg, std::ostream& out) {
    const auto thetas = expand_grid(require_grid(cfg), 0.0, 2.0 * std::numbers::pi);
    if (!cfg.epsilon || !(*cfg.epsilon > 0.0))
        throw ConfigError("epsilon > 0 is required for the ring command");
    const double eps = *cfg.epsilon;
    const double alpha = resolve_alpha(cfg);

    struct Row {
        double theta, p_i, p_f, ratio;
    };
    std::vector<Row> rows;
    rows.reserve(thetas.size());
    for (const double theta : thetas) {
        const double p_i = ring_p_initial(theta, eps);
        const double p_f = ring_p_final(theta, eps, alpha);
        rows.push_back({theta, p_i, p_f, p_f / p_i});
    }
    const double total_i = ring_p_initial(std::numbers::pi, std::numbers::pi);
    const double total_f = ring_p_final(std::numbers::pi, std::numbers::pi, alpha);

    if (cfg.output_format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(json{{"theta", r.theta},
                               {"p_initial", r.p_i},
                               {"p_final", r.p_f},
                               {"ratio", r.ratio}});
        json doc{{"rows", arr},
                 {"full_ring", json{{"p_initial", total_i},
                                    {"p_final", total_f},
                                    {"ratio", total_f / total_i}}}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "theta,p_initial,p_final,ratio\n";
    for (const auto& r : rows)
        write_csv_row(out, {format_double(r.theta), format_double(r.p_i), format_double(r.p_f),
                            format_double(r.ratio)});
    write_csv_row(out, {"full_ring", format_double(total_i), format_double(total_f),
                        format_double(total_f / total_i)});
}

}  // namespace abflux::cli
