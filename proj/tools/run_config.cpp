#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace abflux::cli {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(where + ": complex amplitudes must be [re, im] pairs");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

CylinderSpec parse_cylinder(const json& j, const std::string& key) {
    if (!j.is_object()) throw ConfigError(key + " must be an object with j_min and amps");
    CylinderSpec spec;
    if (!j.contains("j_min") || !j["j_min"].is_number_integer())
        throw ConfigError(key + ".j_min must be an integer");
    spec.j_min = j["j_min"].get<int>();
    if (!j.contains("amps") || !j["amps"].is_array() || j["amps"].empty())
        throw ConfigError(key + ".amps must be a non-empty array");
    for (const auto& a : j["amps"]) spec.amps.push_back(parse_complex(a, key + ".amps"));
    return spec;
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(key + " must be a number");
    return j[key].get<double>();
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    RunConfig cfg;
    try {
        if (doc.contains("coupling")) {
            const auto& c = doc["coupling"];
            cfg.q = require_number(c, "q");
            cfg.K = require_number(c, "K");
            if (c.contains("hbar")) cfg.hbar = require_number(c, "hbar");
        }
        if (doc.contains("cylinder_pre"))
            cfg.cylinder_pre = parse_cylinder(doc["cylinder_pre"], "cylinder_pre");
        if (doc.contains("cylinder_post"))
            cfg.cylinder_post = parse_cylinder(doc["cylinder_post"], "cylinder_post");
        if (doc.contains("theta_grid")) {
            const auto& g = doc["theta_grid"];
            ThetaGrid grid;
            grid.start = require_number(g, "start");
            grid.stop = require_number(g, "stop");
            if (!g.contains("steps") || !g["steps"].is_number_unsigned())
                throw ConfigError("theta_grid.steps must be a non-negative integer");
            grid.steps = g["steps"].get<std::uint64_t>();
            cfg.theta_grid = grid;
        }
        if (doc.contains("trials")) {
            if (!doc["trials"].is_number_unsigned())
                throw ConfigError("trials must be a non-negative integer");
            cfg.trials = doc["trials"].get<std::uint64_t>();
        }
        if (doc.contains("master_seed")) {
            if (!doc["master_seed"].is_number_unsigned())
                throw ConfigError("master_seed must be a non-negative integer");
            cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
        }
        if (doc.contains("epsilon")) cfg.epsilon = require_number(doc, "epsilon");
        if (doc.contains("alpha_override"))
            cfg.alpha_override = require_number(doc, "alpha_override");
        if (doc.contains("output_path")) {
            if (!doc["output_path"].is_string()) throw ConfigError("output_path must be a string");
            cfg.output_path = doc["output_path"].get<std::string>();
        }
        if (doc.contains("output_format")) {
            if (!doc["output_format"].is_string())
                throw ConfigError("output_format must be \"csv\" or \"json\"");
            cfg.output_format = doc["output_format"].get<std::string>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw ConfigError("output_format must be \"csv\" or \"json\"");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Coupling coupling_from(const RunConfig& cfg) {
    try {
        return Coupling(cfg.q, cfg.K, cfg.hbar);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid coupling: ") + e.what());
    }
}

CylinderState cylinder_from(const CylinderSpec& spec) {
    try {
        return make_cylinder(spec.j_min, spec.amps);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid cylinder state: ") + e.what());
    }
}

std::vector<double> expand_grid(const ThetaGrid& grid, double lo, double hi) {
    if (grid.steps == 0) throw ConfigError("theta_grid is empty (steps = 0)");
    if (!std::isfinite(grid.start) || !std::isfinite(grid.stop))
        throw ConfigError("theta_grid endpoints must be finite");
    const double gmin = std::min(grid.start, grid.stop);
    const double gmax = std::max(grid.start, grid.stop);
    if (gmin < lo || gmax > hi) {
        std::ostringstream msg;
        msg << "theta_grid [" << grid.start << ", " << grid.stop << "] must lie within [" << lo
            << ", " << hi << "]";
        throw ConfigError(msg.str());
    }
    std::vector<double> out;
    out.reserve(grid.steps);
    if (grid.steps == 1) {
        out.push_back(grid.start);
        return out;
    }
    const double step = (grid.stop - grid.start) / static_cast<double>(grid.steps - 1);
    for (std::uint64_t k = 0; k < grid.steps; ++k)
        out.push_back(grid.start + step * static_cast<double>(k));
    out.back() = grid.stop;
    return out;
}

}  // namespace abflux::cli
