#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nemec/errors.hpp"
#include "nemec/grid.hpp"
#include "nemec/leslie.hpp"
#include "nemec/singular_potential.hpp"

namespace nemec {

// Resolved simulation configuration. Source format is a flat key = value
// text file ('#' starts a comment); the resolved form is exported as JSON
// into the run manifest.
struct SimConfig {
    int dim = 2;
    int n = 64;
    double dt = 1e-3;
    double t_end = 2.0;
    double eps = 0.1;
    double lambda = 1e-3;
    double c_bar = 2.0;
    std::array<double, 6> alpha{0, 0, 1, 3, 0, 0.5};
    std::string preset = "rest";
    std::uint64_t seed = 0;
    long output_every = 1;
    long snapshot_every = 0;   // 0: final snapshot only
    long checkpoint_every = 0; // 0: final checkpoint only
    double poisson_tol = 1e-10;
    int poisson_max_iter = 500;
    double tol_mp = 1e-8;
    double grad_phi_p = 4.0;
    std::string energy_identity_mode = "auto"; // auto | on | off
    std::string h2_monitor_mode = "auto";      // auto | on | off

    // filled by validate()
    LeslieValidation leslie;
    bool identity_mode_active = false;
    bool h2_monitor_active = false;
    std::vector<std::string> warnings;

    SingularPotentialParams potential() const { return {lambda, -1.0 / M_E}; }
    double director_sup_bound() const { return 1.0 + 10.0 * lambda; }
    Grid grid() const { return Grid(dim, n); }
    long steps() const { return std::lround(t_end / dt); }

    static SimConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        SimConfig cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno)
                                  + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            cfg.set(key, val, lineno);
        }
        return cfg;
    }

    void set(const std::string& key, const std::string& val, int lineno = 0) {
        auto bad = [&](const std::string& why) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + why);
        };
        auto as_double = [&](const std::string& v) {
            try {
                std::size_t pos = 0;
                const double x = std::stod(v, &pos);
                if (pos != v.size()) bad("trailing characters in number '" + v + "'");
                return x;
            } catch (const std::exception&) {
                bad("cannot parse number '" + v + "'");
                return 0.0;
            }
        };
        auto as_long = [&](const std::string& v) {
            return static_cast<long>(as_double(v));
        };
        if (key == "dim") dim = static_cast<int>(as_long(val));
        else if (key == "n") n = static_cast<int>(as_long(val));
        else if (key == "dt") dt = as_double(val);
        else if (key == "t_end") t_end = as_double(val);
        else if (key == "eps") eps = as_double(val);
        else if (key == "lambda") lambda = as_double(val);
        else if (key == "c_bar") c_bar = as_double(val);
        else if (key == "alpha") {
            std::istringstream is(val);
            for (double& a : alpha)
                if (!(is >> a)) bad("alpha needs six numbers");
            std::string rest;
            if (is >> rest) bad("alpha needs exactly six numbers");
        } else if (key == "preset") preset = val;
        else if (key == "seed") seed = static_cast<std::uint64_t>(as_double(val));
        else if (key == "output_every") output_every = as_long(val);
        else if (key == "snapshot_every") snapshot_every = as_long(val);
        else if (key == "checkpoint_every") checkpoint_every = as_long(val);
        else if (key == "poisson_tol") poisson_tol = as_double(val);
        else if (key == "poisson_max_iter") poisson_max_iter = static_cast<int>(as_long(val));
        else if (key == "tol_mp") tol_mp = as_double(val);
        else if (key == "grad_phi_p") grad_phi_p = as_double(val);
        else if (key == "energy_identity_mode") energy_identity_mode = val;
        else if (key == "h2_monitor_mode") h2_monitor_mode = val;
        else bad("unknown key '" + key + "'");
    }

    // Hard gates checked before any run.
    void validate() {
        if (dim != 2 && dim != 3) throw ConfigError("dim must be 2 or 3");
        if (n < 8 || n % 2 != 0) throw ConfigError("n must be even and >= 8");
        if (!(dt > 0.0)) throw ConfigError("dt must be positive");
        if (!(t_end >= dt)) throw ConfigError("t_end must cover at least one step");
        if (!(eps >= 0.0)) throw ConfigError("eps must be >= 0");
        if (!(lambda > 0.0 && lambda <= 0.5)) throw ConfigError("lambda must be in (0, 0.5]");
        if (!(c_bar > 0.0)) throw ConfigError("c_bar must be positive");
        if (output_every < 1) throw ConfigError("output_every must be >= 1");
        if (snapshot_every < 0 || checkpoint_every < 0)
            throw ConfigError("cadence values must be >= 0");
        if (!(poisson_tol > 0.0) || poisson_max_iter < 1)
            throw ConfigError("invalid potential-solver settings");

        leslie = validate_leslie(alpha);
        if (!leslie.admissible)
            throw ConfigError("Leslie coefficients fail the admissibility condition "
                              "alpha4 > 0 and alpha4 - |alpha1| - |alpha5| - |alpha6| "
                              "- 1/(1-delta) > 0");

        const double cap = barrier_dt_cap(potential());
        if (dt > cap + 1e-15)
            throw ConfigError("dt = " + std::to_string(dt)
                              + " exceeds the explicit-barrier stability cap "
                              + std::to_string(cap));

        const bool compatible = alpha[1] == 0.0 && alpha[2] == 1.0;
        if (energy_identity_mode == "on") {
            if (!compatible)
                throw ConfigError("energy_identity_mode=on requires alpha2 = 0 and alpha3 = 1");
            identity_mode_active = true;
        } else if (energy_identity_mode == "auto") {
            identity_mode_active = compatible;
        } else if (energy_identity_mode == "off") {
            identity_mode_active = false;
        } else {
            throw ConfigError("energy_identity_mode must be auto, on or off");
        }
        if (!compatible)
            warnings.push_back("alpha2 != 0 or alpha3 != 1: the Lemma-1 dissipation is not "
                               "the exact energy-identity form; budget acceptance is skipped");

        if (h2_monitor_mode == "on") h2_monitor_active = true;
        else if (h2_monitor_mode == "off") h2_monitor_active = false;
        else if (h2_monitor_mode == "auto") h2_monitor_active = (eps <= 0.05);
        else throw ConfigError("h2_monitor_mode must be auto, on or off");
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["dim"] = dim;
        j["n"] = n;
        j["dt"] = dt;
        j["t_end"] = t_end;
        j["eps"] = eps;
        j["lambda"] = lambda;
        j["c_bar"] = c_bar;
        j["alpha"] = alpha;
        j["preset"] = preset;
        j["seed"] = seed;
        j["output_every"] = output_every;
        j["snapshot_every"] = snapshot_every;
        j["checkpoint_every"] = checkpoint_every;
        j["poisson_tol"] = poisson_tol;
        j["poisson_max_iter"] = poisson_max_iter;
        j["tol_mp"] = tol_mp;
        j["grad_phi_p"] = grad_phi_p;
        j["energy_identity_mode"] = energy_identity_mode;
        j["h2_monitor_mode"] = h2_monitor_mode;
        j["resolved"] = {{"identity_mode_active", identity_mode_active},
                         {"h2_monitor_active", h2_monitor_active},
                         {"leslie_admissible", leslie.admissible},
                         {"leslie_delta", leslie.delta},
                         {"leslie_delta_prime", leslie.delta_prime}};
        return j;
    }

    static SimConfig from_json(const nlohmann::json& j) {
        SimConfig c;
        c.dim = j.at("dim").get<int>();
        c.n = j.at("n").get<int>();
        c.dt = j.at("dt").get<double>();
        c.t_end = j.at("t_end").get<double>();
        c.eps = j.at("eps").get<double>();
        c.lambda = j.at("lambda").get<double>();
        c.c_bar = j.at("c_bar").get<double>();
        c.alpha = j.at("alpha").get<std::array<double, 6>>();
        c.preset = j.at("preset").get<std::string>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.output_every = j.at("output_every").get<long>();
        c.snapshot_every = j.at("snapshot_every").get<long>();
        c.checkpoint_every = j.at("checkpoint_every").get<long>();
        c.poisson_tol = j.at("poisson_tol").get<double>();
        c.poisson_max_iter = j.at("poisson_max_iter").get<int>();
        c.tol_mp = j.at("tol_mp").get<double>();
        c.grad_phi_p = j.at("grad_phi_p").get<double>();
        c.energy_identity_mode = j.at("energy_identity_mode").get<std::string>();
        c.h2_monitor_mode = j.at("h2_monitor_mode").get<std::string>();
        return c;
    }
};

} // namespace nemec
