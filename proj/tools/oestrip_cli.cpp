// CLI for the impedance-strip directivity solver.
#include <CLI11.hpp>
#include <json.hpp>
#include <fstream>
#include <iostream>
#include "oestrip/run.hpp"

using oestrip::RunConfig;

static void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw oestrip::ConfigError("cannot read config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw oestrip::ConfigError(std::string("config parse: ") + e.what());
    }
    auto num = [&](const char* key, double& dst) { if (j.contains(key)) dst = j.at(key).get<double>(); };
    auto integer = [&](const char* key, int& dst) { if (j.contains(key)) dst = j.at(key).get<int>(); };
    auto str = [&](const char* key, std::string& dst) { if (j.contains(key)) dst = j.at(key).get<std::string>(); };
    num("k0a", cfg.k0a);
    num("im_k0_rel", cfg.im_k0_rel);
    num("eta_re", cfg.eta_re);
    num("eta_im", cfg.eta_im);
    num("theta_inc_deg", cfg.theta_inc_deg);
    str("mode", cfg.mode);
    str("case", cfg.prob_case);
    integer("n_gamma", cfg.n_gamma);
    integer("rk4_substeps", cfg.rk4_substeps);
    integer("n_panels", cfg.n_panels);
    integer("n_theta", cfg.n_theta);
    num("delta_theta_deg", cfg.delta_theta_deg);
    num("tol_start", cfg.tol_start);
    num("eps_shore", cfg.eps_shore);
    num("eps_deg", cfg.eps_deg);
    str("out", cfg.out_path);
    str("format", cfg.format);
}

int main(int argc, char** argv) {
    CLI::App app{"far-field directivity of a plane wave diffracted by an impedance strip"};
    std::string config_path;
    RunConfig cfg;

    app.add_option("--config", config_path, "JSON config file (flags override)");
    app.add_option("--mode", cfg.mode, "oe | bie | compare");
    app.add_option("--case", cfg.prob_case, "antisym | sym | total");
    app.add_option("--k0a", cfg.k0a, "k0*a (Re k0 normalized to 1)");
    app.add_option("--eta-re", cfg.eta_re, "Re eta");
    app.add_option("--eta-im", cfg.eta_im, "Im eta (<= 0)");
    app.add_option("--theta-inc-deg", cfg.theta_inc_deg, "incidence angle, degrees");
    app.add_option("--n-gamma", cfg.n_gamma, "contour mesh size N");
    app.add_option("--n-panels", cfg.n_panels, "BIE panel count");
    app.add_option("--n-theta", cfg.n_theta, "observation grid size");
    app.add_option("--out", cfg.out_path, "output path (default stdout)");
    app.add_option("--format", cfg.format, "csv | json");
    app.add_flag("--verbose", cfg.verbose, "stage timings on stderr");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            // config file first, then re-apply flag overrides
            RunConfig base;
            apply_config_file(base, config_path);
            std::swap(cfg, base);
            app.clear();
            app.parse(argc, argv);
        }
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const oestrip::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return oestrip::run(cfg);
}
