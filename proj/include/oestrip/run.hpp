#pragma once
#include <optional>
#include <string>
#include "oestrip/bie.hpp"

namespace oestrip {

struct RunConfig {
    double k0a = 8.0;
    double im_k0_rel = 1e-3;
    double eta_re = 1.0, eta_im = -0.25;
    double theta_inc_deg = 30.0;
    std::string mode = "compare";      // oe | bie | compare
    std::string prob_case = "total";   // antisym | sym | total
    int n_gamma = 200;
    int rk4_substeps = 4;
    int n_panels = 256;
    int n_theta = 181;
    double delta_theta_deg = 3.0;
    double tol_start = 1e-8;
    double eps_shore = 0.05;           // relative to |k0|
    double eps_deg = 1e-10;
    std::string out_path = "";         // empty: stdout
    std::string format = "csv";        // csv | json
    bool verbose = false;

    ProblemParams params() const;
    void validate() const;
};

struct CompareReport {
    std::vector<double> abs_diff_a, abs_diff_s;   // per-theta |S_oe - S_bie|
    double l2_a = 0, linf_a = 0, l2_s = 0, linf_s = 0;  // relative, on |S|
};

struct RunResult {
    DirectivityTable oe_table, bie_table;
    std::optional<CompareReport> compare;
    int sign_alpha = 0;  // 0: not validated this run
};

// try both eigenvector-parameter signs on a coarse mesh, keep the
// residual-minimizing one
int validate_alpha_sign(const ProblemParams& p, double tol_start = 1e-8);

RunResult run_pipeline(const RunConfig& cfg);

// full CLI semantics: run, serialize, write artifacts; returns exit code
int run(const RunConfig& cfg);

std::string serialize_csv(const RunConfig& cfg, const RunResult& res);
std::string serialize_json(const RunConfig& cfg, const RunResult& res);

int max_threads();  // hardware concurrency capped by OESTRIP_THREADS

} // namespace oestrip
