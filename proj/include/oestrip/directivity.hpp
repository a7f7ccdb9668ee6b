#pragma once
#include <string>
#include "oestrip/ode1.hpp"

namespace oestrip {

struct DirectivityTable {
    std::vector<double> theta;           // radians, strictly increasing
    double theta_inc = 0;
    std::vector<Cx> S_a, S_s, S_total;   // empty if not computed
    std::vector<uint8_t> dropped;        // k* collision flags
    std::string method;                  // "OE" | "BIE"
};

// pair (U0tilde^1, U0tilde^2) / (V0tilde^1, V0tilde^2) at spectral point k
void u0_tilde(Case c, Cx k, const Mat2& Uhat_times_Pi, const ProblemParams& p,
              Cx& u1, Cx& u2);

// embedding formula value at (k, k*)
Cx embed(Case c, Cx k, Cx kstar, Cx u1k, Cx u2k, Cx u1s, Cx u2s, const ProblemParams& p);

// full OE-method directivity sweep (theta grid in radians); threads <= cap
// either table pointer may be null (component not requested)
DirectivityTable directivity_oe(const CoefficientTable* anti, const CoefficientTable* sym,
                                const std::vector<double>& thetas, int n_threads,
                                int nsub = 4, double delta_k_rel = 1e-6);

std::vector<double> theta_grid(int n, double delta_theta_deg = 3.0);

} // namespace oestrip
