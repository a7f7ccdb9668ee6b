#pragma once
#include <vector>
#include "oestrip/linalg.hpp"

namespace oestrip {

struct ProblemParams {
    Cx k0{1.0, 1e-3};          // Im k0 >= 0
    double a = 8.0;            // strip half-width
    Cx eta{1.0, -0.25};        // Im eta <= 0
    double theta_inc = M_PI / 6;

    void validate() const {
        if (!(k0.imag() >= 0)) throw ConfigError("Im k0 must be >= 0");
        if (!(eta.imag() <= 0)) throw ConfigError("Im eta must be <= 0");
        if (!(a > 0)) throw ConfigError("a must be > 0");
        if (!(theta_inc > 0 && theta_inc < M_PI)) throw ConfigError("theta_inc must be in (0,pi)");
    }
};

// zero of eta - i*xi(k): k' = sqrt(k0^2 + eta^2), root with Re >= 0 (tie: Im >= 0)
Cx kprime(Cx k0, Cx eta);

// discretized contour gamma from iT to 0 with cached eigen-data
struct GammaMesh {
    ProblemParams params;
    std::vector<Cx> nodes;   // b_1 = iT ... b_N = 0
    std::vector<Cx> m;       // nontrivial eigenvalue of Mtilde2(k0+b)
    std::vector<Cx> lam;     // continuous branch, lam(i-inf)=0
    std::vector<Cx> xi1;     // = -lam
    std::vector<Cx> xi;      // branch-tracked xi(k0+b) along the contour
    double T = 0;
    bool deformed = false;
    int detour_side = 0;     // +1 east, -1 west, 0 undeformed

    size_t size() const { return nodes.size(); }
};

// truncation height from |m(iT)-1| ~ 2|eta|/T, floored at 50
double truncation_height(const ProblemParams& p, double tol_start);

// geometric grading toward b=0; anchored at ref_n so N and 2N meshes nest
std::vector<double> graded_heights(double T, int N, double ratio = 1.15, int ref_n = 200);

// track xi = sqrt(k0^2-(k0+b)^2) by continuity along a path, seeded at the b=0 end
std::vector<Cx> track_xi(Cx k0, const std::vector<Cx>& path, int nsub = 16);

// mesh with eigen-data; deforms around b' = k'-k0 when Re eta <= 0
GammaMesh build_gamma(const ProblemParams& p, double T, int N,
                      double ratio = 1.15, int ref_n = 200, double tol_start = 1e-8);
GammaMesh build_gamma(const ProblemParams& p, int N, double tol_start = 1e-8);

} // namespace oestrip
