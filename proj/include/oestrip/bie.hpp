#pragma once
#include "oestrip/directivity.hpp"

namespace oestrip {

// H0^(1)(z): ascending series for |z| <= 12, Hankel asymptotic expansion beyond
Cx hankel0_first(Cx z);
Cx hankel0_series(Cx z);  // regime implementations, exposed for the overlap check
Cx hankel0_asym(Cx z);

struct Panelization {
    int n = 256;
    double h = 0;
    std::vector<double> x;  // panel centers
    Panelization(int n_panels, double a);
};

struct DensityVector {
    Case prob_case;
    std::vector<Cx> values;
};

// G(dx) = -(i/4) H0^(1)(k0 |dx|)
Cx green(double dx, const ProblemParams& p);

DensityVector solve_antisym(const ProblemParams& p, const Panelization& panels);
DensityVector solve_sym(const ProblemParams& p, const Panelization& panels);

DirectivityTable bie_directivity(const ProblemParams& p, const Panelization& panels,
                                 const std::vector<double>& thetas,
                                 bool want_antisym, bool want_sym);

} // namespace oestrip
