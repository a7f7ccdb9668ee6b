#include "oestrip/bie.hpp"
#include <Eigen/Dense>

namespace oestrip {

namespace {
constexpr double kEulerGamma = 0.5772156649015328606;
} // namespace

// ascending series: J0 and Y0 together
Cx hankel0_series(Cx z) {
    Cx q = 0.25 * z * z;
    Cx term(1, 0), j0(1, 0), ysum(0, 0);
    double harm = 0;
    for (int m = 1; m <= 60; ++m) {
        term *= -q / double(m * m);
        harm += 1.0 / m;
        j0 += term;
        ysum += -term * harm;   // (-1)^{m+1} H_m q^m/(m!)^2
        if (std::abs(term) < 1e-18 * std::abs(j0) && m > 4) break;
    }
    Cx y0 = (2.0 / M_PI) * ((std::log(0.5 * z) + kEulerGamma) * j0 + ysum);
    return j0 + Cx(0, 1) * y0;
}

// Hankel asymptotic expansion, adaptively truncated at the smallest term
Cx hankel0_asym(Cx z) {
    Cx sum(1, 0), term(1, 0);
    double last = 1.0;
    for (int k = 1; k <= 40; ++k) {
        double num = -double(2 * k - 1) * double(2 * k - 1);  // 4*0^2-(2k-1)^2
        term *= Cx(0, 1) * num / (8.0 * double(k)) / z;
        double mag = std::abs(term);
        if (mag > last) break;
        sum += term;
        last = mag;
        if (mag < 1e-18) break;
    }
    return std::sqrt(2.0 / (M_PI * z)) * std::exp(Cx(0, 1) * (z - M_PI / 4)) * sum;
}

Cx hankel0_first(Cx z) {
    if (std::abs(z) == 0) throw DomainError("hankel0_first: z = 0");
    return std::abs(z) <= 12.0 ? hankel0_series(z) : hankel0_asym(z);
}

Panelization::Panelization(int n_panels, double a) : n(n_panels) {
    if (n < 16) throw ConfigError("n_panels must be >= 16");
    h = 2.0 * a / n;
    x.resize(n);
    for (int j = 0; j < n; ++j) x[j] = -a + h * (j + 0.5);
}

Cx green(double dx, const ProblemParams& p) {
    if (dx == 0) throw DomainError("green at dx = 0");
    return Cx(0, -0.25) * hankel0_first(p.k0 * std::abs(dx));
}

namespace {
using CMat = Eigen::Matrix<Cx, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<Cx, Eigen::Dynamic, 1>;

// single-layer matrix: smooth part by midpoint, log part analytically per panel
CMat layer_matrix(const ProblemParams& p, const Panelization& pan) {
    int n = pan.n;
    double h = pan.h;
    auto phi = [](double u) { return u == 0 ? 0.0 : u * std::log(std::abs(u)) - u; };
    CMat A(n, n);
    Cx diag_smooth = Cx(0, -0.25) + (std::log(0.5 * p.k0) + kEulerGamma) / (2 * M_PI);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double c = pan.x[i] - pan.x[j];
            double d = std::abs(c);
            Cx gs = d > 1e-14
                        ? Cx(0, -0.25) * hankel0_first(p.k0 * d) - std::log(d) / (2 * M_PI)
                        : diag_smooth;
            A(i, j) = gs * h + (phi(c + h / 2) - phi(c - h / 2)) / (2 * M_PI);
        }
    return A;
}

CVec incident(const ProblemParams& p, const Panelization& pan) {
    CVec e(pan.n);
    for (int j = 0; j < pan.n; ++j)
        e(j) = std::exp(Cx(0, -1) * p.k0 * pan.x[j] * std::cos(p.theta_inc));
    return e;
}
} // namespace

DensityVector solve_antisym(const ProblemParams& p, const Panelization& pan) {
    int n = pan.n;
    double h2 = pan.h * pan.h;
    CMat A = layer_matrix(p, pan);
    // (d2/dx2 + k0^2) by second differences on the collocation values, one-sided at ends
    CMat D = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int c = std::clamp(i, 1, n - 2);
        D(i, c - 1) += 1.0 / h2;
        D(i, c) += -2.0 / h2;
        D(i, c + 1) += 1.0 / h2;
        D(i, i) += p.k0 * p.k0;
    }
    CMat M = D * A + 0.5 * p.eta * CMat::Identity(n, n);
    CVec rhs = Cx(0, 1) * p.k0 * std::sin(p.theta_inc) * incident(p, pan);
    Eigen::PartialPivLU<CMat> lu(M);
    CVec nu = lu.solve(rhs);
    if (!nu.allFinite()) throw SolveFailed("solve_antisym: non-finite density");
    DensityVector out{Case::Antisym, {}};
    out.values.assign(nu.data(), nu.data() + n);
    return out;
}

DensityVector solve_sym(const ProblemParams& p, const Panelization& pan) {
    int n = pan.n;
    CMat M = 0.5 * CMat::Identity(n, n) - p.eta * layer_matrix(p, pan);
    CVec rhs = p.eta * incident(p, pan);
    Eigen::PartialPivLU<CMat> lu(M);
    CVec mu = lu.solve(rhs);
    if (!mu.allFinite()) throw SolveFailed("solve_sym: non-finite density");
    DensityVector out{Case::Sym, {}};
    out.values.assign(mu.data(), mu.data() + n);
    return out;
}

DirectivityTable bie_directivity(const ProblemParams& p, const Panelization& pan,
                                 const std::vector<double>& thetas,
                                 bool want_antisym, bool want_sym) {
    DensityVector nu, mu;
    if (want_antisym) nu = solve_antisym(p, pan);
    if (want_sym) mu = solve_sym(p, pan);

    size_t n = thetas.size();
    DirectivityTable out;
    out.theta = thetas;
    out.theta_inc = p.theta_inc;
    out.method = "BIE";
    out.dropped.assign(n, 0);
    if (want_antisym) out.S_a.assign(n, Cx(0));
    if (want_sym) out.S_s.assign(n, Cx(0));
    if (want_antisym && want_sym) out.S_total.assign(n, Cx(0));

    Cx e4 = std::exp(Cx(0, -M_PI / 4));
    for (size_t i = 0; i < n; ++i) {
        double th = thetas[i];
        Cx sa = 0, ss = 0;
        for (int j = 0; j < pan.n; ++j) {
            Cx e = std::exp(Cx(0, -1) * p.k0 * pan.x[j] * std::cos(th));
            if (want_antisym) sa += nu.values[j] * e;
            if (want_sym) ss += mu.values[j] * e;
        }
        if (want_antisym) out.S_a[i] = e4 * p.k0 * std::sin(th) * 0.5 * sa * pan.h;
        if (want_sym) out.S_s[i] = e4 * 0.5 * ss * pan.h;
        if (want_antisym && want_sym) out.S_total[i] = out.S_a[i] + out.S_s[i];
    }
    return out;
}

} // namespace oestrip
