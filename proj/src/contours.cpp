#include "oestrip/contours.hpp"
#include "oestrip/rh_kernel.hpp"
#include <cmath>

namespace oestrip {

Cx kprime(Cx k0, Cx eta) {
    Cx r = std::sqrt(k0 * k0 + eta * eta);
    if (r.real() < 0 || (r.real() == 0 && r.imag() < 0)) r = -r;
    return r;
}

double truncation_height(const ProblemParams& p, double tol_start) {
    // |m(iT)-1| ~ 2|eta|/T
    return std::max(50.0, 2.0 * std::abs(p.eta) / tol_start);
}

std::vector<double> graded_heights(double T, int N, double ratio, int ref_n) {
    double c = ref_n * std::log(ratio);
    std::vector<double> t(N + 1);
    for (int j = 0; j <= N; ++j) {
        double u = double(N - j) / N;   // 1 ... 0
        t[j] = T * std::expm1(c * u) / std::expm1(c);
    }
    t[N] = 0.0;
    return t;
}

std::vector<Cx> track_xi(Cx k0, const std::vector<Cx>& path, int nsub) {
    size_t n = path.size();
    std::vector<Cx> vals(n);
    // seed at the b=0 end; principal branch continues xi(0)=k0 there
    Cx prev = std::sqrt(k0 * k0 - (k0 + path[n - 1]) * (k0 + path[n - 1]));
    vals[n - 1] = prev;
    for (size_t i = n - 1; i-- > 0;) {
        Cx z0 = path[i + 1], z1 = path[i];
        for (int s = 1; s <= nsub; ++s) {
            Cx z = z0 + (z1 - z0) * (double(s) / nsub);
            Cx r = std::sqrt(k0 * k0 - (k0 + z) * (k0 + z));
            if (std::abs(r - prev) > std::abs(r + prev)) r = -r;
            prev = r;
        }
        vals[i] = prev;
    }
    return vals;
}

namespace {

// eigen-data chains: xi by continuity from the b=0 end, lambda by a continuous
// log accumulated at substep resolution (node-only chains break on detour arcs)
void fill_eig_data(GammaMesh& mesh, int nsub = 16) {
    const Cx k0 = mesh.params.k0, eta = mesh.params.eta;
    size_t n = mesh.nodes.size();
    mesh.xi = track_xi(k0, mesh.nodes, nsub);
    mesh.m.resize(n);
    mesh.lam.resize(n);
    mesh.xi1.resize(n);
    for (size_t i = 0; i < n; ++i) mesh.m[i] = m_of_xi(mesh.xi[i], eta);

    // continuous change of log m from the top (b_1) down, substep-resolved
    std::vector<Cx> chain(n);
    chain[0] = 0;
    Cx xprev = mesh.xi[0];
    for (size_t i = 1; i < n; ++i) {
        Cx z0 = mesh.nodes[i - 1], z1 = mesh.nodes[i];
        Cx mprev = mesh.m[i - 1];
        Cx acc = 0;
        for (int s = 1; s <= nsub; ++s) {
            Cx z = z0 + (z1 - z0) * (double(s) / nsub);
            Cx r = std::sqrt(k0 * k0 - (k0 + z) * (k0 + z));
            if (std::abs(r - xprev) > std::abs(r + xprev)) r = -r;
            xprev = r;
            Cx mv = m_of_xi(r, eta);
            acc += std::log(mv / mprev);
            mprev = mv;
        }
        chain[i] = chain[i - 1] + acc;
    }
    Cx lam_top = std::log(mesh.m[0]) / (Cx(0, 2) * M_PI);
    for (size_t i = 0; i < n; ++i) {
        mesh.lam[i] = lam_top + chain[i] / (Cx(0, 2) * M_PI);
        mesh.xi1[i] = -mesh.lam[i];
    }
    for (size_t i = 1; i < n; ++i)
        if (std::abs(mesh.lam[i] - mesh.lam[i - 1]) >= 0.25)
            throw BranchJump("lambda chain jump >= 0.25 at node " + std::to_string(i));
}

// detour node list around b' (deformed case); side +1 east, -1 west
std::vector<Cx> detour_nodes(const ProblemParams& p, const std::vector<double>& t,
                             Cx bp, double rho, int side) {
    std::vector<Cx> nodes;
    double t_hi = bp.imag() + rho;
    double t_lo = bp.imag() - rho;
    for (double h : t)
        if (h > t_hi) nodes.push_back(Cx(0, h));
    int n_leg = 16, n_arc = 16;
    // horizontal approach to the point above b'
    Cx A(0, t_hi), B = bp + Cx(0, rho);
    for (int s = 0; s <= n_leg; ++s) nodes.push_back(A + (B - A) * (double(s) / n_leg));
    // semicircle from the top of the disk to the bottom
    for (int s = 1; s <= n_arc; ++s) {
        double th = M_PI / 2 - side * M_PI * double(s) / n_arc;
        nodes.push_back(bp + rho * Cx(std::cos(th), std::sin(th)));
    }
    Cx C = bp - Cx(0, rho);
    if (t_lo > rho) {
        // exit leg back to the axis, then the remaining graded nodes
        Cx D(0, t_lo);
        for (int s = 1; s <= n_leg; ++s) nodes.push_back(C + (D - C) * (double(s) / n_leg));
        for (double h : t)
            if (h < t_lo && h > 0) nodes.push_back(Cx(0, h));
        nodes.push_back(Cx(0, 0));
    } else {
        // b' sits too low: go straight to the endpoint
        for (int s = 1; s <= n_leg; ++s) nodes.push_back(C + (Cx(0, 0) - C) * (double(s) / n_leg));
    }
    return nodes;
}

} // namespace

GammaMesh build_gamma(const ProblemParams& p, double T, int N,
                      double ratio, int ref_n, double tol_start) {
    p.validate();
    if (N < 16) throw ConfigError("N_gamma must be >= 16");
    if (2.0 * std::abs(p.eta) / T > 1.1 * tol_start)
        throw TruncationTooLow("T too low for tol_start");
    auto t = graded_heights(T, N, ratio, ref_n);

    GammaMesh mesh;
    mesh.params = p;
    mesh.T = T;
    if (p.eta.real() > 0) {
        mesh.nodes.reserve(t.size());
        for (double h : t) mesh.nodes.push_back(Cx(0, h));
        fill_eig_data(mesh);
        return mesh;
    }
    // Re eta <= 0: m has a pole at b' = k'-k0 near the contour; detour around it.
    // The side is not derivable from the figure alone: validate by lambda(0) = -1/2.
    Cx bp = kprime(p.k0, p.eta) - p.k0;
    double rho = std::clamp(0.1 * std::abs(bp), 1e-3 * std::abs(p.k0), 0.5 * std::abs(p.k0));
    mesh.deformed = true;
    for (int side : {+1, -1}) {
        GammaMesh trial = mesh;
        trial.detour_side = side;
        trial.nodes = detour_nodes(p, t, bp, rho, side);
        try {
            fill_eig_data(trial);
        } catch (const NumericalFailure&) {
            continue;
        }
        if (std::abs(trial.lam.back() - Cx(-0.5, 0)) < 1e-6) return trial;
    }
    throw DeformationFailed("no detour side yields lambda(0) = -1/2");
}

GammaMesh build_gamma(const ProblemParams& p, int N, double tol_start) {
    return build_gamma(p, truncation_height(p, tol_start), N, 1.15, 200, tol_start);
}

} // namespace oestrip
