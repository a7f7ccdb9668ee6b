#include "oestrip/directivity.hpp"
#include <thread>

namespace oestrip {

std::vector<double> theta_grid(int n, double delta_theta_deg) {
    std::vector<double> th(n);
    double lo = delta_theta_deg * M_PI / 180.0, hi = M_PI - lo;
    for (int i = 0; i < n; ++i) th[i] = lo + (hi - lo) * double(i) / (n - 1);
    return th;
}

void u0_tilde(Case c, Cx k, const Mat2& Uh, const ProblemParams& p, Cx& u1, Cx& u2) {
    Cx xik = std::sqrt(p.k0 * p.k0 - k * k);  // principal; k real in (-k0,k0)
    Cx den = p.eta - Cx(0, 1) * xik;
    if (std::abs(den) == 0) throw DenominatorVanishes("u0_tilde: eta = i*xi");
    if (c == Case::Antisym) {
        Mat2 U = variable_change(ChangeDir::Inverse, Uh, k, p);
        u1 = -(U.a11 + U.a12) / den;
        u2 = -(U.a21 + U.a22) / den;
    } else {
        Cx pref = xik / (Cx(0, 1) * den);
        u1 = pref * (Uh.a11 + Uh.a12);
        u2 = pref * (Uh.a21 + Uh.a22);
    }
}

Cx embed(Case c, Cx k, Cx kstar, Cx u1k, Cx u2k, Cx u1s, Cx u2s, const ProblemParams& p) {
    Cx dk = k - kstar;
    if (c == Case::Antisym) {
        Cx xis = std::sqrt(p.k0 * p.k0 - kstar * kstar);
        return xis / dk * (u1s * u2k - u1k * u2s);
    }
    return Cx(0, 1) * p.eta / dk * (u2s * u1k - u2k * u1s);
}

namespace {

struct U0Pair { Cx a1, a2, s1, s2; };

U0Pair eval_pair(const CoefficientTable* anti, const CoefficientTable* sym,
                 Cx k, int nsub) {
    U0Pair r{};
    if (anti) u0_tilde(Case::Antisym, k, solve_at(*anti, k, nsub), anti->mesh->params, r.a1, r.a2);
    if (sym) u0_tilde(Case::Sym, k, solve_at(*sym, k, nsub), sym->mesh->params, r.s1, r.s2);
    return r;
}

} // namespace

DirectivityTable directivity_oe(const CoefficientTable* anti, const CoefficientTable* sym,
                                const std::vector<double>& thetas, int n_threads,
                                int nsub, double delta_k_rel) {
    const ProblemParams& p = anti ? anti->mesh->params : sym->mesh->params;
    Cx kstar = p.k0 * std::cos(p.theta_inc);
    U0Pair ps = eval_pair(anti, sym, kstar, nsub);
    Cx e4 = std::exp(Cx(0, -M_PI / 4));

    size_t n = thetas.size();
    DirectivityTable out;
    out.theta = thetas;
    out.theta_inc = p.theta_inc;
    out.method = "OE";
    out.dropped.assign(n, 0);
    if (anti) out.S_a.assign(n, Cx(0));
    if (sym) out.S_s.assign(n, Cx(0));
    if (anti && sym) out.S_total.assign(n, Cx(0));

    auto work = [&](size_t i) {
        double th = thetas[i];
        Cx kk = -p.k0 * std::cos(th);
        if (std::abs(kk - kstar) <= delta_k_rel * std::abs(p.k0)) {
            out.dropped[i] = 1;
            return;
        }
        U0Pair pk = eval_pair(anti, sym, kk, nsub);
        if (anti)
            out.S_a[i] = -e4 * p.k0 * std::sin(th) *
                         embed(Case::Antisym, kk, kstar, pk.a1, pk.a2, ps.a1, ps.a2, p);
        if (sym)
            out.S_s[i] = e4 * embed(Case::Sym, kk, kstar, pk.s1, pk.s2, ps.s1, ps.s2, p);
        if (anti && sym) out.S_total[i] = out.S_a[i] + out.S_s[i];
    };

    int nt = std::max(1, n_threads);
    if (nt == 1 || n < 8) {
        for (size_t i = 0; i < n; ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(nt);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (size_t i = t; i < n; i += nt) work(i);
                } catch (...) { errs[t] = std::current_exception(); }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs) if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace oestrip
