#include "oestrip/oe_solver.hpp"

namespace oestrip {

Cx march_bc(const ProblemParams& p, Case c, int sign_alpha, Cx b_j) {
    // jump at i-infinity is Pi Mtilde2 Pi^-1 (resp. Pi N2 Pi^-1): its eigenvector
    // parameter is the plain alpha times e^{2ia(k0+b_j)}
    Cx k = p.k0 + b_j;
    Cx phase = std::exp(Cx(0, 2) * p.a * k);
    Cx al = (c == Case::Antisym) ? alpha_of_k(k, p, sign_alpha) : Cx(1, 0);
    return phase * al;
}

Cx riccati_rhs_one(Cx q, bool inv, Cx pa, Cx pb, Cx x1, Cx d1, Cx d2, bool comp1) {
    Cx den = pa * pb - 1.0;
    if (std::abs(den) <= kEpsDeg)
        throw DegenerateP("riccati_rhs: |p1*p2 - 1| below eps_deg");
    Cx v;
    if (!inv) {
        v = x1 * (pa - q) * (1.0 - pb * q) / (den * d1) +
            x1 * (pb - q) * (1.0 - pa * q) / (den * d2);
    } else {
        Cx w = q;
        v = -x1 * (pa * w - 1.0) * (w - pb) / (den * d1) +
            -x1 * (pb * w - 1.0) * (w - pa) / (den * d2);
    }
    return comp1 ? -v : v;
}

void riccati_rhs(Cx q1, Cx q2, Cx p1, Cx p2, Cx x1, Cx d1, Cx d2, Cx& dq1, Cx& dq2) {
    dq1 = riccati_rhs_one(q1, false, p1, p2, x1, d1, d2, true);
    dq2 = riccati_rhs_one(q2, false, p2, p1, x1, d1, d2, false);
}

CoefficientTable march(const GammaMesh& mesh, Case c, int sign_alpha, MarchRecord* rec) {
    const ProblemParams& p = mesh.params;
    const Cx k0 = p.k0;
    size_t N = mesh.size();
    CoefficientTable tab;
    tab.prob_case = c;
    tab.mesh = &mesh;
    tab.sign_alpha = sign_alpha;
    tab.p1.assign(N, Cx(0));
    tab.p2.assign(N, Cx(0));
    if (rec) {
        rec->q_start1.assign(N, Cx(0));
        rec->q_start2.assign(N, Cx(0));
        rec->q_end1.assign(N, Cx(0));
        rec->q_end2.assign(N, Cx(0));
    }
    auto& p1 = tab.p1;
    auto& p2 = tab.p2;
    const auto& b = mesh.nodes;
    const auto& xi1 = mesh.xi1;

    for (size_t j = 1; j < N; ++j) {
        Cx k = k0 + b[j];
        Cx q0[2] = {march_bc(p, c, sign_alpha, b[j]), Cx(0)};
        if (rec) { rec->q_start1[j] = q0[0]; rec->q_start2[j] = q0[1]; }
        Cx qout[2];
        for (int comp = 0; comp < 2; ++comp) {
            Cx q = q0[comp];
            bool inv = false;
            bool c1 = (comp == 0);
            if (std::abs(q) > kChart) { q = 1.0 / q; inv = true; }
            for (size_t l = 0; l + 1 < j; ++l) {
                Cx b0 = b[l], h = b[l + 1] - b[l];
                auto rhs = [&](double s, Cx qq) {
                    Cx bb = b0 + s * h;
                    Cx P1 = p1[l] + s * (p1[l + 1] - p1[l]);
                    Cx P2 = p2[l] + s * (p2[l + 1] - p2[l]);
                    Cx X1 = xi1[l] + s * (xi1[l + 1] - xi1[l]);
                    Cx pa = c1 ? P1 : P2, pb = c1 ? P2 : P1;
                    return h * riccati_rhs_one(qq, inv, pa, pb, X1,
                                               k - (k0 + bb), k + (k0 + bb), c1);
                };
                Cx k1 = rhs(0.0, q);
                Cx k2 = rhs(0.5, q + 0.5 * k1);
                Cx k3 = rhs(0.5, q + 0.5 * k2);
                Cx k4 = rhs(1.0, q + k3);
                q += (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
                if (std::abs(q) > kChart) {
                    q = 1.0 / q;
                    inv = !inv;
                    if (std::abs(q) > kChart)
                        throw ChartOverflow("march: |q| overflow in both charts at j=" +
                                            std::to_string(j));
                }
            }
            // Euler closure over (b_{j-1}, b_j): the RHS is singular at the right
            // end, so only left-endpoint data enters
            size_t l = j - 1;
            Cx b0 = b[l], h = b[j] - b[l];
            Cx pa = c1 ? p1[l] : p2[l], pb = c1 ? p2[l] : p1[l];
            q += h * riccati_rhs_one(q, inv, pa, pb, xi1[l],
                                     k - (k0 + b0), k + (k0 + b0), c1);
            if (inv) q = 1.0 / q;
            qout[comp] = q;
        }
        p1[j] = qout[0];
        p2[j] = qout[1];
        if (rec) { rec->q_end1[j] = qout[0]; rec->q_end2[j] = qout[1]; }
        if (!std::isfinite(p1[j].real()) || !std::isfinite(p1[j].imag()) ||
            !std::isfinite(p2[j].real()) || !std::isfinite(p2[j].imag()))
            throw NumericalFailure("march: non-finite p at j=" + std::to_string(j));
    }
    return tab;
}

Mat2 r_from_p(Cx p1, Cx p2, Cx x1) {
    Cx den = 1.0 - p1 * p2;
    if (std::abs(den) <= kEpsDeg) throw DegenerateP("r_from_p: degenerate P");
    Cx f = x1 / den;
    return {f, -f * p2, f * p1, -f * p1 * p2};
}

Mat2 r_of_b(const CoefficientTable& t, size_t j) {
    return r_from_p(t.p1[j], t.p2[j], t.mesh->xi1[j]);
}

} // namespace oestrip
