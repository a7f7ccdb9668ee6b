#include "oestrip/rh_kernel.hpp"

namespace oestrip {

Cx m_of_xi(Cx xi_value, Cx eta) {
    const Cx i(0, 1);
    Cx den = i * xi_value - eta;
    if (std::abs(den) == 0) throw DenominatorVanishes("m_of_xi: i*xi = eta");
    return (i * xi_value + eta) / den;
}

Mat2 connection_matrix(MatrixKind kind, Cx k, Cx xiv, const ProblemParams& p) {
    const Cx i(0, 1);
    const Cx eta = p.eta, k0 = p.k0;
    Cx dM = eta - i * xiv;   // M/Mtilde denominators (up to sign)
    if (std::abs(dM) < 1e-300) throw DenominatorVanishes("connection_matrix: eta = i*xi");
    switch (kind) {
        case MatrixKind::M1:
            return {1, 2.0 * i * xiv / dM, 0, (eta + i * xiv) / dM};
        case MatrixKind::M2:
            return {(eta + i * xiv) / dM, 0, 2.0 * i * xiv / dM, 1};
        case MatrixKind::Mtilde1:
            return {1, 2.0 * i * (k0 - k) / (-dM), 0, (i * xiv + eta) / (-dM)};
        case MatrixKind::Mtilde2:
            return {(i * xiv + eta) / (-dM), 0, 2.0 * i * (k0 + k) / (-dM), 1};
        case MatrixKind::N1:
            return {1, -2.0 * eta / dM, 0, (eta + i * xiv) / (-dM)};
        case MatrixKind::N2:
            return {(eta + i * xiv) / (-dM), 0, -2.0 * eta / dM, 1};
    }
    throw ConfigError("connection_matrix: bad kind");
}

Cx alpha_of_k(Cx k, const ProblemParams& p, int sign) {
    return double(sign) * Cx(0, -1) * (p.k0 + k) / p.eta;
}

Cx index(const GammaMesh& mesh) {
    // total continuous change of log m from b=0 to i-infinity; the tail beyond
    // iT contributes exactly -log m(iT), so Idx = -2*pi*i*lambda(0)
    Cx idx = -Cx(0, 2) * M_PI * mesh.lam.back();
    if (std::abs(idx - Cx(0, M_PI)) > 1e-8)
        throw IndexMismatch("index differs from i*pi");
    return idx;
}

Mat2 variable_change(ChangeDir dir, const Mat2& U, Cx k, const ProblemParams& p) {
    Cx rm = std::sqrt(p.k0 - k), rp = std::sqrt(p.k0 + k);
    if (std::abs(rm) == 0 || std::abs(rp) == 0)
        throw BranchPointTooClose("variable_change at k = +-k0");
    Cx ph = std::exp(Cx(0, M_PI / 4));
    if (dir == ChangeDir::Forward)
        return U * Mat2::diag(ph / rm, ph / rp);
    return U * Mat2::diag(rm / ph, rp / ph);
}

} // namespace oestrip
