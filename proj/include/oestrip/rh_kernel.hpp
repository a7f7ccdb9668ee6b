#pragma once
#include "oestrip/contours.hpp"

namespace oestrip {

enum class MatrixKind { M1, M2, Mtilde1, Mtilde2, N1, N2 };

// caller supplies the branch-tracked xi
Mat2 connection_matrix(MatrixKind kind, Cx k, Cx xi_value, const ProblemParams& p);

// m(b) from a given xi value (branch supplied by caller)
Cx m_of_xi(Cx xi_value, Cx eta);

// eigenvector parameter of Mtilde2: sign * (-i)(k0+k)/eta; sym analogue is 1
Cx alpha_of_k(Cx k, const ProblemParams& p, int sign);

// Idx = -2*pi*i*lambda(0); continuous-log chain already folded into the mesh
Cx index(const GammaMesh& mesh);

// Uhat = U * diag(e^{i pi/4}(k0-k)^{-1/2}, e^{i pi/4}(k0+k)^{-1/2}) (forward)
enum class ChangeDir { Forward, Inverse };
Mat2 variable_change(ChangeDir dir, const Mat2& U, Cx k, const ProblemParams& p);

// diag(e^{-iak}, e^{iak})
inline Mat2 Pi_of_k(Cx k, double a) {
    return Mat2::diag(std::exp(Cx(0, -1) * a * k), std::exp(Cx(0, 1) * a * k));
}

} // namespace oestrip
