#pragma once
#include "oestrip/rh_kernel.hpp"

namespace oestrip {

enum class Case { Antisym, Sym };

struct CoefficientTable {
    Case prob_case = Case::Antisym;
    const GammaMesh* mesh = nullptr;
    std::vector<Cx> p1, p2;   // per node
    int sign_alpha = -1;      // validated eigenvector-parameter sign
};

// boundary value for the inner Riccati solve at step j (component 1);
// carries the Pi-conjugation phase of the jump at i-infinity, evaluated at
// the step's target k = k0 + b_j.  Component 2 starts at 0.
Cx march_bc(const ProblemParams& p, Case c, int sign_alpha, Cx b_j);

// single Riccati component RHS; (pa,pb) = (p1,p2) for component 1, swapped for
// component 2.  comp1 carries an overall minus sign (the printed system's q1
// equation is inconsistent with its own variational equation).  inv: value is w=1/q.
Cx riccati_rhs_one(Cx q, bool inv, Cx pa, Cx pb, Cx x1, Cx d1, Cx d2, bool comp1);

// both components in the direct chart (diagnostic/test entry point)
void riccati_rhs(Cx q1, Cx q2, Cx pa1, Cx pa2, Cx x1, Cx d1, Cx d2, Cx& dq1, Cx& dq2);

struct MarchRecord {
    std::vector<Cx> q_start1, q_start2;  // inner-solve boundary values per step
    std::vector<Cx> q_end1, q_end2;      // values assigned to p(b_j)
};

// O(N^2) march: per j, inner RK4 over (b_1, b_{j-1}) then one Euler closure step
CoefficientTable march(const GammaMesh& mesh, Case c, int sign_alpha = -1,
                       MarchRecord* rec = nullptr);

// r(b_j) = P diag(xi1,0) P^{-1}, P = [[1,p2],[p1,1]]
Mat2 r_of_b(const CoefficientTable& t, size_t j);
Mat2 r_from_p(Cx p1, Cx p2, Cx x1);

constexpr double kEpsDeg = 1e-10;   // |p1 p2 - 1| degeneracy threshold
constexpr double kChart = 10.0;     // Moebius chart switch at |q| > 10

} // namespace oestrip
