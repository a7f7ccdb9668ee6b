#pragma once
#include "oestrip/oe_solver.hpp"

namespace oestrip {

// sampled coefficient data along an arbitrary contour (p1,p2,xi1 at each node)
struct PathTables {
    std::vector<Cx> nodes, p1, p2, xi1;
};

PathTables tables_on_mesh(const CoefficientTable& t);

// OE evaluator: X' = K(b,k) X, K = r(b)/(k-(k0+b)) - r*(b)/(k+(k0+b)),
// X(start) = I; RK4 with nsub substeps per segment, linear interp of p,xi1
Mat2 oe_evaluate(const PathTables& pt, Cx k, Cx k0, int nsub = 4);

// RH solution value: OE along gamma times Pi(k)
Mat2 solve_at(const CoefficientTable& t, Cx k, int nsub = 4);

// mesh with a semicircular detour of radius eps around node jk; side +1 east, -1 west
std::vector<Cx> shore_path(const GammaMesh& mesh, size_t jk, double eps, int side);

// resample p1,p2,xi1 onto an off-axis path by first-order analytic continuation
// f(x+iy) ~ f(iy) - i x f'(iy) (straight meshes only; parametrized by Im b)
PathTables continue_tables(const CoefficientTable& t, const std::vector<Cx>& path);

// ||Pi^-1 B^-1 A Pi - Mtilde2||  (N2 for the symmetric case) at cut node jk
double oe_residual(const CoefficientTable& t, size_t jk, double eps, int nsub = 4);

// ||OE(h2)*OE(h1) - OE(h)|| for h split at node jsplit (test hook)
double concat_check(const PathTables& pt, Cx k, Cx k0, size_t jsplit, int nsub = 4);

} // namespace oestrip
