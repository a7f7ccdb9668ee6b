#include "oestrip/ode1.hpp"

namespace oestrip {

PathTables tables_on_mesh(const CoefficientTable& t) {
    return {t.mesh->nodes, t.p1, t.p2, t.mesh->xi1};
}

namespace {

inline Mat2 K_of(Cx b, Cx k, Cx k0, Cx P1, Cx P2, Cx X1) {
    Mat2 r = r_from_p(P1, P2, X1);
    return r * (1.0 / (k - (k0 + b))) - star(r) * (1.0 / (k + (k0 + b)));
}

Mat2 oe_segment(const PathTables& pt, Cx k, Cx k0, size_t l, int nsub, Mat2 X) {
    Cx b0 = pt.nodes[l], b1 = pt.nodes[l + 1];
    Cx seg = b1 - b0;
    Cx h = seg / double(nsub);
    auto Kat = [&](Cx t) {
        Cx fr = (t - b0) / seg;
        Cx P1 = pt.p1[l] + fr * (pt.p1[l + 1] - pt.p1[l]);
        Cx P2 = pt.p2[l] + fr * (pt.p2[l + 1] - pt.p2[l]);
        Cx X1 = pt.xi1[l] + fr * (pt.xi1[l + 1] - pt.xi1[l]);
        return K_of(t, k, k0, P1, P2, X1);
    };
    for (int s = 0; s < nsub; ++s) {
        Cx t0 = b0 + double(s) * h;
        Mat2 k1 = h * (Kat(t0) * X);
        Mat2 k2 = h * (Kat(t0 + 0.5 * h) * (X + 0.5 * k1));
        Mat2 k3 = h * (Kat(t0 + 0.5 * h) * (X + 0.5 * k2));
        Mat2 k4 = h * (Kat(t0 + h) * (X + k3));
        X = X + (1.0 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return X;
}

} // namespace

Mat2 oe_evaluate(const PathTables& pt, Cx k, Cx k0, int nsub) {
    Mat2 X = Mat2::identity();
    for (size_t l = 0; l + 1 < pt.nodes.size(); ++l)
        X = oe_segment(pt, k, k0, l, nsub, X);
    if (!std::isfinite(norm_inf(X))) throw NumericalFailure("oe_evaluate: non-finite");
    return X;
}

Mat2 solve_at(const CoefficientTable& t, Cx k, int nsub) {
    const ProblemParams& p = t.mesh->params;
    return oe_evaluate(tables_on_mesh(t), k, p.k0, nsub) * Pi_of_k(k, p.a);
}

std::vector<Cx> shore_path(const GammaMesh& mesh, size_t jk, double eps, int side) {
    Cx bk = mesh.nodes[jk];
    std::vector<Cx> out;
    for (Cx b : mesh.nodes)
        if (b.imag() > bk.imag() && std::abs(b - bk) > eps) out.push_back(b);
    const int n_arc = 8;  // 9 nodes per semicircle
    for (int s = 0; s <= n_arc; ++s) {
        double th = M_PI / 2 - side * M_PI * double(s) / n_arc;
        out.push_back(bk + eps * Cx(std::cos(th), std::sin(th)));
    }
    for (Cx b : mesh.nodes)
        if (b.imag() < bk.imag() && std::abs(b - bk) > eps) out.push_back(b);
    return out;
}

PathTables continue_tables(const CoefficientTable& t, const std::vector<Cx>& path) {
    const auto& nodes = t.mesh->nodes;
    size_t n = nodes.size();
    std::vector<double> tm(n);
    for (size_t i = 0; i < n; ++i) tm[i] = nodes[i].imag();  // descending

    auto interp = [&](const std::vector<Cx>& tab, double h) {
        // linear interpolation on the descending height grid, clamped
        if (h >= tm[0]) return tab[0];
        if (h <= tm[n - 1]) return tab[n - 1];
        size_t lo = 0, hi = n - 1;
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            if (tm[mid] > h) lo = mid; else hi = mid;
        }
        double w = (h - tm[lo]) / (tm[hi] - tm[lo]);
        return tab[lo] + w * (tab[hi] - tab[lo]);
    };
    auto gradient = [&](const std::vector<Cx>& tab) {
        // second-order derivative on the nonuniform height grid
        std::vector<Cx> d(n);
        d[0] = (tab[1] - tab[0]) / (tm[1] - tm[0]);
        d[n - 1] = (tab[n - 1] - tab[n - 2]) / (tm[n - 1] - tm[n - 2]);
        for (size_t i = 1; i + 1 < n; ++i) {
            // derivative of the quadratic through the three surrounding nodes
            double ha = tm[i] - tm[i - 1], hb = tm[i + 1] - tm[i];
            d[i] = (-hb / (ha * (ha + hb))) * tab[i - 1] +
                   ((hb - ha) / (ha * hb)) * tab[i] +
                   (ha / (hb * (ha + hb))) * tab[i + 1];
        }
        return d;
    };

    PathTables out;
    out.nodes = path;
    const std::vector<Cx>* tabs[3] = {&t.p1, &t.p2, &t.mesh->xi1};
    std::vector<Cx>* outs[3] = {&out.p1, &out.p2, &out.xi1};
    for (int w = 0; w < 3; ++w) {
        auto dd = gradient(*tabs[w]);
        outs[w]->resize(path.size());
        for (size_t i = 0; i < path.size(); ++i) {
            double y = path[i].imag(), x = path[i].real();
            (*outs[w])[i] = interp(*tabs[w], y) + Cx(0, -1) * x * interp(dd, y);
        }
    }
    return out;
}

double oe_residual(const CoefficientTable& t, size_t jk, double eps, int nsub) {
    const GammaMesh& mesh = *t.mesh;
    const ProblemParams& p = mesh.params;
    Cx k = p.k0 + mesh.nodes[jk];
    auto gp = shore_path(mesh, jk, eps, -1);  // west, traversed top to bottom
    auto gm = shore_path(mesh, jk, eps, +1);  // east
    Mat2 A = oe_evaluate(continue_tables(t, gp), k, p.k0, nsub);
    Mat2 B = oe_evaluate(continue_tables(t, gm), k, p.k0, nsub);
    Mat2 P = Pi_of_k(k, p.a);
    Mat2 tot = inverse(P) * (inverse(B) * A) * P;
    MatrixKind kind = (t.prob_case == Case::Antisym) ? MatrixKind::Mtilde2 : MatrixKind::N2;
    Mat2 Mt = connection_matrix(kind, k, mesh.xi[jk], p);
    return norm_inf(tot - Mt);
}

double concat_check(const PathTables& pt, Cx k, Cx k0, size_t jsplit, int nsub) {
    Mat2 whole = oe_evaluate(pt, k, k0, nsub);
    PathTables h1, h2;
    auto slice = [](const PathTables& src, size_t from, size_t to) {
        PathTables d;
        d.nodes.assign(src.nodes.begin() + from, src.nodes.begin() + to + 1);
        d.p1.assign(src.p1.begin() + from, src.p1.begin() + to + 1);
        d.p2.assign(src.p2.begin() + from, src.p2.begin() + to + 1);
        d.xi1.assign(src.xi1.begin() + from, src.xi1.begin() + to + 1);
        return d;
    };
    h1 = slice(pt, 0, jsplit);
    h2 = slice(pt, jsplit, pt.nodes.size() - 1);
    Mat2 prod = oe_evaluate(h2, k, k0, nsub) * oe_evaluate(h1, k, k0, nsub);
    return norm_inf(prod - whole);
}

} // namespace oestrip
