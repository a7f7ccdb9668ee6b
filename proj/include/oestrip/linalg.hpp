#pragma once
#include <complex>
#include <cmath>
#include <algorithm>
#include "oestrip/errors.hpp"

namespace oestrip {

using Cx = std::complex<double>;

// 2x2 complex matrix, value semantics throughout
struct Mat2 {
    Cx a11{0}, a12{0}, a21{0}, a22{0};

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 diag(Cx d1, Cx d2) { return {d1, 0, 0, d2}; }

    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 operator*(Cx s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    friend Mat2 operator*(Cx s, const Mat2& m) { return m * s; }
};

// interchange first the rows and then the columns
inline Mat2 star(const Mat2& m) { return {m.a22, m.a21, m.a12, m.a11}; }

inline Cx determinant(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

inline double norm_inf(const Mat2& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}

inline Mat2 inverse(const Mat2& m) {
    Cx d = determinant(m);
    double scale = norm_inf(m);
    if (std::abs(d) <= 1e-13 * scale * scale)
        throw SingularMatrix("inverse: |det| below threshold");
    Cx id = 1.0 / d;
    return {m.a22 * id, -m.a12 * id, -m.a21 * id, m.a11 * id};
}

} // namespace oestrip
