#pragma once

#include <cmath>

// Small dense tensor types for membrane kinematics. All types are plain
// values with no hidden state so kernels stay pure and trivially parallel.

namespace wrinklevar {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// General 2x2 matrix, row major.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
};

// Symmetric 2x2 matrix; the (2,1) entry is implied.
struct SymMat2 {
    double k11 = 0.0;
    double k12 = 0.0;
    double k22 = 0.0;

    static SymMat2 identity() { return {1.0, 0.0, 1.0}; }
    static SymMat2 diag(double d1, double d2) { return {d1, 0.0, d2}; }
};

// 3x2 matrix: rows follow e1,e2,e3, columns e1,e2.
struct Mat32 {
    double m11 = 0.0, m12 = 0.0;
    double m21 = 0.0, m22 = 0.0;
    double m31 = 0.0, m32 = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}
inline Mat2 operator*(double s, const Mat2& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}
inline Mat2 matmul(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}
inline Vec2 matvec(const Mat2& a, Vec2 v) {
    return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
}
inline Mat2 transpose(const Mat2& a) { return {a.a11, a.a21, a.a12, a.a22}; }
inline double trace(const Mat2& a) { return a.a11 + a.a22; }
inline double frob2(const Mat2& a) {
    return a.a11 * a.a11 + a.a12 * a.a12 + a.a21 * a.a21 + a.a22 * a.a22;
}

inline SymMat2 operator+(const SymMat2& a, const SymMat2& b) {
    return {a.k11 + b.k11, a.k12 + b.k12, a.k22 + b.k22};
}
inline SymMat2 operator*(double s, const SymMat2& a) {
    return {s * a.k11, s * a.k12, s * a.k22};
}
inline double trace(const SymMat2& a) { return a.k11 + a.k22; }
inline double det(const SymMat2& a) { return a.k11 * a.k22 - a.k12 * a.k12; }
// Frobenius norm squared of the full matrix, so the off-diagonal counts twice.
inline double frob2(const SymMat2& a) {
    return a.k11 * a.k11 + 2.0 * a.k12 * a.k12 + a.k22 * a.k22;
}
inline double frob(const SymMat2& a) { return std::sqrt(frob2(a)); }
// Frobenius inner product of two symmetric matrices (full-matrix pairing).
inline double ddot(const SymMat2& a, const SymMat2& b) {
    return a.k11 * b.k11 + 2.0 * a.k12 * b.k12 + a.k22 * b.k22;
}
inline SymMat2 inverse(const SymMat2& a) {
    const double d = det(a);
    return {a.k22 / d, -a.k12 / d, a.k11 / d};
}
// Closed-form eigenvalues, ascending.
inline void eigenvalues(const SymMat2& a, double& lo, double& hi) {
    const double mean = 0.5 * (a.k11 + a.k22);
    const double r = std::sqrt(0.25 * (a.k11 - a.k22) * (a.k11 - a.k22) + a.k12 * a.k12);
    lo = mean - r;
    hi = mean + r;
}

inline Mat32 operator+(const Mat32& a, const Mat32& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21,
            a.m22 + b.m22, a.m31 + b.m31, a.m32 + b.m32};
}
inline Mat32 operator*(double s, const Mat32& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22, s * a.m31, s * a.m32};
}
inline double frob2(const Mat32& a) {
    return a.m11 * a.m11 + a.m12 * a.m12 + a.m21 * a.m21 + a.m22 * a.m22 +
           a.m31 * a.m31 + a.m32 * a.m32;
}
inline double frob(const Mat32& a) { return std::sqrt(frob2(a)); }
inline Mat2 top_block(const Mat32& a) { return {a.m11, a.m12, a.m21, a.m22}; }
inline Vec2 third_row(const Mat32& a) { return {a.m31, a.m32}; }

// --- kinematic maps ---

inline double det2(const Mat2& a) { return a.a11 * a.a22 - a.a12 * a.a21; }

// Cofactor matrix: A (cof A)^T = det(A) I.
inline Mat2 cof2(const Mat2& a) { return {a.a22, -a.a21, -a.a12, a.a11}; }

// Deformation gradient F = H + e3 (x) grad w: planar block on top, slope below.
inline Mat32 assemble_F(const Mat2& h, Vec2 gradw) {
    return {h.a11, h.a12, h.a21, h.a22, gradw.x, gradw.y};
}

inline Mat32 planar_embedding(const Mat2& h) { return assemble_F(h, {0.0, 0.0}); }

// Right Cauchy-Green strain C = F^T F (2x2, symmetric psd).
inline SymMat2 right_cauchy_green(const Mat32& f) {
    return {f.m11 * f.m11 + f.m21 * f.m21 + f.m31 * f.m31,
            f.m11 * f.m12 + f.m21 * f.m22 + f.m31 * f.m32,
            f.m12 * f.m12 + f.m22 * f.m22 + f.m32 * f.m32};
}

// Model area ratio J = det grad h; the small-slope stand-in for the exact ratio.
inline double area_ratio_J(const Mat2& h) { return det2(h); }

// Exact area ratio sqrt(det F^T F) = |f_{,1} x f_{,2}|. Diagnostic only: the
// energy model never uses it, but it quantifies the small-slope gap.
inline double exact_area_ratio(const Mat32& f) {
    const Vec3 c1{f.m11, f.m21, f.m31};
    const Vec3 c2{f.m12, f.m22, f.m32};
    const Vec3 cx{c1.y * c2.z - c1.z * c2.y,
                  c1.z * c2.x - c1.x * c2.z,
                  c1.x * c2.y - c1.y * c2.x};
    return norm(cx);
}

// Curvature under the small-curvature approximation: K is the Hessian of w.
// Kept as a named map so every use of K routes through one place.
inline SymMat2 curvature_K(const SymMat2& hessw) { return hessw; }

}  // namespace wrinklevar
