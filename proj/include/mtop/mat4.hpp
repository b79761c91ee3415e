#pragma once

#include <array>
#include <cmath>

namespace mtop {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

inline Vec4 add(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec4 sub(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Vec4 scale(double k, const Vec4& a) {
    return {k * a[0], k * a[1], k * a[2], k * a[3]};
}

// plain component sum a_alpha b^alpha; meaningful when one side is covariant
inline double pairing(const Vec4& co, const Vec4& contra) {
    return co[0] * contra[0] + co[1] * contra[1] + co[2] * contra[2] + co[3] * contra[3];
}

inline double maxAbs(const Vec4& a) {
    double m = 0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

// Euclidean component norm, used for scale estimates only
inline double norm2(const Vec4& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

inline Mat4 identity4() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat4 matMul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            double aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

inline Vec4 matVec(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
    return r;
}

inline Mat4 transpose(const Mat4& m) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = m[j][i];
    return r;
}

inline Mat4 matScale(double k, const Mat4& m) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = k * m[i][j];
    return r;
}

inline Mat4 matAdd(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

inline double maxAbs(const Mat4& m) {
    double r = 0;
    for (const auto& row : m)
        for (double x : row) r = std::max(r, std::abs(x));
    return r;
}

double det4(const Mat4& m);

} // namespace mtop
