#include "mtop/minkowski.hpp"

#include <cmath>

namespace mtop {

double det4(const Mat4& m) {
    double d = 0;
    for (int c0 = 0; c0 < 4; ++c0)
        for (int c1 = 0; c1 < 4; ++c1)
            for (int c2 = 0; c2 < 4; ++c2)
                for (int c3 = 0; c3 < 4; ++c3) {
                    int sgn = permSymbol(c0, c1, c2, c3);
                    if (sgn != 0) d += sgn * m[0][c0] * m[1][c1] * m[2][c2] * m[3][c3];
                }
    return d;
}

double normAbs(const Vec4& a, const Signature& g) {
    return std::sqrt(std::abs(dot(a, a, g)));
}

double normAbs(const FourVector& a, const Signature& g) {
    return normAbs(contraComponents(a, g), g);
}

double wedgeNormSq(const Vec4& a, const Vec4& b, const Signature& g) {
    double ab = dot(a, b, g);
    return dot(a, a, g) * dot(b, b, g) - ab * ab;
}

double wedgeNormSq(const FourVector& a, const FourVector& b, const Signature& g) {
    return wedgeNormSq(contraComponents(a, g), contraComponents(b, g), g);
}

double wedgeNormAbs(const Vec4& a, const Vec4& b, const Signature& g) {
    return std::sqrt(std::abs(wedgeNormSq(a, b, g)));
}

int permSymbol(int a, int b, int c, int d) {
    if (a == b || a == c || a == d || b == c || b == d || c == d) return 0;
    int inv = 0;
    int p[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

Vec4 hodgeTriple(const Vec4& a, const Vec4& b, const Vec4& c, const Signature& g) {
    // expanded 3x3 cofactors: eps_{alpha beta gamma delta} a^beta b^gamma c^delta
    Vec4 out{};
    for (int al = 0; al < 4; ++al) {
        double s = 0;
        for (int be = 0; be < 4; ++be) {
            if (be == al) continue;
            for (int ga = 0; ga < 4; ++ga) {
                if (ga == al || ga == be) continue;
                // delta is the remaining index
                int de = 6 - al - be - ga;
                s += permSymbol(al, be, ga, de) * a[be] * b[ga] * c[de];
            }
        }
        out[al] = g.orientation * s;
    }
    return out;
}

double hodgeQuad(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d,
                 const Signature& g) {
    return pairing(hodgeTriple(b, c, d, g), a);
}

SpinTensor SpinTensor::fromMatrix(const Mat4& s, double tol) {
    double scale = maxAbs(s);
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(s[i][j] + s[j][i]));
    if (worst > tol * std::max(scale, 1e-300))
        throw NotSkew("spin tensor matrix is not antisymmetric");
    return fromComponents(s[0][1], s[0][2], s[0][3], s[1][2], s[1][3], s[2][3]);
}

double SpinTensor::operator()(int a, int b) const {
    static constexpr int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    if (a == b) return 0.0;
    double v = c[idx[a][b]];
    return a < b ? v : -v;
}

Mat4 SpinTensor::toMatrix() const {
    Mat4 m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = (*this)(i, j);
    return m;
}

Vec4 spinTensorToVector(const SpinTensor& s, const Vec4& u, const Signature& g) {
    double n = normAbs(u, g);
    if (n == 0) throw ZeroVelocity("spinTensorToVector: velocity has zero norm");
    Vec4 out{};
    for (int de = 0; de < 4; ++de) {
        double acc = 0;
        for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be)
                for (int ga = 0; ga < 4; ++ga) {
                    int sgn = permSymbol(al, be, ga, de);
                    if (sgn != 0) acc += sgn * u[al] * s(be, ga);
                }
        out[de] = g.orientation * acc / (2.0 * n);
    }
    return out;
}

SpinTensor spinVectorToTensor(const Vec4& s, const Vec4& u, const Signature& g,
                              double piraniTol) {
    double n = normAbs(u, g);
    if (n == 0) throw ZeroVelocity("spinVectorToTensor: velocity has zero norm");
    double su = dot(s, u, g);
    double scl = normAbs(s, g) * n;
    if (std::abs(su) > piraniTol * std::max(scl, 1e-300))
        throw PiraniViolated("spinVectorToTensor: s.u != 0");
    double uu = dot(u, u, g);
    double sg = uu > 0 ? 1.0 : -1.0;
    Vec4 ul = lower(u, g), sl = lower(s, g);
    Mat4 m{};
    for (int al = 0; al < 4; ++al)
        for (int be = al + 1; be < 4; ++be) {
            double acc = 0;
            for (int ga = 0; ga < 4; ++ga)
                for (int de = 0; de < 4; ++de) {
                    int sgn = permSymbol(al, be, ga, de);
                    if (sgn != 0) acc += sgn * ul[ga] * sl[de];
                }
            m[al][be] = g.orientation * sg * acc / n;
            m[be][al] = -m[al][be];
        }
    return SpinTensor::fromMatrix(m);
}

double lorentzDefect(const Mat4& lambda, const Signature& g) {
    Mat4 eta{};
    for (int i = 0; i < 4; ++i) eta[i][i] = g.diag[i];
    Mat4 r = matMul(transpose(lambda), matMul(eta, lambda));
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(r[i][j] - eta[i][j]));
    double scale = maxAbs(lambda);
    return worst / std::max(scale * scale, 1e-300);
}

Vec4 lorentzApply(const Mat4& lambda, const Vec4& v, const Signature& g, double tol) {
    if (lorentzDefect(lambda, g) > tol)
        throw NotLorentz("matrix does not preserve the metric");
    return matVec(lambda, v);
}

FourVector lorentzApply(const Mat4& lambda, const FourVector& v, const Signature& g,
                        double tol) {
    if (lorentzDefect(lambda, g) > tol)
        throw NotLorentz("matrix does not preserve the metric");
    if (v.variance == Variance::Contra) return {matVec(lambda, v.c), Variance::Contra};
    return {matVec(inverseTransposeLorentz(lambda, g), v.c), Variance::Co};
}

Mat4 inverseTransposeLorentz(const Mat4& lambda, const Signature& g) {
    // for eta-preserving lambda, lambda^{-T} = eta lambda eta
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = g.diag[i] * lambda[i][j] * g.diag[j];
    return r;
}

static void requireSkew(const Mat4& omega, double tol) {
    double scale = maxAbs(omega);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(omega[i][j] + omega[j][i]) > tol * std::max(scale, 1e-300))
                throw NotSkew("generator parameter is not antisymmetric");
}

Mat4 generatorMatrix(const Mat4& omega, const Signature& g, double tol) {
    requireSkew(omega, tol);
    // out^be = sum_al Omega^{al be} eta_{al al} v^al
    Mat4 gm{};
    for (int be = 0; be < 4; ++be)
        for (int al = 0; al < 4; ++al) gm[be][al] = omega[al][be] * g.diag[al];
    return gm;
}

Vec4 generatorAction(const Mat4& omega, const Vec4& v, const Signature& g, double tol) {
    return matVec(generatorMatrix(omega, g, tol), v);
}

} // namespace mtop
