#pragma once

#include <array>

#include "mtop/errors.hpp"
#include "mtop/mat4.hpp"

namespace mtop {

// Diagonal metric on R^4 plus an orientation sign for the Levi-Civita symbol.
struct Signature {
    std::array<int, 4> diag{+1, -1, -1, -1};
    int orientation = +1; // value of epsilon_{0123}

    static Signature minkowski() { return Signature{{+1, -1, -1, -1}, +1}; }
    static Signature euclidean() { return Signature{{+1, +1, +1, +1}, +1}; }
};

enum class Variance { Contra, Co };

struct FourVector {
    Vec4 c{};
    Variance variance = Variance::Contra;
};

// index lowering/raising; diag entries are their own inverses
inline Vec4 lower(const Vec4& contra, const Signature& g) {
    return {g.diag[0] * contra[0], g.diag[1] * contra[1],
            g.diag[2] * contra[2], g.diag[3] * contra[3]};
}

inline Vec4 raise(const Vec4& co, const Signature& g) {
    return lower(co, g); // same diagonal action
}

// contravariant components of v under g
inline Vec4 contraComponents(const FourVector& v, const Signature& g) {
    return v.variance == Variance::Contra ? v.c : raise(v.c, g);
}

// metric contraction of contravariant vectors
inline double dot(const Vec4& a, const Vec4& b, const Signature& g) {
    return g.diag[0] * a[0] * b[0] + g.diag[1] * a[1] * b[1] +
           g.diag[2] * a[2] * b[2] + g.diag[3] * a[3] * b[3];
}

inline double dot(const FourVector& a, const FourVector& b, const Signature& g) {
    return dot(contraComponents(a, g), contraComponents(b, g), g);
}

// |a.a|^(1/2); spacelike vectors get a real positive norm
double normAbs(const Vec4& a, const Signature& g);
double normAbs(const FourVector& a, const Signature& g);

// signed Gram determinant of the 2-form a^b: (a.a)(b.b) - (a.b)^2
double wedgeNormSq(const Vec4& a, const Vec4& b, const Signature& g);
double wedgeNormSq(const FourVector& a, const FourVector& b, const Signature& g);

// |wedgeNormSq|^(1/2)
double wedgeNormAbs(const Vec4& a, const Vec4& b, const Signature& g);

// sign of the permutation (a b c d) of (0 1 2 3); 0 on repeats
int permSymbol(int a, int b, int c, int d);

// out_alpha = eps_{alpha beta gamma delta} a^beta b^gamma c^delta; covariant result
Vec4 hodgeTriple(const Vec4& a, const Vec4& b, const Vec4& c, const Signature& g);

// eps_{alpha beta gamma delta} a^alpha b^beta c^gamma d^delta
double hodgeQuad(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d,
                 const Signature& g);

// skew rank-2 tensor, upper-triangle storage keeps S^{ab} = -S^{ba} unviolable
struct SpinTensor {
    // order: S^{01}, S^{02}, S^{03}, S^{12}, S^{13}, S^{23}
    std::array<double, 6> c{};

    static SpinTensor zero() { return SpinTensor{}; }
    static SpinTensor fromComponents(double s01, double s02, double s03,
                                     double s12, double s13, double s23) {
        return SpinTensor{{s01, s02, s03, s12, s13, s23}};
    }
    // throws NotSkew when |S + S^T| exceeds tol * max|S|
    static SpinTensor fromMatrix(const Mat4& s, double tol = 1e-9);

    double operator()(int a, int b) const;
    Mat4 toMatrix() const;
};

// s_delta = 1/(2|u|) eps_{alpha beta gamma delta} u^alpha S^{beta gamma}; covariant result
Vec4 spinTensorToVector(const SpinTensor& s, const Vec4& u, const Signature& g);

// inverse of spinTensorToVector on the surface s.u = 0; takes contravariant s
SpinTensor spinVectorToTensor(const Vec4& s, const Vec4& u, const Signature& g,
                              double piraniTol = 1e-9);

// contravariant transform by lambda; throws NotLorentz unless lambda^T eta lambda = eta
Vec4 lorentzApply(const Mat4& lambda, const Vec4& v, const Signature& g,
                  double tol = 1e-9);
FourVector lorentzApply(const Mat4& lambda, const FourVector& v, const Signature& g,
                        double tol = 1e-9);

// metric-preservation defect |lambda^T eta lambda - eta| / |lambda|^2
double lorentzDefect(const Mat4& lambda, const Signature& g);

// covariant vectors transform by eta lambda eta (the inverse transpose)
Mat4 inverseTransposeLorentz(const Mat4& lambda, const Signature& g);

// infinitesimal pseudo-rotation: out^beta = Omega^{alpha beta} eta_{alpha alpha} v^alpha
Vec4 generatorAction(const Mat4& omega, const Vec4& v, const Signature& g,
                     double tol = 1e-9);

// matrix G of the generator: generatorAction(omega, v) = G v
Mat4 generatorMatrix(const Mat4& omega, const Signature& g, double tol = 1e-9);

} // namespace mtop
