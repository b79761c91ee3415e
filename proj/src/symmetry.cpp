#include "mtop/symmetry.hpp"

#include <cmath>

namespace mtop {

namespace {

constexpr double kTiny = 1e-300;

LorentzKind classify(const Mat4& omega) {
    bool mixed = false, spatial = false;
    for (int i = 1; i < 4; ++i) {
        if (omega[0][i] != 0.0 || omega[i][0] != 0.0) mixed = true;
        for (int j = i + 1; j < 4; ++j)
            if (omega[i][j] != 0.0 || omega[j][i] != 0.0) spatial = true;
    }
    if (mixed && !spatial) return LorentzKind::Boost;
    if (spatial && !mixed) return LorentzKind::Rotation;
    return LorentzKind::Product;
}

double norm1(const Mat4& m) {
    double best = 0;
    for (int j = 0; j < 4; ++j) {
        double col = 0;
        for (int i = 0; i < 4; ++i) col += std::abs(m[i][j]);
        best = std::max(best, col);
    }
    return best;
}

Mat4 expm(const Mat4& a) {
    // halve until the order-13 tail is far below round-off, then square back
    double n = norm1(a);
    int squarings = 0;
    Mat4 scaled = a;
    while (n > 0.5 && squarings < 60) {
        scaled = matScale(0.5, scaled);
        n *= 0.5;
        ++squarings;
    }
    Mat4 sum = identity4();
    Mat4 term = identity4();
    for (int k = 1; k <= 13; ++k) {
        term = matScale(1.0 / k, matMul(term, scaled));
        sum = matAdd(sum, term);
    }
    for (int k = 0; k < squarings; ++k) sum = matMul(sum, sum);
    return sum;
}

void requireLorentz(const LorentzElement& lam, const Signature& g) {
    if (lorentzDefect(lam.matrix, g) > 1e-9)
        throw NotLorentz("covarianceResidual: matrix does not preserve the metric");
}

double relGap(const Vec4& a, const Vec4& b) {
    return maxAbs(sub(a, b)) / (maxAbs(a) + maxAbs(b) + kTiny);
}

} // namespace

LorentzElement expGenerator(const Mat4& omega, double eps, const Signature& g) {
    Mat4 G = generatorMatrix(omega, g);
    LorentzElement out;
    out.matrix = expm(matScale(eps, G));
    out.kind = classify(omega);
    return out;
}

LorentzElement rotationInPlane(int i, int j, double angle, const Signature& g) {
    Mat4 omega{};
    omega[i][j] = -1.0;
    omega[j][i] = +1.0;
    return expGenerator(omega, angle, g);
}

LorentzElement boostAlong(int i, double rapidity, const Signature& g) {
    Mat4 omega{};
    omega[0][i] = +1.0;
    omega[i][0] = -1.0;
    return expGenerator(omega, rapidity, g);
}

LorentzElement compose(const LorentzElement& a, const LorentzElement& b) {
    LorentzKind kind = LorentzKind::Product;
    if (a.kind == LorentzKind::Rotation && b.kind == LorentzKind::Rotation)
        kind = LorentzKind::Rotation; // spatial rotations are closed under products
    return LorentzElement{matMul(a.matrix, b.matrix), kind};
}

Vec4 transformContra(const LorentzElement& lam, const Vec4& v) {
    return matVec(lam.matrix, v);
}

Vec4 transformCo(const LorentzElement& lam, const Vec4& v, const Signature& g) {
    return matVec(inverseTransposeLorentz(lam.matrix, g), v);
}

KinState transformState(const LorentzElement& lam, const KinState& st) {
    return KinState{transformContra(lam, st.x), transformContra(lam, st.u),
                    transformContra(lam, st.a)};
}

Jet3 transformState(const LorentzElement& lam, const Jet3& j) {
    return Jet3{transformState(lam, j.base), transformContra(lam, j.j)};
}

SpinTensor transformSpinTensor(const LorentzElement& lam, const SpinTensor& S) {
    Mat4 moved = matMul(lam.matrix, matMul(S.toMatrix(), transpose(lam.matrix)));
    return SpinTensor::fromMatrix(moved);
}

Params transformParams(const LorentzElement& lam, const Params& p) {
    Params q = p;
    q.s = transformContra(lam, p.s);
    return q;
}

double covarianceResidual(const JetCovectorOp& op, const LorentzElement& lam,
                          const Jet3& j, const Params& p) {
    requireLorentz(lam, p.g);
    Vec4 moved = op(transformState(lam, j), transformParams(lam, p));
    Vec4 carried = transformCo(lam, op(j, p), p.g);
    return relGap(moved, carried);
}

double covarianceResidual(const StateVectorOp& op, const LorentzElement& lam,
                          const KinState& st, const Params& p) {
    requireLorentz(lam, p.g);
    Vec4 moved = op(transformState(lam, st), transformParams(lam, p));
    Vec4 carried = transformContra(lam, op(st, p));
    return relGap(moved, carried);
}

double covarianceResidual(const ChartScalarOp& op, const LorentzElement& lam,
                          const Vec4& e, const KinState& st, const Params& p) {
    requireLorentz(lam, p.g);
    double moved = op(transformContra(lam, e), transformState(lam, st),
                      transformParams(lam, p));
    double base = op(e, st, p);
    return std::abs(moved - base) / (std::abs(moved) + std::abs(base) + kTiny);
}

double covarianceResidual(const TensorVectorOp& op, const LorentzElement& lam,
                          const Jet3& j, const SpinTensor& S, const Params& p) {
    requireLorentz(lam, p.g);
    Vec4 moved = op(transformState(lam, j), transformSpinTensor(lam, S),
                    transformParams(lam, p));
    Vec4 carried = transformContra(lam, op(j, S, p));
    return relGap(moved, carried);
}

} // namespace mtop
