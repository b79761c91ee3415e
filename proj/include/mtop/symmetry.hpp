#pragma once

#include <functional>

#include "mtop/dynamics.hpp"
#include "mtop/minkowski.hpp"

namespace mtop {

enum class LorentzKind { Rotation, Boost, Product };

// finite isometry of the metric; matrix acts on contravariant components
struct LorentzElement {
    Mat4 matrix = identity4();
    LorentzKind kind = LorentzKind::Product;
};

// exp(eps G), G = generatorMatrix(omega, g); scaling and squaring, order-13 series
LorentzElement expGenerator(const Mat4& omega, double eps, const Signature& g);

// one-parameter subgroups in a coordinate plane; orientation follows the metric
LorentzElement rotationInPlane(int i, int j, double angle, const Signature& g);
LorentzElement boostAlong(int i, double rapidity, const Signature& g);

LorentzElement compose(const LorentzElement& a, const LorentzElement& b);

Vec4 transformContra(const LorentzElement& lam, const Vec4& v);
Vec4 transformCo(const LorentzElement& lam, const Vec4& v, const Signature& g);

// contravariant action on x, u, udot (and uddot); the curve parameter is untouched
KinState transformState(const LorentzElement& lam, const KinState& st);
Jet3 transformState(const LorentzElement& lam, const Jet3& j);

SpinTensor transformSpinTensor(const LorentzElement& lam, const SpinTensor& S);

// same Params with the spin vector transformed
Params transformParams(const LorentzElement& lam, const Params& p);

// covariance harness: relative max-norm gap between evaluating an operation on
// transformed inputs and transporting its output by the matching variance rule
using JetCovectorOp = std::function<Vec4(const Jet3&, const Params&)>;
using StateVectorOp = std::function<Vec4(const KinState&, const Params&)>;
using ChartScalarOp = std::function<double(const Vec4&, const KinState&, const Params&)>;
using TensorVectorOp = std::function<Vec4(const Jet3&, const SpinTensor&, const Params&)>;

double covarianceResidual(const JetCovectorOp& op, const LorentzElement& lam,
                          const Jet3& j, const Params& p);
double covarianceResidual(const StateVectorOp& op, const LorentzElement& lam,
                          const KinState& st, const Params& p);
// scalar case transforms the chart vector e along with the state
double covarianceResidual(const ChartScalarOp& op, const LorentzElement& lam,
                          const Vec4& e, const KinState& st, const Params& p);
double covarianceResidual(const TensorVectorOp& op, const LorentzElement& lam,
                          const Jet3& j, const SpinTensor& S, const Params& p);

} // namespace mtop
