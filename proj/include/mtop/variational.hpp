#pragma once

#include <array>
#include <functional>

#include "mtop/dynamics.hpp"

namespace mtop {

// Fourth-order jet of a worldline: derivatives of x up to order 4.
struct Jet4 {
    Vec4 x{};
    Vec4 u{};
    Vec4 udot{};
    Vec4 uddot{};
    Vec4 u3{};
};

// Third-order contact jet in the chart (t, x^i): t-derivatives of x^i.
struct ContactJet3 {
    double t = 0;
    std::array<double, 3> x{};
    std::array<double, 3> v1{};
    std::array<double, 3> v2{};
    std::array<double, 3> v3{};
};

// Third-order parametrized jet of (t, x^i); component 0 is t.
struct HomJet3 {
    Vec4 q{};
    Vec4 q1{};
    Vec4 q2{};
    Vec4 q3{};
};

// Second-order Lagrangian L(x, u, udot).
using ScalarField2 = std::function<double(const Vec4&, const Vec4&, const Vec4&)>;

// First-order scalar G(x, u); used to build total-derivative Lagrangians.
using ScalarField1 = std::function<double(const Vec4&, const Vec4&)>;

// Contact Lagrangian L(t, x, v, v') in the chart (t, x^i).
using ContactLagrangian = std::function<double(
    double, const std::array<double, 3>&, const std::array<double, 3>&,
    const std::array<double, 3>&)>;

// Second-order ODE right-hand side uddot = xi(state).
using RhsField = std::function<Vec4(const KinState&)>;

struct ZermeloResiduals {
    double r1 = 0; // (u.d/du + 2 udot.d/dudot)L - L
    double r2 = 0; // (u.d/dudot)L
};

struct AutoparallelCheck {
    Vec4 c1{}; // first commutation residual, component off u
    Vec4 c2{}; // second commutation residual, component off u
    double kappa = 0;
    double mu = 0;
};

// Euler-Lagrange covector E_a = dL/dx^a - D(dL/du^a) + D^2(dL/dudot^a),
// D the total derivative along the jet. Central differences of relative
// step h with one Richardson level; two-scale scheme for the nested
// derivatives. Throws ChartExit when a probe leaves the chart of L.
Vec4 eulerLagrangeFD(const ScalarField2& L, const Jet4& j, double h = 1e-5);

// Liouville-field residuals of the parameter-invariance conditions.
ZermeloResiduals zermeloCheck(const ScalarField2& L, const KinState& st,
                              double h = 1e-5);

// Finite-group form: L(x, k u, k^2 udot + k mu u) - k L(x, u, udot).
double zermeloFinite(const ScalarField2& L, const KinState& st, double lambda,
                     double mu);

// Chain rule for jets under t = t(tau); tp != 0 required.
HomJet3 contactToHomogeneous(const ContactJet3& cj, double tp, double tpp,
                             double tppp);

// Inverse by back-substitution; forgets the parametrization.
ContactJet3 homogeneousToContact(const HomJet3& hj);

// Parameter-invariant Lagrangian (L o contact-projection) * dt/dtau.
ScalarField2 homogenizeLagrangian(ContactLagrangian L);

// Lifts a contact residual to the parametrized covector:
// out_0 = -sum_i u^i E_i, out_i = u^0 E_i. Annihilates q1.
Vec4 homogenizeEulerPoisson(const std::array<double, 3>& E, const HomJet3& hj);

// Commutation constraints for a second-order connection RHS:
// c1 = udot - (1/3)(dxi/dudot)u - kappa u
// c2 = xi - (1/3)(dxi/du)u - (2/3)(dxi/dudot)udot - mu u
// kappa, mu by least squares onto u. Jacobians by central differences.
AutoparallelCheck autoparallelConditionCheck(const RhsField& xi,
                                             const KinState& st,
                                             double h = 1e-5);

} // namespace mtop
