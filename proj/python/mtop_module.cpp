#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>

#include "mtop/checks.hpp"
#include "mtop/dynamics.hpp"
#include "mtop/errors.hpp"
#include "mtop/integrator.hpp"
#include "mtop/minkowski.hpp"
#include "mtop/variational.hpp"
#include "mtop/version.hpp"

namespace py = pybind11;
using namespace mtop;

namespace {

std::string signatureRepr(const Signature& g) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "Signature(diag=(%+d, %+d, %+d, %+d), orientation=%+d)",
                  g.diag[0], g.diag[1], g.diag[2], g.diag[3], g.orientation);
    return buf;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "relativistic spinning particle: third-order flow, spin forms, checks";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "Error");

    py::class_<Signature>(m, "Signature")
        .def(py::init<>())
        .def_readwrite("diag", &Signature::diag)
        .def_readwrite("orientation", &Signature::orientation)
        .def_static("minkowski", &Signature::minkowski)
        .def_static("euclidean", &Signature::euclidean)
        .def("__repr__", &signatureRepr);

    py::class_<Params>(m, "Params")
        .def(py::init<>())
        .def(py::init<double, double, const Vec4&, double, const Signature&>(),
             py::arg("m"), py::arg("m0"), py::arg("s"), py::arg("A"), py::arg("g"))
        .def_readwrite("m", &Params::m)
        .def_readwrite("m0", &Params::m0)
        .def_readwrite("s", &Params::s)
        .def_readwrite("A", &Params::A)
        .def_readwrite("g", &Params::g);

    py::class_<KinState>(m, "KinState")
        .def(py::init<>())
        .def(py::init([](const Vec4& x, const Vec4& u, const Vec4& a) {
                 return KinState{x, u, a};
             }),
             py::arg("x"), py::arg("u"), py::arg("a"))
        .def_readwrite("x", &KinState::x)
        .def_readwrite("u", &KinState::u)
        .def_readwrite("a", &KinState::a);

    py::class_<Jet3>(m, "Jet3")
        .def(py::init<>())
        .def(py::init([](const KinState& base, const Vec4& j) {
                 return Jet3{base, j};
             }),
             py::arg("base"), py::arg("j"))
        .def_readwrite("base", &Jet3::base)
        .def_readwrite("j", &Jet3::j);

    py::class_<Jet4>(m, "Jet4")
        .def(py::init<>())
        .def(py::init([](const Vec4& x, const Vec4& u, const Vec4& udot, const Vec4& uddot,
                         const Vec4& u3) {
                 return Jet4{x, u, udot, uddot, u3};
             }),
             py::arg("x"), py::arg("u"), py::arg("udot"), py::arg("uddot"), py::arg("u3"))
        .def_readwrite("x", &Jet4::x)
        .def_readwrite("u", &Jet4::u)
        .def_readwrite("udot", &Jet4::udot)
        .def_readwrite("uddot", &Jet4::uddot)
        .def_readwrite("u3", &Jet4::u3);

    py::class_<SpinTensor>(m, "SpinTensor")
        .def(py::init<>())
        .def_static("zero", &SpinTensor::zero)
        .def_static("from_components", &SpinTensor::fromComponents, py::arg("s01"),
                    py::arg("s02"), py::arg("s03"), py::arg("s12"), py::arg("s13"),
                    py::arg("s23"))
        .def_static("from_matrix", &SpinTensor::fromMatrix, py::arg("s"),
                    py::arg("tol") = 1e-9)
        .def_readwrite("c", &SpinTensor::c)
        .def("__call__", &SpinTensor::operator(), py::arg("a"), py::arg("b"))
        .def("to_matrix", &SpinTensor::toMatrix);

    // metric algebra
    m.def("lower", &lower, py::arg("contra"), py::arg("g"));
    m.def("raise_index", &raise, py::arg("co"), py::arg("g"));
    m.def("dot",
          py::overload_cast<const Vec4&, const Vec4&, const Signature&>(&dot),
          py::arg("a"), py::arg("b"), py::arg("g"));
    m.def("norm_abs",
          py::overload_cast<const Vec4&, const Signature&>(&normAbs),
          py::arg("a"), py::arg("g"));
    m.def("wedge_norm_sq",
          py::overload_cast<const Vec4&, const Vec4&, const Signature&>(&wedgeNormSq),
          py::arg("a"), py::arg("b"), py::arg("g"));
    m.def("wedge_norm_abs", &wedgeNormAbs, py::arg("a"), py::arg("b"), py::arg("g"));
    m.def("perm_symbol", &permSymbol, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
    m.def("hodge_triple", &hodgeTriple, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("g"),
          "covariant components of the contraction of the volume form with a, b, c");
    m.def("hodge_quad", &hodgeQuad, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
          py::arg("g"));
    m.def("spin_tensor_to_vector", &spinTensorToVector, py::arg("s"), py::arg("u"),
          py::arg("g"), "covariant dual vector of the tensor along u");
    m.def("spin_vector_to_tensor", &spinVectorToTensor, py::arg("s"), py::arg("u"),
          py::arg("g"), py::arg("pirani_tol") = 1e-9,
          "inverse of spin_tensor_to_vector on the surface s.u = 0");

    // dynamics: residuals of the equivalent forms and the explicit connection
    m.def("residual_spin_vector", &residualSpinVector, py::arg("j"), py::arg("p"));
    m.def("residual_mathisson_flat", &residualMathissonFlat, py::arg("j"), py::arg("S"),
          py::arg("p"));
    m.def("residual_euler_poisson", &residualEulerPoisson, py::arg("j"), py::arg("p"));
    m.def("euler_poisson_scale", &eulerPoissonScale, py::arg("j"), py::arg("p"));
    m.def("lagrangian_homogeneous", &lagrangianHomogeneous, py::arg("alpha"), py::arg("st"),
          py::arg("p"));
    m.def("first_integral", &firstIntegral, py::arg("u"), py::arg("p"));
    m.def("psi_ansatz", &psiAnsatz, py::arg("u"), py::arg("udot"), py::arg("A"), py::arg("g"));
    m.def("autoparallel_rhs", &autoparallelRHS, py::arg("st"), py::arg("p"),
          "u-triple-dot of the second-order connection at (x, u, udot)");
    m.def("euler_lagrange_fd", &eulerLagrangeFD, py::arg("L"), py::arg("j"),
          py::arg("h") = 1e-5,
          "finite-difference Euler-Lagrange covector of L(x, u, udot) along a jet");

    // integration
    py::enum_<StepMethod>(m, "StepMethod")
        .value("rk4_fixed", StepMethod::Rk4Fixed)
        .value("rk45_adaptive", StepMethod::Rk45Adaptive);

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("method", &IntegratorConfig::method)
        .def_readwrite("h0", &IntegratorConfig::h0)
        .def_readwrite("tol_abs", &IntegratorConfig::tolAbs)
        .def_readwrite("tol_rel", &IntegratorConfig::tolRel)
        .def_readwrite("tau_end", &IntegratorConfig::tauEnd)
        .def_readwrite("max_steps", &IntegratorConfig::maxSteps)
        .def_readwrite("h_max", &IntegratorConfig::hMax);

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("tau", &TrajectorySample::tau)
        .def_readonly("st", &TrajectorySample::st)
        .def_readonly("adot", &TrajectorySample::adot)
        .def_readonly("first_integral", &TrajectorySample::firstIntegral)
        .def_readonly("pirani", &TrajectorySample::pirani)
        .def_readonly("residual_norm", &TrajectorySample::residualNorm);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def("__len__", [](const Trajectory& tr) { return tr.samples.size(); });

    py::class_<DiagnosticsSummary>(m, "DiagnosticsSummary")
        .def_readonly("max_first_integral_drift", &DiagnosticsSummary::maxFirstIntegralDrift)
        .def_readonly("max_pirani_drift", &DiagnosticsSummary::maxPiraniDrift)
        .def_readonly("max_residual_norm", &DiagnosticsSummary::maxResidualNorm)
        .def_readonly("samples", &DiagnosticsSummary::samples);

    m.def("integrate", &integrate, py::arg("rhs"), py::arg("y0"), py::arg("p"), py::arg("cfg"),
          "integrate x' = u, u' = udot, udot' = rhs(state, params)");
    m.def(
        "integrate_autoparallel",
        [](const KinState& y0, const Params& p, const IntegratorConfig& cfg) {
            return integrate(
                [](const KinState& st, const Params& pp) { return autoparallelRHS(st, pp); },
                y0, p, cfg);
        },
        py::arg("y0"), py::arg("p"), py::arg("cfg"),
        "integrate the explicit second-order-connection flow");
    m.def("sample_trajectory", &sampleTrajectory, py::arg("tr"), py::arg("tau"));
    m.def("proper_time_reparametrize", &properTimeReparametrize, py::arg("tr"), py::arg("g"));
    m.def("diagnostics_summary", &diagnosticsSummary, py::arg("tr"));

    // property checks
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::pass)
        .def_readonly("measured", &CheckResult::measured)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("detail", &CheckResult::detail)
        .def("__repr__", [](const CheckResult& r) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "CheckResult(name='%s', passed=%s, measured=%.3e)",
                          r.name.c_str(), r.pass ? "True" : "False", r.measured);
            return std::string(buf);
        });

    m.def("run_suite", &runSuite, py::arg("suite"), py::arg("seed") = 20260815ull,
          "deterministic property checks; suites: variationality, zermelo, covariance, "
          "conservation, equivalence, autoparallel, all");
}
