#include "twolayer/contour.hpp"
#include "twolayer/dispersion.hpp"
#include "twolayer/embedded.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/potentialflow.hpp"
#include "twolayer/spectra.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace twolayer;

PYBIND11_MODULE(_twolayer, m) {
    m.doc() = "Trapped modes and resonances of thin cylinders in a two-layer fluid.";
    m.attr("__version__") = TWOLAYER_VERSION;

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<FluidConfig>(m, "FluidConfig")
        .def(py::init<double, double, double>(), py::arg("beta"), py::arg("b"), py::arg("k"))
        .def_property_readonly("beta", &FluidConfig::beta)
        .def_property_readonly("alpha", &FluidConfig::alpha)
        .def_property_readonly("b", &FluidConfig::b)
        .def_property_readonly("k", &FluidConfig::k)
        .def("__repr__", [](const FluidConfig& c) {
            return "FluidConfig(beta=" + std::to_string(c.beta()) + ", b=" +
                   std::to_string(c.b()) + ", k=" + std::to_string(c.k()) + ")";
        });

    py::class_<SpectralContext>(m, "SpectralContext")
        .def_readonly("Lambda1", &SpectralContext::Lambda1)
        .def_readonly("Lambda2", &SpectralContext::Lambda2)
        .def_readonly("tau1", &SpectralContext::tau1)
        .def_readonly("p1_zero", &SpectralContext::p1_zero)
        .def_readonly("q1", &SpectralContext::q1)
        .def_readonly("q2", &SpectralContext::q2)
        .def_readonly("dlambda1_at_k", &SpectralContext::dlambda1_at_k)
        .def_readonly("dlambda1_at_tau1", &SpectralContext::dlambda1_at_tau1);

    m.def("lambda1", &lambda1, py::arg("tau"), py::arg("cfg"));
    m.def("lambda1_prime", &lambda1_prime, py::arg("tau"), py::arg("cfg"));
    m.def("spectral_context", &spectral_context, py::arg("cfg"));
    m.def(
        "g_profile",
        [](double y, double tau, double lam) {
            const auto p = g_profile(y, tau, lam);
            return py::make_tuple(p.g, p.g_prime);
        },
        py::arg("y"), py::arg("tau"), py::arg("lam"));

    py::class_<DipoleStrengths>(m, "DipoleStrengths")
        .def(py::init([](double mu, double nu, double kappa, double S) {
                 return DipoleStrengths{mu, nu, kappa, S};
             }),
             py::arg("mu"), py::arg("nu"), py::arg("kappa"), py::arg("S"))
        .def_readonly("mu", &DipoleStrengths::mu)
        .def_readonly("nu", &DipoleStrengths::nu)
        .def_readonly("kappa", &DipoleStrengths::kappa)
        .def_readonly("S", &DipoleStrengths::S)
        .def_property_readonly("delta", &DipoleStrengths::delta);

    py::class_<Contour>(m, "Contour")
        .def("diameter", &Contour::diameter)
        .def_property_readonly("orientation_reversed",
                               [](const Contour& c) { return c.report().orientation_reversed; })
        .def(
            "sample",
            [](const Contour& c, std::size_t n) {
                std::vector<std::pair<double, double>> xy;
                for (const auto& p : c.sample(n)) xy.emplace_back(p.x, p.y);
                return xy;
            },
            py::arg("n"));

    m.def("make_circle", &make_circle, py::arg("r"));
    m.def("make_ellipse", &make_ellipse, py::arg("a0"), py::arg("b0"), py::arg("theta0"));
    m.def(
        "make_fourier",
        [](const std::vector<std::array<double, 4>>& rows) {
            std::vector<FourierMode> modes;
            for (const auto& r : rows) modes.push_back({r[0], r[1], r[2], r[3]});
            return make_fourier(std::move(modes));
        },
        py::arg("coefficients"), "rows of (cos_x, sin_x, cos_y, sin_y), harmonic j = 1, 2, ...");
    m.def("area", &area, py::arg("contour"));
    m.def("analytic_dipoles_circle", &analytic_dipoles_circle, py::arg("r"));
    m.def("analytic_dipoles_ellipse", &analytic_dipoles_ellipse, py::arg("a0"), py::arg("b0"),
          py::arg("theta0"));

    py::class_<BemDiagnostics>(m, "BemDiagnostics")
        .def_readonly("n", &BemDiagnostics::n)
        .def_readonly("gauss_residual", &BemDiagnostics::gauss_residual)
        .def_readonly("condition_estimate", &BemDiagnostics::condition_estimate)
        .def_readonly("nu_route_gap", &BemDiagnostics::nu_route_gap);
    py::class_<BemDipoles>(m, "BemDipoles")
        .def_readonly("dipoles", &BemDipoles::dipoles)
        .def_readonly("diagnostics", &BemDipoles::diagnostics);
    m.def("dipoles_bem", &dipoles_bem, py::arg("contour"), py::arg("n") = 256);

    py::enum_<Side>(m, "Side").value("upper", Side::upper).value("lower", Side::lower);

    py::class_<ProblemSetup>(m, "ProblemSetup")
        .def(py::init([](const FluidConfig& cfg, Side side, double a, double epsilon,
                         const DipoleStrengths& dip) {
                 return ProblemSetup{cfg, side, a, epsilon, dip};
             }),
             py::arg("cfg"), py::arg("side"), py::arg("a"), py::arg("epsilon"), py::arg("dip"))
        .def_readonly("cfg", &ProblemSetup::cfg)
        .def_readonly("side", &ProblemSetup::side)
        .def_readonly("a", &ProblemSetup::a)
        .def_readonly("epsilon", &ProblemSetup::epsilon)
        .def_readonly("dip", &ProblemSetup::dip);

    py::class_<Coefficients>(m, "Coefficients")
        .def_readonly("D", &Coefficients::D)
        .def_readonly("D1", &Coefficients::D1)
        .def_readonly("Q_at_k", &Coefficients::Q_at_k)
        .def_readonly("Q_at_tau1", &Coefficients::Q_at_tau1)
        .def_readonly("P0_at_k", &Coefficients::P0_at_k)
        .def_readonly("P0_at_tau1", &Coefficients::P0_at_tau1);

    py::class_<ModeResult>(m, "ModeResult")
        .def_readonly("sigma", &ModeResult::sigma)
        .def_readonly("lam", &ModeResult::lambda)
        .def_readonly("threshold", &ModeResult::threshold)
        .def_readonly("omega", &ModeResult::omega)
        .def_readonly("coeff", &ModeResult::coeff)
        .def_readonly("warnings", &ModeResult::warnings)
        .def_property_readonly("order", [](const ModeResult& r) { return std::string(r.order); });

    py::class_<ResonanceResult>(m, "ResonanceResult")
        .def_readonly("re_sigma", &ResonanceResult::re_sigma)
        .def_readonly("im_sigma", &ResonanceResult::im_sigma)
        .def_readonly("log_im_sigma", &ResonanceResult::log_im_sigma)
        .def_readonly("near_embedded", &ResonanceResult::near_embedded)
        .def_readonly("Rcal", &ResonanceResult::Rcal)
        .def_readonly("Jcal", &ResonanceResult::Jcal)
        .def_readonly("decay_rate", &ResonanceResult::decay_rate)
        .def_readonly("coeff", &ResonanceResult::coeff)
        .def_readonly("warnings", &ResonanceResult::warnings)
        .def_property_readonly("order",
                               [](const ResonanceResult& r) { return std::string(r.order); });

    m.def("q_factor", &q_factor, py::arg("tau"), py::arg("cfg"));
    m.def("p0_factor", &p0_factor, py::arg("tau"), py::arg("lam"), py::arg("cfg"));
    m.def("trapped_upper", &trapped_upper, py::arg("setup"), py::arg("ctx"),
          py::arg("g_grav") = py::none());
    m.def("resonance_upper", &resonance_upper, py::arg("setup"), py::arg("ctx"),
          py::arg("g_grav") = py::none());
    m.def("trapped_lower", &trapped_lower, py::arg("setup"), py::arg("ctx"),
          py::arg("g_grav") = py::none());
    m.def("resonance_lower", &resonance_lower, py::arg("setup"), py::arg("ctx"),
          py::arg("g_grav") = py::none());

    py::class_<EmbeddedResult>(m, "EmbeddedResult")
        .def_readonly("exists", &EmbeddedResult::exists)
        .def_readonly("a_star", &EmbeddedResult::a_star)
        .def_readonly("a_star_root", &EmbeddedResult::a_star_root)
        .def_readonly("w", &EmbeddedResult::w)
        .def_readonly("tau0", &EmbeddedResult::tau0)
        .def_readonly("a0", &EmbeddedResult::a0)
        .def_readonly("b0", &EmbeddedResult::b0)
        .def_readonly("delta", &EmbeddedResult::delta)
        .def_readonly("sigma", &EmbeddedResult::sigma)
        .def_readonly("diagnostic", &EmbeddedResult::diagnostic);

    m.def("a_star",
          py::overload_cast<const FluidConfig&, const DipoleStrengths&, const SpectralContext&,
                            double>(&a_star),
          py::arg("cfg"), py::arg("dip"), py::arg("ctx"), py::arg("epsilon") = 0.01);
    m.def("tau0", &tau0, py::arg("cfg"));
    m.def("solve_w", &solve_w, py::arg("delta"), py::arg("tau0"));
    m.def("f_circle", &f_circle, py::arg("a"), py::arg("tau"));
    m.def("small_alpha_asymptote", &small_alpha_asymptote, py::arg("alpha"), py::arg("delta"),
          py::arg("k"));
    m.def("critical_alpha", &critical_alpha, py::arg("dip"), py::arg("b"), py::arg("k"),
          py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-4);
}
