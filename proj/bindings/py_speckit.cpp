#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "speckit/speckit.hpp"

namespace py = pybind11;
using namespace speckit;

PYBIND11_MODULE(_speckit, m) {
    m.doc() = "Tikhonov spectrum restoration with training-example parameter selection";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "SpeckitError", PyExc_RuntimeError);

    py::enum_<SpectrumKind>(m, "SpectrumKind")
        .value("exact", SpectrumKind::exact)
        .value("measured", SpectrumKind::measured)
        .value("restored", SpectrumKind::restored);

    py::class_<WavelengthGrid>(m, "WavelengthGrid")
        .def(py::init<double, double, int>(), py::arg("start"), py::arg("step"), py::arg("count"))
        .def_readonly("start", &WavelengthGrid::start)
        .def_readonly("step", &WavelengthGrid::step)
        .def_readonly("count", &WavelengthGrid::count)
        .def("node", &WavelengthGrid::node)
        .def("nodes", &WavelengthGrid::nodes)
        .def("trapezoid_weights", &WavelengthGrid::trapezoid_weights)
        .def("__eq__", [](const WavelengthGrid& a, const WavelengthGrid& b) { return a == b; })
        .def("__repr__", [](const WavelengthGrid& g) { return "WavelengthGrid" + g.describe(); });

    py::class_<Spectrum>(m, "Spectrum")
        .def(py::init<WavelengthGrid, std::vector<double>, SpectrumKind>(), py::arg("grid"),
             py::arg("values"), py::arg("kind") = SpectrumKind::measured)
        .def_readonly("grid", &Spectrum::grid)
        .def_readonly("values", &Spectrum::values)
        .def_readonly("kind", &Spectrum::kind);

    py::class_<SpreadFunctionModel>(m, "SpreadFunctionModel")
        .def(py::init<double, double>(), py::arg("q"), py::arg("zeta") = 0.0)
        .def_readonly("q", &SpreadFunctionModel::q)
        .def_readonly("zeta", &SpreadFunctionModel::zeta);

    m.def("sf_width", &sf_width, py::arg("lambda_nm"), py::arg("model"));
    m.def("dispersion_kernel", &dispersion_kernel, py::arg("lambda_nm"), py::arg("lambda_prime_nm"),
          py::arg("model"));
    m.def("integral_width", &integral_width, py::arg("omega_nm"));
    m.def("weighted_norm", py::overload_cast<const Spectrum&>(&weighted_norm));

    py::class_<DiscreteOperator>(m, "DiscreteOperator")
        .def_property_readonly("target_grid", &DiscreteOperator::target_grid)
        .def_property_readonly("source_grid", &DiscreteOperator::source_grid)
        .def_property_readonly("quad_weights", &DiscreteOperator::quad_weights)
        .def_property_readonly("shape",
                               [](const DiscreteOperator& op) {
                                   return py::make_tuple(op.rows(), op.cols());
                               })
        .def("entry", [](const DiscreteOperator& op, int i, int j) { return op.matrix()(i, j); });

    m.def("discretize_operator", &discretize_operator, py::arg("target"), py::arg("source"),
          py::arg("model"));
    m.def("forward_apply", &forward_apply, py::arg("op"), py::arg("y"));
    m.def("xi_relative", &xi_relative, py::arg("base"), py::arg("perturbed"));

    py::class_<RegularizedSolution>(m, "RegularizedSolution")
        .def_readonly("alpha", &RegularizedSolution::alpha)
        .def_readonly("spectrum", &RegularizedSolution::spectrum)
        .def_readonly("residual_norm", &RegularizedSolution::residual_norm)
        .def_readonly("error_estimate", &RegularizedSolution::error_estimate);

    py::class_<ErrorBudget>(m, "ErrorBudget")
        .def(py::init<double, double>(), py::arg("delta_rel"), py::arg("xi_rel"))
        .def_readonly("delta_rel", &ErrorBudget::delta_rel)
        .def_readonly("xi_rel", &ErrorBudget::xi_rel)
        .def("eta", &ErrorBudget::eta);

    m.def("solve_tikhonov", &solve_tikhonov, py::arg("op"), py::arg("f"), py::arg("alpha"));
    m.def("operator_norm", &operator_norm);
    m.def("min_singular_of_B", &min_singular_of_B);
    m.def("classical_bound", &classical_bound, py::arg("alpha"), py::arg("norm_A"), py::arg("budget"),
          py::arg("mu_min"));
    m.def("relative_error", &relative_error, py::arg("y_alpha"), py::arg("y_exact"));

    py::class_<EnvelopeParams>(m, "EnvelopeParams")
        .def(py::init<double, double, double>(), py::arg("norm_A"), py::arg("eta"), py::arg("g"))
        .def_readonly("norm_A", &EnvelopeParams::norm_A)
        .def_readonly("eta", &EnvelopeParams::eta)
        .def_readonly("g", &EnvelopeParams::g);

    py::class_<CurveMeta>(m, "CurveMeta")
        .def(py::init<>())
        .def_readwrite("noise_sd", &CurveMeta::noise_sd)
        .def_readwrite("zeta", &CurveMeta::zeta)
        .def_readwrite("seed", &CurveMeta::seed)
        .def_readwrite("line_count", &CurveMeta::line_count)
        .def_readwrite("id", &CurveMeta::id);

    py::class_<ErrorCurve>(m, "ErrorCurve")
        .def(py::init<std::vector<double>, std::vector<double>, CurveMeta>(), py::arg("log10_alphas"),
             py::arg("sigmas"), py::arg("meta") = CurveMeta{})
        .def_readonly("log10_alphas", &ErrorCurve::log10_alphas)
        .def_readonly("sigmas", &ErrorCurve::sigmas)
        .def_readonly("meta", &ErrorCurve::meta)
        .def("interpolate", &ErrorCurve::interpolate);

    py::class_<ContactResult>(m, "ContactResult")
        .def_readonly("g", &ContactResult::g)
        .def_readonly("alpha_g", &ContactResult::alpha_g)
        .def_readonly("epsilon_at_contact", &ContactResult::epsilon_at_contact)
        .def_readonly("contact_alpha", &ContactResult::contact_alpha)
        .def_readonly("iterations", &ContactResult::iterations)
        .def_readonly("converged", &ContactResult::converged);

    m.def("envelope_value", &envelope_value, py::arg("alpha"), py::arg("params"));
    m.def("has_unique_minimum", &has_unique_minimum, py::arg("params"));
    m.def("minimize_envelope", &minimize_envelope, py::arg("params"));
    m.def("aggregate_upper", &aggregate_upper);
    m.def("aggregate_lower", &aggregate_lower);
    m.def(
        "fit_g_analytic",
        [](const ErrorCurve& curve, double norm_A, double eta, double tol, int max_iter,
           double g_initial) { return fit_g_analytic(curve, norm_A, eta, tol, max_iter, g_initial); },
        py::arg("curve"), py::arg("norm_A"), py::arg("eta"), py::arg("tol") = 1e-8,
        py::arg("max_iter") = 100, py::arg("g_initial") = 0.1);
    m.def(
        "fit_g_scan",
        [](const std::vector<ErrorCurve>& curves, const std::vector<double>& g_grid, double norm_A,
           double eta) { return fit_g_scan(curves, g_grid, norm_A, eta); },
        py::arg("curves"), py::arg("g_grid"), py::arg("norm_A"), py::arg("eta"));
    m.def("default_g_grid", &default_g_grid);

    py::class_<GaussianLine>(m, "GaussianLine")
        .def(py::init<double, double, double>(), py::arg("center"), py::arg("amplitude"),
             py::arg("sigma"))
        .def_readonly("center", &GaussianLine::center)
        .def_readonly("amplitude", &GaussianLine::amplitude)
        .def_readonly("sigma", &GaussianLine::sigma);

    py::enum_<FitMode>(m, "FitMode")
        .value("scan", FitMode::scan)
        .value("analytic", FitMode::analytic);

    py::class_<TrainingSpec>(m, "TrainingSpec")
        .def(py::init<>())
        .def_static("paper_default", &TrainingSpec::paper_default)
        .def_readwrite("line_sets", &TrainingSpec::line_sets)
        .def_readwrite("noise_sds", &TrainingSpec::noise_sds)
        .def_readwrite("zeta_values", &TrainingSpec::zeta_values)
        .def_readwrite("alpha_grid", &TrainingSpec::alpha_grid)
        .def_readwrite("seeds", &TrainingSpec::seeds)
        .def_readwrite("target_grid", &TrainingSpec::target_grid)
        .def_readwrite("source_grid", &TrainingSpec::source_grid)
        .def_readwrite("q", &TrainingSpec::q)
        .def("member_count", &TrainingSpec::member_count);

    py::class_<SelectionReport>(m, "SelectionReport")
        .def_readonly("alpha_g", &SelectionReport::alpha_g)
        .def_readonly("g", &SelectionReport::g)
        .def_readonly("eta_used", &SelectionReport::eta_used)
        .def_readonly("norm_A", &SelectionReport::norm_A)
        .def_readonly("upper_curve", &SelectionReport::upper_curve)
        .def_readonly("curve_bundle", &SelectionReport::curve_bundle)
        .def_readonly("predicted_error", &SelectionReport::predicted_error)
        .def_readonly("contact_alpha", &SelectionReport::contact_alpha)
        .def_readonly("iterations", &SelectionReport::iterations)
        .def_readonly("converged", &SelectionReport::converged);

    m.def("paper_example_lines", &paper_example_lines);
    m.def("synth_spectrum", &synth_spectrum, py::arg("lines"), py::arg("grid"));
    m.def("add_noise", &add_noise, py::arg("f"), py::arg("sd"), py::arg("seed"));
    m.def(
        "select_alpha",
        [](const TrainingSpec& spec, FitMode mode) { return select_alpha(spec, mode); },
        py::arg("spec"), py::arg("mode") = FitMode::scan,
        py::call_guard<py::gil_scoped_release>());
    m.def("restore_original", &restore_original, py::arg("op"), py::arg("f_P"), py::arg("report"));
    m.def("count_peaks", &count_peaks, py::arg("spectrum"), py::arg("amp_frac") = 0.10,
          py::arg("prom_frac") = 0.05);
}
