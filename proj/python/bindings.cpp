#include "hestoncal/calibrate.hpp"
#include "hestoncal/charfn.hpp"
#include "hestoncal/data.hpp"
#include "hestoncal/error.hpp"
#include "hestoncal/inversion.hpp"
#include "hestoncal/pricer.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace hestoncal;

namespace {

DatasetId dataset_or_throw(const std::string& name) {
    if (const auto id = dataset_from_name(name)) {
        return *id;
    }
    throw py::value_error("unknown dataset '" + name + "' (expected D1, D2 or D3)");
}

// Python callables need the GIL; keep the quadrature on this thread.
CharFn wrap_cf(const py::function& fn) {
    return [fn](cplx w) { return fn(w).cast<cplx>(); };
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Heston / Black-Scholes call pricing by characteristic-function inversion and Heston calibration";

    py::register_exception<Error>(m, "HestonError", PyExc_RuntimeError);

    py::class_<BsmParams>(m, "BsmParams")
        .def(py::init<double, double, double, double>(), py::arg("s0"), py::arg("sigma"), py::arg("r"),
             py::arg("t"))
        .def_readwrite("s0", &BsmParams::s0)
        .def_readwrite("sigma", &BsmParams::sigma)
        .def_readwrite("r", &BsmParams::r)
        .def_readwrite("t", &BsmParams::t);

    py::class_<HestonParams>(m, "HestonParams")
        .def(py::init<double, double, double, double, double>(), py::arg("v0"), py::arg("vbar"), py::arg("a"),
             py::arg("eta"), py::arg("rho"))
        .def_readwrite("v0", &HestonParams::v0)
        .def_readwrite("vbar", &HestonParams::vbar)
        .def_readwrite("a", &HestonParams::a)
        .def_readwrite("eta", &HestonParams::eta)
        .def_readwrite("rho", &HestonParams::rho)
        .def("feller_slack", &HestonParams::feller_slack)
        .def("__repr__", [](const HestonParams& p) {
            return "HestonParams(v0=" + std::to_string(p.v0) + ", vbar=" + std::to_string(p.vbar) +
                   ", a=" + std::to_string(p.a) + ", eta=" + std::to_string(p.eta) +
                   ", rho=" + std::to_string(p.rho) + ")";
        });

    py::class_<OptionSpec>(m, "OptionSpec")
        .def(py::init<double, double, double, double>(), py::arg("s0"), py::arg("k"), py::arg("r"), py::arg("t"))
        .def_readwrite("s0", &OptionSpec::s0)
        .def_readwrite("k", &OptionSpec::k)
        .def_readwrite("r", &OptionSpec::r)
        .def_readwrite("t", &OptionSpec::t);

    py::class_<PriceBreakdown>(m, "PriceBreakdown")
        .def_readonly("price", &PriceBreakdown::price)
        .def_readonly("pi1", &PriceBreakdown::pi1)
        .def_readonly("pi2", &PriceBreakdown::pi2);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("upper_limit", &QuadratureConfig::upper_limit)
        .def_readwrite("lower_limit", &QuadratureConfig::lower_limit)
        .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
        .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
        .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions);

    py::class_<MarketQuote>(m, "MarketQuote")
        .def(py::init<double, double, double, double, double, double, double>(), py::arg("s0"), py::arg("t"),
             py::arg("k"), py::arg("r"), py::arg("mid"), py::arg("bid"), py::arg("ask"))
        .def_readwrite("s0", &MarketQuote::s0)
        .def_readwrite("t", &MarketQuote::t)
        .def_readwrite("k", &MarketQuote::k)
        .def_readwrite("r", &MarketQuote::r)
        .def_readwrite("mid", &MarketQuote::mid)
        .def_readwrite("bid", &MarketQuote::bid)
        .def_readwrite("ask", &MarketQuote::ask);

    py::class_<OptVector>(m, "OptVector")
        .def(py::init<double, double, double, double, double>(), py::arg("v0"), py::arg("vbar"), py::arg("eta"),
             py::arg("rho"), py::arg("feller_slack"))
        .def_readwrite("v0", &OptVector::v0)
        .def_readwrite("vbar", &OptVector::vbar)
        .def_readwrite("eta", &OptVector::eta)
        .def_readwrite("rho", &OptVector::rho)
        .def_readwrite("feller_slack", &OptVector::feller_slack)
        .def("to_list", &OptVector::to_array);

    py::class_<CalibrationConfig>(m, "CalibrationConfig")
        .def(py::init<>())
        .def_readwrite("x0", &CalibrationConfig::x0)
        .def_readwrite("lower", &CalibrationConfig::lower)
        .def_readwrite("upper", &CalibrationConfig::upper)
        .def_readwrite("seed", &CalibrationConfig::seed)
        .def_readwrite("max_evaluations", &CalibrationConfig::max_evaluations)
        .def_readwrite("threads", &CalibrationConfig::threads)
        .def_property(
            "max_iterations", [](const CalibrationConfig& c) { return c.local.max_iterations; },
            [](CalibrationConfig& c, std::size_t n) { c.local.max_iterations = n; });

    py::class_<OptionFit>(m, "OptionFit")
        .def_readonly("quote", &OptionFit::quote)
        .def_readonly("model_price", &OptionFit::model_price)
        .def_readonly("abs_difference", &OptionFit::abs_difference)
        .def_readonly("within_spread", &OptionFit::within_spread);

    py::class_<CalibrationResult>(m, "CalibrationResult")
        .def_readonly("params", &CalibrationResult::params)
        .def_readonly("x", &CalibrationResult::x)
        .def_readonly("objective", &CalibrationResult::objective)
        .def_readonly("avg_abs_distance", &CalibrationResult::avg_abs_distance)
        .def_readonly("mean_half_spread", &CalibrationResult::mean_half_spread)
        .def_readonly("within_spread_count", &CalibrationResult::within_spread_count)
        .def_readonly("per_option", &CalibrationResult::per_option)
        .def_readonly("accepted", &CalibrationResult::accepted)
        .def_readonly("converged", &CalibrationResult::converged)
        .def_readonly("note", &CalibrationResult::note)
        .def_readonly("elapsed", &CalibrationResult::elapsed)
        .def_readonly("evaluations", &CalibrationResult::evaluations);

    m.def("cf_bsm", &cf_bsm, py::arg("params"), py::arg("w"));
    m.def("cf_heston", &cf_heston, py::arg("params"), py::arg("s0"), py::arg("r"), py::arg("t"), py::arg("w"));
    m.def("cf_heston_gatheral_exponent", &cf_heston_gatheral_exponent, py::arg("params"), py::arg("t"),
          py::arg("w"));

    m.def(
        "pi1", [](const py::function& cf, double x, const QuadratureConfig& q) { return pi1(wrap_cf(cf), x, q); },
        py::arg("cf"), py::arg("log_strike"), py::arg("q") = QuadratureConfig{});
    m.def(
        "pi2", [](const py::function& cf, double x, const QuadratureConfig& q) { return pi2(wrap_cf(cf), x, q); },
        py::arg("cf"), py::arg("log_strike"), py::arg("q") = QuadratureConfig{});
    m.def(
        "cdf_from_cf",
        [](const py::function& cf, double x, const QuadratureConfig& q) { return cdf_from_cf(wrap_cf(cf), x, q); },
        py::arg("cf"), py::arg("x"), py::arg("q") = QuadratureConfig{});

    m.def("price_call_bsm", &price_call_bsm, py::arg("params"), py::arg("k"), py::arg("q") = QuadratureConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("price_call_heston", &price_call_heston, py::arg("params"), py::arg("option"),
          py::arg("q") = QuadratureConfig{}, py::call_guard<py::gil_scoped_release>());

    m.def("params_from_optvector", &params_from_optvector, py::arg("x"));
    m.def(
        "objective",
        [](const HestonParams& p, const std::vector<MarketQuote>& quotes, const QuadratureConfig& q) {
            const auto value = objective(p, quotes, q);
            return py::make_tuple(value.mse, value.residuals);
        },
        py::arg("params"), py::arg("quotes"), py::arg("q") = QuadratureConfig{});
    m.def(
        "acceptance_check", [](const std::vector<OptionFit>& fits) { return acceptance_check(fits); },
        py::arg("per_option"));

    m.def(
        "calibrate_local",
        [](const std::vector<MarketQuote>& quotes, CalibrationConfig cfg, const QuadratureConfig& q) {
            cfg.method = CalibrationMethod::Local;
            return calibrate_local(quotes, cfg, q);
        },
        py::arg("quotes"), py::arg("config") = CalibrationConfig{}, py::arg("q") = QuadratureConfig{},
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "calibrate_global",
        [](const std::vector<MarketQuote>& quotes, CalibrationConfig cfg, const QuadratureConfig& q) {
            cfg.method = CalibrationMethod::Global;
            return calibrate_global(quotes, cfg, q);
        },
        py::arg("quotes"), py::arg("config"), py::arg("q") = QuadratureConfig{},
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "builtin_dataset", [](const std::string& name) { return builtin_dataset(dataset_or_throw(name)); },
        py::arg("name"));
    m.def(
        "parse_quotes", [](const std::string& text) { return parse_quotes(std::string_view(text)); },
        py::arg("text"));
    m.def(
        "serialize_quotes", [](const std::vector<MarketQuote>& quotes) { return serialize_quotes(quotes); },
        py::arg("quotes"));
}
