#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "spectra/cli.hpp"
#include "spectra/dyson.hpp"
#include "spectra/error.hpp"
#include "spectra/experiments.hpp"
#include "spectra/fock.hpp"
#include "spectra/ncpoly.hpp"
#include "spectra/pencil.hpp"
#include "spectra/polynomial_parser.hpp"
#include "spectra/sampling.hpp"
#include "spectra/serialize.hpp"

namespace py = pybind11;
using namespace spectra;

namespace {

SeedSpec seed_of(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) { return {seed, trial, stream}; }

// Artifacts cross the boundary as JSON text; the Python side decodes them.
std::string run_config_json(const std::string& config) {
  auto artifact = cli::execute(cli::config_from_json(cli::Json::parse(config)));
  artifact.config.format = "json";
  return cli::render(artifact);
}

}  // namespace

PYBIND11_MODULE(_spectra, m) {
  m.doc() = "Random matrix and free probability experiments";
  m.attr("__version__") = cli::version();

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);

  m.def(
      "sample_sgrm",
      [](Index n, double sigma2, std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
        return sample_sgrm(n, sigma2, seed_of(seed, trial, stream)).entries;
      },
      py::arg("n"), py::arg("sigma2"), py::arg("seed"), py::arg("trial") = 0, py::arg("stream") = 0);
  m.def(
      "sample_grm",
      [](Index n, double sigma2, std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
        return sample_grm(n, sigma2, seed_of(seed, trial, stream)).entries;
      },
      py::arg("n"), py::arg("sigma2"), py::arg("seed"), py::arg("trial") = 0, py::arg("stream") = 0);
  m.def(
      "pseudo_haar_unitary",
      [](Index n, std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
        return pseudo_haar_unitary(n, seed_of(seed, trial, stream));
      },
      py::arg("n"), py::arg("seed"), py::arg("trial") = 0, py::arg("stream") = 0);
  m.def(
      "haar_unitary_qr",
      [](Index n, std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
        return haar_unitary_qr(n, seed_of(seed, trial, stream));
      },
      py::arg("n"), py::arg("seed"), py::arg("trial") = 0, py::arg("stream") = 0);

  py::class_<Pencil>(m, "Pencil")
      .def(py::init<std::vector<Matrix>>(), py::arg("coefficients"))
      .def_static("semicircle", &Pencil::semicircle, py::arg("m") = 1, py::arg("r") = 1)
      .def_property_readonly("m", &Pencil::m)
      .def_property_readonly("r", &Pencil::r)
      .def_property_readonly("coefficients", &Pencil::coefficients)
      .def("evaluate", [](const Pencil& p, const std::vector<Matrix>& xs) { return pencil_evaluate(p, xs); });

  m.def(
      "solve_mde",
      [](const Pencil& p, const Matrix& lambda, double tol, double damping, long max_iterations) {
        const auto s = solve_mde(p, lambda, MdeOptions{tol, damping, max_iterations});
        return py::make_tuple(s.G, s.residual, s.iterations);
      },
      py::arg("pencil"), py::arg("lam"), py::arg("tol") = 1e-12, py::arg("damping") = 0.5,
      py::arg("max_iterations") = 50000, "Returns (G, residual, iterations).");
  m.def(
      "stieltjes", [](const Pencil& p, Complex z) { return scalar_stieltjes(p, z); }, py::arg("pencil"), py::arg("z"));
  m.def(
      "spectral_density",
      [](const Pencil& p, const std::vector<double>& grid, double eta, bool richardson) {
        DensityOptions o;
        o.richardson = richardson;
        const auto d = spectral_density(p, grid, eta, o);
        return py::make_tuple(d.rho, d.residual);
      },
      py::arg("pencil"), py::arg("grid"), py::arg("eta") = 1e-3, py::arg("richardson") = true,
      "Returns (rho, residual) on the grid.");
  m.def(
      "support",
      [](const Pencil& p, double eps) {
        std::vector<std::pair<double, double>> out;
        for (const auto& iv : support(p, eps)) out.emplace_back(iv.lo, iv.hi);
        return out;
      },
      py::arg("pencil"), py::arg("eps") = 1e-6);
  m.def(
      "pencil_norm", [](const Pencil& p, double eps) { return pencil_norm(p, eps); }, py::arg("pencil"),
      py::arg("eps") = 1e-6);

  m.def(
      "evaluate_polynomial",
      [](const std::string& text, const std::vector<Matrix>& xs) {
        return evaluate(parse_polynomial(text, static_cast<int>(xs.size())), xs);
      },
      py::arg("polynomial"), py::arg("matrices"));
  m.def(
      "fock_moment",
      [](const std::string& text, int depth) {
        const NCPolynomial p = parse_polynomial(text);
        return fock::polynomial_moment(p, fock::make_basis(std::max(p.num_vars(), 1), depth));
      },
      py::arg("polynomial"), py::arg("depth"));
  m.def(
      "fock_semicircular_norm",
      [](int r, int depth, int index) {
        return fock::fock_norm(fock::semicircular_op(fock::make_basis(r, depth), index)).value;
      },
      py::arg("r"), py::arg("depth"), py::arg("index") = 1);
  m.def(
      "free_polynomial_norm",
      [](const std::string& text, int depth) {
        const auto fn = experiments::free_polynomial_norm(parse_polynomial(text), depth);
        return py::make_tuple(fn.value, fn.method);
      },
      py::arg("polynomial"), py::arg("depth") = 0, "Returns (norm, method).");

  m.def("experiment_names", &cli::experiment_names);
  m.def("_run_config_json", &run_config_json, py::arg("config"));
}
