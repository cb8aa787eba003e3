#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmodkit/bernstein.hpp"
#include "dmodkit/filtration.hpp"
#include "dmodkit/jobs.hpp"

namespace py = pybind11;

namespace {

dmodkit::Rational rational(const std::string& text) {
  dmodkit::Rational q(text);
  q.canonicalize();
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Weyl algebra, D-module and Frobenius splitting computations";
  m.attr("__version__") = dmodkit::kToolVersion;

  py::register_exception<dmodkit::UsageError>(m, "UsageError", PyExc_ValueError);

  // job JSON text in, (status, report JSON text) out
  m.def(
      "run_job_text",
      [](const std::string& job) {
        auto res = dmodkit::run_job(dmodkit::Json::parse(job));
        return py::make_tuple(res.status, res.report.dump());
      },
      py::arg("job"));

  m.def(
      "bf_dims",
      [](std::size_t n, std::vector<std::uint32_t> weights, const std::string& slope, std::size_t imax) {
        if (weights.empty()) weights.assign(n, 1);
        return dmodkit::bf_dims(dmodkit::WeightedRingSpec(n, weights, rational(slope)), imax);
      },
      py::arg("n"), py::arg("weights") = std::vector<std::uint32_t>{}, py::arg("slope") = "2", py::arg("imax"));

  m.def(
      "length_bound",
      [](const std::string& e_module, const std::string& e_algebra, std::uint64_t c, const std::string& theta) {
        return dmodkit::length_bound(rational(e_module), rational(e_algebra), c, rational(theta)).get_str();
      },
      py::arg("e_module"), py::arg("e_algebra"), py::arg("c"), py::arg("theta"));
}
