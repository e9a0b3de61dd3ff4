#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corner/pclean.hpp"

namespace py = pybind11;
using namespace corner;

PYBIND11_MODULE(_corner, m) {
  m.doc() = "exact corner calculus: charts, blow-ups, generalized products";

  py::class_<OrthantChart>(m, "OrthantChart")
      .def_readonly("b", &OrthantChart::b)
      .def_readonly("m", &OrthantChart::m)
      .def_property_readonly("labels",
                             [](const OrthantChart& c) { return c.labels; })
      .def("dim", &OrthantChart::dim);

  m.def("make_chart",
        [](int b, int mm, std::vector<HypLabel> labels) {
          return make_chart(b, mm, labels);
        },
        py::arg("b"), py::arg("m"), py::arg("labels"));

  m.def("diagonal_family_size", [](int k, int kappa, bool scl) {
    return diagonal_family(k, kappa, scl).elements.size();
  });
}
