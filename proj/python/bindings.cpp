#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fslib/core.hpp"
#include "fslib/dataset_io.hpp"
#include "fslib/errors.hpp"
#include "fslib/registry.hpp"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<long long, py::array::c_style | py::array::forcecast>;

fslib::DataMatrix to_matrix(const DoubleArray& data) {
  if (data.ndim() != 2) throw fslib::ArgumentError("data must be a 2-D array");
  const auto rows = static_cast<Eigen::Index>(data.shape(0));
  const auto cols = static_cast<Eigen::Index>(data.shape(1));
  fslib::Matrix m(rows, cols);
  const auto view = data.unchecked<2>();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = view(i, j);
  return fslib::DataMatrix(std::move(m));
}

// Class ids are renumbered by first appearance, as the csv loader does.
fslib::LabelVector to_labels(const IntArray& labels) {
  if (labels.ndim() != 1) throw fslib::ArgumentError("labels must be a 1-D array");
  const auto view = labels.unchecked<1>();
  std::map<long long, int> ids;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(view.shape(0)));
  for (py::ssize_t i = 0; i < view.shape(0); ++i) {
    const auto [it, inserted] = ids.emplace(view(i), static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return fslib::LabelVector(std::move(out));
}

fslib::ParamMap to_params(const py::dict& params) {
  fslib::ParamMap out;
  for (const auto& [k, v] : params) {
    const auto key = py::str(k).cast<std::string>();
    if (py::isinstance<py::bool_>(v)) out[key] = v.cast<bool>() ? "true" : "false";
    else out[key] = py::str(v).cast<std::string>();
  }
  return out;
}

fslib::FeatureRanking rank(const DoubleArray& data, const std::optional<IntArray>& labels, const std::string& method,
                           const py::dict& params, std::int64_t seed) {
  fslib::describe_method(method);
  const auto matrix = to_matrix(data);
  std::optional<fslib::LabelVector> lv;
  if (labels) lv = to_labels(*labels);
  const auto pm = to_params(params);
  py::gil_scoped_release release;
  return fslib::run_method(method, matrix, lv ? &*lv : nullptr, pm, seed);
}

}  // namespace

PYBIND11_MODULE(_fslib, m) {
  m.doc() = "Feature ranking and selection";

  auto base = py::register_exception<fslib::Error>(m, "FslibError", PyExc_RuntimeError);
  py::register_exception<fslib::ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<fslib::DataError>(m, "DataError", base.ptr());
  py::register_exception<fslib::NumericalError>(m, "NumericalError", base.ptr());

  py::class_<fslib::FeatureRanking>(m, "BoundRanking")
      .def_property_readonly("order", [](const fslib::FeatureRanking& r) { return r.order; })
      .def_property_readonly("scores", [](const fslib::FeatureRanking& r) { return r.scores.values; })
      .def_property_readonly("method", [](const fslib::FeatureRanking& r) { return r.method.name; })
      .def_property_readonly("params", [](const fslib::FeatureRanking& r) { return r.method.params; })
      .def_property_readonly("fs_type",
                             [](const fslib::FeatureRanking& r) { return std::string(1, fslib::fs_type_code(r.method.fs_type)); })
      .def_property_readonly(
          "fs_class", [](const fslib::FeatureRanking& r) { return std::string(1, fslib::fs_class_code(r.method.fs_class)); })
      .def_property_readonly("direction",
                             [](const fslib::FeatureRanking& r) { return fslib::direction_name(r.scores.direction); })
      .def_property_readonly("seed", [](const fslib::FeatureRanking& r) { return r.seed; })
      .def("to_json", [](const fslib::FeatureRanking& r) { return fslib::io::ranking_to_json(r); },
           "The ranking document, byte-identical to the CLI output")
      .def("__repr__", [](const fslib::FeatureRanking& r) {
        return "<BoundRanking method=" + r.method.name + " n=" + std::to_string(r.order.size()) + ">";
      });

  m.def("rank", &rank, py::arg("data"), py::arg("labels") = py::none(), py::arg("method") = "fisher",
        py::arg("params") = py::dict(), py::arg("seed") = 0,
        "Rank the columns of a samples-by-features array with a built-in method.");

  m.def(
      "select_top",
      [](const fslib::FeatureRanking& r, std::size_t m) { return fslib::select_top(r, m).indices; },
      py::arg("ranking"), py::arg("m"), "Sorted indices of the first m ranked features.");
  m.def(
      "select_top",
      [](const std::vector<std::size_t>& order, long long m) {
        if (m < 1) throw fslib::ArgumentError("top-m size must be >= 1");
        fslib::FeatureRanking r;
        r.order = order;
        return fslib::select_top(r, static_cast<std::size_t>(m)).indices;
      },
      py::arg("order"), py::arg("m"));

  m.def("list_methods", [] {
    py::list out;
    for (const auto& d : fslib::list_methods()) {
      py::dict entry;
      entry["name"] = d.name;
      entry["fs_type"] = std::string(1, fslib::fs_type_code(d.fs_type));
      entry["fs_class"] = std::string(1, fslib::fs_class_code(d.fs_class));
      entry["complexity"] = d.complexity;
      entry["params"] = fslib::method_param_keys(d.name);
      out.append(entry);
    }
    return out;
  });
}
