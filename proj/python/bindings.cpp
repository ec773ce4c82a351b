#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mvcs/baselines.hpp"
#include "mvcs/corruption.hpp"
#include "mvcs/data_model.hpp"
#include "mvcs/density.hpp"
#include "mvcs/detection.hpp"
#include "mvcs/error.hpp"
#include "mvcs/neighborhood.hpp"
#include "mvcs/projection.hpp"
#include "mvcs/scoring.hpp"

namespace py = pybind11;
using namespace mvcs;

namespace {

// JSON results cross the boundary as plain dicts and lists.
py::object to_python(const nlohmann::json& value) {
  return py::module_::import("json").attr("loads")(value.dump());
}

MultiViewDataset make_dataset(std::vector<Matrix> views, std::optional<std::vector<std::string>> names,
                              std::optional<std::vector<int>> labels) {
  if (!names) {
    names.emplace();
    for (std::size_t v = 0; v < views.size(); ++v) names->push_back("view" + std::to_string(v + 1));
  }
  return MultiViewDataset(std::move(views), std::move(*names), std::move(labels));
}

std::vector<std::size_t> flat_rows(const NeighborTable& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.num_instances(); ++i) {
    const auto row = t.row(i);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-view clusterability scoring core";

  // Owned by the module for the interpreter's lifetime; `code` carries the
  // ErrorCode name.
  static PyObject* error_type =
      PyErr_NewException("mvcs._core.MvcsError", PyExc_RuntimeError, nullptr);
  m.attr("MvcsError") = py::reinterpret_borrow<py::object>(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type)(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, instance.ptr());
    }
  });

  py::class_<ScoreConfig>(m, "ScoreConfig")
      .def(py::init<>())
      .def_readwrite("tau", &ScoreConfig::tau)
      .def_readwrite("k", &ScoreConfig::k)
      .def_readwrite("alpha", &ScoreConfig::alpha)
      .def_readwrite("beta", &ScoreConfig::beta)
      .def_readwrite("gamma", &ScoreConfig::gamma)
      .def_readwrite("eta", &ScoreConfig::eta)
      .def_readwrite("grid_points", &ScoreConfig::grid_points)
      .def_readwrite("bisect_rel_tol", &ScoreConfig::bisect_rel_tol)
      .def_readwrite("seed", &ScoreConfig::seed)
      .def("validate", &ScoreConfig::validate)
      .def("to_dict", [](const ScoreConfig& c) { return to_python(to_json(c)); });

  py::class_<MultiViewDataset>(m, "MultiViewDataset")
      .def(py::init(&make_dataset), py::arg("views"), py::arg("names") = py::none(),
           py::arg("labels") = py::none())
      .def_property_readonly("num_views", &MultiViewDataset::num_views)
      .def_property_readonly("num_instances", &MultiViewDataset::num_instances)
      .def_property_readonly("view_names", &MultiViewDataset::view_names)
      .def_property_readonly("labels", &MultiViewDataset::labels)
      .def("view", &MultiViewDataset::view, py::arg("index"))
      .def("without_view", &MultiViewDataset::without_view, py::arg("index"));

  m.def("load_dataset", &load_dataset, py::arg("manifest"));
  m.def(
      "save_dataset",
      [](const MultiViewDataset& ds, const std::filesystem::path& out_dir) {
        return save_dataset(ds, out_dir, nlohmann::json::object());
      },
      py::arg("dataset"), py::arg("out_dir"));
  m.def("standardize", &standardize, py::arg("matrix"));

  m.def(
      "kde_eval",
      [](const std::vector<double>& samples, double bandwidth, const std::vector<double>& query) {
        return kde_eval(samples, bandwidth, query);
      },
      py::arg("samples"), py::arg("bandwidth"), py::arg("query"));
  m.def(
      "mode_count",
      [](const std::vector<double>& samples, double bandwidth, std::size_t grid_points) {
        return mode_count(samples, bandwidth, grid_points);
      },
      py::arg("samples"), py::arg("bandwidth"), py::arg("grid_points") = 1024);
  m.def(
      "critical_bandwidth",
      [](const std::vector<double>& samples, const ScoreConfig& config) {
        return critical_bandwidth(samples, config).value;
      },
      py::arg("samples"), py::arg("config") = ScoreConfig{});
  m.def(
      "principal_projection",
      [](const Matrix& x) {
        const Projection1D p = principal_projection(x);
        return py::make_tuple(p.values, p.sigma);
      },
      py::arg("matrix"));

  m.def(
      "knn",
      [](const Matrix& view, std::size_t k) {
        const NeighborTable t = knn_per_view(view, k);
        const auto flat = flat_rows(t);
        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(
            static_cast<Eigen::Index>(t.num_instances()), static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < flat.size(); ++i) out.data()[i] = static_cast<std::int64_t>(flat[i]);
        return out;
      },
      py::arg("view"), py::arg("k"));
  m.def(
      "neighborhood_consistency",
      [](const MultiViewDataset& ds, const ScoreConfig& config) {
        return neighborhood_consistency(ds, config).overall;
      },
      py::arg("dataset"), py::arg("config") = ScoreConfig{});

  m.def(
      "score",
      [](const MultiViewDataset& ds, const ScoreConfig& config) {
        return to_python(to_json(score_dataset(ds, config)));
      },
      py::arg("dataset"), py::arg("config") = ScoreConfig{});
  m.def(
      "detect",
      [](const MultiViewDataset& ds, const ScoreConfig& config) {
        return to_python(to_json(detect_noisy_view(ds, config)));
      },
      py::arg("dataset"), py::arg("config") = ScoreConfig{});
  m.def(
      "profile",
      [](const MultiViewDataset& ds, const ScoreConfig& config) {
        return to_python(to_json(perturbation_profile(ds, config, config.seed)));
      },
      py::arg("dataset"), py::arg("config") = ScoreConfig{});
  m.def(
      "hopkins",
      [](const Matrix& x, std::size_t m, std::uint64_t seed) { return hopkins(x, m, seed).value; },
      py::arg("matrix"), py::arg("m"), py::arg("seed") = 0);

  m.def("corrupt_permutation", &corrupt_permutation, py::arg("view"), py::arg("seed") = 0);
  m.def(
      "corrupt_conflict",
      [](const Matrix& view, const std::vector<int>& labels, std::uint64_t seed) {
        return corrupt_conflict(view, labels, seed);
      },
      py::arg("view"), py::arg("labels"), py::arg("seed") = 0);
  m.def(
      "corrupt",
      [](const MultiViewDataset& ds, std::vector<std::size_t> views, const std::string& mode,
         std::uint64_t seed) {
        return apply_corruption(ds, {std::move(views), parse_noise_mode(mode), seed});
      },
      py::arg("dataset"), py::arg("views"), py::arg("mode"), py::arg("seed") = 0,
      "Corrupt the given 0-based views with 'per' or 'con' noise.");
  m.def(
      "generate_synthetic",
      [](std::size_t n, std::size_t views, std::size_t clusters, std::vector<std::size_t> dims,
         double separation, std::uint64_t seed) {
        return generate_synthetic({n, views, clusters, std::move(dims), separation, seed});
      },
      py::arg("n") = 400, py::arg("views") = 3, py::arg("clusters") = 4,
      py::arg("dims") = std::vector<std::size_t>{8}, py::arg("separation") = 10.0,
      py::arg("seed") = 0);
}
