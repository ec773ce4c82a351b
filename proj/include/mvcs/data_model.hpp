#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace mvcs {

// One view: N rows (instances) by d_v columns (features).
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Free parameters of the clusterability score. Defaults live here and are
// echoed into every report.
struct ScoreConfig {
  double tau = 1.0;             // per-view score sensitivity
  std::size_t k = 10;           // neighbors per instance
  double alpha = 0.2;           // weight of the per-view component
  double beta = 0.2;            // weight of the joint-space component
  double gamma = 0.6;           // weight of the neighborhood component
  double eta = 0.5;             // calibration scale
  std::size_t grid_points = 1024;
  double bisect_rel_tol = 1e-3;
  std::uint64_t seed = 0;

  // Throws Error(InvalidConfig) when a field is out of range.
  void validate() const;
};

nlohmann::json to_json(const ScoreConfig& config);

// Throws Error(NonFiniteValue) naming the view, row and column of the first
// non-finite entry.
void check_finite(const Matrix& view, const std::string& view_name);

// Row-aligned views over the same N instances, with optional class labels.
// Immutable once constructed; the constructor enforces every invariant.
class MultiViewDataset {
 public:
  MultiViewDataset(std::vector<Matrix> views, std::vector<std::string> view_names,
                   std::optional<std::vector<int>> labels = std::nullopt);

  std::size_t num_views() const { return views_.size(); }
  std::size_t num_instances() const { return static_cast<std::size_t>(views_.front().rows()); }

  const Matrix& view(std::size_t v) const { return views_.at(v); }
  const std::vector<Matrix>& views() const { return views_; }
  const std::vector<std::string>& view_names() const { return names_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }
  bool has_labels() const { return labels_.has_value(); }

  // Keeps the listed views, in the listed order.
  MultiViewDataset select_views(std::span<const std::size_t> keep) const;
  MultiViewDataset without_view(std::size_t v) const;
  MultiViewDataset with_view(std::size_t v, Matrix replacement) const;

 private:
  std::vector<Matrix> views_;
  std::vector<std::string> names_;
  std::optional<std::vector<int>> labels_;
};

// Headerless comma-separated matrix, one instance per line.
Matrix read_csv_matrix(const std::filesystem::path& path);
void write_csv_matrix(const std::filesystem::path& path, const Matrix& matrix);

std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, std::span<const int> labels);

// Manifest: {"views": [{"name", "path"}...], "labels": optional path}.
// Relative paths resolve against the manifest's directory.
MultiViewDataset load_dataset(const std::filesystem::path& manifest_path);

// Writes <dir>/manifest.json plus one CSV per view (and labels.csv when
// present). Values are printed with 17 significant digits, so a reload is
// bit-identical. A non-null provenance object is stored under "provenance".
std::filesystem::path save_dataset(const MultiViewDataset& dataset,
                                   const std::filesystem::path& out_dir,
                                   const nlohmann::json& provenance = nullptr);

// Column-wise z-scores with the population standard deviation. Columns with
// zero variance become all zeros.
Matrix standardize(const Matrix& view);

// Z_i = [x_i^(1); ...; x_i^(V)] with column blocks in view order. Views are
// used as given; standardize them first.
Matrix concatenate_views(std::span<const Matrix> views);
Matrix concatenate_views(const MultiViewDataset& dataset);

// Standardizes every view of the dataset.
std::vector<Matrix> standardized_views(const MultiViewDataset& dataset);

}  // namespace mvcs
