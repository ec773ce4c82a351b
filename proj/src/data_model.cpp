#include "mvcs/data_model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "mvcs/error.hpp"
#include "mvcs/json_io.hpp"

namespace fs = std::filesystem;

namespace mvcs {

void ScoreConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(tau > 0.0) || !std::isfinite(tau)) fail("tau must be a positive finite number");
  if (k < 1) fail("k must be at least 1");
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0))
    fail("alpha, beta and gamma must be non-negative");
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-12) fail("alpha + beta + gamma must equal 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) fail("eta must be a positive finite number");
  if (grid_points < 64) fail("grid_points must be at least 64");
  if (!(bisect_rel_tol > 0.0) || !(bisect_rel_tol < 1.0))
    fail("bisect_rel_tol must lie in (0, 1)");
}

nlohmann::json to_json(const ScoreConfig& config) {
  return {
      {"tau", config.tau},
      {"k", config.k},
      {"alpha", config.alpha},
      {"beta", config.beta},
      {"gamma", config.gamma},
      {"eta", config.eta},
      {"grid_points", config.grid_points},
      {"bisect_rel_tol", config.bisect_rel_tol},
      {"seed", config.seed},
  };
}

void check_finite(const Matrix& view, const std::string& view_name) {
  for (Eigen::Index r = 0; r < view.rows(); ++r) {
    for (Eigen::Index c = 0; c < view.cols(); ++c) {
      if (!std::isfinite(view(r, c))) {
        throw Error(ErrorCode::NonFiniteValue, "view '" + view_name + "' row " + std::to_string(r) +
                                                   " col " + std::to_string(c));
      }
    }
  }
}

MultiViewDataset::MultiViewDataset(std::vector<Matrix> views, std::vector<std::string> view_names,
                                   std::optional<std::vector<int>> labels)
    : views_(std::move(views)), names_(std::move(view_names)), labels_(std::move(labels)) {
  if (views_.empty()) throw Error(ErrorCode::EmptyDataset, "a dataset needs at least one view");
  if (names_.size() != views_.size()) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(views_.size()) + " views but " +
                                              std::to_string(names_.size()) + " view names");
  }
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second)
      throw Error(ErrorCode::MalformedManifest, "duplicate view name '" + name + "'");
  }

  const Eigen::Index n = views_.front().rows();
  for (std::size_t v = 0; v < views_.size(); ++v) {
    if (views_[v].rows() != n) {
      throw Error(ErrorCode::RowCountMismatch,
                  "view '" + names_[v] + "' has " + std::to_string(views_[v].rows()) +
                      " rows, view '" + names_[0] + "' has " + std::to_string(n));
    }
    if (views_[v].cols() < 1)
      throw Error(ErrorCode::MalformedData, "view '" + names_[v] + "' has no columns");
    check_finite(views_[v], names_[v]);
  }
  if (n < 2) throw Error(ErrorCode::MalformedData, "a dataset needs at least 2 instances");

  if (labels_) {
    if (static_cast<Eigen::Index>(labels_->size()) != n) {
      throw Error(ErrorCode::InvalidLabels, std::to_string(labels_->size()) + " labels for " +
                                                std::to_string(n) + " instances");
    }
    std::map<int, std::size_t> counts;
    for (int label : *labels_) ++counts[label];
    for (const auto& [label, count] : counts) {
      if (count < 2) {
        throw Error(ErrorCode::InvalidLabels,
                    "class " + std::to_string(label) + " has a single member");
      }
    }
  }
}

MultiViewDataset MultiViewDataset::select_views(std::span<const std::size_t> keep) const {
  std::vector<Matrix> views;
  std::vector<std::string> names;
  for (std::size_t v : keep) {
    views.push_back(view(v));
    names.push_back(names_.at(v));
  }
  return MultiViewDataset(std::move(views), std::move(names), labels_);
}

MultiViewDataset MultiViewDataset::without_view(std::size_t v) const {
  if (v >= views_.size()) throw Error(ErrorCode::InvalidArgument, "view index out of range");
  std::vector<std::size_t> keep;
  for (std::size_t u = 0; u < views_.size(); ++u)
    if (u != v) keep.push_back(u);
  return select_views(keep);
}

MultiViewDataset MultiViewDataset::with_view(std::size_t v, Matrix replacement) const {
  if (v >= views_.size()) throw Error(ErrorCode::InvalidArgument, "view index out of range");
  std::vector<Matrix> views = views_;
  views[v] = std::move(replacement);
  return MultiViewDataset(std::move(views), names_, labels_);
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

Matrix read_csv_matrix(const fs::path& path) {
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::MalformedData, path.string() + ": empty file");

  std::vector<double> values;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::size_t row_cols = 0;
    std::string_view rest = lines[r];
    while (true) {
      const std::size_t comma = rest.find(',');
      std::string_view cell = trim(rest.substr(0, comma));
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::MalformedData, path.string() + ": row " + std::to_string(r) +
                                                  " col " + std::to_string(row_cols) +
                                                  " is not a number");
      }
      values.push_back(value);
      ++row_cols;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (r == 0) {
      cols = row_cols;
    } else if (row_cols != cols) {
      throw Error(ErrorCode::MalformedData, path.string() + ": row " + std::to_string(r) +
                                                " has " + std::to_string(row_cols) +
                                                " columns, expected " + std::to_string(cols));
    }
  }

  Matrix matrix(static_cast<Eigen::Index>(lines.size()), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      matrix(r, c) = values[static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(c)];
  return matrix;
}

void write_csv_matrix(const fs::path& path, const Matrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(matrix(r, c));
    }
    out << '\n';
  }
}

std::vector<int> read_labels(const fs::path& path) {
  const std::string text = read_file(path);
  std::vector<int> labels;
  const auto lines = split_lines(text);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const std::string_view cell = trim(lines[r]);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw Error(ErrorCode::InvalidLabels,
                  path.string() + ": line " + std::to_string(r + 1) + " is not an integer");
    }
    labels.push_back(value);
  }
  return labels;
}

void write_labels(const fs::path& path, std::span<const int> labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
  for (int label : labels) out << label << '\n';
}

MultiViewDataset load_dataset(const fs::path& manifest_path) {
  const std::string text = read_file(manifest_path);
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedManifest, manifest_path.string() + ": " + e.what());
  }

  auto malformed = [&](const std::string& what) {
    throw Error(ErrorCode::MalformedManifest, manifest_path.string() + ": " + what);
  };
  if (!manifest.is_object()) malformed("top level must be an object");
  if (!manifest.contains("views") || !manifest["views"].is_array() || manifest["views"].empty())
    malformed("\"views\" must be a non-empty array");

  const fs::path base = manifest_path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
  };

  std::vector<Matrix> views;
  std::vector<std::string> names;
  for (const auto& entry : manifest["views"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
        !entry.contains("path") || !entry["path"].is_string()) {
      malformed("each view needs string \"name\" and \"path\" fields");
    }
    names.push_back(entry["name"].get<std::string>());
    const fs::path view_path = resolve(entry["path"].get<std::string>());
    Matrix view = read_csv_matrix(view_path);
    check_finite(view, names.back());
    views.push_back(std::move(view));
  }

  std::optional<std::vector<int>> labels;
  if (manifest.contains("labels") && !manifest["labels"].is_null()) {
    if (!manifest["labels"].is_string()) malformed("\"labels\" must be a path string");
    labels = read_labels(resolve(manifest["labels"].get<std::string>()));
  }
  return MultiViewDataset(std::move(views), std::move(names), std::move(labels));
}

fs::path save_dataset(const MultiViewDataset& dataset, const fs::path& out_dir,
                      const nlohmann::json& provenance) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::MissingFile, "cannot create " + out_dir.string());

  nlohmann::json manifest;
  manifest["views"] = nlohmann::json::array();
  for (std::size_t v = 0; v < dataset.num_views(); ++v) {
    const std::string file = "view" + std::to_string(v + 1) + ".csv";
    write_csv_matrix(out_dir / file, dataset.view(v));
    manifest["views"].push_back({{"name", dataset.view_names()[v]}, {"path", file}});
  }
  if (dataset.has_labels()) {
    write_labels(out_dir / "labels.csv", *dataset.labels());
    manifest["labels"] = "labels.csv";
  }
  if (!provenance.is_null()) manifest["provenance"] = provenance;

  const fs::path manifest_path = out_dir / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + manifest_path.string());
  write_json(out, manifest);
  return manifest_path;
}

Matrix standardize(const Matrix& view) {
  const double n = static_cast<double>(view.rows());
  Matrix out(view.rows(), view.cols());
  for (Eigen::Index c = 0; c < view.cols(); ++c) {
    const auto column = view.col(c);
    const double mean = column.sum() / n;
    const double variance = (column.array() - mean).square().sum() / n;
    const double stddev = std::sqrt(variance);
    if (stddev > 0.0) {
      out.col(c) = (column.array() - mean) / stddev;
    } else {
      out.col(c).setZero();
    }
  }
  return out;
}

Matrix concatenate_views(std::span<const Matrix> views) {
  if (views.empty()) throw Error(ErrorCode::EmptyDataset, "nothing to concatenate");
  const Eigen::Index n = views.front().rows();
  Eigen::Index cols = 0;
  for (const auto& view : views) {
    if (view.rows() != n) throw Error(ErrorCode::RowCountMismatch, "views disagree on N");
    cols += view.cols();
  }
  Matrix out(n, cols);
  Eigen::Index offset = 0;
  for (const auto& view : views) {
    out.middleCols(offset, view.cols()) = view;
    offset += view.cols();
  }
  return out;
}

Matrix concatenate_views(const MultiViewDataset& dataset) {
  return concatenate_views(std::span<const Matrix>(dataset.views()));
}

std::vector<Matrix> standardized_views(const MultiViewDataset& dataset) {
  std::vector<Matrix> out;
  out.reserve(dataset.num_views());
  for (const auto& view : dataset.views()) out.push_back(standardize(view));
  return out;
}

}  // namespace mvcs
