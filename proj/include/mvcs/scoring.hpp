#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvcs/data_model.hpp"
#include "mvcs/neighborhood.hpp"

namespace mvcs {

// Critical-bandwidth score of one 1-D projection:
// s = 1 - exp(-h_crit / (tau * sigma)), and 0 when sigma or h_crit is 0.
struct BandwidthScore {
  double score = 0.0;
  double hcrit = 0.0;
  double sigma = 0.0;
};

BandwidthScore bandwidth_score(std::span<const double> projection, double sigma,
                               const ScoreConfig& config);

// Projects an already standardized view and scores it.
BandwidthScore per_view_score(const Matrix& standardized_view, const ScoreConfig& config);

// S_pv: mean of the per-view scores of the (raw) dataset's views.
double per_view_component(const MultiViewDataset& dataset, const ScoreConfig& config);

// S_joint: score of the projection of the concatenated standardized views.
BandwidthScore joint_component(const MultiViewDataset& dataset, const ScoreConfig& config);

struct Composition {
  double s_raw = 0.0;
  double s_final = 0.0;
  // Weights actually applied (renormalized when s_nbr is absent).
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// S_raw = alpha S_pv + beta S_joint + gamma S_nbr, S = 1 - exp(-S_raw / eta).
// Without s_nbr the weights become alpha/(alpha+beta), beta/(alpha+beta), 0.
Composition compose_score(double s_pv, double s_joint, std::optional<double> s_nbr,
                          const ScoreConfig& config);

struct ClusterabilityReport {
  std::vector<std::string> view_names;
  std::vector<double> per_view_scores;
  std::vector<double> per_view_hcrit;
  std::vector<double> per_view_sigma;
  double s_pv = 0.0;
  double s_joint = 0.0;
  double joint_hcrit = 0.0;
  double joint_sigma = 0.0;
  std::optional<double> s_nbr;  // absent for single-view datasets
  double s_raw = 0.0;
  double s_final = 0.0;
  Composition weights;
  ScoreConfig config;
};

// Full pipeline on a raw dataset: standardize, score each view, score the
// concatenation, neighbourhood consistency (V >= 2), compose.
ClusterabilityReport score_dataset(const MultiViewDataset& dataset, const ScoreConfig& config);

// Everything about a view that does not depend on the other views. Used to
// score many view subsets of one dataset without recomputing per-view work;
// results equal score_dataset on the corresponding sub-dataset.
struct PreparedView {
  std::string name;
  Matrix standardized;
  BandwidthScore score;
  std::optional<NeighborTable> neighbors;
};

std::vector<PreparedView> prepare_views(const MultiViewDataset& dataset, const ScoreConfig& config,
                                        bool with_neighbors);

ClusterabilityReport score_prepared(std::span<const PreparedView* const> views,
                                    const ScoreConfig& config);

nlohmann::json to_json(const ClusterabilityReport& report);

}  // namespace mvcs
