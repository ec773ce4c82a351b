#include "mvcs/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "mvcs/density.hpp"
#include "mvcs/error.hpp"
#include "mvcs/parallel.hpp"
#include "mvcs/projection.hpp"

namespace mvcs {

namespace {

// Sum taken in sorted order so the mean does not depend on view order.
double order_free_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double x : values) total += x;
  return total / static_cast<double>(values.size());
}

BandwidthScore score_matrix(const Matrix& standardized, const ScoreConfig& config) {
  const Projection1D projection = principal_projection(standardized);
  return bandwidth_score(projection.values, projection.sigma, config);
}

}  // namespace

BandwidthScore bandwidth_score(std::span<const double> projection, double sigma,
                               const ScoreConfig& config) {
  BandwidthScore out;
  out.sigma = sigma;
  if (sigma == 0.0) return out;
  out.hcrit = critical_bandwidth(projection, config).value;
  if (out.hcrit == 0.0) return out;
  out.score = -std::expm1(-out.hcrit / (config.tau * sigma));
  return out;
}

BandwidthScore per_view_score(const Matrix& standardized_view, const ScoreConfig& config) {
  config.validate();
  return score_matrix(standardized_view, config);
}

double per_view_component(const MultiViewDataset& dataset, const ScoreConfig& config) {
  config.validate();
  std::vector<double> scores(dataset.num_views());
  parallel_for(dataset.num_views(), [&](std::size_t v) {
    scores[v] = score_matrix(standardize(dataset.view(v)), config).score;
  });
  return order_free_mean(std::move(scores));
}

BandwidthScore joint_component(const MultiViewDataset& dataset, const ScoreConfig& config) {
  config.validate();
  const std::vector<Matrix> standardized = standardized_views(dataset);
  return score_matrix(concatenate_views(standardized), config);
}

Composition compose_score(double s_pv, double s_joint, std::optional<double> s_nbr,
                          const ScoreConfig& config) {
  Composition out;
  if (s_nbr) {
    out.alpha = config.alpha;
    out.beta = config.beta;
    out.gamma = config.gamma;
    out.s_raw = config.alpha * s_pv + config.beta * s_joint + config.gamma * *s_nbr;
  } else {
    const double mass = config.alpha + config.beta;
    if (mass > 0.0) {
      out.alpha = config.alpha / mass;
      out.beta = config.beta / mass;
    }
    out.s_raw = out.alpha * s_pv + out.beta * s_joint;
  }
  out.s_final = -std::expm1(-out.s_raw / config.eta);
  return out;
}

std::vector<PreparedView> prepare_views(const MultiViewDataset& dataset, const ScoreConfig& config,
                                        bool with_neighbors) {
  config.validate();
  std::vector<PreparedView> prepared(dataset.num_views());
  parallel_for(dataset.num_views(), [&](std::size_t v) {
    PreparedView& p = prepared[v];
    p.name = dataset.view_names()[v];
    p.standardized = standardize(dataset.view(v));
    p.score = score_matrix(p.standardized, config);
    if (with_neighbors) p.neighbors = knn_per_view(p.standardized, config.k, v);
  });
  return prepared;
}

ClusterabilityReport score_prepared(std::span<const PreparedView* const> views,
                                    const ScoreConfig& config) {
  if (views.empty()) throw Error(ErrorCode::EmptyDataset, "no views to score");
  ClusterabilityReport report;
  report.config = config;

  std::vector<Matrix> blocks;
  blocks.reserve(views.size());
  for (const PreparedView* view : views) {
    report.view_names.push_back(view->name);
    report.per_view_scores.push_back(view->score.score);
    report.per_view_hcrit.push_back(view->score.hcrit);
    report.per_view_sigma.push_back(view->score.sigma);
    blocks.push_back(view->standardized);
  }
  report.s_pv = order_free_mean(report.per_view_scores);

  const BandwidthScore joint =
      views.size() == 1 ? views.front()->score : score_matrix(concatenate_views(blocks), config);
  report.s_joint = joint.score;
  report.joint_hcrit = joint.hcrit;
  report.joint_sigma = joint.sigma;

  if (views.size() >= 2) {
    std::vector<NeighborTable> tables;
    tables.reserve(views.size());
    for (const PreparedView* view : views) {
      if (!view->neighbors) throw Error(ErrorCode::InvalidArgument, "view prepared without kNN");
      tables.push_back(*view->neighbors);
    }
    report.s_nbr = neighborhood_consistency(tables).overall;
  }

  report.weights = compose_score(report.s_pv, report.s_joint, report.s_nbr, config);
  report.s_raw = report.weights.s_raw;
  report.s_final = report.weights.s_final;
  return report;
}

ClusterabilityReport score_dataset(const MultiViewDataset& dataset, const ScoreConfig& config) {
  const auto prepared = prepare_views(dataset, config, dataset.num_views() >= 2);
  std::vector<const PreparedView*> views;
  for (const auto& p : prepared) views.push_back(&p);
  return score_prepared(views, config);
}

nlohmann::json to_json(const ClusterabilityReport& report) {
  nlohmann::json out;
  out["view_names"] = report.view_names;
  out["per_view_scores"] = report.per_view_scores;
  out["per_view_hcrit"] = report.per_view_hcrit;
  out["per_view_sigma"] = report.per_view_sigma;
  out["s_pv"] = report.s_pv;
  out["s_joint"] = report.s_joint;
  out["joint_hcrit"] = report.joint_hcrit;
  out["joint_sigma"] = report.joint_sigma;
  out["s_nbr"] = report.s_nbr ? nlohmann::json(*report.s_nbr) : nlohmann::json(nullptr);
  out["s_raw"] = report.s_raw;
  out["s_final"] = report.s_final;
  out["effective_weights"] = {
      {"alpha", report.weights.alpha},
      {"beta", report.weights.beta},
      {"gamma", report.weights.gamma},
  };
  out["config"] = to_json(report.config);
  return out;
}

}  // namespace mvcs
