#include "mvcs/detection.hpp"

#include "mvcs/baselines.hpp"
#include "mvcs/corruption.hpp"
#include "mvcs/error.hpp"
#include "mvcs/parallel.hpp"
#include "mvcs/rng.hpp"
#include "mvcs/scoring.hpp"

namespace mvcs {

DetectionResult select_noisy_view(double base_score, std::vector<double> drop_scores,
                                  std::vector<std::string> view_names) {
  DetectionResult result;
  result.view_names = std::move(view_names);
  result.base_score = base_score;
  result.drop_scores = std::move(drop_scores);
  for (std::size_t v = 0; v < result.drop_scores.size(); ++v) {
    const double delta = result.drop_scores[v] - base_score;
    result.deltas.push_back(delta);
    if (delta >= 0.0) {
      result.candidates.push_back(v);
      if (!result.detected || delta > result.deltas[*result.detected]) result.detected = v;
    }
  }
  return result;
}

DetectionResult detect_with_scorer(const MultiViewDataset& dataset, const DatasetScorer& scorer) {
  if (dataset.num_views() < 2)
    throw Error(ErrorCode::SingleView, "drop-one detection needs at least two views");
  const double base = scorer(dataset);
  std::vector<double> drops(dataset.num_views());
  for (std::size_t v = 0; v < dataset.num_views(); ++v) drops[v] = scorer(dataset.without_view(v));
  return select_noisy_view(base, std::move(drops), dataset.view_names());
}

namespace {

double score_subset(const std::vector<PreparedView>& prepared, std::size_t skip,
                    const ScoreConfig& config) {
  std::vector<const PreparedView*> views;
  for (std::size_t u = 0; u < prepared.size(); ++u)
    if (u != skip) views.push_back(&prepared[u]);
  return score_prepared(views, config).s_final;
}

}  // namespace

DetectionResult detect_noisy_view(const MultiViewDataset& dataset, const ScoreConfig& config) {
  if (dataset.num_views() < 2)
    throw Error(ErrorCode::SingleView, "drop-one detection needs at least two views");
  const auto prepared = prepare_views(dataset, config, true);
  const std::size_t none = prepared.size();
  const double base = score_subset(prepared, none, config);
  std::vector<double> drops(prepared.size());
  parallel_for(prepared.size(), [&](std::size_t v) { drops[v] = score_subset(prepared, v, config); });
  return select_noisy_view(base, std::move(drops), dataset.view_names());
}

DetectionResult detect_noisy_view_hopkins(const MultiViewDataset& dataset,
                                          std::optional<std::size_t> m, std::uint64_t seed) {
  return detect_with_scorer(
      dataset, [&](const MultiViewDataset& d) { return hopkins(d, m, seed).value; });
}

PerturbationProfile perturbation_profile(const MultiViewDataset& dataset,
                                         const ScoreConfig& config, std::uint64_t seed) {
  if (dataset.num_views() < 2)
    throw Error(ErrorCode::SingleView, "perturbation analysis needs at least two views");
  const DetectionResult drops = detect_noisy_view(dataset, config);

  PerturbationProfile profile;
  profile.base_score = drops.base_score;
  profile.con_available = dataset.has_labels();
  profile.rows.resize(dataset.num_views());
  for (std::size_t v = 0; v < dataset.num_views(); ++v) {
    PerturbationRow& row = profile.rows[v];
    row.view = dataset.view_names()[v];
    row.drop = drops.drop_scores[v];
    const std::uint64_t view_seed = derive_seed(seed, v);
    row.per = score_dataset(dataset.with_view(v, corrupt_permutation(dataset.view(v), view_seed)),
                            config)
                  .s_final;
    if (profile.con_available) {
      row.con = score_dataset(dataset.with_view(v, corrupt_conflict(dataset.view(v),
                                                                    *dataset.labels(), view_seed)),
                              config)
                    .s_final;
    }
  }
  return profile;
}

nlohmann::json to_json(const DetectionResult& result) {
  nlohmann::json per_view = nlohmann::json::array();
  for (std::size_t v = 0; v < result.drop_scores.size(); ++v) {
    const bool candidate = result.deltas[v] >= 0.0;
    per_view.push_back({{"view", result.view_names[v]},
                        {"drop_score", result.drop_scores[v]},
                        {"delta", result.deltas[v]},
                        {"candidate", candidate}});
  }
  nlohmann::json out;
  out["base_score"] = result.base_score;
  out["per_view"] = per_view;
  out["detected"] = result.detected ? nlohmann::json(result.view_names[*result.detected])
                                    : nlohmann::json(nullptr);
  return out;
}

nlohmann::json to_json(const PerturbationProfile& profile) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : profile.rows) {
    rows.push_back({{"view", row.view},
                    {"drop", row.drop},
                    {"per", row.per},
                    {"con", row.con ? nlohmann::json(*row.con) : nlohmann::json(nullptr)}});
  }
  nlohmann::json out;
  out["base_score"] = profile.base_score;
  out["rows"] = rows;
  out["con_available"] = profile.con_available;
  return out;
}

}  // namespace mvcs
