#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvcs/data_model.hpp"

namespace mvcs {

// Drop-one analysis: a view whose removal does not lower the score is a
// candidate noisy view; the candidate with the largest gain is detected.
struct DetectionResult {
  std::vector<std::string> view_names;
  double base_score = 0.0;
  std::vector<double> drop_scores;       // score with view v removed
  std::vector<double> deltas;            // drop_scores[v] - base_score
  std::vector<std::size_t> candidates;   // ascending view indices with delta >= 0
  std::optional<std::size_t> detected;   // max delta, smallest index on ties
};

// Applies the candidate/selection rule to precomputed scores.
DetectionResult select_noisy_view(double base_score, std::vector<double> drop_scores,
                                  std::vector<std::string> view_names);

using DatasetScorer = std::function<double(const MultiViewDataset&)>;

// Drop-one rule driven by an arbitrary dataset score (e.g. a baseline).
// Throws Error(SingleView) when V < 2.
DetectionResult detect_with_scorer(const MultiViewDataset& dataset, const DatasetScorer& scorer);

// Drop-one rule driven by the calibrated clusterability score. Sub-datasets
// with a single view use the renormalized weights.
DetectionResult detect_noisy_view(const MultiViewDataset& dataset, const ScoreConfig& config);

// Same rule driven by the Hopkins statistic of the concatenated standardized
// views, every evaluation using the same seed.
DetectionResult detect_noisy_view_hopkins(const MultiViewDataset& dataset,
                                          std::optional<std::size_t> m, std::uint64_t seed);

struct PerturbationRow {
  std::string view;
  double drop = 0.0;           // view removed
  double per = 0.0;            // view replaced by permutation noise
  std::optional<double> con;   // view replaced by conflict noise; absent without labels
};

struct PerturbationProfile {
  double base_score = 0.0;
  std::vector<PerturbationRow> rows;
  bool con_available = false;
};

// One row per view. View v is corrupted with seed derive_seed(seed, v).
// Throws Error(SingleView) when V < 2.
PerturbationProfile perturbation_profile(const MultiViewDataset& dataset,
                                         const ScoreConfig& config, std::uint64_t seed);

nlohmann::json to_json(const DetectionResult& result);
nlohmann::json to_json(const PerturbationProfile& profile);

}  // namespace mvcs
