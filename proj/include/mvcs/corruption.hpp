#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvcs/data_model.hpp"

namespace mvcs {

enum class NoiseMode {
  Permutation,  // "per": shuffle every column independently
  Conflict,     // "con": regenerate features from another class's distribution
};

std::string_view to_string(NoiseMode mode);
// Accepts "per" / "con" (case-insensitive). Throws Error(InvalidArgument).
NoiseMode parse_noise_mode(std::string_view text);

struct CorruptionSpec {
  std::vector<std::size_t> target_views;  // 0-based
  NoiseMode mode = NoiseMode::Permutation;
  std::uint64_t seed = 0;
};

// Each column independently row-permuted. Column multisets are unchanged.
Matrix corrupt_permutation(const Matrix& view, std::uint64_t seed);

// Class reassignment such that no instance keeps its own class. When no
// class holds more than half the instances this is a rearrangement of the
// label vector (class sizes preserved); otherwise each instance draws
// uniformly among the other classes. Throws Error(DerangementImpossible)
// with fewer than two classes.
std::vector<int> deranged_labels(std::span<const int> labels, std::uint64_t seed);

struct ConflictNoise {
  Matrix data;
  std::vector<int> assigned;  // class whose distribution generated each row
};

// Estimates per-class, per-feature mean and population std on the view,
// reassigns classes with deranged_labels, then samples every feature
// independently from the Gaussian of the assigned class.
ConflictNoise corrupt_conflict_detailed(const Matrix& view, std::span<const int> labels,
                                        std::uint64_t seed);
Matrix corrupt_conflict(const Matrix& view, std::span<const int> labels, std::uint64_t seed);

// Replaces every target view; target t uses seed derive_seed(spec.seed, t).
// Throws Error(InvalidArgument) for an empty or out-of-range target list and
// Error(MissingLabels) for conflict noise on an unlabeled dataset.
MultiViewDataset apply_corruption(const MultiViewDataset& dataset, const CorruptionSpec& spec);

// Provenance record stored in manifests of corrupted datasets (targets are
// written 1-based).
nlohmann::json provenance_json(const CorruptionSpec& spec);

struct SynthSpec {
  std::size_t n = 400;
  std::size_t views = 3;
  std::size_t clusters = 4;
  std::vector<std::size_t> dims = {8};  // one entry per view, or one for all
  double separation = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
  std::size_t dim(std::size_t v) const { return dims.size() == 1 ? dims[0] : dims.at(v); }
};

// Gaussian blobs sharing one cluster assignment across views. Labels are
// attached; output is a pure function of the spec.
MultiViewDataset generate_synthetic(const SynthSpec& spec);

}  // namespace mvcs
