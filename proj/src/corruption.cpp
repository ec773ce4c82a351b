#include "mvcs/corruption.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "mvcs/error.hpp"
#include "mvcs/rng.hpp"

namespace mvcs {

std::string_view to_string(NoiseMode mode) {
  return mode == NoiseMode::Permutation ? "per" : "con";
}

NoiseMode parse_noise_mode(std::string_view text) {
  std::string lower(text);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "per") return NoiseMode::Permutation;
  if (lower == "con") return NoiseMode::Conflict;
  throw Error(ErrorCode::InvalidArgument, "noise mode must be 'per' or 'con', got '" + lower + "'");
}

Matrix corrupt_permutation(const Matrix& view, std::uint64_t seed) {
  Rng rng(seed);
  Matrix out = view;
  std::vector<double> column(static_cast<std::size_t>(view.rows()));
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) column[static_cast<std::size_t>(r)] = out(r, c);
    rng.shuffle(std::span<double>(column));
    for (Eigen::Index r = 0; r < out.rows(); ++r) out(r, c) = column[static_cast<std::size_t>(r)];
  }
  return out;
}

namespace {

// Guaranteed derangement when every class holds at most half the instances:
// lay classes out as contiguous blocks and shift by the largest block size.
std::vector<int> block_shift_derangement(std::span<const int> labels, Rng& rng) {
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t largest = 0;
  for (auto& [label, idx] : members) {
    rng.shuffle(std::span<std::size_t>(idx));
    largest = std::max(largest, idx.size());
    blocks.push_back(idx);
  }
  rng.shuffle(std::span<std::vector<std::size_t>>(blocks));
  std::vector<std::size_t> order;
  for (const auto& block : blocks) order.insert(order.end(), block.begin(), block.end());

  const std::size_t n = labels.size();
  std::vector<int> assigned(n);
  for (std::size_t j = 0; j < n; ++j) assigned[order[j]] = labels[order[(j + largest) % n]];
  return assigned;
}

}  // namespace

std::vector<int> deranged_labels(std::span<const int> labels, std::uint64_t seed) {
  const std::size_t n = labels.size();
  std::map<int, std::size_t> counts;
  for (int label : labels) ++counts[label];
  if (counts.size() < 2) {
    throw Error(ErrorCode::DerangementImpossible, "conflict noise needs at least two classes");
  }
  std::size_t largest = 0;
  for (const auto& [label, count] : counts) largest = std::max(largest, count);

  Rng rng(seed);
  if (2 * largest > n) {
    // No rearrangement of the label vector avoids every fixed class; draw
    // each instance's class among the others instead.
    std::vector<int> classes;
    for (const auto& [label, count] : counts) classes.push_back(label);
    std::vector<int> assigned(n);
    std::vector<int> others;
    for (std::size_t i = 0; i < n; ++i) {
      others.clear();
      for (int c : classes)
        if (c != labels[i]) others.push_back(c);
      assigned[i] = others[rng.index(others.size())];
    }
    return assigned;
  }

  // Random rearrangement, then repair instances that kept their class by
  // swapping with a partner. Swapping with j where assigned[j] != labels[i]
  // and assigned[i] != labels[j] fixes i and leaves j valid.
  std::vector<int> assigned(labels.begin(), labels.end());
  rng.shuffle(std::span<int>(assigned));
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i] != labels[i]) continue;
    auto valid_partner = [&](std::size_t j) {
      return assigned[j] != labels[i] && assigned[i] != labels[j];
    };
    std::size_t partner = n;
    for (int attempt = 0; attempt < 64 && partner == n; ++attempt) {
      const std::size_t j = rng.index(n);
      if (valid_partner(j)) partner = j;
    }
    for (std::size_t j = 0; j < n && partner == n; ++j)
      if (valid_partner(j)) partner = j;
    if (partner == n) {
      Rng fallback(derive_seed(seed, 1));
      return block_shift_derangement(labels, fallback);
    }
    std::swap(assigned[i], assigned[partner]);
  }
  return assigned;
}

ConflictNoise corrupt_conflict_detailed(const Matrix& view, std::span<const int> labels,
                                        std::uint64_t seed) {
  if (static_cast<Eigen::Index>(labels.size()) != view.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "label count does not match view rows");
  }
  std::map<int, std::vector<Eigen::Index>> members;
  for (std::size_t i = 0; i < labels.size(); ++i)
    members[labels[i]].push_back(static_cast<Eigen::Index>(i));
  for (const auto& [label, rows] : members) {
    if (rows.size() < 2) {
      throw Error(ErrorCode::InvalidLabels, "class " + std::to_string(label) + " has a single member");
    }
  }

  const Eigen::Index d = view.cols();
  std::map<int, std::pair<Vector, Vector>> stats;  // class -> (mean, std)
  for (const auto& [label, rows] : members) {
    Vector mean = Vector::Zero(d);
    for (Eigen::Index r : rows) mean += view.row(r).transpose();
    mean /= static_cast<double>(rows.size());
    Vector var = Vector::Zero(d);
    for (Eigen::Index r : rows) var += (view.row(r).transpose() - mean).array().square().matrix();
    var /= static_cast<double>(rows.size());
    stats.emplace(label, std::make_pair(mean, var.cwiseSqrt()));
  }

  ConflictNoise out;
  out.assigned = deranged_labels(labels, derive_seed(seed, 0));
  out.data.resize(view.rows(), d);
  Rng rng(derive_seed(seed, 1));
  for (Eigen::Index r = 0; r < view.rows(); ++r) {
    const auto& [mean, stddev] = stats.at(out.assigned[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < d; ++c) out.data(r, c) = rng.normal(mean[c], stddev[c]);
  }
  return out;
}

Matrix corrupt_conflict(const Matrix& view, std::span<const int> labels, std::uint64_t seed) {
  return corrupt_conflict_detailed(view, labels, seed).data;
}

MultiViewDataset apply_corruption(const MultiViewDataset& dataset, const CorruptionSpec& spec) {
  if (spec.target_views.empty())
    throw Error(ErrorCode::InvalidArgument, "no target views to corrupt");
  for (std::size_t t : spec.target_views) {
    if (t >= dataset.num_views()) {
      throw Error(ErrorCode::InvalidArgument, "target view " + std::to_string(t + 1) +
                                                  " exceeds V = " +
                                                  std::to_string(dataset.num_views()));
    }
  }
  if (spec.mode == NoiseMode::Conflict && !dataset.has_labels()) {
    throw Error(ErrorCode::MissingLabels, "conflict noise needs class labels");
  }

  std::vector<Matrix> views = dataset.views();
  for (std::size_t t : spec.target_views) {
    const std::uint64_t seed = derive_seed(spec.seed, t);
    views[t] = spec.mode == NoiseMode::Permutation
                   ? corrupt_permutation(dataset.view(t), seed)
                   : corrupt_conflict(dataset.view(t), *dataset.labels(), seed);
  }
  return MultiViewDataset(std::move(views), dataset.view_names(), dataset.labels());
}

nlohmann::json provenance_json(const CorruptionSpec& spec) {
  std::vector<std::size_t> one_based;
  for (std::size_t t : spec.target_views) one_based.push_back(t + 1);
  return {{"mode", std::string(to_string(spec.mode))}, {"targets", one_based}, {"seed", spec.seed}};
}

void SynthSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (views < 1) fail("synthetic data needs at least one view");
  if (clusters < 1) fail("synthetic data needs at least one cluster");
  if (n < 2 * clusters) fail("n must be at least 2 * clusters");
  if (dims.empty() || (dims.size() != 1 && dims.size() != views))
    fail("dims needs one entry or one entry per view");
  for (std::size_t d : dims)
    if (d < 1) fail("every view needs at least one dimension");
  if (!(separation > 0.0) || !std::isfinite(separation)) fail("separation must be positive");
}

MultiViewDataset generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  // Balanced cluster sizes, shuffled over instances.
  std::vector<int> labels(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) labels[i] = static_cast<int>(i % spec.clusters);
  rng.shuffle(std::span<int>(labels));

  std::vector<Matrix> views;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < spec.views; ++v) {
    const Eigen::Index d = static_cast<Eigen::Index>(spec.dim(v));
    // Centers sit on a random line through the origin, consecutive centers
    // `separation` apart, in an order drawn independently per view.
    Vector direction(d);
    for (Eigen::Index c = 0; c < d; ++c) direction[c] = rng.normal();
    direction.normalize();
    std::vector<std::size_t> slot(spec.clusters);
    std::iota(slot.begin(), slot.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(slot));
    const double middle = 0.5 * static_cast<double>(spec.clusters - 1);

    Matrix view(static_cast<Eigen::Index>(spec.n), d);
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double offset =
          spec.separation * (static_cast<double>(slot[static_cast<std::size_t>(labels[i])]) - middle);
      for (Eigen::Index c = 0; c < d; ++c)
        view(static_cast<Eigen::Index>(i), c) = offset * direction[c] + rng.normal();
    }
    views.push_back(std::move(view));
    names.push_back("view" + std::to_string(v + 1));
  }
  return MultiViewDataset(std::move(views), std::move(names), std::move(labels));
}

}  // namespace mvcs
