#include "mvcs/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "mvcs/baselines.hpp"
#include "mvcs/corruption.hpp"
#include "mvcs/data_model.hpp"
#include "mvcs/detection.hpp"
#include "mvcs/error.hpp"
#include "mvcs/json_io.hpp"
#include "mvcs/scoring.hpp"

namespace mvcs::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  ScoreConfig config;
  std::string manifest;
  std::string out;
  std::string out_dir;
  std::vector<long long> views;
  std::string mode;
  std::optional<std::size_t> probes;
  SynthSpec synth;
  std::vector<std::size_t> dims;
};

void add_config_flags(CLI::App* cmd, Options& o) {
  const std::string group = "Score configuration";
  cmd->add_option("--tau", o.config.tau, "Sensitivity tau > 0 of the critical-bandwidth score")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--k", o.config.k, "Neighbors per instance for cross-view consistency")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--alpha", o.config.alpha, "Weight of the per-view component")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--beta", o.config.beta, "Weight of the joint-space component")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--gamma", o.config.gamma, "Weight of the neighborhood component")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--eta", o.config.eta, "Calibration scale eta > 0 of the final score")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--grid-points", o.config.grid_points, "KDE grid size for mode counting (>= 64)")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--tol", o.config.bisect_rel_tol,
                  "Relative tolerance of the critical-bandwidth bisection")
      ->capture_default_str()
      ->group(group);
  cmd->add_option("--seed", o.config.seed, "Seed for every random choice")
      ->capture_default_str()
      ->group(group);
}

void add_manifest(CLI::App* cmd, Options& o) {
  cmd->add_option("manifest", o.manifest, "Dataset manifest (JSON)")->required();
}

void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Write the JSON result here instead of stdout");
}

void emit(const nlohmann::json& value, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    write_json(out, value);
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::MissingFile, "cannot write " + o.out);
  write_json(file, value);
}

std::vector<std::size_t> zero_based_views(const Options& o, std::size_t num_views) {
  if (o.views.empty()) throw UsageError("--views: at least one view index is required");
  std::vector<std::size_t> out;
  for (long long v : o.views) {
    if (v < 1) throw UsageError("--views: indices are 1-based, got " + std::to_string(v));
    if (static_cast<std::size_t>(v) > num_views) {
      throw Error(ErrorCode::InvalidArgument, "--views: index " + std::to_string(v) +
                                                  " exceeds the dataset's " +
                                                  std::to_string(num_views) + " views");
    }
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

int dispatch(const CLI::App& app, Options& o, std::ostream& out) {
  const std::string name = app.get_subcommands().front()->get_name();
  o.config.validate();

  if (name == "synth") {
    o.synth.seed = o.config.seed;
    if (!o.dims.empty()) o.synth.dims = o.dims;
    const MultiViewDataset dataset = generate_synthetic(o.synth);
    nlohmann::json provenance = {{"generator", "gaussian_blobs"},
                                 {"n", o.synth.n},
                                 {"views", o.synth.views},
                                 {"clusters", o.synth.clusters},
                                 {"dims", o.synth.dims},
                                 {"separation", o.synth.separation},
                                 {"seed", o.synth.seed}};
    const auto manifest = save_dataset(dataset, o.out_dir, provenance);
    emit({{"manifest", manifest.generic_string()}, {"provenance", provenance}}, o, out);
    return 0;
  }

  const MultiViewDataset dataset = load_dataset(o.manifest);
  if (name == "score") {
    emit(to_json(score_dataset(dataset, o.config)), o, out);
  } else if (name == "detect") {
    emit(to_json(detect_noisy_view(dataset, o.config)), o, out);
  } else if (name == "profile") {
    emit(to_json(perturbation_profile(dataset, o.config, o.config.seed)), o, out);
  } else if (name == "hopkins") {
    const HopkinsResult result = hopkins(dataset, o.probes, o.config.seed);
    emit({{"value", result.value}, {"m", result.m}, {"seed", result.seed}}, o, out);
  } else if (name == "corrupt") {
    CorruptionSpec spec;
    spec.target_views = zero_based_views(o, dataset.num_views());
    spec.mode = parse_noise_mode(o.mode);
    spec.seed = o.config.seed;
    const nlohmann::json provenance = provenance_json(spec);
    const auto manifest = save_dataset(apply_corruption(dataset, spec), o.out_dir, provenance);
    emit({{"manifest", manifest.generic_string()}, {"provenance", provenance}}, o, out);
  }
  return 0;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-view clusterability scoring, noisy-view detection and corruption"};
  app.name(args.empty() ? "mvcs" : std::filesystem::path(args[0]).filename().string());
  app.require_subcommand(1, 1);
  Options o;

  auto* score = app.add_subcommand("score", "Compute the clusterability report of a dataset");
  add_manifest(score, o);
  add_out(score, o);
  add_config_flags(score, o);

  auto* detect = app.add_subcommand("detect", "Drop-one noisy-view detection");
  add_manifest(detect, o);
  add_out(detect, o);
  add_config_flags(detect, o);

  auto* profile =
      app.add_subcommand("profile", "Per-view Drop / Per / Con perturbation responses");
  add_manifest(profile, o);
  add_out(profile, o);
  add_config_flags(profile, o);

  auto* corrupt = app.add_subcommand("corrupt", "Write a copy of a dataset with noisy views");
  add_manifest(corrupt, o);
  add_out(corrupt, o);
  corrupt->add_option("--views", o.views, "Comma-separated 1-based view indices to corrupt")
      ->delimiter(',')
      ->required();
  corrupt->add_option("--mode", o.mode, "Noise type: per (column permutation) or con (conflict)")
      ->check(CLI::IsMember({"per", "con"}, CLI::ignore_case))
      ->required();
  corrupt->add_option("--out-dir", o.out_dir, "Directory for the corrupted manifest and CSVs")
      ->required();
  add_config_flags(corrupt, o);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic multi-view Gaussian-blob dataset");
  add_out(synth, o);
  synth->add_option("--n", o.synth.n, "Number of instances")->capture_default_str();
  synth->add_option("--n-views", o.synth.views, "Number of views")->capture_default_str();
  synth->add_option("--clusters", o.synth.clusters, "Number of clusters")->capture_default_str();
  synth->add_option("--dims", o.dims, "Per-view dimensions (one value or one per view)")
      ->delimiter(',')
      ->default_str("8");
  synth->add_option("--separation", o.synth.separation, "Distance between adjacent centers")
      ->capture_default_str();
  synth->add_option("--out-dir", o.out_dir, "Directory for the manifest and CSVs")->required();
  add_config_flags(synth, o);

  auto* hop = app.add_subcommand("hopkins", "Hopkins statistic of the concatenated views");
  add_manifest(hop, o);
  add_out(hop, o);
  hop->add_option("--m", o.probes, "Number of probes (default min(100, N/10))");
  add_config_flags(hop, o);

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    if (!app.get_subcommands().empty()) target = app.get_subcommands().front();
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << app.help();
    }
    return 2;
  }

  try {
    return dispatch(app, o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mvcs::cli
