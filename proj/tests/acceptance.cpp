// Acceptance suite. Each test case prints one line:
//   criterion N: PASS|FAIL  <summary>  (<measurements>, <seconds>)
// and fails the doctest case when the criterion is not met.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include "mvcs/baselines.hpp"
#include "mvcs/corruption.hpp"
#include "mvcs/density.hpp"
#include "mvcs/detection.hpp"
#include "mvcs/neighborhood.hpp"
#include "mvcs/projection.hpp"
#include "mvcs/scoring.hpp"
#include "test_helpers.hpp"

using namespace mvcs;

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int criterion, bool pass, const std::string& summary, const std::string& detail,
            double seconds) {
  std::printf("criterion %d: %s  %s  (%s, %.1f s)\n", criterion, pass ? "PASS" : "FAIL",
              summary.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<double> mixture_1d(Rng& rng, std::size_t n) {
  const std::size_t components = 1 + rng.index(4);
  const double gap = 1.0 + 7.0 * rng.uniform();
  std::vector<double> xs(n);
  for (auto& x : xs) x = gap * static_cast<double>(rng.index(components)) + rng.normal();
  return xs;
}

MultiViewDataset synthetic(std::uint64_t seed) {
  SynthSpec spec;  // N=400, V=3, clusters=4, separation=10
  spec.seed = seed;
  return generate_synthetic(spec);
}

}  // namespace

TEST_CASE("criterion 1: closed-form critical bandwidth") {
  const Timer timer;
  const ScoreConfig config;
  bool pass = true;
  std::string detail;
  for (double a : {0.5, 1.0, 3.0}) {
    const std::vector<double> xs{-a, a};
    const double h = critical_bandwidth(xs, config).value;
    const double rel = std::abs(h - a) / a;
    pass = pass && rel <= 2.0 * config.bisect_rel_tol;
    detail += fmt("a=%g h=%.6f ", a, h);
  }
  pass = pass && timer.seconds() < 1.0;
  report(1, pass, "h_crit({-a,a}) = a within 2*tol", detail, timer.seconds());
  CHECK(pass);
}

TEST_CASE("criterion 2: mode-count monotonicity") {
  const Timer timer;
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto xs = mixture_1d(rng, 5 + rng.index(196));
    const GaussianKde kde(xs);
    const double range = kde.max() - kde.min();
    std::size_t previous = static_cast<std::size_t>(-1);
    for (int step = 0; step < 50; ++step) {
      const double h = range * 1e-3 * std::pow(2000.0, step / 49.0);
      const std::size_t m = kde.mode_count(h, 1024);
      violations += m > previous ? 1 : 0;
      previous = m;
    }
  }
  const bool pass = violations == 0 && timer.seconds() < 30.0;
  report(2, pass, "mode_count non-increasing on 100 datasets x 50 bandwidths",
         fmt("violations=%zu", violations), timer.seconds());
  CHECK(pass);
}

TEST_CASE("criterion 3: bisection matches a brute-force scan") {
  const Timer timer;
  const std::size_t grid = 1024;
  const int steps = 10000;
  std::size_t matches = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(1000 + seed);
    const auto xs = mixture_1d(rng, 20 + rng.index(81));
    const GaussianKde kde(xs);
    const double range = kde.max() - kde.min();
    const double lo = 1e-3 * range;
    const double hi = 2.0 * range;
    const double ratio = std::pow(hi / lo, 1.0 / (steps - 1));
    // Scan downward from the top: the answer is the smallest scanned
    // bandwidth above which every scanned bandwidth is unimodal.
    int s = steps - 1;
    while (s > 0 && kde.mode_count(lo * std::pow(ratio, s - 1), grid, 1) <= 1) --s;
    const double scanned = lo * std::pow(ratio, s);
    const double bisected = critical_bandwidth(xs, grid, 1e-6).value;
    const double gap = std::abs(bisected - scanned) / (scanned * (ratio - 1.0));
    worst = std::max(worst, gap);
    matches += gap <= 1.0 ? 1 : 0;
  }
  const bool pass = matches == 20 && timer.seconds() < 60.0;
  report(3, pass, "bisected h_crit within one step of a 10,000-point scan",
         fmt("matches=%zu/20 worst=%.3f steps", matches, worst), timer.seconds());
  CHECK(pass);
}

TEST_CASE("criterion 4: neighborhood consistency extremes") {
  const Timer timer;
  const ScoreConfig config;
  const MultiViewDataset base = synthetic(0);
  const Matrix& x = base.view(0);
  const double identical =
      neighborhood_consistency(MultiViewDataset({x, x, x}, {"a", "b", "c"}), config).overall;

  const std::size_t n = base.num_instances();
  const NeighborTable reference = knn_per_view(standardize(x), config.k, 0);
  std::vector<double> agreement;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::vector<Eigen::Index> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Eigen::Index>(i);
    rng.shuffle(std::span<Eigen::Index>(perm));
    Matrix shuffled(x.rows(), x.cols());
    for (std::size_t i = 0; i < n; ++i) shuffled.row(static_cast<Eigen::Index>(i)) = x.row(perm[i]);
    const auto a = pair_agreement(reference, knn_per_view(standardize(shuffled), config.k, 1));
    agreement.push_back(test::mean_of(a));
  }
  const double expected = static_cast<double>(config.k) / static_cast<double>(n - 1);
  const double mean = test::mean_of(agreement);
  const double se = test::stddev_of(agreement) / std::sqrt(50.0);
  const bool pass = identical == 1.0 && std::abs(mean - expected) <= 3.0 * se;
  report(4, pass, "S_nbr = 1 for identical views; shuffled view at chance k/(N-1)",
         fmt("identical=%.17g mean=%.5f expected=%.5f se=%.5f", identical, mean, expected, se),
         timer.seconds());
  CHECK(pass);
}

TEST_CASE("criterion 5: a single noisy view lowers the score") {
  const Timer timer;
  const ScoreConfig config;
  int per_ok = 0, con_ok = 0, per_pairs = 0, con_pairs = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MultiViewDataset clean = synthetic(seed);
    const double base = score_dataset(clean, config).s_final;
    bool per_all = true, con_all = true;
    for (std::size_t v = 0; v < clean.num_views(); ++v) {
      const std::uint64_t s = derive_seed(seed, v);
      const bool per =
          score_dataset(apply_corruption(clean, {{v}, NoiseMode::Permutation, s}), config)
              .s_final < base;
      const bool con =
          score_dataset(apply_corruption(clean, {{v}, NoiseMode::Conflict, s}), config).s_final <
          base;
      per_pairs += per;
      con_pairs += con;
      per_all = per_all && per;
      con_all = con_all && con;
    }
    per_ok += per_all;
    con_ok += con_all;
  }
  const bool pass = per_ok >= 38 && con_ok >= 38 && timer.seconds() < 300.0;
  report(5, pass, "every single-view Per/Con corruption lowers s_final in >= 95% of 40 seeds",
         fmt("per=%d/40 con=%d/40; single (seed, view) cases per=%d/120 con=%d/120", per_ok,
             con_ok, per_pairs, con_pairs),
         timer.seconds());
  CHECK(pass);
}

TEST_CASE("criterion 6: drop-one detection") {
  const Timer timer;
  const ScoreConfig config;
  int per_hits = 0, con_hits = 0, clean_fp = 0, hopkins_fp = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MultiViewDataset clean = synthetic(seed);
    const std::size_t target = seed % clean.num_views();
    const std::optional<std::size_t> expected(target);
    const auto per = apply_corruption(clean, {{target}, NoiseMode::Permutation, seed});
    const auto con = apply_corruption(clean, {{target}, NoiseMode::Conflict, seed});
    per_hits += detect_noisy_view(per, config).detected == expected;
    con_hits += detect_noisy_view(con, config).detected == expected;
    clean_fp += !detect_noisy_view(clean, config).candidates.empty();
    hopkins_fp += !detect_noisy_view_hopkins(clean, std::nullopt, seed).candidates.empty();
  }
  const bool pass = per_hits >= 36 && con_hits >= 36 && clean_fp <= 10 &&
                    clean_fp < hopkins_fp && timer.seconds() < 600.0;
  report(6, pass,
         "detects the corrupted view in >= 90% per mode; clean FP <= 25% and below Hopkins",
         fmt("per=%d/40 con=%d/40 clean_fp=%d/40 hopkins_fp=%d/40", per_hits, con_hits, clean_fp,
             hopkins_fp),
         timer.seconds());
  CHECK(per_hits >= 36);
  CHECK(con_hits >= 36);
  CHECK(clean_fp <= 10);
  CHECK(clean_fp < hopkins_fp);
}

TEST_CASE("criterion 7: Hopkins sanity") {
  const Timer timer;
  std::vector<double> uniform, blobs;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    // Data stream independent of the Hopkins probe stream for the same seed.
    Rng rng(derive_seed(seed, 7));
    Matrix u(2000, 2), b(2000, 2);
    for (Eigen::Index i = 0; i < 2000; ++i) {
      u(i, 0) = rng.uniform();
      u(i, 1) = rng.uniform();
      b(i, 0) = rng.normal() + (i < 1000 ? 0.0 : 20.0);
      b(i, 1) = rng.normal();
    }
    uniform.push_back(hopkins(u, 100, seed).value);
    blobs.push_back(hopkins(b, 100, seed).value);
  }
  const double mu = test::mean_of(uniform);
  const double mb = test::mean_of(blobs);
  const bool pass = std::abs(mu - 0.5) <= 0.05 && mb > 0.85;
  report(7, pass, "Hopkins: uniform 0.5 +- 0.05, two blobs > 0.85 (means over 50 seeds)",
         fmt("uniform=%.4f blobs=%.4f", mu, mb), timer.seconds());
  CHECK(pass);
}

TEST_CASE("criterion 8: CLI determinism") {
  const Timer timer;
  test::TempDir dir("acceptance_cli");
  auto run = [&](const std::string& args, const std::string& tag) {
    const auto out = dir / (tag + ".out");
    const std::string cmd =
        std::string("\"") + MVCS_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return std::make_pair(WEXITSTATUS(status), test::read_text(out));
  };
  auto tree = [](const std::filesystem::path& root) {
    std::string all;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      all += entry.path().filename().string() + "\n" + test::read_text(entry.path());
    }
    return all;
  };

  const std::string data = (dir / "data").string();
  const std::string manifest = data + "/manifest.json";
  std::vector<std::pair<std::string, std::string>> commands{
      {"synth", "synth --n 150 --seed 3 --out-dir " + data},
      {"score", "score " + manifest},
      {"detect", "detect " + manifest},
      {"profile", "profile " + manifest + " --seed 2"},
      {"hopkins", "hopkins " + manifest + " --seed 5"},
      {"corrupt", "corrupt " + manifest + " --views 2 --mode con --seed 7 --out-dir " +
                      (dir / "noisy").string()},
  };
  int identical = 0;
  std::string failed;
  for (const auto& [name, args] : commands) {
    const auto first = run(args, name + "1");
    const std::string files_first = name == "synth"     ? tree(data)
                                    : name == "corrupt" ? tree(dir / "noisy")
                                                        : "";
    const auto second = run(args, name + "2");
    const std::string files_second = name == "synth"     ? tree(data)
                                     : name == "corrupt" ? tree(dir / "noisy")
                                                         : "";
    const bool same = first.first == 0 && first == second && files_first == files_second;
    identical += same;
    if (!same) failed += name + " ";
  }
  const bool pass = identical == static_cast<int>(commands.size());
  report(8, pass, "every subcommand byte-identical across two runs",
         fmt("identical=%d/%zu %s", identical, commands.size(), failed.c_str()), timer.seconds());
  CHECK(pass);
}

TEST_CASE("criterion 9: invariances") {
  const Timer timer;
  const ScoreConfig config;
  auto same_report = [](const ClusterabilityReport& a, const ClusterabilityReport& b) {
    return a.per_view_scores == b.per_view_scores && a.per_view_hcrit == b.per_view_hcrit &&
           a.s_pv == b.s_pv && a.s_joint == b.s_joint && a.s_nbr == b.s_nbr &&
           a.s_raw == b.s_raw && a.s_final == b.s_final;
  };

  int pow2_identical = 0, generic_identical = 0, order_ok = 0, hcrit_ok = 0;
  double generic_worst = 0.0, order_worst_joint = 0.0;
  const int seeds = 5;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const MultiViewDataset ds = synthetic(100 + seed);
    const ClusterabilityReport base = score_dataset(ds, config);
    Rng rng(seed);

    // One positive constant per view: exact powers of two, then generic values.
    std::vector<Matrix> pow2, generic;
    for (const Matrix& view : ds.views()) {
      pow2.push_back(view * std::ldexp(1.0, static_cast<int>(rng.index(21)) - 10));
      generic.push_back(view * std::exp(rng.uniform(-5.0, 5.0)));
    }
    pow2_identical += same_report(base, score_dataset(MultiViewDataset(pow2, ds.view_names()), config));
    const auto g = score_dataset(MultiViewDataset(generic, ds.view_names()), config);
    generic_identical += same_report(base, g);
    generic_worst = std::max(generic_worst, std::abs(g.s_final - base.s_final));

    // View order.
    const MultiViewDataset reordered({ds.view(2), ds.view(0), ds.view(1)}, {"c", "a", "b"});
    const auto r = score_dataset(reordered, config);
    const double joint_gap = std::abs(r.s_joint - base.s_joint);
    order_worst_joint = std::max(order_worst_joint, joint_gap);
    order_ok += r.s_pv == base.s_pv && r.s_nbr == base.s_nbr &&
                std::abs(r.s_final - base.s_final) <= 1e-8 && joint_gap <= 1e-8;

    // h_crit equivariance on the first view's projection.
    const auto proj = principal_projection(standardize(ds.view(0))).values;
    const double h = critical_bandwidth(proj, config).value;
    bool ok = true;
    for (double c : {0.5, 2.0, 10.0}) {
      std::vector<double> moved(proj);
      for (double& v : moved) v = c * v + 17.0;
      ok = ok && std::abs(critical_bandwidth(moved, config).value - c * h) <=
                     2.0 * config.bisect_rel_tol * c * h;
    }
    hcrit_ok += ok;
  }
  const bool pass = pow2_identical == seeds && generic_identical == seeds && order_ok == seeds &&
                    hcrit_ok == seeds;
  report(9, pass, "scale invariance bit-identical, view order <= 1e-8, h_crit equivariance",
         fmt("scale_pow2=%d/%d scale_generic=%d/%d (max |ds_final|=%.3g) order=%d/%d "
             "(max |ds_joint|=%.3g) hcrit=%d/%d",
             pow2_identical, seeds, generic_identical, seeds, generic_worst, order_ok, seeds,
             order_worst_joint, hcrit_ok, seeds),
         timer.seconds());
  CHECK(pow2_identical == seeds);
  CHECK(generic_identical == seeds);
  CHECK(order_ok == seeds);
  CHECK(hcrit_ok == seeds);
}
