// Command-line front end: signatures, developments, tensor recovery,
// fBM simulation, distance training, permutation tests, full experiments.
//
// Exit codes: 0 success, 2 malformed CSV, 3 matrix order too small,
// 4 config schema error, 1 anything else.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "sigdev/development.hpp"
#include "sigdev/distance.hpp"
#include "sigdev/experiment.hpp"
#include "sigdev/fbm.hpp"
#include "sigdev/io.hpp"
#include "sigdev/recovery.hpp"
#include "sigdev/rng.hpp"

namespace {

using namespace sigdev;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TENSOR_RECOVER_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

RecoveryVariant variant_from_name(const std::string& name) {
  if (name == "antisym") return RecoveryVariant::Antisym;
  if (name == "skew-hermitian-alt") return RecoveryVariant::SkewHermitianAlt;
  throw std::runtime_error("unknown variant '" + name + "'");
}

EmpiricalMeasure load_measure(const std::string& dir, bool augment) {
  EmpiricalMeasure mu;
  for (auto& p : load_path_batch(dir))
    mu.paths.push_back(augment ? time_augment(p) : p);
  return mu;
}

void write_recovery_diagnostics(const std::filesystem::path& file,
                                const TruncatedTensor& recovered,
                                const TruncatedTensor* source, int k_used,
                                RecoveryVariant variant,
                                const GeneratingFunction& phi) {
  std::ofstream csv(file);
  csv.precision(17);
  csv << "word,c_w,k,value,fd_value,abs_err\n";
  for (int n = 0; n <= recovered.depth(); ++n) {
    for (std::size_t idx = 0; idx < recovered.level(n).size(); ++idx) {
      const Word w = word_from_index(idx, n, recovered.d());
      const WordStats stats = word_stats(w);
      const int k = k_used > 0 ? k_used : n + 1;
      csv << "\"(";
      for (int i = 0; i < n; ++i) csv << (i ? " " : "") << w.letters[i];
      csv << ")\"," << stats.c_w << "," << k << ","
          << recovered.level(n)[idx] << ",";
      if (n >= 1 && n <= 4) {
        // mixed finite differences get hopeless beyond 4th order
        const RecoveryPlan plan = build_plan(w, k, variant);
        const CMat fd = finite_difference_derivative(phi, plan);
        csv << fd(0, n).real() / stats.c_w;
      }
      csv << ",";
      if (source) csv << std::abs(recovered.level(n)[idx] - source->level(n)[idx]);
      csv << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path signatures, Cartan developments, tensor recovery and "
               "characteristic-function distances"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  int threads = 1;
  app.add_option("--seed", seed, "Master RNG seed (fallback: TENSOR_RECOVER_SEED)");
  app.add_option("--threads", threads, "Worker threads (1 = bit-reproducible)");

  // --- sig ---
  auto* sig_cmd = app.add_subcommand("sig", "Truncated signature of a path CSV");
  std::string sig_in, sig_out = "signature.json";
  int sig_depth = 4;
  sig_cmd->add_option("path", sig_in, "Input CSV (t,x1,...,xd)")->required();
  sig_cmd->add_option("--depth", sig_depth, "Truncation depth");
  sig_cmd->add_option("--out", sig_out, "Output tensor JSON");

  // --- develop ---
  auto* dev_cmd = app.add_subcommand("develop", "Cartan development of a path CSV");
  std::string dev_in, dev_out = "development.json", dev_class = "tridiag-antisym";
  int dev_k = 5;
  dev_cmd->add_option("path", dev_in, "Input CSV")->required();
  dev_cmd->add_option("--class", dev_class,
                      "tridiag-antisym | antisym | skew-hermitian");
  dev_cmd->add_option("--k", dev_k, "Matrix order");
  dev_cmd->add_option("--out", dev_out, "Output JSON (matrix + class)");

  // --- recover ---
  auto* rec_cmd = app.add_subcommand(
      "recover", "Recover a tensor from its generating function");
  std::string rec_tensor, rec_out = "recovered.json", rec_diag = "diagnostics.csv";
  std::string rec_variant = "antisym";
  double rec_bm = -1.0;
  int rec_depth = 3, rec_k = -1;
  rec_cmd->add_option("--tensor", rec_tensor, "Source tensor JSON");
  rec_cmd->add_option("--bm", rec_bm,
                      "Use the BM expected-signature oracle with horizon T");
  rec_cmd->add_option("--depth", rec_depth, "Recovery depth");
  rec_cmd->add_option("--k", rec_k, "Matrix order (default |W|+1 per word)");
  rec_cmd->add_option("--variant", rec_variant, "antisym | skew-hermitian-alt");
  rec_cmd->add_option("--out", rec_out, "Recovered tensor JSON");
  rec_cmd->add_option("--diagnostics", rec_diag, "Per-word diagnostics CSV");
  int rec_dim = 3;
  rec_cmd->add_option("--dim", rec_dim, "Dimension d for the --bm oracle");

  // --- simulate ---
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate (fractional) BM paths");
  double sim_h = 0.5, sim_T = 1.0;
  int sim_dim = 3, sim_steps = 50, sim_count = 100;
  std::string sim_out = "paths";
  sim_cmd->add_option("--hurst", sim_h, "Hurst parameter (0.5 = BM)");
  sim_cmd->add_option("--dim", sim_dim, "Spatial dimension");
  sim_cmd->add_option("--steps", sim_steps, "Time steps");
  sim_cmd->add_option("--horizon", sim_T, "Time horizon");
  sim_cmd->add_option("--count", sim_count, "Number of paths");
  sim_cmd->add_option("--out", sim_out, "Output directory (CSV batch)");

  // --- train ---
  auto* train_cmd = app.add_subcommand("train", "Train an empirical distance");
  std::string train_x, train_y, train_class = "tridiag-antisym";
  std::string train_out = "params.json";
  int train_K = 8, train_k = 5, train_iters = 500, train_batch = 1024;
  double train_lr = -1.0;
  train_cmd->add_option("--x", train_x, "Batch directory for mu")->required();
  train_cmd->add_option("--y", train_y, "Batch directory for nu")->required();
  train_cmd->add_option("--class", train_class,
                        "tridiag-antisym (RPCFD) | antisym (OPCFD) | "
                        "skew-hermitian (PCFD)");
  train_cmd->add_option("--K", train_K, "Number of linear maps");
  train_cmd->add_option("--k", train_k, "Matrix order");
  train_cmd->add_option("--iterations", train_iters, "Ascent iterations");
  train_cmd->add_option("--lr", train_lr,
                        "Learning rate (default 0.5 RPCFD, 0.05 otherwise)");
  train_cmd->add_option("--batch", train_batch, "Mini-batch size");
  train_cmd->add_option("--out", train_out, "Trained parameters JSON");

  // --- permtest ---
  auto* pt_cmd = app.add_subcommand("permtest", "Two-sample permutation test");
  std::string pt_x, pt_y, pt_params, pt_out = "report.json";
  double pt_alpha = 0.05;
  int pt_N = 10, pt_M = 500, pt_m = 200, pt_n = 200;
  bool pt_h0 = false;
  pt_cmd->add_option("--x", pt_x, "Batch directory for X pool")->required();
  pt_cmd->add_option("--y", pt_y, "Batch directory for Y pool")->required();
  pt_cmd->add_option("--params", pt_params, "Trained parameters JSON")->required();
  pt_cmd->add_option("--alpha", pt_alpha, "Significance level");
  pt_cmd->add_option("--N", pt_N, "Number of experiments");
  pt_cmd->add_option("--M", pt_M, "Permutations per experiment");
  pt_cmd->add_option("--m", pt_m, "X sample size");
  pt_cmd->add_option("--n", pt_n, "Y sample size");
  pt_cmd->add_flag("--h0", pt_h0, "Label the result as Type-I error");
  pt_cmd->add_option("--out", pt_out, "Report JSON");

  // --- experiment ---
  auto* exp_cmd = app.add_subcommand(
      "experiment", "Full pipeline: simulate, train, test, report");
  std::string exp_config, exp_out = "experiment_out";
  exp_cmd->add_option("config", exp_config, "Experiment config JSON")->required();
  exp_cmd->add_option("--out", exp_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sig_cmd) {
      SampledPath path;
      try {
        path = load_path_csv(sig_in);
      } catch (const CsvError& e) {
        std::cerr << "csv error: " << e.what() << "\n";
        return 2;
      }
      save_tensor(signature(path, sig_depth), sig_out);
    } else if (*dev_cmd) {
      SampledPath path;
      try {
        path = load_path_csv(dev_in);
      } catch (const CsvError& e) {
        std::cerr << "csv error: " << e.what() << "\n";
        return 2;
      }
      DistanceSpec spec;
      spec.cls = class_from_name(dev_class);
      spec.K = 1;
      spec.k = dev_k;
      spec.d = path.dim();
      const auto maps = maps_from_params(spec, init_params(spec, seed));
      const CMat result = develop(path, maps[0]);
      nlohmann::json out = {{"k", dev_k},
                            {"class", dev_class},
                            {"matrix", matrix_to_json(result)}};
      std::ofstream(dev_out) << out.dump(2) << "\n";
    } else if (*rec_cmd) {
      const RecoveryVariant variant = variant_from_name(rec_variant);
      std::unique_ptr<TensorOracle> oracle;
      const TruncatedTensor* source = nullptr;
      TruncatedTensor src_storage;
      if (!rec_tensor.empty()) {
        src_storage = load_tensor(rec_tensor);
        if (rec_depth > src_storage.depth()) rec_depth = src_storage.depth();
        source = &src_storage;
        oracle = std::make_unique<TensorOracle>(src_storage);
      } else if (rec_bm > 0.0) {
        src_storage = bm_expected_signature(rec_dim, rec_bm, rec_depth);
        source = &src_storage;
        oracle = std::make_unique<TensorOracle>(src_storage);
      } else {
        std::cerr << "recover: need --tensor or --bm\n";
        return 1;
      }
      if (rec_k > 0 && rec_k < rec_depth + 1) {
        std::cerr << "recover: k=" << rec_k << " too small for depth "
                  << rec_depth << " (need k >= |W|+1)\n";
        return 3;
      }
      const TruncatedTensor recovered = recover_tensor(
          *oracle, oracle->dim(), rec_depth, rec_k, variant, threads);
      save_tensor(recovered, rec_out);
      write_recovery_diagnostics(rec_diag, recovered, source, rec_k, variant,
                                 *oracle);
    } else if (*sim_cmd) {
      FbmConfig cfg;
      cfg.hurst = sim_h;
      cfg.dim = sim_dim;
      cfg.steps = sim_steps;
      cfg.horizon = sim_T;
      cfg.seed = seed;
      save_path_batch(simulate_fbm(cfg, sim_count), sim_out);
    } else if (*train_cmd) {
      const auto mu = load_measure(train_x, true);
      const auto nu = load_measure(train_y, true);
      DistanceSpec spec;
      spec.cls = class_from_name(train_class);
      spec.K = train_K;
      spec.k = train_k;
      spec.d = mu.paths.front().dim();
      TrainConfig cfg;
      cfg.iterations = train_iters;
      cfg.batch = train_batch;
      cfg.seed = seed;
      cfg.learning_rate =
          train_lr > 0.0
              ? train_lr
              : (spec.cls == MatrixClass::TridiagAntisym ? 0.5 : 0.05);
      const TrainResult result = train(mu, nu, spec, cfg);
      std::ofstream(train_out)
          << trained_params_to_json(spec, result.params, seed, cfg.iterations,
                                    result.loss_trace)
                 .dump(2)
          << "\n";
    } else if (*pt_cmd) {
      const auto mu = load_measure(pt_x, true);
      const auto nu = load_measure(pt_y, true);
      std::ifstream pin(pt_params);
      if (!pin) throw std::runtime_error("cannot open " + pt_params);
      auto [spec, params] = trained_params_from_json(nlohmann::json::parse(pin));
      DevelopmentStatistic statistic(spec, params);
      PermTestConfig cfg;
      cfg.alpha = pt_alpha;
      cfg.experiments = pt_N;
      cfg.permutations = pt_M;
      cfg.m = pt_m;
      cfg.n = pt_n;
      cfg.h0 = pt_h0;
      cfg.seed = seed;
      const TestReport report = permutation_test(mu.paths, nu.paths, statistic, cfg);
      nlohmann::json out = {
          {pt_h0 ? "type1_error" : "power", report.rejection_ratio},
          {"statistics", report.statistics},
          {"thresholds", report.thresholds},
          {"seconds", report.seconds}};
      std::ofstream(pt_out) << out.dump(2) << "\n";
    } else if (*exp_cmd) {
      std::ifstream in(exp_config);
      if (!in) throw std::runtime_error("cannot open " + exp_config);
      ExperimentConfig cfg;
      try {
        cfg = parse_experiment_config(nlohmann::json::parse(in));
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
      }
      if (app.count("--seed") || std::getenv("TENSOR_RECOVER_SEED")) {
        cfg.seed = seed;
        cfg.train_cfg.seed = seed;
        cfg.test_cfg.seed = seed;
      }
      cfg.threads = threads;
      write_experiment_outputs(run_experiment(cfg), exp_out);
    }
  } catch (const CsvError& e) {
    std::cerr << "csv error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
