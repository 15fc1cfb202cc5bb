#include "sigdev/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sigdev/io.hpp"
#include "sigdev/parallel.hpp"
#include "sigdev/rng.hpp"

namespace sigdev {

DevelopmentStatistic::DevelopmentStatistic(DistanceSpec spec,
                                           MapParameters params)
    : spec_(spec), maps_(maps_from_params(spec, params)) {}

void DevelopmentStatistic::prepare(const std::vector<SampledPath>& pool) {
  devs_.assign(pool.size(), {});
  for (std::size_t p = 0; p < pool.size(); ++p) {
    devs_[p].reserve(maps_.size());
    EmpiricalMeasure single;
    single.paths.push_back(pool[p]);
    for (const auto& map : maps_)
      devs_[p].push_back(expected_development(single, map));
  }
}

double DevelopmentStatistic::eval(std::span<const int> xs,
                                  std::span<const int> ys) const {
  double total = 0.0;
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    CMat mean_x = CMat::Zero(spec_.k, spec_.k);
    CMat mean_y = CMat::Zero(spec_.k, spec_.k);
    for (int p : xs) mean_x += devs_[p][i];
    for (int p : ys) mean_y += devs_[p][i];
    mean_x /= static_cast<double>(xs.size());
    mean_y /= static_cast<double>(ys.size());
    total += (mean_x - mean_y).squaredNorm();
  }
  return total / static_cast<double>(maps_.size());
}

namespace {

[[noreturn]] void schema_error(const std::string& pointer,
                               const std::string& msg) {
  throw std::runtime_error("config error at " + pointer + ": " + msg);
}

template <class T>
T require(const nlohmann::json& j, const std::string& pointer,
          const std::string& key) {
  if (!j.contains(key)) schema_error(pointer + "/" + key, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    schema_error(pointer + "/" + key, e.what());
  }
}

template <class T>
T optional_of(const nlohmann::json& j, const std::string& pointer,
              const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    schema_error(pointer + "/" + key, e.what());
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (!j.contains("simulate")) schema_error("/simulate", "missing");
  if (!j.contains("train")) schema_error("/train", "missing");
  if (!j.contains("test")) schema_error("/test", "missing");
  const auto& sim = j.at("simulate");
  cfg.dim = optional_of<int>(sim, "/simulate", "dim", 3);
  cfg.steps = optional_of<int>(sim, "/simulate", "steps", 50);
  cfg.horizon = optional_of<double>(sim, "/simulate", "horizon", 1.0);
  cfg.train_pool = require<int>(sim, "/simulate", "train_pool");
  cfg.test_pool = require<int>(sim, "/simulate", "test_pool");
  if (cfg.dim < 1) schema_error("/simulate/dim", "must be >= 1");
  if (cfg.steps < 2) schema_error("/simulate/steps", "must be >= 2");
  if (cfg.train_pool < 1 || cfg.test_pool < 1)
    schema_error("/simulate/train_pool", "pools must be >= 1");

  const auto& tr = j.at("train");
  cfg.spec.cls = class_from_name(
      optional_of<std::string>(tr, "/train", "class", "tridiag-antisym"));
  cfg.spec.K = optional_of<int>(tr, "/train", "K", 8);
  cfg.spec.k = optional_of<int>(tr, "/train", "k", 5);
  cfg.spec.d = cfg.dim + 1;  // time augmentation
  if (cfg.spec.K < 1) schema_error("/train/K", "must be >= 1");
  if (cfg.spec.k < 2) schema_error("/train/k", "must be >= 2");
  cfg.train_cfg.iterations = optional_of<int>(tr, "/train", "iterations", 500);
  cfg.train_cfg.learning_rate = optional_of<double>(
      tr, "/train", "learning_rate",
      cfg.spec.cls == MatrixClass::TridiagAntisym ? 0.5 : 0.05);
  cfg.train_cfg.batch = optional_of<int>(tr, "/train", "batch", 1024);
  if (cfg.train_cfg.iterations < 1)
    schema_error("/train/iterations", "must be >= 1");
  if (cfg.train_cfg.batch < 1) schema_error("/train/batch", "must be >= 1");

  const auto& te = j.at("test");
  cfg.test_cfg.alpha = optional_of<double>(te, "/test", "alpha", 0.05);
  cfg.test_cfg.experiments = require<int>(te, "/test", "N");
  cfg.test_cfg.permutations = require<int>(te, "/test", "M");
  cfg.test_cfg.m = require<int>(te, "/test", "m");
  cfg.test_cfg.n = require<int>(te, "/test", "n");
  cfg.h_list = require<std::vector<double>>(te, "/test", "h_list");
  if (cfg.h_list.empty()) schema_error("/test/h_list", "must be nonempty");
  for (double h : cfg.h_list)
    if (!(h > 0.0 && h < 1.0)) schema_error("/test/h_list", "h outside (0,1)");
  cfg.test_cfg.validate();
  if (cfg.test_cfg.m > cfg.test_pool || cfg.test_cfg.n > cfg.test_pool)
    schema_error("/test/m", "sample size exceeds test pool");

  cfg.seed = optional_of<std::uint64_t>(j, "", "seed", 0);
  cfg.train_cfg.seed = cfg.seed;
  cfg.test_cfg.seed = cfg.seed;
  return cfg;
}

namespace {

EmpiricalMeasure simulate_pool(const ExperimentConfig& cfg, double hurst,
                               int count, std::uint64_t tag) {
  FbmConfig fc;
  fc.hurst = hurst;
  fc.dim = cfg.dim;
  fc.steps = cfg.steps;
  fc.horizon = cfg.horizon;
  fc.seed = mix64(cfg.seed ^ tag);
  EmpiricalMeasure out;
  for (auto& p : simulate_fbm(fc, count))
    out.paths.push_back(time_augment(p));
  return out;
}

}  // namespace

ExperimentOutputs run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutputs out;
  out.trained = nlohmann::json::object();
  const std::string stat_name = class_name(cfg.spec.cls);
  out.rows.resize(cfg.h_list.size());
  std::vector<nlohmann::json> trained_blobs(cfg.h_list.size());

  parallel_for(cfg.h_list.size(), cfg.threads, [&](std::size_t hi) {
    const double h = cfg.h_list[hi];
    const bool is_null = std::abs(h - 0.5) < 1e-12;
    const std::uint64_t htag = 0x1000 + hi;

    // train pools: X always BM; Y is fBM(h) (BM again under the null, from
    // an independent stream)
    auto train_x = simulate_pool(cfg, 0.5, cfg.train_pool, htag * 4 + 0);
    auto train_y = simulate_pool(cfg, h, cfg.train_pool, htag * 4 + 1);

    const auto t0 = std::chrono::steady_clock::now();
    const TrainResult trained = train(train_x, train_y, cfg.spec, cfg.train_cfg);
    const double train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    auto test_x = simulate_pool(cfg, 0.5, cfg.test_pool, htag * 4 + 2);
    auto test_y =
        simulate_pool(cfg, is_null ? 0.5 : h, cfg.test_pool, htag * 4 + 3);

    DevelopmentStatistic statistic(cfg.spec, trained.params);
    PermTestConfig test_cfg = cfg.test_cfg;
    test_cfg.h0 = is_null;
    test_cfg.seed = mix64(cfg.seed ^ (htag * 4 + 7));
    const TestReport report =
        permutation_test(test_x.paths, test_y.paths, statistic, test_cfg);

    ExperimentRow row;
    row.h = h;
    row.statistic = stat_name;
    row.is_null = is_null;
    (is_null ? row.type1 : row.power) = report.rejection_ratio;
    double mean_stat = 0.0;
    for (double t : report.statistics) mean_stat += t;
    row.mean_statistic = mean_stat / report.statistics.size();
    row.train_seconds = train_seconds;
    row.test_seconds = report.seconds;
    out.rows[hi] = row;

    trained_blobs[hi] = trained_params_to_json(
        cfg.spec, trained.params, cfg.seed, cfg.train_cfg.iterations,
        trained.loss_trace);
  });
  for (std::size_t hi = 0; hi < cfg.h_list.size(); ++hi)
    out.trained[std::to_string(cfg.h_list[hi])] = trained_blobs[hi];
  return out;
}

void write_experiment_outputs(const ExperimentOutputs& out,
                              const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "power.csv");
    csv << "h,statistic,power,type1,mean_T,train_seconds,test_seconds\n";
    csv.precision(10);
    for (const auto& r : out.rows) {
      csv << r.h << "," << r.statistic << ",";
      if (r.is_null)
        csv << "," << r.type1;
      else
        csv << r.power << ",";
      csv << "," << r.mean_statistic << "," << r.train_seconds << ","
          << r.test_seconds << "\n";
    }
  }
  {
    std::ofstream params(dir / "params.json");
    params << out.trained.dump(2) << "\n";
  }
  {
    std::ofstream timing(dir / "timing.csv");
    timing << "h,statistic,train_seconds,test_seconds\n";
    timing.precision(10);
    for (const auto& r : out.rows)
      timing << r.h << "," << r.statistic << "," << r.train_seconds << ","
             << r.test_seconds << "\n";
  }
}

}  // namespace sigdev
