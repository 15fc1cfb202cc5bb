#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigdev/distance.hpp"
#include "sigdev/fbm.hpp"
#include "sigdev/permtest.hpp"

namespace sigdev {

// Frozen trained distance as a permutation-test statistic. prepare() caches
// the development of every pooled path under every map, so each of the M
// permutations costs only matrix averaging.
class DevelopmentStatistic final : public PathStatistic {
public:
  DevelopmentStatistic(DistanceSpec spec, MapParameters params);
  void prepare(const std::vector<SampledPath>& pool) override;
  double eval(std::span<const int> xs, std::span<const int> ys) const override;

private:
  DistanceSpec spec_;
  std::vector<LinearMapFamily> maps_;
  std::vector<std::vector<CMat>> devs_;  // [path][map]
};

struct ExperimentConfig {
  // simulate
  int dim = 3;
  int steps = 50;
  double horizon = 1.0;
  int train_pool = 1000;
  int test_pool = 1000;
  // train
  DistanceSpec spec;  // spec.d is derived (dim + 1 after time augmentation)
  TrainConfig train_cfg;
  // test
  PermTestConfig test_cfg;  // h0 is derived per h
  std::vector<double> h_list;

  std::uint64_t seed = 0;
  // worker count for the per-h loop; results are bit-identical for any
  // value because every h entry is seeded independently
  int threads = 1;
};

// Parses/validates the experiment JSON
// {simulate:{...}, train:{...}, test:{alpha,N,M,m,n,h_list}, seed}.
// Errors carry JSON-pointer-style paths.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

struct ExperimentRow {
  double h = 0.5;
  std::string statistic;
  bool is_null = false;   // h == 0.5
  double power = 0.0;     // filled when !is_null
  double type1 = 0.0;     // filled when is_null
  double mean_statistic = 0.0;
  double train_seconds = 0.0;
  double test_seconds = 0.0;
};

struct ExperimentOutputs {
  std::vector<ExperimentRow> rows;
  nlohmann::json trained;  // trained parameter blobs per h
};

// Full pipeline per h: simulate training pools, train the distance on H1
// data, simulate fresh test pools, run the permutation test.
ExperimentOutputs run_experiment(const ExperimentConfig& cfg);

// power.csv (h,statistic,power,type1,mean_T,train_seconds,test_seconds),
// params.json, timing.csv
void write_experiment_outputs(const ExperimentOutputs& out,
                              const std::filesystem::path& dir);

}  // namespace sigdev
