#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "sigdev/development.hpp"
#include "sigdev/io.hpp"

using namespace sigdev;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() /
                   ("sigdev_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SampledPath two_segment_path() {
  SampledPath p;
  p.times.resize(3);
  p.times << 0.0, 0.5, 1.0;
  p.values.resize(3, 2);
  p.values << 0.0, 0.0, 1.0, 0.5, 1.5, 2.0;
  return p;
}

}  // namespace

TEST_CASE("sig matches the library and respects --depth 0") {
  TempDir dir;
  const SampledPath p = two_segment_path();
  save_path_csv(p, dir.path / "p.csv");

  const auto out = (dir.path / "sig.json").string();
  REQUIRE(run("sig " + (dir.path / "p.csv").string() + " --depth 3 --out " +
              out) == 0);
  const TruncatedTensor got = load_tensor(out);
  const TruncatedTensor want = signature(p, 3);
  for (int n = 0; n <= 3; ++n)
    for (std::size_t i = 0; i < want.level(n).size(); ++i)
      CHECK(got.level(n)[i] == want.level(n)[i]);

  REQUIRE(run("sig " + (dir.path / "p.csv").string() + " --depth 0 --out " +
              out) == 0);
  const TruncatedTensor unit = load_tensor(out);
  CHECK(unit.depth() == 0);
  CHECK(unit.level(0)[0] == 1.0);
}

TEST_CASE("sig of a concatenated csv equals the product of halves") {
  TempDir dir;
  const SampledPath a = two_segment_path();
  SampledPath b = two_segment_path();
  b.values *= -0.5;
  save_path_csv(concatenate(a, b), dir.path / "ab.csv");

  const auto out = (dir.path / "sig.json").string();
  REQUIRE(run("sig " + (dir.path / "ab.csv").string() + " --depth 3 --out " +
              out) == 0);
  const TruncatedTensor got = load_tensor(out);
  const TruncatedTensor want =
      tensor_product(signature(a, 3), signature(b, 3));
  for (int n = 0; n <= 3; ++n)
    for (std::size_t i = 0; i < want.level(n).size(); ++i)
      CHECK(got.level(n)[i] == doctest::Approx(want.level(n)[i]).epsilon(1e-13));
}

TEST_CASE("malformed csv exits with code 2") {
  TempDir dir;
  std::ofstream(dir.path / "bad.csv") << "t,x1\n0.0,0.0\nnope,1.0\n";
  CHECK(run("sig " + (dir.path / "bad.csv").string() + " --out " +
            (dir.path / "o.json").string()) == 2);
}

TEST_CASE("recover --bm emits known coefficients and diagnostics") {
  TempDir dir;
  const auto out = (dir.path / "rec.json").string();
  const auto diag = (dir.path / "diag.csv").string();
  REQUIRE(run("recover --bm 1.0 --dim 3 --depth 4 --out " + out +
              " --diagnostics " + diag) == 0);
  const TruncatedTensor got = load_tensor(out);
  CHECK(got.coeff(Word({1, 1}, 3)) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(got.coeff(Word({1, 1, 2, 2}, 3)) ==
        doctest::Approx(0.125).epsilon(1e-9));
  CHECK(std::abs(got.coeff(Word({1, 2, 1, 2}, 3))) <= 1e-9);

  const std::string csv = slurp(diag);
  CHECK(csv.find("word,c_w,k,value,fd_value,abs_err") == 0);
}

TEST_CASE("recover round-trips a tensor file") {
  TempDir dir;
  TruncatedTensor x(2, 3);
  x.coeff(Word({1}, 2)) = 1.5;
  x.coeff(Word({2, 1}, 2)) = -0.25;
  x.coeff(Word({1, 2, 2}, 2)) = 3.0;
  x.level(0)[0] = 2.0;
  save_tensor(x, dir.path / "x.json");

  const auto out = (dir.path / "rec.json").string();
  REQUIRE(run("recover --tensor " + (dir.path / "x.json").string() +
              " --depth 3 --out " + out + " --diagnostics " +
              (dir.path / "d.csv").string()) == 0);
  const TruncatedTensor got = load_tensor(out);
  for (int n = 0; n <= 3; ++n)
    for (std::size_t i = 0; i < x.level(n).size(); ++i)
      CHECK(std::abs(got.level(n)[i] - x.level(n)[i]) <= 1e-10);
}

TEST_CASE("recover with too small k exits with code 3") {
  TempDir dir;
  CHECK(run("recover --bm 1.0 --depth 4 --k 3 --out " +
            (dir.path / "o.json").string() + " --diagnostics " +
            (dir.path / "d.csv").string()) == 3);
}

TEST_CASE("experiment with a broken config exits with code 4") {
  TempDir dir;
  std::ofstream(dir.path / "cfg.json")
      << R"({"simulate": {"train_pool": 10, "test_pool": 10},
             "train": {}, "test": {"N": 1, "M": 5, "m": 2}})";
  CHECK(run("experiment " + (dir.path / "cfg.json").string() + " --out " +
            (dir.path / "exp").string()) == 4);
}

TEST_CASE("experiment runs end to end and is seed-deterministic") {
  TempDir dir;
  std::ofstream(dir.path / "cfg.json") << R"({
    "simulate": {"dim": 1, "steps": 8, "train_pool": 16, "test_pool": 16},
    "train": {"K": 2, "k": 3, "iterations": 4, "batch": 8},
    "test": {"N": 2, "M": 10, "m": 5, "n": 5, "h_list": [0.5, 0.2]},
    "seed": 7})";

  const auto out1 = dir.path / "exp1";
  const auto out2 = dir.path / "exp2";
  REQUIRE(run("experiment " + (dir.path / "cfg.json").string() + " --out " +
              out1.string()) == 0);
  REQUIRE(run("experiment " + (dir.path / "cfg.json").string() + " --out " +
              out2.string()) == 0);

  const std::string power = slurp(out1 / "power.csv");
  CHECK(power.find("h,statistic,power,type1") == 0);
  CHECK(power.find("\n0.5,") != std::string::npos);
  CHECK(fs::exists(out1 / "params.json"));
  CHECK(fs::exists(out1 / "timing.csv"));

  // timing columns differ run to run; the statistical columns must not
  auto strip_timing = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, kept;
    while (std::getline(in, line)) {
      std::size_t fields = 0, pos = 0;
      for (std::size_t i = 0; i < line.size() && fields < 5; ++i)
        if (line[i] == ',') {
          ++fields;
          pos = i;
        }
      kept += line.substr(0, pos) + "\n";
    }
    return kept;
  };
  CHECK(strip_timing(power) == strip_timing(slurp(out2 / "power.csv")));
}

TEST_CASE("simulate then train then permtest pipeline") {
  TempDir dir;
  const auto x_dir = (dir.path / "x").string();
  const auto y_dir = (dir.path / "y").string();
  REQUIRE(run("--seed 1 simulate --hurst 0.5 --dim 1 --steps 8 --count 30 --out " +
              x_dir) == 0);
  REQUIRE(run("--seed 2 simulate --hurst 0.2 --dim 1 --steps 8 --count 30 --out " +
              y_dir) == 0);
  CHECK(load_path_batch(x_dir).size() == 30);

  const auto params = (dir.path / "params.json").string();
  REQUIRE(run("--seed 3 train --x " + x_dir + " --y " + y_dir +
              " --K 2 --k 3 --iterations 4 --batch 8 --out " + params) == 0);
  const auto blob = nlohmann::json::parse(slurp(params));
  CHECK(blob.at("spec").at("d") == 2);
  CHECK(blob.at("loss_trace").size() == 4);

  const auto report = (dir.path / "report.json").string();
  REQUIRE(run("--seed 4 permtest --x " + x_dir + " --y " + y_dir +
              " --params " + params + " --N 2 --M 10 --m 8 --n 8 --out " +
              report) == 0);
  const auto rep = nlohmann::json::parse(slurp(report));
  CHECK(rep.contains("power"));
  CHECK(rep.at("statistics").size() == 2);
}
