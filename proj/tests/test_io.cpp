#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "sigdev/io.hpp"
#include "sigdev/rng.hpp"

using namespace sigdev;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() /
                   ("sigdev_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

SampledPath sample_path() {
  SampledPath p;
  p.times.resize(3);
  p.times << 0.0, 0.25, 1.0;
  p.values.resize(3, 2);
  p.values << 0.0, 0.0, 0.1234567890123456, -2.5, 1.0 / 3.0, 4.0;
  return p;
}

}  // namespace

TEST_CASE("tensor json round trip is bit exact") {
  RngStream rng(71, 0);
  TruncatedTensor t(3, 3);
  for (int n = 0; n <= 3; ++n)
    for (auto& c : t.level(n)) c = rng.gaussian();
  const TruncatedTensor back = tensor_from_json(tensor_to_json(t));
  CHECK(back.d() == 3);
  CHECK(back.depth() == 3);
  for (int n = 0; n <= 3; ++n)
    for (std::size_t i = 0; i < t.level(n).size(); ++i)
      CHECK(back.level(n)[i] == t.level(n)[i]);

  TempDir dir;
  save_tensor(t, dir.path / "t.json");
  const TruncatedTensor loaded = load_tensor(dir.path / "t.json");
  for (int n = 0; n <= 3; ++n)
    for (std::size_t i = 0; i < t.level(n).size(); ++i)
      CHECK(loaded.level(n)[i] == t.level(n)[i]);
}

TEST_CASE("path csv round trip") {
  TempDir dir;
  const SampledPath p = sample_path();
  save_path_csv(p, dir.path / "p.csv");
  const SampledPath back = load_path_csv(dir.path / "p.csv");
  CHECK((back.times - p.times).norm() == 0.0);
  CHECK((back.values - p.values).norm() == 0.0);
}

TEST_CASE("malformed csv reports the line number") {
  TempDir dir;
  const auto file = dir.path / "bad.csv";

  std::ofstream(file) << "t,x1\n0.0,0.0\n0.5\n";
  try {
    load_path_csv(file);
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    CHECK(e.line == 3);
  }

  std::ofstream(file) << "t,x1\n0.0,zero\n";
  try {
    load_path_csv(file);
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    CHECK(e.line == 2);
  }

  std::ofstream(file) << "";
  CHECK_THROWS_AS(load_path_csv(file), CsvError);
}

TEST_CASE("path batch round trip") {
  TempDir dir;
  std::vector<SampledPath> paths{sample_path(), sample_path()};
  paths[1].values(2, 1) = 7.0;
  save_path_batch(paths, dir.path / "batch");
  const auto back = load_path_batch(dir.path / "batch");
  REQUIRE(back.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK((back[i].times - paths[i].times).norm() == 0.0);
    CHECK((back[i].values - paths[i].values).norm() == 0.0);
  }
}

TEST_CASE("matrix json round trip") {
  CMat m(2, 2);
  m << std::complex<double>(1.0, -2.0), std::complex<double>(0.0, 0.5),
      std::complex<double>(-1.0 / 3.0, 0.0), std::complex<double>(4.0, 4.0);
  const CMat back = matrix_from_json(matrix_to_json(m), 2);
  CHECK((back - m).norm() == 0.0);
}

TEST_CASE("class names") {
  CHECK(class_name(MatrixClass::TridiagAntisym) == "tridiag-antisym");
  CHECK(class_name(MatrixClass::Antisym) == "antisym");
  CHECK(class_name(MatrixClass::SkewHermitian) == "skew-hermitian");
  for (auto cls : {MatrixClass::TridiagAntisym, MatrixClass::Antisym,
                   MatrixClass::SkewHermitian})
    CHECK(class_from_name(class_name(cls)) == cls);
  CHECK_THROWS(class_from_name("diagonal"));
}

TEST_CASE("trained parameters round trip") {
  DistanceSpec spec;
  spec.cls = MatrixClass::SkewHermitian;
  spec.K = 3;
  spec.k = 4;
  spec.d = 2;
  const MapParameters params = init_params(spec, 5);
  const std::vector<double> trace{0.1, 0.2, 0.3};
  const nlohmann::json j =
      trained_params_to_json(spec, params, 5, 3, trace);
  CHECK(j.at("seed") == 5);
  CHECK(j.at("iterations") == 3);
  CHECK(j.at("loss_trace").size() == 3);

  const auto [spec2, params2] = trained_params_from_json(j);
  CHECK(spec2.cls == spec.cls);
  CHECK(spec2.K == spec.K);
  CHECK(spec2.k == spec.k);
  CHECK(spec2.d == spec.d);
  REQUIRE(params2.values.size() == params.values.size());
  for (std::size_t i = 0; i < params.values.size(); ++i)
    CHECK(params2.values[i] == params.values[i]);
}
