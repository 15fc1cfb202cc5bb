#include "sigdev/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace sigdev {

nlohmann::json tensor_to_json(const TruncatedTensor& t) {
  nlohmann::json levels = nlohmann::json::array();
  for (int n = 0; n <= t.depth(); ++n) levels.push_back(t.level(n));
  return {{"d", t.d()}, {"depth", t.depth()}, {"levels", levels}};
}

TruncatedTensor tensor_from_json(const nlohmann::json& j) {
  const int d = j.at("d").get<int>();
  const int depth = j.at("depth").get<int>();
  TruncatedTensor t(d, depth);
  const auto& levels = j.at("levels");
  if (static_cast<int>(levels.size()) != depth + 1)
    throw std::runtime_error("tensor JSON: wrong number of levels");
  for (int n = 0; n <= depth; ++n) {
    const auto arr = levels[n].get<std::vector<double>>();
    if (arr.size() != t.level(n).size())
      throw std::runtime_error("tensor JSON: level " + std::to_string(n) +
                               " has wrong size");
    t.level(n) = arr;
  }
  return t;
}

void save_tensor(const TruncatedTensor& t, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  out << tensor_to_json(t).dump(2) << "\n";
}

TruncatedTensor load_tensor(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return tensor_from_json(nlohmann::json::parse(in));
}

void save_path_csv(const SampledPath& p, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  out << "t";
  for (int c = 1; c <= p.dim(); ++c) out << ",x" << c;
  out << "\n";
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < p.values.rows(); ++r) {
    out << p.times[r];
    for (int c = 0; c < p.dim(); ++c) out << "," << p.values(r, c);
    out << "\n";
  }
}

SampledPath load_path_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty file", 1);
  // header: t,x1,...,xd
  int d = 0;
  {
    std::stringstream ss(line);
    std::string field;
    if (!std::getline(ss, field, ',') || field != "t")
      throw CsvError("header must start with 't'", 1);
    while (std::getline(ss, field, ',')) ++d;
    if (d < 1) throw CsvError("no coordinate columns", 1);
  }
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> row;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw CsvError("bad number '" + field + "'", line_no);
      }
    }
    if (static_cast<int>(row.size()) != d + 1)
      throw CsvError("expected " + std::to_string(d + 1) + " fields", line_no);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw CsvError("need at least 2 samples", line_no);
  SampledPath p;
  p.times.resize(rows.size());
  p.values.resize(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    p.times[static_cast<Eigen::Index>(r)] = rows[r][0];
    for (int c = 0; c < d; ++c)
      p.values(static_cast<Eigen::Index>(r), c) = rows[r][c + 1];
  }
  p.validate();
  return p;
}

void save_path_batch(const std::vector<SampledPath>& paths,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json index;
  index["paths"] = nlohmann::json::array();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string name = "path_" + std::to_string(i) + ".csv";
    save_path_csv(paths[i], dir / name);
    index["paths"].push_back(name);
  }
  std::ofstream out(dir / "index.json");
  out << index.dump(2) << "\n";
}

std::vector<SampledPath> load_path_batch(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.json");
  if (!in) throw std::runtime_error("cannot open " + (dir / "index.json").string());
  const auto index = nlohmann::json::parse(in);
  std::vector<SampledPath> paths;
  for (const auto& name : index.at("paths"))
    paths.push_back(load_path_csv(dir / name.get<std::string>()));
  return paths;
}

nlohmann::json matrix_to_json(const CMat& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      arr.push_back({m(i, j).real(), m(i, j).imag()});
  return arr;
}

CMat matrix_from_json(const nlohmann::json& j, int k) {
  if (static_cast<int>(j.size()) != k * k)
    throw std::runtime_error("matrix JSON: wrong entry count");
  CMat m(k, k);
  int idx = 0;
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < k; ++c, ++idx)
      m(i, c) = std::complex<double>(j[idx][0].get<double>(),
                                     j[idx][1].get<double>());
  return m;
}

std::string class_name(MatrixClass cls) {
  switch (cls) {
    case MatrixClass::TridiagAntisym: return "tridiag-antisym";
    case MatrixClass::Antisym: return "antisym";
    case MatrixClass::SkewHermitian: return "skew-hermitian";
  }
  return "?";
}

MatrixClass class_from_name(const std::string& name) {
  if (name == "tridiag-antisym") return MatrixClass::TridiagAntisym;
  if (name == "antisym") return MatrixClass::Antisym;
  if (name == "skew-hermitian") return MatrixClass::SkewHermitian;
  throw std::runtime_error("unknown matrix class '" + name + "'");
}

nlohmann::json trained_params_to_json(const DistanceSpec& spec,
                                      const MapParameters& params,
                                      std::uint64_t seed, int iterations,
                                      const std::vector<double>& loss_trace) {
  return {{"spec",
           {{"class", class_name(spec.cls)},
            {"K", spec.K},
            {"k", spec.k},
            {"d", spec.d}}},
          {"params", params.values},
          {"seed", seed},
          {"iterations", iterations},
          {"loss_trace", loss_trace}};
}

std::pair<DistanceSpec, MapParameters> trained_params_from_json(
    const nlohmann::json& j) {
  DistanceSpec spec;
  const auto& s = j.at("spec");
  spec.cls = class_from_name(s.at("class").get<std::string>());
  spec.K = s.at("K").get<int>();
  spec.k = s.at("k").get<int>();
  spec.d = s.at("d").get<int>();
  MapParameters params;
  params.values = j.at("params").get<std::vector<double>>();
  return {spec, params};
}

}  // namespace sigdev
