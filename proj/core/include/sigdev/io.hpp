#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigdev/distance.hpp"
#include "sigdev/path.hpp"
#include "sigdev/tensor.hpp"

namespace sigdev {

// Tensor <-> {"d": int, "depth": int, "levels": [[floats]]}, level arrays in
// word-index order. Round-trips bit-exactly (doubles survive nlohmann's
// shortest-representation printing).
nlohmann::json tensor_to_json(const TruncatedTensor& t);
TruncatedTensor tensor_from_json(const nlohmann::json& j);

void save_tensor(const TruncatedTensor& t, const std::filesystem::path& file);
TruncatedTensor load_tensor(const std::filesystem::path& file);

// Path CSV: header "t,x1,...,xd", one row per sample.
void save_path_csv(const SampledPath& p, const std::filesystem::path& file);
SampledPath load_path_csv(const std::filesystem::path& file);

// Batch: one CSV per path inside a directory plus an index JSON listing them.
void save_path_batch(const std::vector<SampledPath>& paths,
                     const std::filesystem::path& dir);
std::vector<SampledPath> load_path_batch(const std::filesystem::path& dir);

// Complex matrix as row-major [re, im] pairs.
nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j, int k);

// Trained parameters: {spec, params, seed, iterations, loss_trace}.
nlohmann::json trained_params_to_json(const DistanceSpec& spec,
                                      const MapParameters& params,
                                      std::uint64_t seed, int iterations,
                                      const std::vector<double>& loss_trace);
std::pair<DistanceSpec, MapParameters> trained_params_from_json(
    const nlohmann::json& j);

std::string class_name(MatrixClass cls);
MatrixClass class_from_name(const std::string& name);

// Raised on malformed CSV input, with the offending line number.
struct CsvError : std::runtime_error {
  int line;
  CsvError(const std::string& msg, int line_no)
      : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
        line(line_no) {}
};

}  // namespace sigdev
