#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ewt/tensor.hpp"

namespace ewt {

// File-format violations map to CLI exit code 3.
struct MalformedFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MatrixFile {
  std::string kind;  // state | witness | operator
  BipartiteOperator op;
  nlohmann::json meta = nlohmann::json::object();
};

nlohmann::json matrix_file_to_json(const MatrixFile& mf);
MatrixFile matrix_file_from_json(const nlohmann::json& j);
void save_matrix_file(const std::string& path, const MatrixFile& mf);
// Validates structure; states must additionally be Hermitian with unit trace
// within 1e-8.
MatrixFile load_matrix_file(const std::string& path);

nlohmann::json vector_to_json(const PureState& psi);
PureState vector_from_json(const nlohmann::json& j);
void save_vector_file(const std::string& path, const PureState& psi);
PureState load_vector_file(const std::string& path);

void save_vector_set(const std::string& path, const std::vector<PureState>& vectors);
std::vector<PureState> load_vector_set(const std::string& path);

}  // namespace ewt
