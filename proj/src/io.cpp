#include "ewt/io.hpp"

#include <cmath>
#include <fstream>

namespace ewt {

namespace {

using nlohmann::json;

json matrix_to_parts(const Matrix& m, const char* which) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(which[0] == 'r' ? m(i, j).real() : m(i, j).imag());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_parts(const json& re, const json& im, Eigen::Index n) {
  if (!re.is_array() || !im.is_array() || Eigen::Index(re.size()) != n ||
      Eigen::Index(im.size()) != n)
    throw MalformedFileError("re/im must be n x n arrays");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& rrow = re[i];
    const auto& irow = im[i];
    if (Eigen::Index(rrow.size()) != n || Eigen::Index(irow.size()) != n)
      throw MalformedFileError("re/im rows have the wrong length");
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = Complex(rrow[j].get<double>(), irow[j].get<double>());
  }
  return m;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFileError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MalformedFileError(path + ": " + e.what());
  }
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

json matrix_file_to_json(const MatrixFile& mf) {
  json j;
  j["kind"] = mf.kind;
  j["d_a"] = mf.op.dA;
  j["d_b"] = mf.op.dB;
  j["re"] = matrix_to_parts(mf.op.mat, "re");
  j["im"] = matrix_to_parts(mf.op.mat, "im");
  j["meta"] = mf.meta;
  return j;
}

MatrixFile matrix_file_from_json(const json& j) {
  try {
    MatrixFile mf;
    mf.kind = j.at("kind").get<std::string>();
    if (mf.kind != "state" && mf.kind != "witness" && mf.kind != "operator")
      throw MalformedFileError("kind must be state, witness or operator");
    const int da = j.at("d_a").get<int>();
    const int db = j.at("d_b").get<int>();
    if (da < 1 || db < 1) throw MalformedFileError("factor dimensions must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(da) * db;
    Matrix m = matrix_from_parts(j.at("re"), j.at("im"), n);
    mf.op = BipartiteOperator{std::move(m), da, db};
    mf.meta = j.value("meta", json::object());

    if (mf.kind == "state") {
      if (!is_hermitian(mf.op.mat, 1e-8))
        throw MalformedFileError("state file is not Hermitian");
      if (std::abs(mf.op.mat.trace().real() - 1.0) > 1e-8 ||
          std::abs(mf.op.mat.trace().imag()) > 1e-8)
        throw MalformedFileError("state file does not have unit trace");
    }
    return mf;
  } catch (const json::exception& e) {
    throw MalformedFileError(std::string("matrix file: ") + e.what());
  }
}

void save_matrix_file(const std::string& path, const MatrixFile& mf) {
  write_json(path, matrix_file_to_json(mf));
}

MatrixFile load_matrix_file(const std::string& path) {
  return matrix_file_from_json(read_json(path));
}

json vector_to_json(const PureState& psi) {
  json j;
  j["kind"] = "vector";
  j["d_a"] = psi.dA;
  j["d_b"] = psi.dB;
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < psi.vec.size(); ++i) {
    re.push_back(psi.vec(i).real());
    im.push_back(psi.vec(i).imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

PureState vector_from_json(const json& j) {
  try {
    const int da = j.at("d_a").get<int>();
    const int db = j.at("d_b").get<int>();
    const Eigen::Index n = static_cast<Eigen::Index>(da) * db;
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (Eigen::Index(re.size()) != n || Eigen::Index(im.size()) != n)
      throw MalformedFileError("vector length does not match d_a*d_b");
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v(i) = Complex(re[i].get<double>(), im[i].get<double>());
    return PureState{std::move(v), da, db};
  } catch (const json::exception& e) {
    throw MalformedFileError(std::string("vector file: ") + e.what());
  }
}

void save_vector_file(const std::string& path, const PureState& psi) {
  write_json(path, vector_to_json(psi));
}

PureState load_vector_file(const std::string& path) {
  return vector_from_json(read_json(path));
}

void save_vector_set(const std::string& path, const std::vector<PureState>& vectors) {
  json j;
  j["kind"] = "vector_set";
  j["d_a"] = vectors.empty() ? 0 : vectors[0].dA;
  j["d_b"] = vectors.empty() ? 0 : vectors[0].dB;
  json arr = json::array();
  for (const auto& v : vectors) {
    json e = vector_to_json(v);
    e.erase("kind");
    arr.push_back(std::move(e));
  }
  j["vectors"] = std::move(arr);
  write_json(path, j);
}

std::vector<PureState> load_vector_set(const std::string& path) {
  const json j = read_json(path);
  try {
    std::vector<PureState> out;
    for (const auto& e : j.at("vectors")) out.push_back(vector_from_json(e));
    return out;
  } catch (const json::exception& e) {
    throw MalformedFileError(std::string("vector set: ") + e.what());
  }
}

}  // namespace ewt
