#include "ewt/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ewt {

PureState max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled requires d >= 2");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) v(pair_index(k, k, d)) = 1.0 / std::sqrt(double(d));
  return {std::move(v), d, d};
}

BipartiteOperator max_entangled_projector(int d) {
  const PureState psi = max_entangled(d);
  return {psi.vec * psi.vec.adjoint(), d, d};
}

BipartiteOperator flip(int d) {
  if (d < 2) throw std::invalid_argument("flip requires d >= 2");
  Matrix f = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(pair_index(j, i, d), pair_index(i, j, d)) = 1.0;
  return {std::move(f), d, d};
}

BipartiteOperator isotropic(int d, double p) {
  if (d < 2) throw std::invalid_argument("isotropic requires d >= 2");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("isotropic requires p in [0,1]");
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d;
  Matrix rho = (p / double(D)) * Matrix::Identity(D, D) +
               (1.0 - p) * max_entangled_projector(d).mat;
  return {std::move(rho), d, d};
}

BipartiteOperator werner(int d, double p) {
  if (d < 2) throw std::invalid_argument("werner requires d >= 2");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner requires p in [0,1]");
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d;
  const Matrix id = Matrix::Identity(D, D);
  const Matrix f = flip(d).mat;
  const Matrix qs = (id + f) / double(d * (d + 1));
  const Matrix qa = (id - f) / double(d * (d - 1));
  return {p * qs + (1.0 - p) * qa, d, d};
}

Matrix weyl_operator(const WeylIndex& idx) { return weyl_operator(idx.d, idx.m, idx.n); }

Matrix weyl_operator(int d, int m, int n) {
  if (d < 2) throw std::invalid_argument("weyl_operator requires d >= 2");
  m = ((m % d) + d) % d;
  n = ((n % d) + d) % d;
  Matrix u = Matrix::Zero(d, d);
  const double theta = 2.0 * std::numbers::pi / double(d);
  for (int k = 0; k < d; ++k)
    u((k + n) % d, k) = std::polar(1.0, theta * double(m) * double(k));
  return u;
}

Matrix shift_operator(int d) { return weyl_operator(d, 0, 1); }

PureState bell_state(int d, int m, int n) {
  const PureState psi = max_entangled(d);
  const Matrix u = weyl_operator(d, m, n);
  Vector v(psi.vec.size());
  for (int i = 0; i < d; ++i) v.segment(static_cast<Eigen::Index>(i) * d, d) =
      u * psi.vec.segment(static_cast<Eigen::Index>(i) * d, d);
  return {std::move(v), d, d};
}

BipartiteOperator bell_projector(int d, int m, int n) {
  const PureState psi = bell_state(d, m, n);
  return {psi.vec * psi.vec.adjoint(), d, d};
}

BipartiteOperator subspace_projector(int d, int n) {
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int m = 0; m < d; ++m) sum += bell_projector(d, m, n).mat;
  return {std::move(sum), d, d};
}

CirculantOperator::CirculantOperator(int dim, std::vector<Matrix> blk)
    : d(dim), blocks(std::move(blk)) {
  if (d < 2) throw std::invalid_argument("circulant operator requires d >= 2");
  if (blocks.size() != static_cast<size_t>(d))
    throw std::invalid_argument("circulant operator needs exactly d blocks");
  for (const auto& b : blocks)
    if (b.rows() != d || b.cols() != d)
      throw std::invalid_argument("each circulant block must be d x d");
}

BipartiteOperator circulant_assemble(const CirculantOperator& c) {
  const int d = c.d;
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int n = 0; n < d; ++n)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        a(pair_index(i, (i + n) % d, d), pair_index(j, (j + n) % d, d)) = c.blocks[n](i, j);
  return {std::move(a), d, d};
}

CirculantOperator circulant_pt_coeffs(const CirculantOperator& c) {
  const int d = c.d;
  // a~^(n) = sum_m a^(n+m) o (Pi S^m), Pi the permutation of pi(k) = -k.
  // Entrywise: (Pi S^m)_{ij} = 1 iff i + j + m = 0 (mod d).
  std::vector<Matrix> tilde(d, Matrix::Zero(d, d));
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if ((i + j + m) % d == 0) tilde[n](i, j) += c.blocks[(n + m) % d](i, j);
  return {d, std::move(tilde)};
}

BipartiteOperator circulant_assemble_tilde(const CirculantOperator& c) {
  const int d = c.d;
  auto pi = [d](int k) { return ((-k) % d + d) % d; };
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int n = 0; n < d; ++n)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        a(pair_index(i, (pi(i) + n) % d, d), pair_index(j, (pi(j) + n) % d, d)) =
            c.blocks[n](i, j);
  return {std::move(a), d, d};
}

BipartiteOperator upb_state(const std::vector<PureState>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("upb_state needs at least one vector");
  const int dA = vectors[0].dA, dB = vectors[0].dB;
  const Eigen::Index D = static_cast<Eigen::Index>(dA) * dB;
  for (const auto& v : vectors) {
    if (v.dA != dA || v.dB != dB) throw std::invalid_argument("mixed dimensions in UPB input");
    if (std::abs(v.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("UPB vectors must be normalized");
    if (schmidt_rank(v) != 1) throw std::invalid_argument("UPB vectors must be product vectors");
  }
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t j = i + 1; j < vectors.size(); ++j)
      if (std::abs(vectors[i].vec.dot(vectors[j].vec)) > 1e-10)
        throw std::invalid_argument("UPB vectors must be pairwise orthogonal");

  Matrix x = Matrix::Identity(D, D);
  for (const auto& v : vectors) x -= v.vec * v.vec.adjoint();
  BipartiteOperator out{std::move(x), dA, dB};
  if (min_eigenvalue(out.mat) < -1e-10 ||
      min_eigenvalue(partial_transpose(out).mat) < -1e-10)
    throw std::runtime_error("UPB complement failed the PPT self-check");
  return out;
}

std::vector<PureState> tiles_upb() {
  auto basis = [](int k) {
    Vector e = Vector::Zero(3);
    e(k) = 1.0;
    return e;
  };
  const double s = 1.0 / std::sqrt(2.0);
  const Vector e0 = basis(0), e1 = basis(1), e2 = basis(2);
  const Vector m01 = s * (e0 - e1), m12 = s * (e1 - e2);
  const Vector all = (e0 + e1 + e2) / std::sqrt(3.0);
  std::vector<PureState> out;
  out.emplace_back(tensor_product(e0, m01), 3, 3);
  out.emplace_back(tensor_product(m01, e2), 3, 3);
  out.emplace_back(tensor_product(e2, m12), 3, 3);
  out.emplace_back(tensor_product(m12, e0), 3, 3);
  out.emplace_back(tensor_product(all, all), 3, 3);
  return out;
}

ThreeQubitStates three_qubit_states() {
  Vector ghz = Vector::Zero(8), w = Vector::Zero(8);
  const double s2 = 1.0 / std::sqrt(2.0), s3 = 1.0 / std::sqrt(3.0);
  ghz(0) = s2;  // |000>
  ghz(7) = s2;  // |111>
  w(1) = s3;    // |001>
  w(2) = s3;    // |010>
  w(4) = s3;    // |100>
  return {PureState{std::move(ghz), 2, 4}, PureState{std::move(w), 2, 4}};
}

}  // namespace ewt
