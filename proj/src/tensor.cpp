#include "ewt/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace ewt {

namespace {
constexpr double kRankTolFactor = 1e-8;
}

BipartiteOperator::BipartiteOperator(Matrix m, int d_a, int d_b)
    : mat(std::move(m)), dA(d_a), dB(d_b) {
  if (dA <= 0 || dB <= 0) throw std::invalid_argument("factor dimensions must be positive");
  if (mat.rows() != mat.cols() || mat.rows() != static_cast<Eigen::Index>(dA) * dB)
    throw std::invalid_argument("operator dimension does not match dA*dB");
}

PureState::PureState(Vector v, int d_a, int d_b) : vec(std::move(v)), dA(d_a), dB(d_b) {
  if (dA <= 0 || dB <= 0) throw std::invalid_argument("factor dimensions must be positive");
  if (vec.size() != static_cast<Eigen::Index>(dA) * dB)
    throw std::invalid_argument("vector length does not match dA*dB");
}

Matrix unit_matrix(int d, int i, int j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor_product(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator& x, Side side) {
  const int dA = x.dA, dB = x.dB;
  Matrix out(x.mat.rows(), x.mat.cols());
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j)
      for (int k = 0; k < dB; ++k)
        for (int l = 0; l < dB; ++l) {
          if (side == Side::B)
            out(pair_index(i, k, dB), pair_index(j, l, dB)) =
                x.mat(pair_index(i, l, dB), pair_index(j, k, dB));
          else
            out(pair_index(i, k, dB), pair_index(j, l, dB)) =
                x.mat(pair_index(j, k, dB), pair_index(i, l, dB));
        }
  return {std::move(out), dA, dB};
}

Matrix partial_trace(const BipartiteOperator& x, Side traced) {
  const int dA = x.dA, dB = x.dB;
  if (traced == Side::B) {
    Matrix out = Matrix::Zero(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j)
        for (int k = 0; k < dB; ++k)
          out(i, j) += x.mat(pair_index(i, k, dB), pair_index(j, k, dB));
    return out;
  }
  Matrix out = Matrix::Zero(dB, dB);
  for (int k = 0; k < dB; ++k)
    for (int l = 0; l < dB; ++l)
      for (int i = 0; i < dA; ++i)
        out(k, l) += x.mat(pair_index(i, k, dB), pair_index(i, l, dB));
  return out;
}

Matrix realign(const BipartiteOperator& x) {
  const int dA = x.dA, dB = x.dB;
  Matrix out(static_cast<Eigen::Index>(dA) * dA, static_cast<Eigen::Index>(dB) * dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j)
      for (int k = 0; k < dB; ++k)
        for (int l = 0; l < dB; ++l)
          out(i * dA + j, k * dB + l) = x.mat(pair_index(i, k, dB), pair_index(j, l, dB));
  return out;
}

SchmidtData schmidt_decompose(const PureState& psi) {
  if (psi.vec.norm() <= 0.0)
    throw std::invalid_argument("Schmidt decomposition of the zero vector is undefined");
  Matrix m(psi.dA, psi.dB);
  for (int i = 0; i < psi.dA; ++i)
    for (int k = 0; k < psi.dB; ++k) m(i, k) = psi.vec(pair_index(i, k, psi.dB));

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtData out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();  // psi = sum_m s_m u_m (x) right_m
  const double tol = kRankTolFactor * out.coefficients(0);
  out.rank = 0;
  for (Eigen::Index i = 0; i < out.coefficients.size(); ++i)
    if (out.coefficients(i) > tol) ++out.rank;
  return out;
}

int schmidt_rank(const PureState& psi) { return schmidt_decompose(psi).rank; }

double k_norm_squared(const PureState& psi, int k) {
  const int d = std::min(psi.dA, psi.dB);
  if (k < 1 || k > d) throw std::invalid_argument("k outside [1, min(dA,dB)]");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("k-norm requires a normalized state");
  const SchmidtData sd = schmidt_decompose(psi);
  double sum = 0.0;
  for (int i = 0; i < k && i < sd.coefficients.size(); ++i)
    sum += sd.coefficients(i) * sd.coefficients(i);
  return sum;
}

namespace {

// first component of visible magnitude made real positive
void fix_column_phases(Matrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    const double scale = v.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > 1e-12 * scale) {
        Complex phase = v(r, c) / std::abs(v(r, c));
        v.col(c) /= phase;
        break;
      }
    }
  }
}

}  // namespace

Spectrum hermitian_spectrum(const Matrix& x) {
  if (!is_hermitian(x, 1e-10)) throw std::invalid_argument("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::Index n = x.rows();
  Spectrum out;
  out.eigenvalues = RealVector(n);
  out.eigenvectors = Matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  fix_column_phases(out.eigenvectors);
  return out;
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

BipartiteOperator operator+(const BipartiteOperator& a, const BipartiteOperator& b) {
  if (a.dA != b.dA || a.dB != b.dB) throw std::invalid_argument("dimension mismatch");
  return {a.mat + b.mat, a.dA, a.dB};
}

BipartiteOperator operator-(const BipartiteOperator& a, const BipartiteOperator& b) {
  if (a.dA != b.dA || a.dB != b.dB) throw std::invalid_argument("dimension mismatch");
  return {a.mat - b.mat, a.dA, a.dB};
}

BipartiteOperator operator*(double s, const BipartiteOperator& a) {
  return {s * a.mat, a.dA, a.dB};
}

}  // namespace ewt
