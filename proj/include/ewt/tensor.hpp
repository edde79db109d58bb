#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace ewt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Index convention, used everywhere: the product space is indexed row-major
// over (A-index, B-index), i.e. |i>_A |k>_B sits at position i*dB + k.
inline Eigen::Index pair_index(Eigen::Index i, Eigen::Index k, Eigen::Index dB) {
  return i * dB + k;
}

enum class Side { A, B };

// Operator on H_A (x) H_B; mat is (dA*dB) x (dA*dB).
struct BipartiteOperator {
  Matrix mat;
  int dA = 0;
  int dB = 0;

  BipartiteOperator() = default;
  BipartiteOperator(Matrix m, int d_a, int d_b);

  int dim() const { return dA * dB; }
};

// Vector in the dA*dB product space.
struct PureState {
  Vector vec;
  int dA = 0;
  int dB = 0;

  PureState() = default;
  PureState(Vector v, int d_a, int d_b);

  double norm() const { return vec.norm(); }
  int dim() const { return dA * dB; }
};

struct SchmidtData {
  RealVector coefficients;  // nonincreasing
  Matrix left;              // dA x r, orthonormal columns
  Matrix right;             // dB x r, orthonormal columns
  int rank = 0;             // count of coefficients above rank_tol
};

struct Spectrum {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // unitary columns, matching order
};

Matrix unit_matrix(int d, int i, int j);  // E_ij
Matrix dagger(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-10);

Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product(const Vector& a, const Vector& b);

BipartiteOperator partial_transpose(const BipartiteOperator& x, Side side = Side::B);
// Traces out the named factor and returns the operator on the other one.
Matrix partial_trace(const BipartiteOperator& x, Side traced);
// dA^2 x dB^2 rearrangement; its singular values are the operator Schmidt
// coefficients of x.
Matrix realign(const BipartiteOperator& x);

SchmidtData schmidt_decompose(const PureState& psi);
int schmidt_rank(const PureState& psi);
// Sum of the k largest squared Schmidt coefficients of a normalized state.
double k_norm_squared(const PureState& psi, int k);

Spectrum hermitian_spectrum(const Matrix& x);
double min_eigenvalue(const Matrix& hermitian);

BipartiteOperator operator+(const BipartiteOperator& a, const BipartiteOperator& b);
BipartiteOperator operator-(const BipartiteOperator& a, const BipartiteOperator& b);
BipartiteOperator operator*(double s, const BipartiteOperator& a);

}  // namespace ewt
