#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ewt/classifier.hpp"
#include "ewt/maps.hpp"
#include "ewt/states.hpp"
#include "ewt/tensor.hpp"

namespace ewt {

BipartiteOperator flip_witness(int d);
BipartiteOperator reduction_witness(int d);  // I (x) I - d P+_d

// W[A]: diagonal blocks diag(a_i1..a_id), off-diagonal blocks -E_ij.
struct DiagonalTypeSpec {
  RealMatrix A;  // entrywise nonnegative, d x d

  explicit DiagonalTypeSpec(RealMatrix a);
  int d() const { return int(A.rows()); }
};

BipartiteOperator diagonal_type_witness(const DiagonalTypeSpec& spec);

// Analytic block-positivity: sup over the probability simplex of
// sum_i t_i / B_i(t) with B_i = t_i + sum_j A_ij t_j. The criterion depends
// only on the moduli t_i = |x_i|^2, so the search space is the simplex.
struct DiagonalTypeBlockPositivity {
  bool block_positive = false;
  double worst_margin = 0.0;  // 1 - max sum; negative when violated
  RealVector argmax;
};
DiagonalTypeBlockPositivity diagonal_type_block_positive(const DiagonalTypeSpec& spec,
                                                         std::uint64_t seed = 0,
                                                         int starts = 32);
// Positivity of W[A] via the D matrix (D_ii = a_ii, D_ij = -1).
bool diagonal_type_positive(const DiagonalTypeSpec& spec);

RealMatrix circulant_a_matrix(int d, const RealVector& alpha);  // a_ij = alpha_{j-i mod d}

// Kossakowski construction: doubly stochastic A from an orthogonal (d-1)x(d-1)
// rotation; every such W[A] is block-positive.
RealMatrix kossakowski_a_matrix(int d, const RealMatrix& rotation);
RealMatrix kossakowski_a_matrix_d3(double alpha);  // d=3 with R(alpha)

struct WAbcClassification {
  bool is_positive = false;
  bool is_ew = false;
  bool is_indecomposable = false;
  bool is_3_schmidt = false;
  std::optional<std::string> violated_condition;

  bool block_positive() const { return is_positive || is_ew; }
};
WAbcClassification classify_w_abc(double a, double b, double c);

BipartiteOperator w_abc_witness(double a, double b, double c);
BipartiteOperator w_ab_witness(double a, double b);  // d=2 circulant
BipartiteOperator w_dk_witness(int d, int k);
// Bell-basis form (d+1-k) Pi_0 + sum_{l<k} Pi_l - d P_00; equals the
// diagonal-type assembly entrywise.
BipartiteOperator w_dk_bell_form(int d, int k);

// W = a ((d-1) I (x) I + sum_{k+l>0} c_kl U_kl (x) U_{-k,l}); block positive
// whenever all |c_kl| <= 1. Hermiticity needs c_{-k,-l} = conj(c_kl).
BipartiteOperator bell_diagonal_witness(int d, const Matrix& c, double a,
                                        bool require_block_positive = true);

Matrix canonical_antisymmetric_unitary(int n);  // i I_n (x) sigma_2, size 2n

// Phi_U(X) = (I tr X - X - U X^t U^dag) / (2(N-1)) on M_2N, U antisymmetric
// unitary. Unital and trace-preserving.
struct MapWitness {
  MapDescriptor map;
  BipartiteOperator witness;  // the Choi matrix
};
MapWitness breuer_hall(const Matrix& u);
// 2x2 block generalization of the Robertson map on M_2N (N x N blocks).
MapWitness robertson_block(int n);
// N x N blocks of 2x2 with deformation coefficients z_kl (|z| <= 1,
// z_kl = conj(z_lk)); z = -1 everywhere reproduces breuer_hall with the
// canonical U.
MapWitness z_deformed(int n, const Matrix& z);

// W_m = (1 + (m-1)/d) I - sum_{alpha,i} |e_i^a><e_i^a| (x) |f_i^a><f_i^a|
// for two mutually unbiased families; block-positive for m <= d+1.
BipartiteOperator mub_witness(const std::vector<Matrix>& bases,
                              const std::vector<Matrix>& tilde_bases);
// Standard MUB family: d = 2 uses the Pauli eigenbases; odd prime d uses the
// quadratic Weyl construction (m <= d+1 bases).
std::vector<Matrix> standard_mub(int d, int m);

BipartiteOperator chsh_witness(const Eigen::Vector3d& a1, const Eigen::Vector3d& a2,
                               const Eigen::Vector3d& b1, const Eigen::Vector3d& b2);

struct RealignmentWitness {
  BipartiteOperator witness;
  double schmidt_sum = 0.0;  // sum of operator Schmidt coefficients of rho
  bool detects = false;      // schmidt_sum > 1; otherwise the witness is void
};
// W = I - sum_k G^A_k (x) G^B_k from the Hermitian operator Schmidt
// decomposition of rho; tr(W rho) = 1 - sum_k lambda_k.
RealignmentWitness realignment_witness(const BipartiteOperator& rho);

// Hermitian operator Schmidt decomposition rho = sum_k s_k G^A_k (x) G^B_k
// with Hermitian factors; s are the realignment singular values.
struct OperatorSchmidt {
  RealVector coefficients;
  std::vector<Matrix> left;
  std::vector<Matrix> right;
};
OperatorSchmidt operator_schmidt_hermitian(const BipartiteOperator& rho);

// Spectral construction W = W+ - W- over an orthonormal basis psi_alpha:
// W- collects the first L terms. mu_l = sum_{a<=L} lambda_a |psi_a|_l^2 /
// (1 - sum_{a<=L} |psi_a|_l^2).
struct SpectralWitnessSpec {
  int dA = 0, dB = 0;
  Matrix basis;        // D x D unitary, columns psi_alpha
  RealVector lambdas;  // >= 0, strictly positive beyond L
  int L = 0;
  int k = 1;
};

struct SpectralWitnessResult {
  BipartiteOperator witness;
  double mu_k = 0.0;
  std::optional<double> mu_k1;
  bool in_w_k = false;          // condition (T1): lambda_alpha >= mu_k beyond L
  bool is_k1_schmidt = false;   // (T1) and (T2): mu_{k+1} > lambda_alpha beyond L
};
double spectral_mu(const SpectralWitnessSpec& spec, int ell);
SpectralWitnessResult spectral_k_schmidt_witness(const SpectralWitnessSpec& spec);
// The I - pd P+ family as a spectral spec.
SpectralWitnessSpec phi_p_spectral_spec(int d, double p, int k);

enum class EdgeSubtraction { identity, max_entangled };

struct EdgeSteeredWitness {
  BipartiteOperator witness;
  double epsilon = 0.0;
  bool subtraction_possible = false;  // epsilon above tolerance
};
// W = P + Q^Gamma - eps I (or - eps d |Psi><Psi| in the UPB variant), with
// eps the product-state minimum of P + Q^Gamma.
EdgeSteeredWitness edge_steered_witness(const BipartiteOperator& p,
                                        const BipartiteOperator& q,
                                        EdgeSubtraction mode = EdgeSubtraction::identity,
                                        const OptimOptions& opts = {});

struct ThreeQubitWitnesses {
  BipartiteOperator genuine;        // I - (3/2) |W><W|
  BipartiteOperator not_full_sep;   // I - (9/4) |W><W|
  BipartiteOperator not_w_class;    // I - (4/3) |GHZ><GHZ|
};
ThreeQubitWitnesses three_qubit_witnesses();

}  // namespace ewt
