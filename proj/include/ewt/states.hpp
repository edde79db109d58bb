#pragma once

#include <utility>
#include <vector>

#include "ewt/tensor.hpp"

namespace ewt {

PureState max_entangled(int d);
BipartiteOperator max_entangled_projector(int d);

// Swap operator F(psi (x) phi) = phi (x) psi on C^d (x) C^d.
BipartiteOperator flip(int d);

// rho_p = (p/d^2) I (x) I + (1-p) |psi+><psi+|
BipartiteOperator isotropic(int d, double p);

// rho = p Q_S + (1-p) Q_A with unit-trace projectors
// Q_S = (I+F)/(d(d+1)), Q_A = (I-F)/(d(d-1)); then tr(rho F) = 2p-1.
BipartiteOperator werner(int d, double p);

struct WeylIndex {
  int d;
  int m;
  int n;
};

// U_{mn} e_k = lambda^{mk} e_{k+n}, lambda = exp(2 pi i / d).
Matrix weyl_operator(const WeylIndex& idx);
Matrix weyl_operator(int d, int m, int n);
Matrix shift_operator(int d);  // S e_k = e_{k+1}

PureState bell_state(int d, int m, int n);         // (I (x) U_mn) psi+
BipartiteOperator bell_projector(int d, int m, int n);
BipartiteOperator subspace_projector(int d, int n);  // Pi_n = sum_m P_mn

// Block-diagonal operator over the shifted diagonal subspaces Sigma_n:
// A = sum_n sum_ij a^(n)_ij E_ij (x) E_{i+n, j+n}.
struct CirculantOperator {
  int d = 0;
  std::vector<Matrix> blocks;  // d matrices, each d x d

  CirculantOperator() = default;
  CirculantOperator(int dim, std::vector<Matrix> blk);
};

BipartiteOperator circulant_assemble(const CirculantOperator& c);
// Coefficients a~^(n) of the partial transpose, supported on the tilde
// subspaces; circulant_assemble_tilde places them there.
CirculantOperator circulant_pt_coeffs(const CirculantOperator& c);
BipartiteOperator circulant_assemble_tilde(const CirculantOperator& c);

// X = I - sum_i |a_i b_i><a_i b_i| for an orthogonal family of normalized
// product vectors; PPT by construction.
BipartiteOperator upb_state(const std::vector<PureState>& vectors);
std::vector<PureState> tiles_upb();  // standard 3x3 Tiles family

struct ThreeQubitStates {
  PureState ghz;  // stored over the 2 (x) 4 split
  PureState w;
};
ThreeQubitStates three_qubit_states();

}  // namespace ewt
