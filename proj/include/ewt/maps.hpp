#pragma once

#include <functional>

#include "ewt/tensor.hpp"

namespace ewt {

enum class ChoiConvention { choi, depillis };

// A linear map L(H_in) -> L(H_out), stored as its Choi matrix
// C = sum_ij E_ij (x) Phi(E_ij) in the computational basis. The de Pillis
// variant differs by a left-factor transposition, J = [T (x) id] C.
struct MapDescriptor {
  int d_in = 0;
  int d_out = 0;
  BipartiteOperator choi;  // dA = d_in, dB = d_out
  ChoiConvention convention = ChoiConvention::choi;
};

using MatrixMap = std::function<Matrix(const Matrix&)>;

MapDescriptor choi_of_map(const MatrixMap& apply, int d_in, int d_out,
                          ChoiConvention convention = ChoiConvention::choi);
Matrix apply_map(const MapDescriptor& m, const Matrix& a);
MatrixMap map_of_choi(const MapDescriptor& m);

MapDescriptor as_convention(const MapDescriptor& m, ChoiConvention target);

// Dual under tr[Phi#(A) B] = tr[A Phi(B)].
MapDescriptor dual_map(const MapDescriptor& m);

// (id (x) Phi) X, applied to the B factor; X.dB must equal m.d_in.
BipartiteOperator apply_extended(const MapDescriptor& m, const BipartiteOperator& x);

MapDescriptor identity_map(int d);
MapDescriptor transposition_map(int d);
MapDescriptor reduction_map(int d);  // R_d(X) = I tr X - X

struct PhiPFamily {
  MapDescriptor map;   // Phi_p(X) = I tr X - p X
  int k_positivity;    // largest k with Phi_p k-positive; d when CP
};
PhiPFamily phi_p(int d, double p);

}  // namespace ewt
