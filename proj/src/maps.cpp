#include "ewt/maps.hpp"

#include <cmath>
#include <stdexcept>

#include "ewt/states.hpp"

namespace ewt {

namespace {

Matrix choi_to_depillis(const Matrix& c, int d_in, int d_out) {
  // [T_A (x) id] C
  Matrix out(c.rows(), c.cols());
  for (int i = 0; i < d_in; ++i)
    for (int j = 0; j < d_in; ++j)
      out.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(j) * d_out,
                d_out, d_out) =
          c.block(static_cast<Eigen::Index>(j) * d_out, static_cast<Eigen::Index>(i) * d_out,
                  d_out, d_out);
  return out;
}

}  // namespace

MapDescriptor choi_of_map(const MatrixMap& apply, int d_in, int d_out,
                          ChoiConvention convention) {
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(d_in) * d_out,
                          static_cast<Eigen::Index>(d_in) * d_out);
  for (int i = 0; i < d_in; ++i)
    for (int j = 0; j < d_in; ++j) {
      Matrix block = apply(unit_matrix(d_in, i, j));
      if (block.rows() != d_out || block.cols() != d_out)
        throw std::invalid_argument("map output dimension does not match d_out");
      c.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(j) * d_out,
              d_out, d_out) = block;
    }
  MapDescriptor m{d_in, d_out, BipartiteOperator{std::move(c), d_in, d_out},
                  ChoiConvention::choi};

  // superposition check: the assembled matrix must predict the map on
  // non-basis inputs
  {
    Matrix probe = Matrix::Zero(d_in, d_in);
    for (int i = 0; i < d_in; ++i)
      for (int j = 0; j < d_in; ++j)
        probe(i, j) = Complex(std::cos(1.0 + i + 2 * j), std::sin(0.5 + 2 * i + j));
    const Matrix direct = apply(probe);
    const Matrix predicted = apply_map(m, probe);
    if ((direct - predicted).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("map is not linear on the probed superposition");
  }

  if (convention == ChoiConvention::depillis) {
    m.choi.mat = choi_to_depillis(m.choi.mat, d_in, d_out);
    m.convention = ChoiConvention::depillis;
  }
  return m;
}

MapDescriptor as_convention(const MapDescriptor& m, ChoiConvention target) {
  if (m.convention == target) return m;
  MapDescriptor out = m;
  // the transformation is an involution
  out.choi.mat = choi_to_depillis(m.choi.mat, m.d_in, m.d_out);
  out.convention = target;
  return out;
}

Matrix apply_map(const MapDescriptor& m, const Matrix& a) {
  if (a.rows() != m.d_in || a.cols() != m.d_in)
    throw std::invalid_argument("input dimension does not match d_in");
  const MapDescriptor mc = as_convention(m, ChoiConvention::choi);
  // Phi(a) = tr_A [ a^T (x) I  C ]
  Matrix out = Matrix::Zero(m.d_out, m.d_out);
  for (int i = 0; i < m.d_in; ++i)
    for (int j = 0; j < m.d_in; ++j)
      out += a(i, j) * mc.choi.mat.block(static_cast<Eigen::Index>(i) * m.d_out,
                                          static_cast<Eigen::Index>(j) * m.d_out,
                                          m.d_out, m.d_out);
  return out;
}

MatrixMap map_of_choi(const MapDescriptor& m) {
  return [m](const Matrix& a) { return apply_map(m, a); };
}

MapDescriptor dual_map(const MapDescriptor& m) {
  const MapDescriptor mc = as_convention(m, ChoiConvention::choi);
  const int din = m.d_in, dout = m.d_out;
  Matrix c(static_cast<Eigen::Index>(dout) * din, static_cast<Eigen::Index>(dout) * din);
  // (C#)_{(i,k),(j,l)} = C_{(l,j),(k,i)}
  for (int i = 0; i < dout; ++i)
    for (int j = 0; j < dout; ++j)
      for (int k = 0; k < din; ++k)
        for (int l = 0; l < din; ++l)
          c(pair_index(i, k, din), pair_index(j, l, din)) =
              mc.choi.mat(pair_index(l, j, dout), pair_index(k, i, dout));
  MapDescriptor out{dout, din, BipartiteOperator{std::move(c), dout, din},
                    ChoiConvention::choi};
  return as_convention(out, m.convention);
}

BipartiteOperator apply_extended(const MapDescriptor& m, const BipartiteOperator& x) {
  if (x.dB != m.d_in)
    throw std::invalid_argument("B factor of the input does not match the map's d_in");
  const int dA = x.dA;
  Matrix out(static_cast<Eigen::Index>(dA) * m.d_out, static_cast<Eigen::Index>(dA) * m.d_out);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j) {
      const Matrix block = x.mat.block(static_cast<Eigen::Index>(i) * x.dB,
                                       static_cast<Eigen::Index>(j) * x.dB, x.dB, x.dB);
      out.block(static_cast<Eigen::Index>(i) * m.d_out,
                static_cast<Eigen::Index>(j) * m.d_out, m.d_out, m.d_out) =
          apply_map(m, block);
    }
  return {std::move(out), dA, m.d_out};
}

MapDescriptor identity_map(int d) {
  return choi_of_map([](const Matrix& a) { return a; }, d, d);
}

MapDescriptor transposition_map(int d) {
  return choi_of_map([](const Matrix& a) { return a.transpose().eval(); }, d, d);
}

MapDescriptor reduction_map(int d) {
  return choi_of_map(
      [d](const Matrix& a) {
        return (Matrix::Identity(d, d) * a.trace() - a).eval();
      },
      d, d);
}

PhiPFamily phi_p(int d, double p) {
  if (p <= 0.0) throw std::invalid_argument("phi_p requires p > 0");
  MapDescriptor m = choi_of_map(
      [d, p](const Matrix& a) {
        return (Matrix::Identity(d, d) * a.trace() - p * a).eval();
      },
      d, d);
  // k-positive but not (k+1)-positive exactly for 1/(k+1) < p <= 1/k;
  // completely positive once p <= 1/d.
  int k;
  if (p <= 1.0 / d) {
    k = d;
  } else {
    k = static_cast<int>(std::floor(1.0 / p + 1e-12));
    if (k < 0) k = 0;
  }
  return {std::move(m), k};
}

}  // namespace ewt
