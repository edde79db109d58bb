#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ewt/classifier.hpp"
#include "ewt/rng.hpp"
#include "ewt/states.hpp"

using namespace ewt;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_hermitian(CounterRng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return (m + m.adjoint()).eval() / 2.0;
}

}  // namespace

TEST_CASE("maximally entangled state") {
  const PureState psi2 = max_entangled(2);
  CHECK(std::abs(psi2.vec(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(psi2.vec(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(psi2.vec(1)) == 0.0);
  CHECK(std::abs(psi2.vec(2)) == 0.0);

  const SchmidtData sd = schmidt_decompose(max_entangled(3));
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(sd.coefficients(i) - 1.0 / std::sqrt(3.0)) < 1e-12);

  for (int d : {2, 3, 4}) {
    const PureState psi = max_entangled(d);
    const Complex val = (psi.vec.adjoint() * flip(d).mat * psi.vec).value();
    CHECK(std::abs(val - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(max_entangled(1), std::invalid_argument);
}

TEST_CASE("isotropic family") {
  const BipartiteOperator mixed = isotropic(3, 1.0);
  CHECK(max_abs(mixed.mat - Matrix::Identity(9, 9) / 9.0) < 1e-15);
  CHECK(ppt_check(mixed).is_ppt);

  CHECK(ppt_check(isotropic(3, 0.7)).min_pt_eigenvalue < 0.0);

  for (int d : {2, 3}) {
    for (double p : {0.0, 0.3, 0.8}) {
      const BipartiteOperator rho = isotropic(d, p);
      CHECK(std::abs(rho.mat.trace().real() - 1.0) < 1e-12);
      const double expected = p / d + (1.0 - p);
      CHECK(std::abs(detect(flip(d), rho) - expected) < 1e-12);
    }
  }
  CHECK_THROWS_AS(isotropic(3, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(isotropic(3, 1.1), std::invalid_argument);
}

TEST_CASE("werner family under the unit-trace projector convention") {
  CHECK(std::abs(detect(flip(3), werner(3, 0.5))) < 1e-12);

  const BipartiteOperator singlet = werner(2, 0.0);
  const Matrix expected = (Matrix::Identity(4, 4) - flip(2).mat) / 2.0;
  CHECK(max_abs(singlet.mat - expected) < 1e-14);
  CHECK(std::abs(detect(flip(2), singlet) + 1.0) < 1e-12);

  CounterRng rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 2 + int(rng.uniform() * 3);
    const double p = rng.uniform();
    const BipartiteOperator rho = werner(d, p);
    CHECK(std::abs(rho.mat.trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(detect(flip(d), rho) - (2.0 * p - 1.0)) < 1e-12);
  }
  CHECK_THROWS_AS(werner(1, 0.5), std::invalid_argument);
}

TEST_CASE("weyl operators satisfy the algebra and orthogonality relations") {
  for (int d : {2, 3, 4, 5}) {
    const double theta = 2.0 * 3.14159265358979323846 / d;
    CHECK(max_abs(weyl_operator(d, 0, 0) - Matrix::Identity(d, d)) < 1e-15);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) {
        const Matrix u = weyl_operator(d, m, n);
        CHECK(max_abs(u * u.adjoint() - Matrix::Identity(d, d)) < 1e-12);
        for (int r = 0; r < d; ++r)
          for (int s = 0; s < d; ++s) {
            const Matrix lhs = u * weyl_operator(d, r, s);
            const Matrix rhs =
                std::polar(1.0, theta * double(m) * double(s)) *
                weyl_operator(d, m + r, n + s);
            CHECK(max_abs(lhs - rhs) < 1e-12);
            const Complex inner = (u * weyl_operator(d, r, s).adjoint()).trace();
            const double expected = (m == r && n == s) ? double(d) : 0.0;
            CHECK(std::abs(inner - expected) < 1e-12);
          }
      }
  }
  // d=2 shift
  Matrix sigma1(2, 2);
  sigma1 << 0, 1, 1, 0;
  CHECK(max_abs(weyl_operator(2, 0, 1) - sigma1) < 1e-15);
}

TEST_CASE("generalized Bell projectors") {
  // P_11 projects onto the singlet: F psi_11 = -psi_11
  const PureState psi11 = bell_state(2, 1, 1);
  CHECK((flip(2).mat * psi11.vec + psi11.vec).norm() < 1e-12);

  for (int d : {2, 3, 4}) {
    Matrix sum = Matrix::Zero(d * d, d * d);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) {
        const BipartiteOperator p = bell_projector(d, m, n);
        CHECK(max_abs(p.mat * p.mat - p.mat) < 1e-12);  // projector
        CHECK(std::abs(p.mat.trace().real() - 1.0) < 1e-12);
        sum += p.mat;
        for (int r = 0; r < d; ++r)
          for (int s = 0; s < d; ++s) {
            if (r == m && s == n) continue;
            const Complex overlap = bell_state(d, m, n).vec.dot(bell_state(d, r, s).vec);
            CHECK(std::abs(overlap) < 1e-12);
          }
      }
    CHECK(max_abs(sum - Matrix::Identity(d * d, d * d)) < 1e-12);
  }

  Matrix pis = Matrix::Zero(9, 9);
  for (int n = 0; n < 3; ++n) pis += subspace_projector(3, n).mat;
  CHECK(max_abs(pis - Matrix::Identity(9, 9)) < 1e-12);

  const Matrix f = bell_projector(2, 0, 0).mat + bell_projector(2, 0, 1).mat +
                   bell_projector(2, 1, 0).mat - bell_projector(2, 1, 1).mat;
  CHECK(max_abs(f - flip(2).mat) < 1e-12);
}

TEST_CASE("circulant assembly and its partial transpose coefficients") {
  // d=2 X-state blocks transform per the displayed matrices
  CounterRng rng(5);
  std::vector<Matrix> blocks{random_hermitian(rng, 2), random_hermitian(rng, 2)};
  const CirculantOperator c{2, blocks};
  const CirculantOperator t = circulant_pt_coeffs(c);
  CHECK(t.blocks[0](0, 0) == blocks[0](0, 0));
  CHECK(t.blocks[0](0, 1) == blocks[1](0, 1));
  CHECK(t.blocks[0](1, 0) == blocks[1](1, 0));
  CHECK(t.blocks[0](1, 1) == blocks[0](1, 1));
  CHECK(t.blocks[1](0, 0) == blocks[1](0, 0));
  CHECK(t.blocks[1](0, 1) == blocks[0](0, 1));
  CHECK(t.blocks[1](1, 0) == blocks[0](1, 0));
  CHECK(t.blocks[1](1, 1) == blocks[1](1, 1));

  // diagonal blocks are fixed points of the partial transpose
  std::vector<Matrix> diag;
  for (int n = 0; n < 3; ++n) {
    Matrix b = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) b(i, i) = Complex(n + 1.0, 0.0) * (i + 1.0);
    diag.push_back(b);
  }
  const CirculantOperator cd{3, diag};
  const BipartiteOperator assembled = circulant_assemble(cd);
  CHECK(max_abs(partial_transpose(assembled).mat - assembled.mat) < 1e-14);

  // oracle equivalence against the direct partial transpose
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Matrix> blk;
      for (int n = 0; n < d; ++n) blk.push_back(random_hermitian(rng, d));
      const CirculantOperator op{d, blk};
      const Matrix direct = partial_transpose(circulant_assemble(op)).mat;
      const Matrix via_coeffs = circulant_assemble_tilde(circulant_pt_coeffs(op)).mat;
      CHECK(max_abs(direct - via_coeffs) < 1e-12);
    }
  }
}

TEST_CASE("unextendible product basis complement") {
  const BipartiteOperator x = upb_state(tiles_upb());
  CHECK(min_eigenvalue(x.mat) > -1e-10);
  CHECK(ppt_check(x).is_ppt);
  CHECK(std::abs(x.mat.trace().real() - 4.0) < 1e-10);  // rank 4 projector

  // the partially transposed projector is again a projector
  const Matrix pi_gamma =
      Matrix::Identity(9, 9) - partial_transpose(x).mat;
  CHECK(max_abs(pi_gamma * pi_gamma - pi_gamma) < 1e-10);

  // a full product basis leaves nothing
  std::vector<PureState> full;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Vector v = Vector::Zero(4);
      v(pair_index(i, j, 2)) = 1.0;
      full.emplace_back(v, 2, 2);
    }
  CHECK(max_abs(upb_state(full).mat) < 1e-14);

  // rejects non-orthogonal and non-product inputs
  std::vector<PureState> bad1{full[0], full[0]};
  CHECK_THROWS_AS(upb_state(bad1), std::invalid_argument);
  std::vector<PureState> bad2{PureState{max_entangled(2).vec, 2, 2}};
  CHECK_THROWS_AS(upb_state(bad2), std::invalid_argument);
}

TEST_CASE("three qubit reference states") {
  const ThreeQubitStates s = three_qubit_states();
  CHECK(std::abs(s.ghz.norm() - 1.0) < 1e-15);
  CHECK(std::abs(s.w.norm() - 1.0) < 1e-15);
  const double s2 = 1.0 / std::sqrt(2.0), s3 = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(s.ghz.vec(0) - s2) < 1e-15);
  CHECK(std::abs(s.ghz.vec(7) - s2) < 1e-15);
  CHECK(std::abs(s.w.vec(1) - s3) < 1e-15);
  CHECK(std::abs(s.w.vec(2) - s3) < 1e-15);
  CHECK(std::abs(s.w.vec(4) - s3) < 1e-15);
  CHECK(std::abs(s.ghz.vec(1)) + std::abs(s.ghz.vec(2)) + std::abs(s.ghz.vec(3)) +
            std::abs(s.ghz.vec(4)) + std::abs(s.ghz.vec(5)) + std::abs(s.ghz.vec(6)) ==
        0.0);
}
