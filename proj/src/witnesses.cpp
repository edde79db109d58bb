#include "ewt/witnesses.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ewt/rng.hpp"

namespace ewt {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

Matrix pauli(int i) {
  Matrix s(2, 2);
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

Matrix reduction_of(const Matrix& x) {
  return Matrix::Identity(x.rows(), x.cols()) * x.trace() - x;
}

}  // namespace

BipartiteOperator flip_witness(int d) { return flip(d); }

BipartiteOperator reduction_witness(int d) {
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d;
  return {Matrix::Identity(D, D) - double(d) * max_entangled_projector(d).mat, d, d};
}

DiagonalTypeSpec::DiagonalTypeSpec(RealMatrix a) : A(std::move(a)) {
  if (A.rows() != A.cols() || A.rows() < 2)
    throw std::invalid_argument("diagonal-type spec needs a square matrix, d >= 2");
  if (A.minCoeff() < 0.0)
    throw std::invalid_argument("diagonal-type spec needs entrywise nonnegative A");
}

BipartiteOperator diagonal_type_witness(const DiagonalTypeSpec& spec) {
  const int d = spec.d();
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d;
  Matrix w = Matrix::Zero(D, D);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) w(pair_index(i, k, d), pair_index(i, k, d)) = spec.A(i, k);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) w(pair_index(i, i, d), pair_index(j, j, d)) -= 1.0;
  return {std::move(w), d, d};
}

namespace {

RealVector project_simplex(RealVector y) {
  const int n = int(y.size());
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (int i = 0; i < n; ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / double(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  RealVector out(n);
  for (int i = 0; i < n; ++i) out(i) = std::max(0.0, y(i) - theta);
  return out;
}

double circular_sum(const RealMatrix& a, const RealVector& t) {
  const int d = int(t.size());
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    double b = t(i);
    for (int j = 0; j < d; ++j) b += a(i, j) * t(j);
    if (b > 0.0) total += t(i) / b;
  }
  return total;
}

RealVector circular_sum_grad(const RealMatrix& a, const RealVector& t) {
  const int d = int(t.size());
  RealVector b(d);
  for (int i = 0; i < d; ++i) {
    b(i) = t(i);
    for (int j = 0; j < d; ++j) b(i) += a(i, j) * t(j);
  }
  RealVector g = RealVector::Zero(d);
  for (int m = 0; m < d; ++m) {
    if (b(m) > 1e-14) g(m) += 1.0 / b(m) - t(m) / (b(m) * b(m));
    for (int i = 0; i < d; ++i)
      if (i != m && b(i) > 1e-14) g(m) -= t(i) * a(i, m) / (b(i) * b(i));
  }
  return g;
}

}  // namespace

DiagonalTypeBlockPositivity diagonal_type_block_positive(const DiagonalTypeSpec& spec,
                                                         std::uint64_t seed, int starts) {
  const int d = spec.d();
  std::vector<RealVector> inits;
  inits.push_back(RealVector::Constant(d, 1.0 / d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      RealVector t = RealVector::Zero(d);
      t(i) = t(j) = 0.5;
      inits.push_back(t);
    }
  CounterRng rng(seed ^ 0x5eedULL);
  for (int s = int(inits.size()); s < starts; ++s) {
    RealVector t(d);
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
      t(i) = rng.exponential();
      sum += t(i);
    }
    inits.push_back(t / sum);
  }

  double best = -std::numeric_limits<double>::infinity();
  RealVector best_t;
  for (auto t : inits) {
    double f = circular_sum(spec.A, t);
    for (int iter = 0; iter < 300; ++iter) {
      const RealVector g = circular_sum_grad(spec.A, t);
      double step = 0.5;
      RealVector cand;
      double fc = f;
      while (step > 1e-14) {
        cand = project_simplex(t + step * g);
        fc = circular_sum(spec.A, cand);
        if (fc > f + 1e-15) break;
        step *= 0.5;
      }
      if (step <= 1e-14) break;
      t = cand;
      if (fc - f < 1e-13) {
        f = fc;
        break;
      }
      f = fc;
    }
    if (f > best) {
      best = f;
      best_t = t;
    }
  }

  DiagonalTypeBlockPositivity out;
  out.worst_margin = 1.0 - best;
  out.block_positive = out.worst_margin >= -1e-9;
  out.argmax = best_t;
  return out;
}

bool diagonal_type_positive(const DiagonalTypeSpec& spec) {
  const int d = spec.d();
  RealMatrix dm = RealMatrix::Constant(d, d, -1.0);
  for (int i = 0; i < d; ++i) dm(i, i) = spec.A(i, i);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(dm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -1e-10;
}

RealMatrix circulant_a_matrix(int d, const RealVector& alpha) {
  if (alpha.size() != d) throw std::invalid_argument("alpha needs d entries");
  RealMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = alpha(((j - i) % d + d) % d);
  return a;
}

RealMatrix kossakowski_a_matrix(int d, const RealMatrix& rotation) {
  if (rotation.rows() != d - 1 || rotation.cols() != d - 1)
    throw std::invalid_argument("rotation must be (d-1) x (d-1)");
  if ((rotation.transpose() * rotation - RealMatrix::Identity(d - 1, d - 1))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw std::invalid_argument("rotation must be orthogonal");
  // diagonal Gell-Mann values F_l(i,i)
  RealMatrix f(d - 1, d);
  for (int l = 1; l < d; ++l) {
    const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int i = 0; i < d; ++i) {
      double v = 0.0;
      if (i < l) v = 1.0;
      else if (i == l) v = -double(l);
      f(l - 1, i) = v * norm;
    }
  }
  RealMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = double(d - 1) / d;
      for (int al = 0; al < d - 1; ++al)
        for (int be = 0; be < d - 1; ++be) v += f(al, i) * rotation(al, be) * f(be, j);
      if (v < -1e-12) throw std::runtime_error("Kossakowski matrix produced a negative entry");
      a(i, j) = std::max(0.0, v);
    }
  return a;
}

RealMatrix kossakowski_a_matrix_d3(double alpha) {
  RealMatrix r(2, 2);
  r << std::cos(alpha), -std::sin(alpha), std::sin(alpha), std::cos(alpha);
  return kossakowski_a_matrix(3, r);
}

WAbcClassification classify_w_abc(double a, double b, double c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("w_abc needs nonnegative a, b, c");
  WAbcClassification out;
  out.is_positive = a >= 2.0;
  if (out.is_positive) return out;

  if (!(a + b + c >= 2.0)) {
    out.violated_condition = "a+b+c >= 2";
    return out;
  }
  if (a <= 1.0 && !(b * c >= (1.0 - a) * (1.0 - a))) {
    out.violated_condition = "bc >= (1-a)^2";
    return out;
  }
  out.is_ew = true;
  out.is_indecomposable = 4.0 * b * c < (2.0 - a) * (2.0 - a);
  out.is_3_schmidt = a >= 1.0 && b * c >= (2.0 - a) * (b + c);
  return out;
}

BipartiteOperator w_abc_witness(double a, double b, double c) {
  RealVector alpha(3);
  alpha << a, b, c;
  return diagonal_type_witness(DiagonalTypeSpec(circulant_a_matrix(3, alpha)));
}

BipartiteOperator w_ab_witness(double a, double b) {
  RealVector alpha(2);
  alpha << a, b;
  return diagonal_type_witness(DiagonalTypeSpec(circulant_a_matrix(2, alpha)));
}

BipartiteOperator w_dk_witness(int d, int k) {
  if (k < 1 || k > d) throw std::invalid_argument("w_dk requires 1 <= k <= d");
  RealVector alpha = RealVector::Zero(d);
  alpha(0) = double(d - k);
  for (int i = 1; i < k; ++i) alpha(i) = 1.0;
  return diagonal_type_witness(DiagonalTypeSpec(circulant_a_matrix(d, alpha)));
}

BipartiteOperator w_dk_bell_form(int d, int k) {
  if (k < 1 || k > d) throw std::invalid_argument("w_dk requires 1 <= k <= d");
  Matrix w = double(d + 1 - k) * subspace_projector(d, 0).mat;
  for (int l = 1; l < k; ++l) w += subspace_projector(d, l).mat;
  w -= double(d) * bell_projector(d, 0, 0).mat;
  return {std::move(w), d, d};
}

BipartiteOperator bell_diagonal_witness(int d, const Matrix& c, double a,
                                        bool require_block_positive) {
  if (a <= 0.0) throw std::invalid_argument("bell_diagonal_witness requires a > 0");
  if (c.rows() != d || c.cols() != d)
    throw std::invalid_argument("coefficient matrix must be d x d");
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (k == 0 && l == 0) continue;
      const Complex mirror = c((d - k) % d, (d - l) % d);
      if (std::abs(mirror - std::conj(c(k, l))) > 1e-12)
        throw std::invalid_argument(
            "coefficients must satisfy c_{-k,-l} = conj(c_{kl}) for a Hermitian witness");
      if (require_block_positive && std::abs(c(k, l)) > 1.0 + 1e-12)
        throw std::invalid_argument("|c_kl| <= 1 required for the block-positive guarantee");
    }
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d;
  Matrix w = double(d - 1) * Matrix::Identity(D, D);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (k == 0 && l == 0) continue;
      w += c(k, l) * tensor_product(weyl_operator(d, k, l), weyl_operator(d, -k, l));
    }
  return {a * w, d, d};
}

Matrix canonical_antisymmetric_unitary(int n) {
  Matrix u = Matrix::Zero(2 * n, 2 * n);
  const Matrix block = Complex(0, 1) * pauli(2);  // [[0,1],[-1,0]]
  for (int k = 0; k < n; ++k) u.block(2 * k, 2 * k, 2, 2) = block;
  return u;
}

MapWitness breuer_hall(const Matrix& u) {
  const int dim = int(u.rows());
  if (dim % 2 != 0 || dim < 4)
    throw std::invalid_argument("breuer_hall needs an even dimension >= 4");
  if ((u * u.adjoint() - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("U must be unitary");
  if ((u + u.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("U must be antisymmetric");
  const int n = dim / 2;
  const double norm = 1.0 / (2.0 * (n - 1));
  MapDescriptor m = choi_of_map(
      [u, dim, norm](const Matrix& x) {
        return (norm * (Matrix::Identity(dim, dim) * x.trace() - x -
                        u * x.transpose() * u.adjoint()))
            .eval();
      },
      dim, dim);
  BipartiteOperator w = m.choi;
  return {std::move(m), std::move(w)};
}

MapWitness robertson_block(int n) {
  if (n < 2) throw std::invalid_argument("robertson_block needs N >= 2");
  const int dim = 2 * n;
  MapDescriptor m = choi_of_map(
      [n, dim](const Matrix& x) {
        const Matrix x11 = x.topLeftCorner(n, n), x12 = x.topRightCorner(n, n);
        const Matrix x21 = x.bottomLeftCorner(n, n), x22 = x.bottomRightCorner(n, n);
        Matrix out(dim, dim);
        out.topLeftCorner(n, n) = Matrix::Identity(n, n) * x22.trace();
        out.bottomRightCorner(n, n) = Matrix::Identity(n, n) * x11.trace();
        out.topRightCorner(n, n) = -(x12 + reduction_of(x21));
        out.bottomLeftCorner(n, n) = -(x21 + reduction_of(x12));
        return (out / double(n)).eval();
      },
      dim, dim);
  BipartiteOperator w = m.choi;
  return {std::move(m), std::move(w)};
}

MapWitness z_deformed(int n, const Matrix& z) {
  if (n < 2) throw std::invalid_argument("z_deformed needs N >= 2");
  if (z.rows() != n || z.cols() != n)
    throw std::invalid_argument("deformation matrix must be N x N");
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      if (k == l) continue;
      if (std::abs(z(k, l)) > 1.0 + 1e-12)
        throw std::invalid_argument("positivity requires |z_kl| <= 1");
      if (std::abs(z(k, l) - std::conj(z(l, k))) > 1e-12)
        throw std::invalid_argument("deformation requires z_kl = conj(z_lk)");
    }
  const int dim = 2 * n;
  const double norm = 1.0 / (2.0 * (n - 1));
  const Matrix s2 = pauli(2);
  MapDescriptor m = choi_of_map(
      [n, dim, norm, z, s2](const Matrix& x) {
        Matrix out = Matrix::Zero(dim, dim);
        const Complex total = x.trace();
        for (int k = 0; k < n; ++k) {
          const Matrix xkk = x.block(2 * k, 2 * k, 2, 2);
          out.block(2 * k, 2 * k, 2, 2) =
              Matrix::Identity(2, 2) * (total - xkk.trace());
        }
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            if (k == l) continue;
            const Matrix xkl = x.block(2 * k, 2 * l, 2, 2);
            const Matrix xlk = x.block(2 * l, 2 * k, 2, 2);
            // B_kl = X_kl + sigma2 X_lk^t sigma2, matching Phi_U at z = -1
            out.block(2 * k, 2 * l, 2, 2) =
                z(k, l) * (xkl + s2 * xlk.transpose() * s2);
          }
        return (norm * out).eval();
      },
      dim, dim);
  BipartiteOperator w = m.choi;
  return {std::move(m), std::move(w)};
}

namespace {

void validate_mub_family(const std::vector<Matrix>& bases, int d) {
  for (const auto& b : bases) {
    if (b.rows() != d || b.cols() != d)
      throw std::invalid_argument("each basis must be d x d (columns are the vectors)");
    if ((b.adjoint() * b - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("basis columns must be orthonormal");
  }
  for (size_t a = 0; a < bases.size(); ++a)
    for (size_t b = a + 1; b < bases.size(); ++b)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const double overlap = std::norm(bases[a].col(i).dot(bases[b].col(j)));
          if (std::abs(overlap - 1.0 / d) > 1e-9)
            throw std::invalid_argument("the supplied bases are not mutually unbiased");
        }
}

}  // namespace

BipartiteOperator mub_witness(const std::vector<Matrix>& bases,
                              const std::vector<Matrix>& tilde_bases) {
  if (bases.empty() || bases.size() != tilde_bases.size())
    throw std::invalid_argument("need matching nonempty MUB families");
  const int d = int(bases[0].rows());
  const int m = int(bases.size());
  if (m > d + 1) throw std::invalid_argument("at most d+1 mutually unbiased bases exist");
  validate_mub_family(bases, d);
  validate_mub_family(tilde_bases, d);

  const double lambda = 1.0 + double(m - 1) / d;
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d;
  Matrix w = lambda * Matrix::Identity(D, D);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < d; ++i) {
      const Vector e = bases[a].col(i), f = tilde_bases[a].col(i);
      w -= tensor_product((e * e.adjoint()).eval(), (f * f.adjoint()).eval());
    }
  return {std::move(w), d, d};
}

std::vector<Matrix> standard_mub(int d, int m) {
  if (m < 1) throw std::invalid_argument("need at least one basis");
  std::vector<Matrix> out;
  if (d == 2) {
    if (m > 3) throw std::invalid_argument("d=2 admits 3 mutually unbiased bases");
    const double s = 1.0 / std::sqrt(2.0);
    Matrix b1 = Matrix::Identity(2, 2);
    Matrix b2(2, 2), b3(2, 2);
    b2 << s, s, s, -s;
    b3 << s, s, Complex(0, s), Complex(0, -s);
    out = {b1, b2, b3};
    out.resize(m);
    return out;
  }
  if (!is_prime(d) || d % 2 == 0)
    throw std::invalid_argument("standard_mub supports d = 2 and odd prime d");
  if (m > d + 1) throw std::invalid_argument("at most d+1 mutually unbiased bases exist");
  out.push_back(Matrix::Identity(d, d));
  const double theta = 2.0 * std::numbers::pi / d;
  for (int a = 0; a < d && int(out.size()) < m; ++a) {
    Matrix b(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        b(k, j) = std::polar(1.0 / std::sqrt(double(d)),
                             theta * double((a * k * k + j * k) % d));
    out.push_back(b);
  }
  return out;
}

BipartiteOperator chsh_witness(const Eigen::Vector3d& a1, const Eigen::Vector3d& a2,
                               const Eigen::Vector3d& b1, const Eigen::Vector3d& b2) {
  for (const auto& v : {a1, a2, b1, b2})
    if (std::abs(v.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("measurement settings must be unit vectors");
  auto dot_sigma = [](const Eigen::Vector3d& v) {
    return (v(0) * pauli(1) + v(1) * pauli(2) + v(2) * pauli(3)).eval();
  };
  const Matrix bell_op =
      tensor_product(dot_sigma(a1), dot_sigma((b1 + b2).eval())) +
      tensor_product(dot_sigma(a2), dot_sigma((b1 - b2).eval()));
  return {2.0 * Matrix::Identity(4, 4) - bell_op, 2, 2};
}

OperatorSchmidt operator_schmidt_hermitian(const BipartiteOperator& rho) {
  if (!is_hermitian(rho.mat, 1e-8))
    throw std::invalid_argument("operator Schmidt decomposition expects Hermitian input");
  auto hermitian_basis = [](int d) {
    std::vector<Matrix> basis;
    for (int k = 0; k < d; ++k) basis.push_back(unit_matrix(d, k, k));
    const double s = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < d; ++k)
      for (int l = k + 1; l < d; ++l) {
        basis.push_back(s * (unit_matrix(d, k, l) + unit_matrix(d, l, k)));
        basis.push_back(Complex(0, s) * (unit_matrix(d, k, l) - unit_matrix(d, l, k)));
      }
    return basis;
  };
  const auto ha = hermitian_basis(rho.dA);
  const auto hb = hermitian_basis(rho.dB);
  RealMatrix m(ha.size(), hb.size());
  for (size_t a = 0; a < ha.size(); ++a)
    for (size_t b = 0; b < hb.size(); ++b)
      m(a, b) = (tensor_product(ha[a], hb[b]) * rho.mat).trace().real();

  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  OperatorSchmidt out;
  out.coefficients = svd.singularValues();
  const double tol = 1e-12 * std::max(1.0, out.coefficients(0));
  for (Eigen::Index t = 0; t < out.coefficients.size(); ++t) {
    if (out.coefficients(t) <= tol) continue;
    Matrix ga = Matrix::Zero(rho.dA, rho.dA), gb = Matrix::Zero(rho.dB, rho.dB);
    for (size_t a = 0; a < ha.size(); ++a) ga += svd.matrixU()(a, t) * ha[a];
    for (size_t b = 0; b < hb.size(); ++b) gb += svd.matrixV()(b, t) * hb[b];
    out.left.push_back(std::move(ga));
    out.right.push_back(std::move(gb));
  }
  out.coefficients.conservativeResize(out.left.size());
  return out;
}

RealignmentWitness realignment_witness(const BipartiteOperator& rho) {
  if (std::abs(rho.mat.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("realignment witness expects a unit-trace state");
  const OperatorSchmidt os = operator_schmidt_hermitian(rho);
  const Eigen::Index D = rho.mat.rows();
  Matrix w = Matrix::Identity(D, D);
  for (size_t t = 0; t < os.left.size(); ++t) w -= tensor_product(os.left[t], os.right[t]);
  RealignmentWitness out;
  out.witness = BipartiteOperator{std::move(w), rho.dA, rho.dB};
  out.schmidt_sum = os.coefficients.sum();
  out.detects = out.schmidt_sum > 1.0 + 1e-9;
  return out;
}

double spectral_mu(const SpectralWitnessSpec& spec, int ell) {
  double num = 0.0, used = 0.0;
  for (int a = 0; a < spec.L; ++a) {
    const PureState psi{spec.basis.col(a), spec.dA, spec.dB};
    const double kn = k_norm_squared(psi, ell);
    num += spec.lambdas(a) * kn;
    used += kn;
  }
  if (!(used < 1.0))
    throw std::invalid_argument("mu_" + std::to_string(ell) +
                                " undefined: sum of " + std::to_string(ell) +
                                "-norms over W- reaches " + std::to_string(used));
  return num / (1.0 - used);
}

SpectralWitnessResult spectral_k_schmidt_witness(const SpectralWitnessSpec& spec) {
  const Eigen::Index D = static_cast<Eigen::Index>(spec.dA) * spec.dB;
  const int d = std::min(spec.dA, spec.dB);
  if (spec.basis.rows() != D || spec.basis.cols() != D)
    throw std::invalid_argument("basis must be D x D with D = dA*dB");
  if ((spec.basis.adjoint() * spec.basis - Matrix::Identity(D, D)).cwiseAbs().maxCoeff() >
      1e-10)
    throw std::invalid_argument("basis columns must be orthonormal");
  if (spec.lambdas.size() != D) throw std::invalid_argument("need D eigenvalues");
  if (spec.L < 1 || spec.L >= D) throw std::invalid_argument("split index L outside (0, D)");
  if (spec.k < 1 || spec.k > d) throw std::invalid_argument("k outside [1, min(dA,dB)]");
  for (Eigen::Index a = 0; a < D; ++a) {
    if (spec.lambdas(a) < 0.0) throw std::invalid_argument("eigenvalues must be nonnegative");
    if (a >= spec.L && spec.lambdas(a) <= 0.0)
      throw std::invalid_argument("eigenvalues beyond L must be strictly positive");
  }

  SpectralWitnessResult out;
  Matrix w = Matrix::Zero(D, D);
  for (Eigen::Index a = 0; a < D; ++a) {
    const Matrix p = spec.basis.col(a) * spec.basis.col(a).adjoint();
    w += (a < spec.L ? -spec.lambdas(a) : spec.lambdas(a)) * p;
  }
  out.witness = BipartiteOperator{std::move(w), spec.dA, spec.dB};

  out.mu_k = spectral_mu(spec, spec.k);
  double tail_min = std::numeric_limits<double>::infinity();
  double tail_max = -std::numeric_limits<double>::infinity();
  for (Eigen::Index a = spec.L; a < D; ++a) {
    tail_min = std::min(tail_min, spec.lambdas(a));
    tail_max = std::max(tail_max, spec.lambdas(a));
  }
  out.in_w_k = tail_min >= out.mu_k - 1e-12;

  if (spec.k + 1 <= d) {
    double used = 0.0;
    for (int a = 0; a < spec.L; ++a)
      used += k_norm_squared(PureState{spec.basis.col(a), spec.dA, spec.dB}, spec.k + 1);
    if (used < 1.0) {
      out.mu_k1 = spectral_mu(spec, spec.k + 1);
      out.is_k1_schmidt = out.in_w_k && *out.mu_k1 > tail_max + 1e-12;
    }
  }
  return out;
}

SpectralWitnessSpec phi_p_spectral_spec(int d, double p, int k) {
  const Eigen::Index D = static_cast<Eigen::Index>(d) * d;
  Matrix basis(D, D);
  basis.col(0) = max_entangled(d).vec;
  // complete to a unitary
  Matrix ext = Matrix::Identity(D, D);
  Matrix stacked(D, D + 1);
  stacked.col(0) = basis.col(0);
  stacked.rightCols(D) = ext;
  Eigen::HouseholderQR<Matrix> qr(stacked);
  Matrix q = qr.householderQ() * Matrix::Identity(D, D);
  // first column of Q spans the same line; fix the phase to psi+
  const Complex phase = q.col(0).dot(basis.col(0));
  q.col(0) *= phase / std::abs(phase);
  basis = q;

  SpectralWitnessSpec spec;
  spec.dA = spec.dB = d;
  spec.basis = std::move(basis);
  spec.lambdas = RealVector::Ones(D);
  spec.lambdas(0) = p * d - 1.0;
  spec.L = 1;
  spec.k = k;
  return spec;
}

EdgeSteeredWitness edge_steered_witness(const BipartiteOperator& p,
                                        const BipartiteOperator& q, EdgeSubtraction mode,
                                        const OptimOptions& opts) {
  if (p.dA != q.dA || p.dB != q.dB) throw std::invalid_argument("P and Q dimensions differ");
  if (min_eigenvalue(p.mat) < -1e-8 || min_eigenvalue(q.mat) < -1e-8)
    throw std::invalid_argument("P and Q must be positive semidefinite");
  if (p.mat.norm() + q.mat.norm() < 1e-14)
    throw std::invalid_argument("P and Q cannot both vanish");

  const BipartiteOperator base = p + partial_transpose(q);
  OptimResult r = min_schmidt_k_expectation(base, 1, opts);
  const double eps = std::max(0.0, r.min_value);

  EdgeSteeredWitness out;
  out.epsilon = eps;
  if (eps <= 1e-9) {
    out.subtraction_possible = false;
    out.witness = base;
    return out;
  }
  out.subtraction_possible = true;
  if (mode == EdgeSubtraction::identity) {
    out.witness = BipartiteOperator{
        base.mat - eps * Matrix::Identity(base.mat.rows(), base.mat.cols()), base.dA,
        base.dB};
  } else {
    if (base.dA != base.dB)
      throw std::invalid_argument("max-entangled subtraction needs dA = dB");
    out.witness = BipartiteOperator{
        base.mat - eps * double(base.dA) * max_entangled_projector(base.dA).mat, base.dA,
        base.dB};
  }
  return out;
}

ThreeQubitWitnesses three_qubit_witnesses() {
  const ThreeQubitStates s = three_qubit_states();
  const Matrix id = Matrix::Identity(8, 8);
  const Matrix pw = s.w.vec * s.w.vec.adjoint();
  const Matrix pghz = s.ghz.vec * s.ghz.vec.adjoint();
  ThreeQubitWitnesses out;
  out.genuine = BipartiteOperator{id - 1.5 * pw, 2, 4};
  out.not_full_sep = BipartiteOperator{id - 2.25 * pw, 2, 4};
  out.not_w_class = BipartiteOperator{id - (4.0 / 3.0) * pghz, 2, 4};
  return out;
}

}  // namespace ewt
