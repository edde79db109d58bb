#include "ewt/classifier.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ewt/rng.hpp"

namespace ewt {

namespace {

constexpr double kPositivityTol = 1e-10;

Matrix random_isometry(CounterRng& rng, int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  return q;
}

struct HalfStep {
  double value;
  Vector eigvec;
};

// Smallest eigenpair. While diversifying, a (near-)degenerate bottom
// eigenspace is sampled with random weights so repeated runs cover the whole
// minimizing manifold instead of the solver's canonical representative; the
// refinement phase keeps the canonical vector.
HalfStep min_eigenpair(const Matrix& h, CounterRng& rng, bool diversify) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  const double lmin = vals(0);
  if (!diversify) return {lmin, es.eigenvectors().col(0)};
  const double scale = std::max(std::abs(lmin), std::abs(vals(vals.size() - 1)));
  Eigen::Index deg = 1;
  while (deg < vals.size() && vals(deg) <= lmin + 1e-9 * std::max(1.0, scale)) ++deg;
  if (deg == 1) return {lmin, es.eigenvectors().col(0)};
  Vector mix = Vector::Zero(h.rows());
  for (Eigen::Index i = 0; i < deg; ++i)
    mix += rng.complex_normal() * es.eigenvectors().col(i);
  mix.normalize();
  return {lmin, mix};
}

// H_V[(i,c),(j,c')] = sum_{k,l} V_{kc} conj(V_{lc'}) W[(i,k),(j,l)]
Matrix contract_right(const BipartiteOperator& w, const Matrix& v) {
  const int dA = w.dA, dB = w.dB, k = int(v.cols());
  Matrix h(static_cast<Eigen::Index>(dA) * k, static_cast<Eigen::Index>(dA) * k);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j) {
      const auto wij = w.mat.block(static_cast<Eigen::Index>(i) * dB,
                                   static_cast<Eigen::Index>(j) * dB, dB, dB);
      h.block(static_cast<Eigen::Index>(i) * k, static_cast<Eigen::Index>(j) * k, k, k) =
          v.transpose() * wij * v.conjugate();
    }
  return h;
}

// H_U[(c,k),(c',l)] = sum_{i,j} conj(U_{ic}) U_{jc'} W[(i,k),(j,l)]
Matrix contract_left(const BipartiteOperator& w, const Matrix& u) {
  const int dA = w.dA, dB = w.dB, k = int(u.cols());
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(k) * dB,
                          static_cast<Eigen::Index>(k) * dB);
  for (int c = 0; c < k; ++c)
    for (int cp = 0; cp < k; ++cp)
      for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
          h.block(static_cast<Eigen::Index>(c) * dB, static_cast<Eigen::Index>(cp) * dB,
                  dB, dB) += std::conj(u(i, c)) * u(j, cp) *
                             w.mat.block(static_cast<Eigen::Index>(i) * dB,
                                         static_cast<Eigen::Index>(j) * dB, dB, dB);
  return h;
}

Vector coefficient_vector(const Matrix& m) {
  // row-major flatten of the dA x dB coefficient matrix is the state vector
  Vector v(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

struct RestartOutcome {
  double value;
  Matrix coeff;  // dA x dB, unit Frobenius norm
  long sweeps;
};

RestartOutcome run_restart(const BipartiteOperator& w, int k, CounterRng rng,
                           const OptimOptions& opts) {
  const int dA = w.dA, dB = w.dB;
  Matrix v = random_isometry(rng, dB, k);
  double prev = std::numeric_limits<double>::infinity();
  Matrix m;
  long sweeps = 0;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    ++sweeps;
    const bool diversify = sweep < 5;
    // minimize over the left factor with the right column space fixed
    HalfStep right = min_eigenpair(contract_right(w, v), rng, diversify);
    if (right.value > prev + 1e-9 * (1.0 + std::abs(prev)))
      throw std::logic_error("see-saw objective increased on a right half-step");
    Matrix n(dA, k);
    for (int i = 0; i < dA; ++i)
      for (int c = 0; c < k; ++c) n(i, c) = right.eigvec(static_cast<Eigen::Index>(i) * k + c);
    m = n * v.adjoint();

    Eigen::JacobiSVD<Matrix> svd_m(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Matrix u = svd_m.matrixU().leftCols(std::min<Eigen::Index>(k, svd_m.matrixU().cols()));
    if (u.cols() < k) {
      // pad with arbitrary orthonormal completion
      Matrix full = random_isometry(rng, dA, k);
      full.leftCols(u.cols()) = u;
      Eigen::HouseholderQR<Matrix> qr(full);
      u = qr.householderQ() * Matrix::Identity(dA, k);
    }

    HalfStep left = min_eigenpair(contract_left(w, u), rng, diversify);
    if (left.value > right.value + 1e-9 * (1.0 + std::abs(right.value)))
      throw std::logic_error("see-saw objective increased on a left half-step");
    Matrix g(k, dB);
    for (int c = 0; c < k; ++c)
      for (int j = 0; j < dB; ++j) g(c, j) = left.eigvec(static_cast<Eigen::Index>(c) * dB + j);
    m = u * g;

    Eigen::JacobiSVD<Matrix> svd2(m, Eigen::ComputeThinV);
    v = svd2.matrixV().leftCols(std::min<Eigen::Index>(k, svd2.matrixV().cols()));
    if (v.cols() < k) {
      Matrix full = random_isometry(rng, dB, k);
      full.leftCols(v.cols()) = v;
      Eigen::HouseholderQR<Matrix> qr(full);
      v = qr.householderQ() * Matrix::Identity(dB, k);
    }

    const double current = left.value;
    if (std::abs(prev - current) <= opts.rel_tol * std::max(1.0, std::abs(current))) {
      prev = current;
      break;
    }
    prev = current;
  }
  const double nrm = m.norm();
  if (nrm > 0) m /= nrm;
  return {prev, m, sweeps};
}

}  // namespace

OptimResult min_schmidt_k_expectation(const BipartiteOperator& w, int k,
                                      const OptimOptions& opts) {
  const int dA = w.dA, dB = w.dB;
  const int d = std::min(dA, dB);
  if (k < 1 || k > d) throw std::invalid_argument("k outside [1, min(dA,dB)]");
  if (!is_hermitian(w.mat, 1e-8)) throw std::invalid_argument("witness must be Hermitian");

  const int restarts = opts.restarts > 0 ? opts.restarts : 50 * std::max(dA, dB);

  OptimResult best;
  best.min_value = std::numeric_limits<double>::infinity();
  best.seed = opts.seed;
  long total_sweeps = 0;

  // k = min dimension reduces to the global minimum eigenvalue
  const int effective_restarts = (k == d) ? 1 : restarts;

  for (int r = 0; r < effective_restarts; ++r) {
    RestartOutcome out =
        run_restart(w, k, CounterRng::substream(opts.seed, static_cast<std::uint64_t>(r)), opts);
    total_sweeps += out.sweeps;
    if (out.value < best.min_value) {
      best.min_value = out.value;
      best.witness_vector = PureState{coefficient_vector(out.coeff), dA, dB};
    }
  }
  best.restarts_used = effective_restarts;
  best.iterations = total_sweeps;

  // re-verify the reported value from the reported vector
  const Vector& psi = best.witness_vector.vec;
  const double recomputed = (psi.adjoint() * w.mat * psi).value().real();
  if (std::abs(recomputed - best.min_value) > 1e-10 * std::max(1.0, std::abs(best.min_value)))
    best.min_value = recomputed;

  best.status = best.min_value < -opts.cert_tol ? OptimStatus::certified_negative
                                                : OptimStatus::heuristic_nonnegative;
  return best;
}

BlockPositivityVerdict is_k_block_positive(const BipartiteOperator& w, int k,
                                           const OptimOptions& opts,
                                           std::optional<bool> analytic_hint) {
  const OptimResult r = min_schmidt_k_expectation(w, k, opts);
  BlockPositivityVerdict v;
  v.min_value = r.min_value;
  v.certified_no = r.status == OptimStatus::certified_negative;
  v.block_positive = !v.certified_no;
  if (analytic_hint && *analytic_hint != v.block_positive) {
    v.diagnostic = "analytic criterion says " +
                   std::string(*analytic_hint ? "block-positive" : "not block-positive") +
                   " but the minimizer found " + std::to_string(r.min_value);
    if (*analytic_hint && v.certified_no) {
      // an analytic guarantee beaten by a certified violator is a hard error
      throw std::logic_error(*v.diagnostic);
    }
  }
  return v;
}

PptResult ppt_check(const BipartiteOperator& x) {
  if (!is_hermitian(x.mat, 1e-8)) throw std::invalid_argument("ppt_check needs Hermitian input");
  const double lmin = min_eigenvalue(partial_transpose(x).mat);
  return {lmin >= -kPositivityTol, lmin};
}

RealignmentResult realignment_check(const BipartiteOperator& rho) {
  if (!is_hermitian(rho.mat, 1e-8))
    throw std::invalid_argument("realignment_check needs Hermitian input");
  if (std::abs(rho.mat.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("realignment_check needs a unit-trace input");
  Eigen::JacobiSVD<Matrix> svd(realign(rho));
  const double sum = svd.singularValues().sum();
  return {sum, sum > 1.0 + 1e-9};
}

double detect(const BipartiteOperator& w, const BipartiteOperator& rho) {
  if (w.dA != rho.dA || w.dB != rho.dB)
    throw std::invalid_argument("witness and state dimensions do not match");
  return (w.mat * rho.mat).trace().real();
}

int spanning_dimension(const BipartiteOperator& w, const OptimOptions& opts) {
  const int D = w.dim();
  const int max_candidates = 5 * D;
  const int max_restarts = 200;
  // candidates are refined until the objective stalls so that accepted
  // vectors sit on the zero manifold to machine accuracy
  OptimOptions refine = opts;
  refine.max_sweeps = std::max(opts.max_sweeps, 2000);
  refine.rel_tol = 0.0;  // run to an exact stall
  std::vector<Vector> zeros;
  for (int r = 0; r < max_restarts && int(zeros.size()) < max_candidates; ++r) {
    RestartOutcome out = run_restart(
        w, 1, CounterRng::substream(opts.seed, static_cast<std::uint64_t>(r)), refine);
    if (out.value <= 1e-8) zeros.push_back(coefficient_vector(out.coeff));
  }
  if (zeros.empty()) return 0;
  Matrix span(D, static_cast<Eigen::Index>(zeros.size()));
  for (size_t i = 0; i < zeros.size(); ++i) span.col(static_cast<Eigen::Index>(i)) = zeros[i];
  Eigen::JacobiSVD<Matrix> svd(span);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) ++rank;
  return rank;
}

SpaResult spa(const BipartiteOperator& w) {
  if (!is_hermitian(w.mat, 1e-8)) throw std::invalid_argument("spa needs a Hermitian witness");
  const double tr = w.mat.trace().real();
  if (tr <= 0.0) throw std::invalid_argument("spa requires tr(W) > 0");
  const int D = w.dim();
  const Matrix normalized = w.mat / tr;
  const double lmin = min_eigenvalue(normalized);

  SpaResult out;
  if (lmin >= -1e-12) {
    out.p_star = 1.0;
    out.was_positive = true;
    out.spa_state = BipartiteOperator{normalized, w.dA, w.dB};
  } else {
    out.p_star = 1.0 / (1.0 - double(D) * lmin);
    Matrix state = out.p_star * normalized +
                   ((1.0 - out.p_star) / double(D)) *
                       Matrix::Identity(w.mat.rows(), w.mat.cols());
    out.spa_state = BipartiteOperator{std::move(state), w.dA, w.dB};
  }
  out.ppt = ppt_check(out.spa_state);
  out.ccnr = realignment_check(out.spa_state);
  return out;
}

std::string to_string(Decomposability d) {
  switch (d) {
    case Decomposability::yes_analytic: return "yes_analytic";
    case Decomposability::no_analytic: return "no_analytic";
    default: return "unknown";
  }
}

Decomposability decomposability_verdict(const BipartiteOperator& w, const FamilyInfo* family) {
  if (!family) return Decomposability::unknown;
  const auto& name = family->family;
  auto param = [family](const std::string& key, double fallback = 0.0) {
    auto it = family->params.find(key);
    return it == family->params.end() ? fallback : it->second;
  };

  if (name == "w_abc") {
    const double a = param("a"), b = param("b"), c = param("c");
    if (a >= 2.0) return Decomposability::yes_analytic;  // positive operator
    return 4.0 * b * c < (2.0 - a) * (2.0 - a) ? Decomposability::no_analytic
                                               : Decomposability::yes_analytic;
  }
  if (name == "w_ab" || name == "chsh" || name == "mub_d2")
    return Decomposability::yes_analytic;  // every 2x2 witness is decomposable
  if (name == "flip" || name == "reduction" || name == "spectral_thk" || name == "phi_p" ||
      name == "realignment" || name == "explicit_decomposition")
    return Decomposability::yes_analytic;
  if (name == "w_dk") {
    const int k = int(param("k")), d = int(param("d"));
    if (k <= 1 || k >= d) return Decomposability::yes_analytic;
    return Decomposability::no_analytic;
  }
  if (name == "breuer_hall" || name == "robertson" || name == "z_deformed" ||
      name == "upb_steered")
    return Decomposability::no_analytic;
  return Decomposability::unknown;
}

WitnessReport classify(const BipartiteOperator& w, const OptimOptions& opts,
                       const FamilyInfo* family) {
  if (!is_hermitian(w.mat, 1e-8)) throw std::invalid_argument("classify needs Hermitian input");
  const int d = std::min(w.dA, w.dB);

  WitnessReport rep;
  rep.seed = opts.seed;
  rep.restarts = opts.restarts > 0 ? opts.restarts : 50 * std::max(w.dA, w.dB);

  const double lmin = min_eigenvalue(w.mat);
  rep.is_positive_operator = lmin >= -kPositivityTol;

  bool failed = false;
  for (int k = 1; k <= d; ++k) {
    if (rep.is_positive_operator) {
      rep.block_positive_k[k] = "yes_heuristic";
      continue;
    }
    if (failed) {
      rep.block_positive_k[k] = "no_certified";
      continue;
    }
    OptimResult r = min_schmidt_k_expectation(w, k, opts);
    if (r.status == OptimStatus::certified_negative) {
      failed = true;
      rep.block_positive_k[k] = "no_certified";
      rep.detected_examples.push_back({k, r.min_value, r.witness_vector});
    } else {
      rep.block_positive_k[k] = "yes_heuristic";
    }
  }

  const bool is_witness = !rep.is_positive_operator &&
                          rep.block_positive_k.at(1) == "yes_heuristic";
  rep.spanning_dim = is_witness ? spanning_dimension(w, opts) : 0;
  rep.spa_p_star = w.mat.trace().real() > 0 ? spa(w).p_star : 1.0;
  rep.decomposable = decomposability_verdict(w, family);
  return rep;
}

}  // namespace ewt
