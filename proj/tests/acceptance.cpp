// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ewt/classifier.hpp"
#include "ewt/maps.hpp"
#include "ewt/rng.hpp"
#include "ewt/states.hpp"
#include "ewt/witnesses.hpp"

using namespace ewt;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& desc, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %s (%s%.1f s)\n", ok ? "PASS" : "FAIL", n, desc.c_str(),
              detail.empty() ? "" : (detail + ", ").c_str(), secs);
  if (!ok) ++g_failures;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_hermitian(CounterRng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return (m + m.adjoint()).eval() / 2.0;
}

Vector random_unit(CounterRng& rng, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
  v.normalize();
  return v;
}

double bloch_grid_product_min(const BipartiteOperator& w, int points) {
  double best = std::numeric_limits<double>::infinity();
  const double golden = 3.14159265358979323846 * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < points; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / points;
    const double theta = std::acos(z);
    Vector a(2);
    a << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), golden * i);
    Matrix wa = Matrix::Zero(2, 2);
    for (int ii = 0; ii < 2; ++ii)
      for (int jj = 0; jj < 2; ++jj)
        wa += std::conj(a(ii)) * a(jj) * w.mat.block(2 * ii, 2 * jj, 2, 2);
    const double tr = wa.trace().real();
    const double det = (wa(0, 0) * wa(1, 1) - wa(0, 1) * wa(1, 0)).real();
    best = std::min(best, tr / 2.0 - std::sqrt(std::max(0.0, tr * tr / 4.0 - det)));
  }
  return best;
}

Matrix robertson_display() {
  Matrix w = Matrix::Zero(16, 16);
  for (int i : {2, 3, 6, 7, 8, 9, 12, 13}) w(i, i) = 1.0;
  const int minus[][2] = {{0, 10}, {0, 15}, {5, 10}, {5, 15}, {3, 9}, {6, 12}};
  for (auto& e : minus) {
    w(e[0], e[1]) = -1.0;
    w(e[1], e[0]) = -1.0;
  }
  const int plus[][2] = {{2, 13}, {7, 8}};
  for (auto& e : plus) {
    w(e[0], e[1]) = 1.0;
    w(e[1], e[0]) = 1.0;
  }
  return w;
}

}  // namespace

int main() {
  criterion(1, "W[a,b,c] theorem grid agrees with the product minimizer", [](std::string& d) {
    OptimOptions opts;
    opts.seed = 1;
    opts.restarts = 60;
    int points = 0, disagreements = 0;
    for (int i = 0; i <= 14; ++i)
      for (int j = 0; j <= 14; ++j) {
        const double b = 2.0 * i / 14.0, c = 2.0 * j / 14.0;
        const double a = 2.0 - b - c;
        if (a < 0.0) continue;
        ++points;
        const bool analytic = classify_w_abc(a, b, c).block_positive();
        const double numeric =
            min_schmidt_k_expectation(w_abc_witness(a, b, c), 1, opts).min_value;
        const bool numeric_bp = numeric >= -1e-7;
        if (analytic != numeric_bp) ++disagreements;
      }
    d = std::to_string(points) + " points, " + std::to_string(disagreements) +
        " disagreements";
    return disagreements == 0;
  });

  criterion(2, "named W[a,b,c] points classify exactly", [](std::string&) {
    const auto choi = classify_w_abc(1, 1, 0);
    const auto red = classify_w_abc(0, 1, 1);
    const auto pos = classify_w_abc(2, 1, 1);
    return choi.is_ew && choi.is_indecomposable && red.is_ew && !red.is_indecomposable &&
           pos.is_positive && !pos.is_ew;
  });

  criterion(3, "flip detects Werner states down to p = 1/2; flip spectra", [](std::string&) {
    // affine zero crossing of p -> tr(rho_p F)
    const double y0 = detect(flip(3), werner(3, 0.2));
    const double y1 = detect(flip(3), werner(3, 0.9));
    const double crossing = 0.2 - y0 * (0.9 - 0.2) / (y1 - y0);
    if (std::abs(crossing - 0.5) > 1e-9) return false;

    const Spectrum s2 = hermitian_spectrum(flip(2).mat);
    for (int i = 0; i < 3; ++i)
      if (std::abs(s2.eigenvalues(i) - 1.0) > 1e-12) return false;
    if (std::abs(s2.eigenvalues(3) + 1.0) > 1e-12) return false;

    for (int d : {3, 4, 5}) {
      const Spectrum s = hermitian_spectrum(flip(d).mat);
      int neg = 0;
      for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        if (s.eigenvalues(i) < -0.5) ++neg;
      if (neg != d * (d - 1) / 2) return false;
    }
    return true;
  });

  criterion(4, "isotropic PPT boundary sits at d/(d+1)", [](std::string&) {
    for (int d : {2, 3, 4}) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ppt_check(isotropic(d, mid)).min_pt_eigenvalue < 0.0 ? lo : hi) = mid;
      }
      if (std::abs(0.5 * (lo + hi) - double(d) / (d + 1)) > 1e-6) return false;
    }
    return true;
  });

  criterion(5, "reduction witness spectrum and TH-K verdict", [](std::string&) {
    for (int d : {3, 4, 5}) {
      const Spectrum s = hermitian_spectrum(reduction_witness(d).mat);
      if (std::abs(s.eigenvalues(d * d - 1) - (1.0 - d)) > 1e-12) return false;
      const SpectralWitnessResult res =
          spectral_k_schmidt_witness(phi_p_spectral_spec(d, 1.0, 1));
      if (std::abs(res.mu_k - 1.0) > 1e-12) return false;
      if (!res.mu_k1 || std::abs(*res.mu_k1 - 2.0 * (d - 1.0) / (d - 2.0)) > 1e-12)
        return false;
      if (!res.in_w_k || !res.is_k1_schmidt) return false;  // 2-Schmidt witness
    }
    return true;
  });

  criterion(6, "Phi_p analytic k-positivity matches certified rank-k verdicts",
            [](std::string& d) {
    OptimOptions opts;
    opts.seed = 2;
    opts.restarts = 60;
    int checks = 0;
    for (double p : {0.2, 0.3, 0.4, 0.6, 1.0}) {
      const PhiPFamily fam = phi_p(3, p);
      for (int k = 1; k <= 3; ++k) {
        ++checks;
        const OptimResult r = min_schmidt_k_expectation(fam.map.choi, k, opts);
        const bool certified = r.status == OptimStatus::certified_negative;
        if (certified != (k > fam.k_positivity)) return false;
      }
    }
    d = std::to_string(checks) + " verdicts";
    return true;
  });

  criterion(7, "Choi-Jamiolkowski correspondence", [](std::string&) {
    if (max_abs(transposition_map(3).choi.mat - flip(3).mat) != 0.0) return false;

    CounterRng rng(71);
    for (int t = 0; t < 20; ++t) {
      const int d = 2 + t % 3;
      MapDescriptor m;
      m.d_in = m.d_out = d;
      m.choi = BipartiteOperator{random_hermitian(rng, d * d), d, d};
      const MapDescriptor again = choi_of_map(map_of_choi(m), d, d);
      if (max_abs(again.choi.mat - m.choi.mat) > 1e-12) return false;
    }

    for (int t = 0; t < 20; ++t) {
      const int d = 2 + t % 2;
      MapDescriptor phi, psi;
      phi.d_in = phi.d_out = psi.d_in = psi.d_out = d;
      phi.choi = BipartiteOperator{random_hermitian(rng, d * d), d, d};
      psi.choi = BipartiteOperator{random_hermitian(rng, d * d), d, d};
      Complex bracket = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const Matrix e = unit_matrix(d, i, j);
          bracket += (apply_map(phi, e).adjoint() * apply_map(psi, e)).trace();
        }
      const Matrix jphi = as_convention(phi, ChoiConvention::depillis).choi.mat;
      const Matrix jpsi = as_convention(psi, ChoiConvention::depillis).choi.mat;
      if (std::abs(bracket - (jphi.adjoint() * jpsi).trace()) > 1e-10) return false;
    }

    for (const auto& abc :
         std::vector<std::array<double, 3>>{{1, 1, 0}, {0, 1, 1}, {0.7, 1.2, 0.3}}) {
      MapDescriptor m;
      m.d_in = m.d_out = 3;
      const double n = abc[0] + abc[1] + abc[2];
      m.choi = BipartiteOperator{w_abc_witness(abc[0], abc[1], abc[2]).mat / n, 3, 3};
      const Matrix dual = dual_map(m).choi.mat;
      const Matrix swapped = w_abc_witness(abc[0], abc[2], abc[1]).mat / n;
      if (max_abs(dual - swapped) > 1e-13) return false;
    }
    return true;
  });

  criterion(8, "circulant PT coefficient formula equals the direct transpose",
            [](std::string& d) {
    CounterRng rng(73);
    double worst = 0.0;
    for (int dim : {2, 3, 4}) {
      for (int t = 0; t < 200; ++t) {
        std::vector<Matrix> blocks;
        for (int n = 0; n < dim; ++n) {
          Matrix b(dim, dim);
          for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) b(i, j) = rng.complex_normal();
          blocks.push_back(std::move(b));
        }
        const CirculantOperator c{dim, std::move(blocks)};
        const Matrix direct = partial_transpose(circulant_assemble(c)).mat;
        const Matrix tilde = circulant_assemble_tilde(circulant_pt_coeffs(c)).mat;
        worst = std::max(worst, max_abs(direct - tilde));
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max error %.2e", worst);
    d = buf;
    return worst <= 1e-12;
  });

  criterion(9, "MUB witness W3 equals I - 2P+ with trace -1 on P+", [](std::string&) {
    const auto bases = standard_mub(2, 3);
    std::vector<Matrix> tilde;
    for (const auto& b : bases) tilde.push_back(b.conjugate());
    const BipartiteOperator w3 = mub_witness(bases, tilde);
    if (max_abs(w3.mat - (Matrix::Identity(4, 4) - 2.0 * max_entangled_projector(2).mat)) >
        1e-12)
      return false;
    return std::abs(detect(w3, max_entangled_projector(2)) + 1.0) <= 1e-12;
  });

  criterion(10, "Tiles UPB pipeline: PPT, CCNR-flagged, witness-detected",
            [](std::string& d) {
    const auto tiles = tiles_upb();
    const BipartiteOperator x = upb_state(tiles);
    const BipartiteOperator state{x.mat / 4.0, 3, 3};
    const PptResult ppt = ppt_check(state);
    if (!(ppt.min_pt_eigenvalue >= -1e-10)) return false;

    const RealignmentResult ccnr = realignment_check(state);
    if (!(ccnr.sum > 1.0)) return false;

    OptimOptions opts;
    opts.seed = 3;
    opts.restarts = 80;
    Matrix proj = Matrix::Zero(9, 9);
    for (const auto& v : tiles) proj += v.vec * v.vec.adjoint();
    const EdgeSteeredWitness steered =
        edge_steered_witness(BipartiteOperator{proj, 3, 3},
                             BipartiteOperator{Matrix::Zero(9, 9), 3, 3},
                             EdgeSubtraction::max_entangled, opts);
    const double trace = detect(steered.witness, state);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "ccnr %.4f, eps %.4f, tr(WX) %.2e", ccnr.sum,
                  steered.epsilon, trace);
    d = buf;
    return trace < 0.0;
  });

  criterion(11, "SPA closed form zeroes the smallest eigenvalue", [](std::string& d) {
    std::vector<BipartiteOperator> catalog;
    catalog.push_back(flip(2));
    catalog.push_back(flip(3));
    catalog.push_back(reduction_witness(2));
    catalog.push_back(reduction_witness(3));
    catalog.push_back(w_abc_witness(1, 1, 0));
    catalog.push_back(w_abc_witness(0, 1, 1));
    catalog.push_back(w_abc_witness(1.5, 0.5, 0.5));
    catalog.push_back(w_dk_witness(4, 2));
    catalog.push_back(w_dk_witness(4, 3));
    {
      const auto bases = standard_mub(2, 3);
      std::vector<Matrix> tilde;
      for (const auto& b : bases) tilde.push_back(b.conjugate());
      catalog.push_back(mub_witness(bases, tilde));
    }
    {
      const double s = 1.0 / std::sqrt(2.0);
      catalog.push_back(chsh_witness({1, 0, 0}, {0, 1, 0}, {s, s, 0}, {s, -s, 0}));
    }
    catalog.push_back(breuer_hall(canonical_antisymmetric_unitary(2)).witness);
    catalog.push_back(robertson_block(3).witness);
    {
      Matrix z(2, 2);
      z << 0.0, std::polar(1.0, 1.1), std::polar(1.0, -1.1), 0.0;
      catalog.push_back(z_deformed(2, z).witness);
    }
    catalog.push_back(realignment_witness(max_entangled_projector(3)).witness);
    catalog.push_back(spectral_k_schmidt_witness(phi_p_spectral_spec(3, 0.6, 1)).witness);
    catalog.push_back(three_qubit_witnesses().genuine);
    catalog.push_back(three_qubit_witnesses().not_w_class);

    for (const auto& w : catalog) {
      const SpaResult r = spa(w);
      if (std::abs(min_eigenvalue(r.spa_state.mat)) > 1e-9) return false;
    }
    const double p_star = spa(reduction_witness(2)).p_star;
    d = std::to_string(catalog.size()) + " witnesses";
    return std::abs(p_star - 1.0 / 3.0) <= 1e-12;
  });

  criterion(12, "Breuer-Hall projector identity and the Robertson witness",
            [](std::string&) {
    CounterRng rng(79);
    for (int n : {2, 3}) {
      const Matrix u = canonical_antisymmetric_unitary(n);
      const MapWitness mw = breuer_hall(u);
      const int dim = 2 * n;
      for (int t = 0; t < 50; ++t) {
        const Vector psi = random_unit(rng, dim);
        const Matrix p = psi * psi.adjoint();
        const Matrix q = u * p.transpose() * u.adjoint();
        if (std::abs((p * q).trace()) > 1e-12) return false;
        const Matrix expected = (Matrix::Identity(dim, dim) - p - q) / (2.0 * (n - 1));
        if (max_abs(apply_map(mw.map, p) - expected) > 1e-12) return false;
      }
    }
    const MapWitness bh2 = breuer_hall(canonical_antisymmetric_unitary(2));
    return max_abs(2.0 * bh2.witness.mat - robertson_display()) <= 1e-13;
  });

  criterion(13, "see-saw matches the exhaustive Bloch grid on 2x2", [](std::string& d) {
    CounterRng rng(83);
    OptimOptions opts;
    opts.seed = 4;
    opts.restarts = 60;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      Matrix h = random_hermitian(rng, 4);
      BipartiteOperator w{h, 2, 2};
      const double shift = bloch_grid_product_min(w, 2000);
      w.mat -= (shift - 0.05) * Matrix::Identity(4, 4);
      const double grid = bloch_grid_product_min(w, 10000);
      const double opt = min_schmidt_k_expectation(w, 1, opts).min_value;
      worst = std::max(worst, std::abs(grid - opt));
      if (opt > grid + 1e-9) return false;  // the grid can never beat the optimizer
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max gap %.2e", worst);
    d = buf;
    return worst <= 1e-3;
  });

  criterion(14, "three-qubit witnesses hit the stated traces", [](std::string&) {
    const ThreeQubitWitnesses w = three_qubit_witnesses();
    const ThreeQubitStates s = three_qubit_states();
    const BipartiteOperator pw{s.w.vec * s.w.vec.adjoint(), 2, 4};
    const BipartiteOperator pghz{s.ghz.vec * s.ghz.vec.adjoint(), 2, 4};
    if (std::abs(detect(w.genuine, pw) + 0.5) > 1e-12) return false;
    if (std::abs(detect(w.not_w_class, pghz) + 1.0 / 3.0) > 1e-12) return false;

    CounterRng rng(89);
    for (int t = 0; t < 1000; ++t) {
      Matrix rho = Matrix::Zero(8, 8);
      double total = 0.0;
      for (int mix = 0; mix < 3; ++mix) {
        const Vector prod = tensor_product(
            random_unit(rng, 2), tensor_product(random_unit(rng, 2), random_unit(rng, 2)));
        const double wgt = rng.uniform() + 0.05;
        rho += wgt * (prod * prod.adjoint());
        total += wgt;
      }
      rho /= total;
      if ((w.not_full_sep.mat * rho).trace().real() < -1e-10) return false;
    }
    return true;
  });

  std::printf("%d of 14 criteria passed\n", 14 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
