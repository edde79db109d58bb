#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ewt/tensor.hpp"

namespace ewt {

struct OptimOptions {
  std::uint64_t seed = 0;
  int restarts = 0;  // 0 means the default 50 * max(dA, dB)
  int max_sweeps = 500;
  double rel_tol = 1e-12;
  double cert_tol = 1e-7;
};

enum class OptimStatus { certified_negative, heuristic_nonnegative };

struct OptimResult {
  double min_value = 0.0;
  PureState witness_vector;
  OptimStatus status = OptimStatus::heuristic_nonnegative;
  int restarts_used = 0;
  long iterations = 0;
  std::uint64_t seed = 0;
};

// See-saw minimization of <Psi|W|Psi> over normalized Psi with Schmidt rank
// <= k. Each half-step fixes one factor's column space and solves the exact
// eigenproblem on the other; the objective is nonincreasing across
// half-steps. Multistart over `restarts` substreams of the seed; ties merge
// to the lowest value, then lowest substream index.
OptimResult min_schmidt_k_expectation(const BipartiteOperator& w, int k,
                                      const OptimOptions& opts = {});

struct BlockPositivityVerdict {
  bool block_positive = false;   // heuristic unless certified_no
  bool certified_no = false;     // a Schmidt rank <= k violator was found
  double min_value = 0.0;
  std::optional<std::string> diagnostic;  // set when an analytic hint disagrees
};

BlockPositivityVerdict is_k_block_positive(const BipartiteOperator& w, int k,
                                           const OptimOptions& opts = {},
                                           std::optional<bool> analytic_hint = {});

struct PptResult {
  bool is_ppt = false;
  double min_pt_eigenvalue = 0.0;
};
PptResult ppt_check(const BipartiteOperator& x);

struct RealignmentResult {
  double sum = 0.0;  // nuclear norm of the realigned matrix
  bool flags_entangled = false;
};
RealignmentResult realignment_check(const BipartiteOperator& rho);

double detect(const BipartiteOperator& w, const BipartiteOperator& rho);

// Rank of the span of harvested product vectors with zero expectation;
// equal to dA*dB it certifies the spanning property (sufficient for
// optimality).
int spanning_dimension(const BipartiteOperator& w, const OptimOptions& opts = {});

struct SpaResult {
  double p_star = 1.0;
  BipartiteOperator spa_state;  // p* W/tr(W) + (1-p*)/D I
  PptResult ppt;
  RealignmentResult ccnr;
  bool was_positive = false;  // input had no negative eigenvalue
};
SpaResult spa(const BipartiteOperator& w);

enum class Decomposability { yes_analytic, no_analytic, unknown };
std::string to_string(Decomposability d);

// Family tag attached by the constructors; the analytic classification
// tables key off it.
struct FamilyInfo {
  std::string family;
  std::map<std::string, double> params;
};

Decomposability decomposability_verdict(const BipartiteOperator& w,
                                        const FamilyInfo* family = nullptr);

struct WitnessReport {
  bool is_positive_operator = false;
  std::map<int, std::string> block_positive_k;  // yes_heuristic / no_certified
  struct Detection {
    int k = 0;
    double expectation = 0.0;
    PureState vec;
  };
  std::vector<Detection> detected_examples;
  int spanning_dim = 0;
  double spa_p_star = 1.0;
  Decomposability decomposable = Decomposability::unknown;
  std::uint64_t seed = 0;
  int restarts = 0;
};

WitnessReport classify(const BipartiteOperator& w, const OptimOptions& opts = {},
                       const FamilyInfo* family = nullptr);

}  // namespace ewt
