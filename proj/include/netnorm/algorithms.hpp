#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netnorm/feascheck.hpp"
#include "netnorm/model.hpp"
#include "netnorm/nets.hpp"

namespace netnorm {

struct EstimateOptions {
  std::uint64_t budget = kDefaultBudget;  // max net points
  std::uint64_t seed = 0;
  int threads = 0;                        // 0: hardware concurrency
  std::optional<int> k_override;          // scan this k instead of the formula's
  SolverConfig solver;
};

struct NetStats {
  int k = 0;
  int k_requested = 0;
  std::uint64_t scanned = 0;
  std::uint64_t feasible = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t indeterminate = 0;
  bool capped = false;
};

struct EstimateReport {
  std::string algorithm;
  double value = 0.0;            // re-derived from the witnesses
  double delta_requested = 0.0;
  double delta_attained = 0.0;   // net radius + 2 tol + indeterminate penalty (+ stage terms)
  double net_radius = 0.0;       // guarantee of the scanned net alone
  double eps = 0.0;              // feasibility tolerance used in the scan
  NetStats net;
  std::vector<CMatrix> witnesses;  // input-side states (alpha, beta, alpha_1..alpha_l, or a)
  RVector p;                       // maximizing net point (coefficient form)
  RVector q;                       // feasibility witness q_i = x_i(alpha)
  std::uint64_t best_rank = 0;
  bool fallback = false;           // no feasible net point: minimum-distance witness used
  std::vector<std::pair<std::string, double>> diagnostics;  // ordered extra numbers
  std::vector<std::string> notes;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Net scan engine
// ---------------------------------------------------------------------------

struct PointResult {
  double value = 0.0;       // objective at the feasibility witness
  FeasibilityResult check;  // verdict and witness
};

struct ScanOutcome {
  bool found = false;        // some point was feasible
  std::uint64_t rank = 0;    // rank of the best feasible point
  PointResult best;
  std::uint64_t fallback_rank = 0;
  PointResult fallback;      // point with the smallest achieved distance
  NetStats stats;
};

/// Evaluates every point of Delta_n(k) with `eval` (called concurrently from
/// `threads` workers on disjoint colex ranges) and keeps the feasible point
/// of largest value, ties to the smallest rank. `eval` must be pure.
ScanOutcome scan_net(int n, int k, int threads, const std::function<PointResult(std::uint64_t, const NetPoint&)>& eval);

int resolve_threads(int requested);

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

/// h_Sep(M) for a 1-LOCC M: scan Delta_n(k) with k = ceil(9 ln d2 / delta^2),
/// feasibility at eps = delta / 2, value lambda_max(sum q_i Y_i) at the witness.
/// If sum X_i < I the deficit I - sum X_i is appended with Y = 0.
EstimateReport hsep_basic(const OneWayLOCC& m, double delta, const EstimateOptions& opts = {});

/// Sparsify to ||M - M'|| <= delta / 2 (skipped when n is already at most
/// the sample count n'), then hsep_basic(M', delta / 2). Terms with equal Y
/// are merged first, which leaves M unchanged.
EstimateReport hsep_sparse(const OneWayLOCC& m, double delta, const EstimateOptions& opts = {});

/// Largest assembled dimension allowed for the multipartite remainders.
inline constexpr int kMaxAssembledDim = 256;

/// Fully one-way LOCC measurements on l >= 2 parties. Each level scans
/// Delta_n(k), k = ceil(9 l^2 ln d / delta^2) with d the largest local
/// dimension, at eps = delta / (2l), and recurses on the contracted tree
/// sum_i q_i M_i. Sparsifies the first level when n_1 exceeds the sample count.
EstimateReport hsep_multipartite(const MultipartiteLOCC& t, double delta, const EstimateOptions& opts = {});

struct S1Options {
  std::optional<double> max_y;                // bound on ||Y_i|| for the k formula
  std::optional<BanachDescriptor> net_space;  // geometry of the net and feasibility norm
  bool sparsify = true;
  double c_const = 1.0;                       // sparsification sample constant
};

/// max over densities rho of ||sum_i tr(X_i rho) Y_i||_B. k from the type
/// constant formula, feasibility at eps = delta, value ||q||_{B,Y} at the
/// witness. `net_space` decouples the net/feasibility norm from the
/// objective norm (e.g. an S_2 net for an S_inf objective with ||Y_i||_2 <= r).
EstimateReport s1_to_banach(const GeneralDecomposition& g, double delta, const EstimateOptions& opts = {},
                            const S1Options& extra = {});

/// h_Sep of a 1-LOCC M through an S_2 net: needs ||Y_i||_2 <= r for all i.
EstimateReport hsep_lowrank(const OneWayLOCC& m, double r, double delta, const EstimateOptions& opts = {});

/// Lambda = sum_i y_i x_i^* with x_i^* functionals on A, given in the
/// representation of A (Hermitian matrices for S_1, real vectors for l_1, l_2).
struct InjectiveProblem {
  InputBall domain = InputBall::trace_ball;  // trace_ball = S_1, l1, l2
  int dim = 1;
  std::vector<CMatrix> functionals;
  std::vector<CMatrix> ys;
  BanachDescriptor space;
};

/// sup over the unit ball of A of sum_i |x_i^*(a)|; exact for n <= 20.
std::pair<double, bool> factorization_bound(const InjectiveProblem& prob);

/// ||Lambda||_{A -> B}: scan the signed net (Delta over the atoms +e_i,
/// -e_i, 0) with k = ceil((2 C / delta)^{gamma / (gamma - 1)}), feasibility
/// over B(A) at eps = delta. A = S_1 with PSD functionals summing to at most I
/// reduces to s1_to_banach at the same k.
EstimateReport injective_norm(const InjectiveProblem& prob, double delta, const EstimateOptions& opts = {});

}  // namespace netnorm
