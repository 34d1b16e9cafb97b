#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netnorm/feascheck.hpp"
#include "netnorm/matlib.hpp"
#include "netnorm/model.hpp"

namespace netnorm {

// ---------------------------------------------------------------------------
// Reference optimizers. All are local searches: they can under-report but
// every returned value is attained by the returned witness.
// ---------------------------------------------------------------------------

struct ProductOptimum {
  double value = 0.0;
  std::vector<CVector> states;  // one unit vector per party
  bool monotone = true;         // every ascent step was non-decreasing
};

/// max over product pure states of <a (x) b|M|a (x) b> by alternating top
/// eigenvectors of the partial contractions; best of `restarts` random starts.
ProductOptimum hsep_alternating(const CMatrix& m, int d1, int d2, int restarts = 50, int iters = 200,
                                std::uint64_t seed = 0);

/// Same ascent for any number of parties (dims.size() >= 1).
ProductOptimum product_alternating(const CMatrix& m, const std::vector<int>& dims, int restarts = 50,
                                   int iters = 200, std::uint64_t seed = 0);

/// Exhaustive scan over real product qubit states cos t|0> + sin t|1>,
/// t on a uniform grid of [0, pi) with `points` values per party.
ProductOptimum product_qubit_grid(const CMatrix& m, int parties, int points);

/// max ||A x||_q over unit x by the nonlinear power iteration
/// x <- A^dag(|y|^{q-2} y), y = A x, normalized; best of `restarts` starts.
/// Entry 0 of the starts is the top right singular vector.
double two_to_q_gradient(const CMatrix& a, double q, int restarts = 500, int iters = 300, std::uint64_t seed = 0);

/// ||A x||_q on a uniform angle grid of real unit vectors (two columns only).
double two_to_q_angle_grid(const CMatrix& a, double q, int points);

struct LinearAscentResult {
  double value = 0.0;
  CMatrix point;  // maximizing element of the input set
};

/// max over a in the input set of ||sum_i <x_i, a> Y_i||_B. Each step
/// replaces a by the support point of sum_i <G, Y_i> x_i, where G norms the
/// current output; the objective is convex so extreme points suffice.
LinearAscentResult linear_ascent(std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                 const BanachDescriptor& desc, const InputSpace& space, int restarts = 50,
                                 int iters = 100, std::uint64_t seed = 0);

/// Pure-state maximization for qubit inputs: a Bloch-sphere grid with
/// `points` polar angles (2 * points azimuths), refined by linear_ascent
/// from the best grid point.
LinearAscentResult qubit_sphere_search(std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                       const BanachDescriptor& desc, int points);

// ---------------------------------------------------------------------------
// Empirical checks of the concentration and geometry lemmas.
// ---------------------------------------------------------------------------

struct TailRow {
  double delta = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
};

struct TailTable {
  std::vector<TailRow> rows;
  bool pass = true;
};

/// Pr[||(1/k) sum Z_i|| >= delta] for Z_i = s_i * lambda * P_i (Rademacher
/// sign, random projector), against d exp(-k delta^2 / (8 lambda^2)).
TailTable hoeffding_tail_check(int d, int k, double lambda, int trials, const std::vector<double>& deltas,
                               std::uint64_t seed);

struct TypeCheck {
  double ratio = 0.0;   // max over trials of E_eps||sum eps_i Z_i||^g / sum ||Z_i||^g
  double bound = 0.0;   // C^gamma
  double sigma = 0.0;   // Monte-Carlo standard error of the worst trial (0 when exact)
  bool exact = true;    // sign expectation enumerated exactly
  bool pass = false;
};

/// Rademacher type check. Z_i are random elements of the unit ball of B;
/// the sign expectation is enumerated exactly for k <= 12.
TypeCheck type_constant_check(const BanachDescriptor& desc, int k, int trials, std::uint64_t seed);

struct SymmetrizationCheck {
  double lhs = 0.0;  // E ||(1/k) sum Z_{i_j} - E Z||^gamma
  double rhs = 0.0;  // 2 E ||(1/k) sum eps_j Z_{i_j}||^gamma
  double sigma = 0.0;
  bool pass = false;
};

/// Z drawn from a random finite family in the unit ball with random weights.
SymmetrizationCheck symmetrization_check(const BanachDescriptor& desc, int k, int trials, std::uint64_t seed);

/// Tail of ||(1/k) sum eps_i Z_i||_B for unit-ball Z_i against
/// exp(s + 2 - c k delta^2) with c = 1 / (4 s).
TailTable azuma_tail_check(const BanachDescriptor& desc, int k, int trials, const std::vector<double>& deltas,
                           std::uint64_t seed);

struct CoveringCheck {
  int instances = 0;
  int passed = 0;
  double worst_slack = 0.0;  // max over instances of (min distance) - bound, <= 0 when all pass
};

/// Random p in Delta_n and 0 <= Y_i <= I with n <= 5, d2 <= 4, k in [4, 20]:
/// min over the full net Delta_n(k) of ||p - q||_Y against sqrt(9 ln d2 / k).
CoveringCheck net_covering_check(int instances, std::uint64_t seed);

/// One named lemma suite result, shared by the CLI and the acceptance run.
struct LemmaResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<LemmaResult> run_lemma_suites(std::uint64_t seed);

}  // namespace netnorm
