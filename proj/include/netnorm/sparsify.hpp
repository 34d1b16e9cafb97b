#pragma once

#include <cstdint>
#include <vector>

#include "netnorm/model.hpp"

namespace netnorm {

/// Sampled reweighting of a term list sum_i X_i (x) R_i: term i is kept with
/// weight w_i, so the sparse operator is sum_i w_i X_i (x) R_i.
struct TermSample {
  std::vector<int> indices;     // distinct retained terms, ascending
  std::vector<double> weights;  // X-side scale for each retained term
  int samples = 0;              // n' draws
  int retries = 0;              // failed attempts before success
  double delta = 0.0;           // eps / 3
  double deviation_a = 0.0;     // ||A - M||
  double deviation_b = 0.0;     // ||B - sum X||
  double distance = 0.0;        // ||M - M'||, checked directly
};

/// Core sampler. `rest[i]` is the operator paired with X_i (for a 1-LOCC
/// measurement, Y_i). Samples n' = ceil(8 D^2 ln(2D) / delta^2) indices from
/// p_i = tr(X_i (x) R_i) / tr M with delta = eps / 3 and D the total
/// dimension, then requires ||A - M|| <= delta, ||B - sum X|| <= delta,
/// lambda_max(B) <= 1 + delta and ||M - A / (1 + delta)|| <= eps.
/// Sample j of attempt r is drawn from counter_uniform(seed, {r, j}).
TermSample sample_terms(const std::vector<CMatrix>& xs, const std::vector<CMatrix>& rest, double eps,
                        std::uint64_t seed, int max_retries = 64);

/// n' for a total dimension D at accuracy eps.
int sparse_sample_count(int total_dim, double eps);

struct LoccSparsification {
  OneWayLOCC result;
  TermSample sample;
};

/// Sparsified 1-LOCC measurement M' with ||M - M'|| <= eps (verified).
/// Y-operators are normalized first; tr M = 0 gives an empty measurement.
LoccSparsification sparsify_locc(const OneWayLOCC& m, double eps, std::uint64_t seed, int max_retries = 64);

struct GeneralSparsification {
  GeneralDecomposition result;  // rescaled by 1 / (1 + delta)
  int samples = 0;              // k
  int retries = 0;
  double povm_excess = 0.0;          // lambda_max(sum X') - 1 before rescaling
  double estimated_deviation = 0.0;  // heuristic estimate of ||Lambda'' - Lambda||_{S1->B}
  bool heuristic = true;             // the deviation is a local-search estimate, not certified
};

/// One sampling attempt of the general sparsifier, before any acceptance
/// test or rescaling. Exposed so acceptance rates can be measured per seed.
struct GeneralCandidate {
  GeneralDecomposition decomposition;  // Lambda''
  double povm_excess = 0.0;
  double estimated_deviation = 0.0;
};

/// k = ceil(c d^2 (d + s) / delta^2).
int general_sample_count(int d, double smoothness, double delta, double c_const);

GeneralCandidate general_candidate(const GeneralDecomposition& g, double delta, std::uint64_t seed, int attempt,
                                   double c_const = 1.0);

/// Sample-and-verify sparsification of Lambda(rho) = sum_i tr(X_i rho) Y_i.
/// Accepts a candidate when sum X' <= (1 + delta) I and the estimated
/// deviation is at most delta; returns it rescaled by 1 / (1 + delta).
GeneralSparsification sparsify_general(const GeneralDecomposition& g, double delta, std::uint64_t seed,
                                       double c_const = 1.0, int max_retries = 64);

}  // namespace netnorm
