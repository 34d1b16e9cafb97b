#include "netnorm/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "netnorm/errors.hpp"
#include "netnorm/feascheck.hpp"
#include "netnorm/nets.hpp"
#include "netnorm/oracle.hpp"
#include "netnorm/rng.hpp"

namespace netnorm {

namespace {

// Inverse-CDF draw from cumulative weights (last entry = total mass, which
// may be below one; draws past it return -1, the null outcome).
int draw(const std::vector<double>& cumulative, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return -1;
  return static_cast<int>(it - cumulative.begin());
}

std::vector<double> cumulate(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = acc += p[i];
  return c;
}

}  // namespace

int sparse_sample_count(int total_dim, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("sparsify: eps must lie in (0, 1)");
  const double delta = eps / 3.0;
  const double d = total_dim;
  const double raw = 8.0 * d * d * std::log(2.0 * d) / (delta * delta);
  if (raw > 1e9) throw ParameterError("sparsify: sample count overflows; reduce dimension or raise eps");
  return stable_ceil(raw);
}

TermSample sample_terms(const std::vector<CMatrix>& xs, const std::vector<CMatrix>& rest, double eps,
                        std::uint64_t seed, int max_retries) {
  if (xs.size() != rest.size()) throw ParameterError("sample_terms: list lengths differ");
  if (max_retries < 1) throw ParameterError("sample_terms: max_retries must be positive");
  TermSample out;
  out.delta = eps / 3.0;
  if (xs.empty()) {
    sparse_sample_count(1, eps);
    return out;
  }
  const int d1 = static_cast<int>(xs[0].rows());
  const int d2 = static_cast<int>(rest[0].rows());
  out.samples = sparse_sample_count(d1 * d2, eps);

  const std::size_t n = xs.size();
  std::vector<double> p(n);
  double trace_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace_m += p[i] = trace_re(xs[i]) * trace_re(rest[i]);
  if (trace_m <= 0.0) return out;
  for (auto& v : p) v /= trace_m;
  const std::vector<double> cumulative = cumulate(p);

  CMatrix m = CMatrix::Zero(d1 * d2, d1 * d2);
  CMatrix x_sum = CMatrix::Zero(d1, d1);
  for (std::size_t i = 0; i < n; ++i) {
    m += kron(xs[i], rest[i]);
    x_sum += xs[i];
  }
  const double delta = out.delta;
  double last_a = 0.0, last_b = 0.0;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<int> count(n, 0);
    for (int j = 0; j < out.samples; ++j) {
      int i = draw(cumulative, counter_uniform(seed, {static_cast<std::uint64_t>(attempt), static_cast<std::uint64_t>(j)}));
      if (i < 0) i = static_cast<int>(n) - 1;  // rounding at the top of the CDF
      while (i > 0 && p[i] == 0.0) --i;
      ++count[i];
    }
    CMatrix a = CMatrix::Zero(d1 * d2, d1 * d2);
    CMatrix b = CMatrix::Zero(d1, d1);
    std::vector<int> idx;
    std::vector<double> w;
    for (std::size_t i = 0; i < n; ++i) {
      if (count[i] == 0) continue;
      const double scale = count[i] / (out.samples * p[i]);
      a += scale * kron(xs[i], rest[i]);
      b += scale * xs[i];
      idx.push_back(static_cast<int>(i));
      w.push_back(scale / (1.0 + delta));
    }
    last_a = operator_norm(a - m);
    last_b = operator_norm(b - x_sum);
    const double top_b = lambda_max(b);
    const double dist = operator_norm(CMatrix(m - a / (1.0 + delta)));
    if (last_a <= delta && last_b <= delta && top_b <= 1.0 + delta && dist <= eps) {
      out.indices = std::move(idx);
      out.weights = std::move(w);
      out.retries = attempt;
      out.deviation_a = last_a;
      out.deviation_b = last_b;
      out.distance = dist;
      return out;
    }
  }
  throw SparsificationFailed("sparsification failed after " + std::to_string(max_retries) +
                                 " attempts; last deviations ||A-M|| = " + std::to_string(last_a) +
                                 ", ||B-sum X|| = " + std::to_string(last_b),
                             last_a, last_b);
}

LoccSparsification sparsify_locc(const OneWayLOCC& m, double eps, std::uint64_t seed, int max_retries) {
  require_valid(m);
  const OneWayLOCC norm = normalize_locc(m);
  LoccSparsification out;
  out.result = OneWayLOCC{m.d1, m.d2, {}};
  if (norm.terms.empty()) {
    sparse_sample_count(m.d1 * m.d2, eps);
    out.sample.delta = eps / 3.0;
    return out;
  }
  out.sample = sample_terms(norm.xs(), norm.ys(), eps, seed, max_retries);
  for (std::size_t j = 0; j < out.sample.indices.size(); ++j) {
    const LoccTerm& t = norm.terms[out.sample.indices[j]];
    out.result.terms.push_back({out.sample.weights[j] * t.X, t.Y});
  }
  return out;
}

int general_sample_count(int d, double smoothness, double delta, double c_const) {
  if (!(delta > 0.0)) throw ParameterError("sparsify_general: delta must be positive");
  if (!(c_const >= 0.0)) throw ParameterError("sparsify_general: c_const must be nonnegative");
  const double raw = c_const * d * d * (d + smoothness) / (delta * delta);
  if (raw > 1e9) throw ParameterError("sparsify_general: sample count overflows");
  const int k = raw <= 0.0 ? 0 : stable_ceil(raw);
  if (k < 1) throw ParameterError("sparsify_general: sample count k = 0; raise c_const");
  return k;
}

GeneralCandidate general_candidate(const GeneralDecomposition& g, double delta, std::uint64_t seed, int attempt,
                                   double c_const) {
  const GeneralDecomposition norm = normalize_general(g);
  const int d = g.d1;
  const int k = general_sample_count(d, g.space.smoothness, delta, c_const);
  GeneralCandidate out;
  out.decomposition = GeneralDecomposition{g.d1, g.space, {}, {}};
  const std::size_t n = norm.X.size();
  if (n == 0) return out;
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = trace_re(norm.X[i]) / d;
  const std::vector<double> cumulative = cumulate(p);

  std::map<int, int> count;
  for (int j = 0; j < k; ++j) {
    const int i = draw(cumulative, counter_uniform(seed, {0x9e, static_cast<std::uint64_t>(attempt),
                                                          static_cast<std::uint64_t>(j)}));
    if (i >= 0 && p[i] > 0.0) ++count[i];
  }
  CMatrix x_sum = CMatrix::Zero(d, d);
  std::vector<CMatrix> diff_x;
  std::vector<CMatrix> diff_y;
  std::vector<bool> kept(n, false);
  for (const auto& [i, c] : count) {
    const CMatrix x = (c / (k * p[i])) * norm.X[i];
    out.decomposition.X.push_back(x);
    out.decomposition.Y.push_back(norm.Y[i]);
    x_sum += x;
    diff_x.push_back(x - norm.X[i]);
    diff_y.push_back(norm.Y[i]);
    kept[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (kept[i]) continue;
    diff_x.push_back(-norm.X[i]);
    diff_y.push_back(norm.Y[i]);
  }
  out.povm_excess = lambda_max(x_sum) - 1.0;
  // (Lambda'' - Lambda)(rho) = sum_i <X''_i - X_i, rho> Y_i, maximized over pure states
  const InputSpace space{InputBall::density, d};
  out.estimated_deviation =
      linear_ascent(diff_x, diff_y, g.space, space, 20, 50, derive_key(seed, {0x9f, static_cast<std::uint64_t>(attempt)}))
          .value;
  return out;
}

GeneralSparsification sparsify_general(const GeneralDecomposition& g, double delta, std::uint64_t seed,
                                       double c_const, int max_retries) {
  require_valid(g);
  if (max_retries < 1) throw ParameterError("sparsify_general: max_retries must be positive");
  GeneralSparsification out;
  out.samples = general_sample_count(g.d1, g.space.smoothness, delta, c_const);
  double last_excess = 0.0, last_dev = 0.0;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    GeneralCandidate cand = general_candidate(g, delta, seed, attempt, c_const);
    last_excess = cand.povm_excess;
    last_dev = cand.estimated_deviation;
    if (cand.povm_excess > delta || cand.estimated_deviation > delta) continue;
    out.result = std::move(cand.decomposition);
    for (auto& x : out.result.X) x /= (1.0 + delta);
    out.retries = attempt;
    out.povm_excess = cand.povm_excess;
    out.estimated_deviation = cand.estimated_deviation;
    return out;
  }
  throw SparsificationFailed("general sparsification failed after " + std::to_string(max_retries) +
                                 " attempts; last POVM excess " + std::to_string(last_excess) +
                                 ", estimated deviation " + std::to_string(last_dev),
                             last_dev, last_excess);
}

}  // namespace netnorm
