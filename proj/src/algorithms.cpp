#include "netnorm/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <atomic>
#include <bit>
#include <random>
#include <thread>

#include "netnorm/errors.hpp"
#include "netnorm/rng.hpp"
#include "netnorm/sparsify.hpp"

namespace netnorm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_delta(double delta, const char* who) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError(std::string(who) + ": delta must lie in (0, 1]");
}

// Candidate a is better than b: larger value, ties to the smaller rank.
bool better(double va, std::uint64_t ra, double vb, std::uint64_t rb) {
  if (va != vb) return va > vb;
  return ra < rb;
}

bool closer(double aa, std::uint64_t ra, double ab, std::uint64_t rb) {
  if (aa != ab) return aa < ab;
  return ra < rb;
}

// Appends the completion term (I - sum X, zero partner) when sum X < I.
void complete_povm(std::vector<CMatrix>& xs, std::vector<CMatrix>& partners, int d, const CMatrix& zero) {
  std::optional<CMatrix> deficit =
      xs.empty() ? std::optional<CMatrix>(CMatrix::Identity(d, d)) : povm_deficit(xs);
  if (!deficit) return;
  xs.push_back(*deficit);
  partners.push_back(zero);
}

CMatrix zero_like(const BanachDescriptor& desc) {
  return desc.family == Family::schatten ? CMatrix::Zero(desc.dim, desc.dim) : CMatrix::Zero(desc.dim, 1);
}

double max_norm(const std::vector<CMatrix>& ys, const BanachDescriptor& desc) {
  double out = 0.0;
  for (const auto& y : ys) out = std::max(out, banach_norm(desc, y));
  return out;
}

double indeterminate_rate(const NetStats& s) {
  return s.scanned == 0 ? 0.0 : static_cast<double>(s.indeterminate) / static_cast<double>(s.scanned);
}

// Fills the net-related fields of a report from a finished simplex scan.
void record_scan(EstimateReport& rep, const ScanOutcome& out, const NetSpec& spec) {
  rep.net = out.stats;
  rep.net.k = spec.k;
  rep.net.k_requested = spec.k_requested;
  rep.net.capped = spec.capped;
  rep.fallback = !out.found;
  rep.best_rank = out.found ? out.rank : out.fallback_rank;
  if (rep.fallback) rep.notes.push_back("no net point was certified feasible; the closest witness is reported");
}

const PointResult& chosen(const ScanOutcome& out) { return out.found ? out.best : out.fallback; }

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

ScanOutcome scan_net(int n, int k, int threads,
                     const std::function<PointResult(std::uint64_t, const NetPoint&)>& eval) {
  const std::uint64_t total = multiset_count(n, k);
  const NetEnumerator net(n, k, total);
  const int workers = static_cast<int>(std::min<std::uint64_t>(std::max(1, threads), std::max<std::uint64_t>(1, total)));

  std::vector<ScanOutcome> partial(workers);
  std::vector<char> has_fallback(workers, 0);
  auto work = [&](int w) {
    const std::uint64_t first = total * w / workers;
    const std::uint64_t last = total * (w + 1) / workers;
    ScanOutcome& acc = partial[w];
    char& have_fallback = has_fallback[w];
    net.for_range(first, last, [&](std::uint64_t rank, const NetPoint& pt) {
      PointResult r = eval(rank, pt);
      ++acc.stats.scanned;
      switch (r.check.status) {
        case Verdict::feasible: ++acc.stats.feasible; break;
        case Verdict::infeasible: ++acc.stats.infeasible; break;
        case Verdict::indeterminate: ++acc.stats.indeterminate; break;
      }
      if (r.check.status == Verdict::feasible) {
        if (!acc.found || better(r.value, rank, acc.best.value, acc.rank)) {
          acc.found = true;
          acc.rank = rank;
          acc.best = std::move(r);
        }
      } else if (!have_fallback || closer(r.check.achieved, rank, acc.fallback.check.achieved, acc.fallback_rank)) {
        have_fallback = 1;
        acc.fallback_rank = rank;
        acc.fallback = std::move(r);
      }
    });
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  ScanOutcome out;
  bool have_fallback = false;
  for (int w = 0; w < workers; ++w) {
    ScanOutcome& p = partial[w];
    out.stats.scanned += p.stats.scanned;
    out.stats.feasible += p.stats.feasible;
    out.stats.infeasible += p.stats.infeasible;
    out.stats.indeterminate += p.stats.indeterminate;
    if (p.found && (!out.found || better(p.best.value, p.rank, out.best.value, out.rank))) {
      out.found = true;
      out.rank = p.rank;
      out.best = std::move(p.best);
    }
    if (has_fallback[w] &&
        (!have_fallback || closer(p.fallback.check.achieved, p.fallback_rank, out.fallback.check.achieved,
                                  out.fallback_rank))) {
      have_fallback = true;
      out.fallback_rank = p.fallback_rank;
      out.fallback = std::move(p.fallback);
    }
  }
  out.stats.k = k;
  return out;
}

// ---------------------------------------------------------------------------
// hsep_basic
// ---------------------------------------------------------------------------

EstimateReport hsep_basic(const OneWayLOCC& m, double delta, const EstimateOptions& opts) {
  const auto start = Clock::now();
  require_valid(m);
  require_delta(delta, "hsep_basic");

  std::vector<CMatrix> xs = m.xs();
  std::vector<CMatrix> ys = m.ys();
  complete_povm(xs, ys, m.d1, CMatrix::Zero(m.d2, m.d2));
  const int n = static_cast<int>(xs.size());
  const BanachDescriptor desc = banach_constants(Family::schatten, kInf, m.d2);
  const double eps = delta / 2.0;

  const NetSpec spec = plan_net(n, choose_k_basic(m.d2, delta), delta, opts.budget,
                                [&](int k) { return attained_delta_basic(m.d2, k); }, opts.k_override);

  const ScanOutcome out = scan_net(n, spec.k, resolve_threads(opts.threads), [&](std::uint64_t rank, const NetPoint& pt) {
    PointResult r;
    r.check = check_feasible(pt.probability(), xs, ys, desc, eps, opts.solver, derive_key(opts.seed, {rank}));
    r.value = y_norm(r.check.q, ys, desc);
    return r;
  });

  EstimateReport rep;
  rep.algorithm = "hsep_basic";
  rep.delta_requested = delta;
  rep.eps = eps;
  rep.seed = opts.seed;
  record_scan(rep, out, spec);
  const PointResult& win = chosen(out);
  rep.p = NetEnumerator(n, spec.k, spec.cardinality).at(rep.best_rank).probability();
  rep.q = win.check.q;

  const CMatrix alpha = win.check.alpha;
  const CMatrix beta = projector(top_eigenpair(combine(rep.q, ys)).vector);
  rep.witnesses = {alpha, beta};
  const double certified = trace_re(CMatrix(m.assemble() * kron(alpha, beta)));
  rep.value = certified;
  rep.diagnostics.emplace_back("scan_value", win.value);
  rep.diagnostics.emplace_back("certification_gap", std::abs(certified - win.value));

  rep.net_radius = spec.delta_attained;
  const double penalty = indeterminate_rate(rep.net) * max_norm(ys, desc);
  rep.diagnostics.emplace_back("indeterminate_penalty", penalty);
  rep.delta_attained = rep.net_radius + 2.0 * opts.solver.tol + penalty;
  rep.wall_seconds = seconds_since(start);
  return rep;
}

// ---------------------------------------------------------------------------
// hsep_sparse
// ---------------------------------------------------------------------------

namespace {

// Sums the X operators of terms with identical Y; the operator is unchanged.
OneWayLOCC merge_equal_y(const OneWayLOCC& m) {
  OneWayLOCC out{m.d1, m.d2, {}};
  for (const auto& t : m.terms) {
    bool merged = false;
    for (auto& u : out.terms) {
      if (u.Y.rows() == t.Y.rows() && u.Y == t.Y) {
        u.X += t.X;
        merged = true;
        break;
      }
    }
    if (!merged) out.terms.push_back(t);
  }
  return out;
}

}  // namespace

EstimateReport hsep_sparse(const OneWayLOCC& m, double delta, const EstimateOptions& opts) {
  const auto start = Clock::now();
  require_valid(m);
  require_delta(delta, "hsep_sparse");
  const OneWayLOCC merged = merge_equal_y(m);
  const double eps = delta / 2.0;
  int samples = 0;
  bool sparsify = false;
  try {
    samples = sparse_sample_count(m.d1 * m.d2, eps);
    sparsify = static_cast<int>(merged.terms.size()) > samples;
  } catch (const ParameterError&) {
    // n' beyond any representable term count: n cannot exceed it
  }
  if (!sparsify) {
    EstimateReport rep = hsep_basic(merged, delta, opts);
    rep.algorithm = "hsep_sparse";
    rep.diagnostics.emplace_back("terms_in", static_cast<double>(m.terms.size()));
    rep.diagnostics.emplace_back("terms_merged", static_cast<double>(merged.terms.size()));
    rep.diagnostics.emplace_back("sparse_samples", samples);
    rep.notes.push_back("sparsification skipped: term count already at most n'");
    rep.wall_seconds = seconds_since(start);
    return rep;
  }

  const LoccSparsification sp = sparsify_locc(merged, eps, derive_key(opts.seed, {0x5ba75e}));
  EstimateReport rep = hsep_basic(sp.result, eps, opts);
  rep.algorithm = "hsep_sparse";
  rep.delta_requested = delta;
  const double sparse_value = rep.value;
  rep.value = trace_re(CMatrix(m.assemble() * kron(rep.witnesses[0], rep.witnesses[1])));
  rep.diagnostics.emplace_back("sparse_value", sparse_value);
  rep.diagnostics.emplace_back("terms_in", static_cast<double>(m.terms.size()));
  rep.diagnostics.emplace_back("terms_merged", static_cast<double>(merged.terms.size()));
  rep.diagnostics.emplace_back("terms_sparse", static_cast<double>(sp.result.terms.size()));
  rep.diagnostics.emplace_back("sparse_samples", sp.sample.samples);
  rep.diagnostics.emplace_back("sparse_retries", sp.sample.retries);
  rep.diagnostics.emplace_back("sparse_distance", sp.sample.distance);
  rep.delta_attained += sp.sample.distance;
  rep.wall_seconds = seconds_since(start);
  return rep;
}

// ---------------------------------------------------------------------------
// hsep_multipartite
// ---------------------------------------------------------------------------

namespace {


struct LevelResult {
  double value = 0.0;
  std::vector<CMatrix> alphas;  // parties depth..l-1
  RVector p;
  RVector q;
  std::uint64_t rank = 0;
  bool fallback = false;
  NetStats stats;  // scan at this level only
};

struct Counters {
  std::atomic<std::uint64_t> scanned{0};
  std::atomic<std::uint64_t> feasible{0};
  std::atomic<std::uint64_t> infeasible{0};
  std::atomic<std::uint64_t> indeterminate{0};
};

int product_dims(const std::vector<int>& dims, std::size_t from) {
  long long d = 1;
  for (std::size_t i = from; i < dims.size(); ++i) {
    d *= dims[i];
    if (d > kMaxAssembledDim) return kMaxAssembledDim + 1;
  }
  return static_cast<int>(d);
}

// Nodes of the contracted forest: children of node i with X scaled by q_i.
std::vector<TreeNode> contract(const std::vector<TreeNode>& forest, const RVector& q) {
  std::vector<TreeNode> next;
  for (std::size_t i = 0; i < forest.size(); ++i) {
    for (const auto& child : forest[i].children) next.push_back({q(i) * child.X, child.children});
  }
  return next;
}

class MultiSolver {
 public:
  MultiSolver(const std::vector<int>& dims, int k, double eps, const SolverConfig& cfg)
      : dims_(dims), k_(k), eps_(eps), cfg_(cfg) {}

  // Optimizes the forest whose nodes act on party `depth` (0-based).
  // `counters` is null when replaying an already counted branch.
  LevelResult solve(const std::vector<TreeNode>& forest, std::size_t depth, std::uint64_t seed, int threads,
                    Counters* counters) const {
    const int d = dims_[depth];
    LevelResult res;
    if (depth + 1 == dims_.size()) {
      CMatrix a = CMatrix::Zero(d, d);
      for (const auto& node : forest) a += node.X;
      const Eigenpair top = top_eigenpair(hermitize(a));
      res.value = top.value;
      res.alphas = {projector(top.vector)};
      return res;
    }

    std::vector<CMatrix> xs;
    std::vector<CMatrix> ms;
    for (const auto& node : forest) {
      xs.push_back(node.X);
      ms.push_back(forest_operator(node.children, dims_, static_cast<int>(depth) + 2));
    }
    const int dm = product_dims(dims_, depth + 1);
    complete_povm(xs, ms, d, CMatrix::Zero(dm, dm));
    const int n = static_cast<int>(xs.size());
    const BanachDescriptor desc = banach_constants(Family::schatten, kInf, dm);

    auto check = [&](std::uint64_t rank, const NetPoint& pt) {
      return check_feasible(pt.probability(), xs, ms, desc, eps_, cfg_, derive_key(seed, {rank}));
    };
    auto child_seed = [&](std::uint64_t rank) { return derive_key(seed, {rank, 0x5eb}); };

    const ScanOutcome out = scan_net(n, k_, threads, [&](std::uint64_t rank, const NetPoint& pt) {
      PointResult r;
      r.check = check(rank, pt);
      if (r.check.status == Verdict::feasible) {
        r.value = solve(contract(forest, r.check.q), depth + 1, child_seed(rank), 1, counters).value;
      }
      return r;
    });
    if (counters) {
      counters->scanned += out.stats.scanned;
      counters->feasible += out.stats.feasible;
      counters->infeasible += out.stats.infeasible;
      counters->indeterminate += out.stats.indeterminate;
    }

    const PointResult& win = chosen(out);
    res.rank = out.found ? out.rank : out.fallback_rank;
    LevelResult sub = solve(contract(forest, win.check.q), depth + 1, child_seed(res.rank), 1, nullptr);
    res.value = sub.value;
    res.alphas = {win.check.alpha};
    res.alphas.insert(res.alphas.end(), sub.alphas.begin(), sub.alphas.end());
    res.fallback = !out.found || sub.fallback;
    res.p = NetEnumerator(n, k_, multiset_count(n, k_)).at(res.rank).probability();
    res.q = win.check.q;
    res.stats = out.stats;
    return res;
  }

 private:
  const std::vector<int>& dims_;
  int k_;
  double eps_;
  SolverConfig cfg_;
};

void count_nodes(const std::vector<TreeNode>& forest, std::size_t depth, std::vector<std::uint64_t>& counts) {
  if (depth >= counts.size()) return;
  counts[depth] += forest.size();
  for (const auto& node : forest) count_nodes(node.children, depth + 1, counts);
}

// Points visited by the whole recursion: product of the per-level net sizes.
std::uint64_t recursion_cost(const std::vector<int>& level_n, int k) {
  std::uint64_t cost = 1;
  for (int n : level_n) {
    const std::uint64_t c = multiset_count(n, k);
    if (c != 0 && cost > UINT64_MAX / c) return UINT64_MAX;
    cost *= c;
  }
  return cost;
}

}  // namespace

EstimateReport hsep_multipartite(const MultipartiteLOCC& t, double delta, const EstimateOptions& opts) {
  const auto start = Clock::now();
  require_valid(t);
  require_delta(delta, "hsep_multipartite");
  const int l = t.parties();
  if (l < 2) throw ParameterError("hsep_multipartite: needs at least two parties");
  if (product_dims(t.dims, 0) > kMaxAssembledDim) {
    throw ParameterError("hsep_multipartite: assembled dimension exceeds " + std::to_string(kMaxAssembledDim) +
                         "; reduce the local dimensions or the number of parties");
  }
  const int dmax = *std::max_element(t.dims.begin(), t.dims.end());
  const double eps = delta / (2.0 * l);

  EstimateReport rep;
  rep.algorithm = "hsep_multipartite";
  rep.delta_requested = delta;
  rep.eps = eps;
  rep.seed = opts.seed;

  // Optional sparsification of the first level.
  std::vector<TreeNode> roots = t.roots;
  double stage = 0.0;
  {
    int samples = 0;
    bool sparsify = false;
    try {
      samples = sparse_sample_count(product_dims(t.dims, 0), eps);
      sparsify = static_cast<int>(roots.size()) > samples;
    } catch (const ParameterError&) {
    }
    if (sparsify) {
      std::vector<CMatrix> xs;
      std::vector<CMatrix> rest;
      for (const auto& node : roots) {
        xs.push_back(node.X);
        rest.push_back(forest_operator(node.children, t.dims, 2));
      }
      const TermSample sp = sample_terms(xs, rest, eps, derive_key(opts.seed, {0x5ba75e}));
      std::vector<TreeNode> kept;
      for (std::size_t j = 0; j < sp.indices.size(); ++j) {
        kept.push_back({sp.weights[j] * roots[sp.indices[j]].X, roots[sp.indices[j]].children});
      }
      roots = std::move(kept);
      stage = sp.distance;
      rep.diagnostics.emplace_back("sparse_samples", sp.samples);
      rep.diagnostics.emplace_back("sparse_distance", sp.distance);
    }
  }

  // Net sizes per level: real completion at the root, one slot below.
  std::vector<std::uint64_t> counts(l - 1, 0);
  count_nodes(roots, 0, counts);
  std::vector<CMatrix> root_xs;
  for (const auto& node : roots) root_xs.push_back(node.X);
  std::vector<int> level_n(l - 1);
  level_n[0] = static_cast<int>(counts[0]) + ((root_xs.empty() || povm_deficit(root_xs)) ? 1 : 0);
  for (int m = 1; m < l - 1; ++m) level_n[m] = static_cast<int>(counts[m]) + 1;

  const int k_requested = opts.k_override.value_or(choose_k_multipartite(dmax, l, delta));
  if (k_requested < 1) throw ParameterError("hsep_multipartite: k must be positive");
  int k = k_requested;
  while (k >= 1 && recursion_cost(level_n, k) > opts.budget) --k;
  if (k < 1) throw BudgetExceeded(recursion_cost(level_n, 1), 0, std::nan(""));

  Counters counters;
  const MultiSolver solver(t.dims, k, eps, opts.solver);
  const LevelResult res = solver.solve(roots, 0, opts.seed, resolve_threads(opts.threads), &counters);

  rep.net = res.stats;
  rep.net.k = k;
  rep.net.k_requested = k_requested;
  rep.net.capped = k < k_requested;
  rep.fallback = res.fallback;
  if (rep.fallback) rep.notes.push_back("some level had no certified feasible net point; the closest witness is used");
  rep.best_rank = res.rank;
  rep.p = res.p;
  rep.q = res.q;
  rep.witnesses = res.alphas;

  CMatrix product = res.alphas[0];
  for (std::size_t i = 1; i < res.alphas.size(); ++i) product = kron(product, res.alphas[i]);
  rep.value = trace_re(CMatrix(t.assemble() * product));
  rep.diagnostics.emplace_back("scan_value", res.value);
  rep.diagnostics.emplace_back("certification_gap", std::abs(rep.value - res.value));
  rep.diagnostics.emplace_back("points_scanned_total", static_cast<double>(counters.scanned.load()));
  rep.diagnostics.emplace_back("indeterminate_total", static_cast<double>(counters.indeterminate.load()));

  double max_m = 0.0;
  for (const auto& node : roots) max_m = std::max(max_m, operator_norm(forest_operator(node.children, t.dims, 2)));
  const double rate = counters.scanned == 0 ? 0.0
                                            : static_cast<double>(counters.indeterminate.load()) /
                                                  static_cast<double>(counters.scanned.load());
  const double penalty = rate * max_m;
  rep.diagnostics.emplace_back("indeterminate_penalty", penalty);
  rep.net_radius = attained_delta_multipartite(dmax, l, k);
  rep.delta_attained = rep.net_radius + 2.0 * opts.solver.tol * (l - 1) + penalty + stage;
  rep.wall_seconds = seconds_since(start);
  return rep;
}

// ---------------------------------------------------------------------------
// s1_to_banach and its low-rank mode
// ---------------------------------------------------------------------------

EstimateReport s1_to_banach(const GeneralDecomposition& g, double delta, const EstimateOptions& opts,
                            const S1Options& extra) {
  const auto start = Clock::now();
  require_valid(g);
  require_delta(delta, "s1_to_banach");
  const BanachDescriptor& obj = g.space;
  const BanachDescriptor net_desc = extra.net_space.value_or(g.space);
  if (net_desc.family != obj.family || net_desc.dim != obj.dim) {
    throw ParameterError("s1_to_banach: net space must share the family and dimension of the objective space");
  }

  EstimateReport rep;
  rep.algorithm = "s1_to_banach";
  rep.delta_requested = delta;
  rep.seed = opts.seed;

  GeneralDecomposition work = g;
  double scan_delta = delta;
  double stage = 0.0;
  if (extra.sparsify && !g.X.empty()) {
    int samples = 0;
    bool sparsify = false;
    try {
      samples = general_sample_count(g.d1, obj.smoothness, delta / 2.0, extra.c_const);
      sparsify = static_cast<int>(g.X.size()) > samples;
    } catch (const ParameterError&) {
    }
    if (sparsify) {
      const double ds = delta / 2.0;
      const GeneralSparsification sp = sparsify_general(g, ds, derive_key(opts.seed, {0x5ba75e}), extra.c_const);
      work = sp.result;
      scan_delta = ds;
      // ||Lambda'' - Lambda|| plus the loss from the 1 / (1 + delta) rescale
      const double top = max_norm(g.Y, obj) + sp.estimated_deviation;
      stage = sp.estimated_deviation + ds / (1.0 + ds) * top;
      rep.diagnostics.emplace_back("sparse_samples", sp.samples);
      rep.diagnostics.emplace_back("sparse_retries", sp.retries);
      rep.diagnostics.emplace_back("sparse_estimated_deviation", sp.estimated_deviation);
      rep.notes.push_back("general sparsification applied; its deviation is a local-search estimate");
    }
  }

  std::vector<CMatrix> xs = work.X;
  std::vector<CMatrix> ys = work.Y;
  complete_povm(xs, ys, g.d1, zero_like(obj));
  const int n = static_cast<int>(xs.size());
  const double actual_max = max_norm(ys, net_desc);
  if (extra.max_y && actual_max > *extra.max_y + 1e-9) {
    throw ValidationError("s1_to_banach: some ||Y_i|| = " + std::to_string(actual_max) + " exceeds the bound " +
                          std::to_string(*extra.max_y));
  }
  const double max_y = extra.max_y.value_or(actual_max);
  const double eps = scan_delta;
  rep.eps = eps;

  const bool trivial = !(max_y > 0.0);
  const int k_wanted = trivial ? 1 : choose_k_general(net_desc, scan_delta, max_y);
  const NetSpec spec = plan_net(
      n, k_wanted, scan_delta, opts.budget,
      [&](int k) { return trivial ? 0.0 : attained_delta_general(net_desc, max_y, k); }, opts.k_override);

  const ScanOutcome out = scan_net(n, spec.k, resolve_threads(opts.threads), [&](std::uint64_t rank, const NetPoint& pt) {
    PointResult r;
    r.check = check_feasible(pt.probability(), xs, ys, net_desc, eps, opts.solver, derive_key(opts.seed, {rank}));
    r.value = y_norm(r.check.q, ys, obj);
    return r;
  });

  record_scan(rep, out, spec);
  const PointResult& win = chosen(out);
  rep.p = NetEnumerator(n, spec.k, spec.cardinality).at(rep.best_rank).probability();
  rep.q = win.check.q;
  rep.witnesses = {win.check.alpha};
  rep.value = banach_norm(obj, combine(apply_functionals(g.X, win.check.alpha), g.Y));
  rep.diagnostics.emplace_back("scan_value", win.value);
  rep.diagnostics.emplace_back("max_y", max_y);

  rep.net_radius = spec.delta_attained;
  const double penalty = indeterminate_rate(rep.net) * actual_max;
  rep.diagnostics.emplace_back("indeterminate_penalty", penalty);
  rep.delta_attained = rep.net_radius + 2.0 * opts.solver.tol + penalty + stage;
  rep.wall_seconds = seconds_since(start);
  return rep;
}

EstimateReport hsep_lowrank(const OneWayLOCC& m, double r, double delta, const EstimateOptions& opts) {
  const auto start = Clock::now();
  require_valid(m);
  if (!(r > 0.0)) throw ParameterError("hsep_lowrank: r must be positive");
  GeneralDecomposition g{m.d1, banach_constants(Family::schatten, kInf, m.d2), m.xs(), m.ys()};
  S1Options extra;
  extra.max_y = r;
  extra.net_space = banach_constants(Family::schatten, 2.0, m.d2);
  extra.sparsify = false;
  EstimateReport rep = s1_to_banach(g, delta, opts, extra);
  rep.algorithm = "hsep_lowrank";
  const CMatrix alpha = rep.witnesses[0];
  const CMatrix beta = projector(top_eigenpair(combine(apply_functionals(g.X, alpha), g.Y)).vector);
  rep.witnesses.push_back(beta);
  rep.value = trace_re(CMatrix(m.assemble() * kron(alpha, beta)));
  rep.wall_seconds = seconds_since(start);
  return rep;
}

// ---------------------------------------------------------------------------
// injective_norm
// ---------------------------------------------------------------------------

namespace {

void check_injective_shapes(const InjectiveProblem& prob) {
  if (prob.domain == InputBall::density) {
    throw ParameterError("injective_norm: domain must be S_1 (trace ball), l1 or l2");
  }
  if (prob.dim < 1) throw ParameterError("injective_norm: dimension must be positive");
  if (prob.functionals.empty()) throw ParameterError("injective_norm: needs at least one functional");
  if (prob.functionals.size() != prob.ys.size()) throw ParameterError("injective_norm: list lengths differ");
  require_valid(prob.space);
  const bool matrix = prob.domain == InputBall::trace_ball;
  for (std::size_t i = 0; i < prob.functionals.size(); ++i) {
    const CMatrix& x = prob.functionals[i];
    if (matrix ? (x.rows() != prob.dim || x.cols() != prob.dim) : (x.rows() != prob.dim || x.cols() != 1)) {
      throw ParameterError("injective_norm: functional " + std::to_string(i) + " has the wrong shape");
    }
    if (matrix && !is_hermitian(x)) {
      throw ValidationError("injective_norm: functional " + std::to_string(i) + " is not Hermitian");
    }
    if (!matrix && x.imag().cwiseAbs().maxCoeff() > kHermitianTol) {
      throw ValidationError("injective_norm: functional " + std::to_string(i) + " is not real");
    }
    const CMatrix& y = prob.ys[i];
    const bool ok = prob.space.family == Family::schatten
                        ? (y.rows() == prob.space.dim && y.cols() == prob.space.dim)
                        : (y.size() == prob.space.dim);
    if (!ok) throw ParameterError("injective_norm: element y_" + std::to_string(i) + " has the wrong shape");
  }
}

bool reduces_to_s1(const InjectiveProblem& prob) {
  if (prob.domain != InputBall::trace_ball) return false;
  CMatrix total = CMatrix::Zero(prob.dim, prob.dim);
  for (const auto& x : prob.functionals) {
    if (lambda_min(x) < kPsdFloor) return false;
    total += x;
  }
  return lambda_max(total) <= 1.0 - kPsdFloor;
}

}  // namespace

std::pair<double, bool> factorization_bound(const InjectiveProblem& prob) {
  check_injective_shapes(prob);
  const InputSpace space{prob.domain, prob.dim};
  const auto& xs = prob.functionals;
  const std::size_t n = xs.size();
  if (n <= 20) {
    // all balls are symmetric, so s and -s give the same value: fix s_0 = +1
    CMatrix c = CMatrix::Zero(xs[0].rows(), xs[0].cols());
    for (const auto& x : xs) c += x;
    double best = support_function(space, c);
    std::vector<int> s(n, 1);
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t g = 1; g < total; ++g) {
      const int bit = std::countr_zero(g) + 1;  // Gray code flip on coordinates 1..n-1
      c -= 2.0 * s[bit] * xs[bit];
      s[bit] = -s[bit];
      best = std::max(best, support_function(space, c));
    }
    return {best, true};
  }
  double best = 0.0;
  Rng rng = make_rng(0xfac7, {n});
  std::bernoulli_distribution coin(0.5);
  for (int start = 0; start < 64; ++start) {
    RVector s(n);
    for (std::size_t i = 0; i < n; ++i) s(i) = coin(rng) ? 1.0 : -1.0;
    for (int it = 0; it < 100; ++it) {
      CMatrix c = CMatrix::Zero(xs[0].rows(), xs[0].cols());
      for (std::size_t i = 0; i < n; ++i) c += s(i) * xs[i];
      const CMatrix a = support_point(space, c);
      const RVector v = apply_functionals(xs, a);
      best = std::max(best, v.cwiseAbs().sum());
      RVector next = v.unaryExpr([](double x) { return x >= 0.0 ? 1.0 : -1.0; });
      if (next == s) break;
      s = next;
    }
  }
  return {best, false};
}

EstimateReport injective_norm(const InjectiveProblem& prob, double delta, const EstimateOptions& opts) {
  const auto start = Clock::now();
  check_injective_shapes(prob);
  require_delta(delta, "injective_norm");
  const double top_y = max_norm(prob.ys, prob.space);
  if (top_y > 1.0 + 1e-9) {
    throw ValidationError("injective_norm: max ||y_i||_B = " + std::to_string(top_y) + " exceeds 1");
  }
  const auto [bound, exact] = factorization_bound(prob);
  if (bound > 1.0 + 1e-9) {
    throw ValidationError("injective_norm: factorization bound sup sum |x_i(a)| = " + std::to_string(bound) +
                          " exceeds 1");
  }
  const int k_wanted = choose_k_injective(prob.space, delta);

  if (reduces_to_s1(prob)) {
    GeneralDecomposition g{prob.dim, prob.space, prob.functionals, prob.ys};
    EstimateOptions o = opts;
    o.k_override = opts.k_override.value_or(k_wanted);
    S1Options extra;
    extra.sparsify = false;
    EstimateReport rep = s1_to_banach(g, delta, o, extra);
    rep.algorithm = "injective_norm";
    rep.net.k_requested = opts.k_override.value_or(k_wanted);
    rep.diagnostics.emplace_back("factorization_bound", bound);
    rep.diagnostics.emplace_back("factorization_exact", exact ? 1.0 : 0.0);
    rep.notes.push_back("PSD functionals on S_1 summing to at most I: scanned over the simplex net");
    rep.wall_seconds = seconds_since(start);
    return rep;
  }

  const int n = static_cast<int>(prob.functionals.size());
  const int atoms = 2 * n + 1;
  const NetSpec spec = plan_net(atoms, k_wanted, delta, opts.budget,
                                [&](int k) { return attained_delta_injective(prob.space, k); }, opts.k_override);
  const InputSpace space{prob.domain, prob.dim};
  const double eps = delta;
  auto signed_point = [n](const NetPoint& pt) {
    RVector t = RVector::Zero(n);
    for (int idx : pt.indices) {
      if (idx < n) t(idx) += 1.0;
      else if (idx < 2 * n) t(idx - n) -= 1.0;
    }
    return RVector(t / static_cast<double>(pt.k));
  };

  const ScanOutcome out = scan_net(atoms, spec.k, resolve_threads(opts.threads), [&](std::uint64_t rank, const NetPoint& pt) {
    PointResult r;
    r.check = solve_feasibility(signed_point(pt), prob.functionals, prob.ys, prob.space, space, eps, opts.solver,
                                derive_key(opts.seed, {rank}));
    r.value = y_norm(r.check.q, prob.ys, prob.space);
    return r;
  });

  EstimateReport rep;
  rep.algorithm = "injective_norm";
  rep.delta_requested = delta;
  rep.eps = eps;
  rep.seed = opts.seed;
  record_scan(rep, out, spec);
  const PointResult& win = chosen(out);
  rep.p = signed_point(NetEnumerator(atoms, spec.k, spec.cardinality).at(rep.best_rank));
  rep.q = win.check.q;
  rep.witnesses = {win.check.alpha};
  rep.value = banach_norm(prob.space, combine(apply_functionals(prob.functionals, win.check.alpha), prob.ys));
  rep.diagnostics.emplace_back("scan_value", win.value);
  rep.diagnostics.emplace_back("factorization_bound", bound);
  rep.diagnostics.emplace_back("factorization_exact", exact ? 1.0 : 0.0);
  if (!exact) rep.notes.push_back("factorization bound checked by local search only");

  rep.net_radius = spec.delta_attained;
  const double penalty = indeterminate_rate(rep.net) * top_y;
  rep.diagnostics.emplace_back("indeterminate_penalty", penalty);
  rep.delta_attained = rep.net_radius + 2.0 * opts.solver.tol + penalty;
  rep.wall_seconds = seconds_since(start);
  return rep;
}

}  // namespace netnorm
