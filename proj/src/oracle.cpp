#include "netnorm/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "netnorm/nets.hpp"
#include "netnorm/rng.hpp"

namespace netnorm {

namespace {

// Isometry C^{d_j} -> C^D that places party j's vector among the fixed
// states of the other parties.
CMatrix embedding(const std::vector<CVector>& states, const std::vector<int>& dims, std::size_t j) {
  CMatrix v = CMatrix::Ones(1, 1);
  for (std::size_t m = 0; m < dims.size(); ++m) {
    if (m == j)
      v = kron(v, CMatrix::Identity(dims[m], dims[m]));
    else
      v = kron(v, CMatrix(states[m]));
  }
  return v;
}

CVector product_vector(const std::vector<CVector>& states) {
  CMatrix v = CMatrix::Ones(1, 1);
  for (const auto& s : states) v = kron(v, CMatrix(s));
  return v.col(0);
}

double expectation(const CMatrix& m, const CVector& v) { return (v.adjoint() * m * v)(0, 0).real(); }

// Random element of the unit ball of B with norm uniform in (0, 1].
CMatrix random_ball_element(Rng& rng, const BanachDescriptor& desc) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const int d = desc.dim;
  CMatrix z = desc.family == Family::schatten ? CMatrix(d, d) : CMatrix(d, 1);
  for (Eigen::Index i = 0; i < z.size(); ++i) z.reshaped()(i) = Complex(g(rng), g(rng));
  return z * (u(rng) / banach_norm(desc, z));
}

CMatrix random_projector(Rng& rng, int d, int rank) {
  std::normal_distribution<double> g;
  CMatrix a(d, rank);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.reshaped()(i) = Complex(g(rng), g(rng));
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(a).householderQ() * CMatrix::Identity(d, rank);
  return q * q.adjoint();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

}  // namespace

ProductOptimum product_alternating(const CMatrix& m, const std::vector<int>& dims, int restarts, int iters,
                                   std::uint64_t seed) {
  if (dims.empty()) throw ParameterError("product_alternating: no parties");
  int total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total) throw ParameterError("product_alternating: dimension mismatch");
  const CMatrix h = hermitize(m);
  ProductOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng = make_rng(seed, {0xa17e, static_cast<std::uint64_t>(r)});
    std::vector<CVector> states;
    for (int d : dims) states.push_back(random_unit_vector(rng, d));
    double value = expectation(h, product_vector(states));
    bool monotone = true;
    for (int t = 0; t < iters; ++t) {
      const double before = value;
      for (std::size_t j = 0; j < dims.size(); ++j) {
        const CMatrix v = embedding(states, dims, j);
        const Eigenpair e = top_eigenpair(CMatrix(v.adjoint() * h * v));
        if (e.value < value - 1e-12) monotone = false;
        states[j] = e.vector;
        value = e.value;
      }
      if (value - before < 1e-14) break;
    }
    best.monotone = best.monotone && monotone;
    if (value > best.value) {
      best.value = value;
      best.states = states;
    }
  }
  return best;
}

ProductOptimum hsep_alternating(const CMatrix& m, int d1, int d2, int restarts, int iters, std::uint64_t seed) {
  return product_alternating(m, {d1, d2}, restarts, iters, seed);
}

ProductOptimum product_qubit_grid(const CMatrix& m, int parties, int points) {
  if (parties < 1 || points < 2) throw ParameterError("product_qubit_grid: bad grid");
  const int total = 1 << parties;
  if (m.rows() != total) throw ParameterError("product_qubit_grid: dimension mismatch");
  std::vector<CVector> grid;
  for (int i = 0; i < points; ++i) {
    const double t = std::numbers::pi * i / points;
    CVector v(2);
    v << std::cos(t), std::sin(t);
    grid.push_back(v);
  }
  const CMatrix h = hermitize(m);
  ProductOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(parties, 0);
  std::vector<CVector> states(parties, grid[0]);
  while (true) {
    for (int j = 0; j < parties; ++j) states[j] = grid[idx[j]];
    const double v = expectation(h, product_vector(states));
    if (v > best.value) {
      best.value = v;
      best.states = states;
    }
    int j = 0;
    while (j < parties && ++idx[j] == points) idx[j++] = 0;
    if (j == parties) break;
  }
  return best;
}

double two_to_q_gradient(const CMatrix& a, double q, int restarts, int iters, std::uint64_t seed) {
  if (!(q >= 2.0)) throw ParameterError("two_to_q_gradient: q must be >= 2");
  if (a.size() == 0) return 0.0;
  const int n = static_cast<int>(a.cols());
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    CVector x;
    if (r == 0) {
      Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinV);
      x = svd.matrixV().col(0);
    } else {
      Rng rng = make_rng(seed, {0x2a, static_cast<std::uint64_t>(r)});
      x = random_unit_vector(rng, n);
    }
    double value = ell_norm(CMatrix(a * x), q);
    for (int t = 0; t < iters; ++t) {
      const CVector y = a * x;
      CVector z(y.size());
      for (Eigen::Index i = 0; i < y.size(); ++i) z(i) = std::pow(std::abs(y(i)), q - 2.0) * y(i);
      const CVector next = a.adjoint() * z;
      const double nn = next.norm();
      if (nn == 0.0) break;
      x = next / nn;
      const double v = ell_norm(CMatrix(a * x), q);
      const bool stalled = v - value < 1e-15 * std::max(1.0, value);
      value = std::max(value, v);
      if (stalled) break;
    }
    best = std::max(best, value);
  }
  return best;
}

double two_to_q_angle_grid(const CMatrix& a, double q, int points) {
  if (a.cols() != 2) throw ParameterError("two_to_q_angle_grid: needs exactly two columns");
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = std::numbers::pi * i / points;
    CVector x(2);
    x << std::cos(t), std::sin(t);
    best = std::max(best, ell_norm(CMatrix(a * x), q));
  }
  return best;
}

LinearAscentResult linear_ascent(std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                 const BanachDescriptor& desc, const InputSpace& space, int restarts, int iters,
                                 std::uint64_t seed) {
  if (xs.empty() || xs.size() != ys.size()) throw ParameterError("linear_ascent: bad term lists");
  const bool vector_space = space.ball == InputBall::l1 || space.ball == InputBall::l2;
  auto value_at = [&](const CMatrix& a) { return y_norm(apply_functionals(xs, a), ys, desc); };
  LinearAscentResult best;
  best.value = -1.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = make_rng(seed, {0x11a, static_cast<std::uint64_t>(r)});
    CMatrix dir;
    if (vector_space) {
      std::normal_distribution<double> g;
      dir = CMatrix(space.dim, 1);
      for (int i = 0; i < space.dim; ++i) dir(i) = g(rng);
    } else {
      dir = random_hermitian(rng, space.dim);
    }
    CMatrix a = support_point(space, dir);
    double value = value_at(a);
    for (int t = 0; t < iters; ++t) {
      const CMatrix out = combine(apply_functionals(xs, a), ys);
      const CMatrix g = norming_functional(desc, out);
      CMatrix h = CMatrix::Zero(xs[0].rows(), xs[0].cols());
      for (std::size_t i = 0; i < xs.size(); ++i) h += hs_inner(g, ys[i]) * xs[i];
      if (h.norm() == 0.0) break;
      const CMatrix next = support_point(space, h);
      const double v = value_at(next);
      if (v <= value + 1e-14) break;
      a = next;
      value = v;
    }
    if (value > best.value) {
      best.value = value;
      best.point = a;
    }
  }
  return best;
}

LinearAscentResult qubit_sphere_search(std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                       const BanachDescriptor& desc, int points) {
  if (xs.empty() || xs[0].rows() != 2) throw ParameterError("qubit_sphere_search: inputs must be qubits");
  LinearAscentResult best;
  best.value = -1.0;
  for (int i = 0; i <= points; ++i) {
    const double theta = std::numbers::pi * i / points;
    const int azimuths = (i == 0 || i == points) ? 1 : 2 * points;
    for (int j = 0; j < azimuths; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / azimuths;
      CVector psi(2);
      psi << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
      const CMatrix rho = projector(psi);
      const double v = y_norm(apply_functionals(xs, rho), ys, desc);
      if (v > best.value) {
        best.value = v;
        best.point = rho;
      }
    }
  }
  const InputSpace space{InputBall::density, 2};
  for (int t = 0; t < 200; ++t) {
    const CMatrix g = norming_functional(desc, combine(apply_functionals(xs, best.point), ys));
    CMatrix h = CMatrix::Zero(2, 2);
    for (std::size_t i = 0; i < xs.size(); ++i) h += hs_inner(g, ys[i]) * xs[i];
    const CMatrix next = support_point(space, h);
    const double v = y_norm(apply_functionals(xs, next), ys, desc);
    if (v <= best.value + 1e-14) break;
    best.value = v;
    best.point = next;
  }
  return best;
}

TailTable hoeffding_tail_check(int d, int k, double lambda, int trials, const std::vector<double>& deltas,
                               std::uint64_t seed) {
  if (d < 1 || k < 1 || trials < 1 || !(lambda > 0.0)) throw ParameterError("hoeffding_tail_check: bad parameters");
  std::vector<double> norms(trials);
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, {0x40ef, static_cast<std::uint64_t>(t)});
    std::uniform_int_distribution<int> rank(1, d);
    std::bernoulli_distribution coin(0.5);
    CMatrix sum = CMatrix::Zero(d, d);
    for (int i = 0; i < k; ++i) sum += (coin(rng) ? lambda : -lambda) * random_projector(rng, d, rank(rng));
    norms[t] = operator_norm(sum) / k;
  }
  TailTable table;
  for (double delta : deltas) {
    TailRow row;
    row.delta = delta;
    int hits = 0;
    for (double n : norms) hits += n >= delta ? 1 : 0;
    row.empirical = static_cast<double>(hits) / trials;
    row.bound = d * std::exp(-k * delta * delta / (8.0 * lambda * lambda));
    table.pass = table.pass && row.empirical <= row.bound;
    table.rows.push_back(row);
  }
  return table;
}

TypeCheck type_constant_check(const BanachDescriptor& desc, int k, int trials, std::uint64_t seed) {
  if (k < 1 || trials < 1) throw ParameterError("type_constant_check: bad parameters");
  const double g = desc.gamma;
  TypeCheck out;
  out.bound = std::pow(desc.type_constant, g);
  out.exact = k <= 12;
  const int sign_samples = 4096;
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, {0x7e, static_cast<std::uint64_t>(t)});
    std::vector<CMatrix> z;
    double denom = 0.0;
    for (int i = 0; i < k; ++i) {
      z.push_back(random_ball_element(rng, desc));
      denom += std::pow(banach_norm(desc, z.back()), g);
    }
    auto term = [&](std::uint64_t mask) {
      CMatrix s = CMatrix::Zero(z[0].rows(), z[0].cols());
      for (int i = 0; i < k; ++i) s += ((mask >> i) & 1U) ? z[i] : CMatrix(-z[i]);
      return std::pow(banach_norm(desc, s), g);
    };
    double mean = 0.0, sigma = 0.0;
    if (out.exact) {
      const std::uint64_t count = std::uint64_t{1} << k;
      for (std::uint64_t mask = 0; mask < count; ++mask) mean += term(mask);
      mean /= static_cast<double>(count);
    } else {
      double sq = 0.0;
      for (int s = 0; s < sign_samples; ++s) {
        const double v = term(rng());
        mean += v;
        sq += v * v;
      }
      mean /= sign_samples;
      sigma = std::sqrt(std::max(0.0, sq / sign_samples - mean * mean) / sign_samples) / denom;
    }
    const double ratio = mean / denom;
    if (ratio > out.ratio) {
      out.ratio = ratio;
      out.sigma = sigma;
    }
  }
  out.pass = out.ratio <= out.bound + 3.0 * out.sigma + 1e-12;
  return out;
}

SymmetrizationCheck symmetrization_check(const BanachDescriptor& desc, int k, int trials, std::uint64_t seed) {
  if (k < 1 || trials < 2) throw ParameterError("symmetrization_check: bad parameters");
  const double g = desc.gamma;
  Rng rng = make_rng(seed, {0x5e});
  const int family = 6;
  std::vector<CMatrix> z;
  RVector w(family);
  std::exponential_distribution<double> ex;
  for (int i = 0; i < family; ++i) {
    z.push_back(random_ball_element(rng, desc));
    w(i) = ex(rng);
  }
  w /= w.sum();
  CMatrix mean_z = CMatrix::Zero(z[0].rows(), z[0].cols());
  for (int i = 0; i < family; ++i) mean_z += w(i) * z[i];
  std::discrete_distribution<int> pick(w.data(), w.data() + family);
  std::bernoulli_distribution coin(0.5);
  double sum_l = 0.0, sum_r = 0.0, sum_d = 0.0, sum_d2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    CMatrix avg = CMatrix::Zero(z[0].rows(), z[0].cols());
    CMatrix sym = avg;
    for (int j = 0; j < k; ++j) {
      const CMatrix& x = z[pick(rng)];
      avg += x;
      sym += coin(rng) ? x : CMatrix(-x);
    }
    const double l = std::pow(banach_norm(desc, CMatrix(avg / k - mean_z)), g);
    const double r = 2.0 * std::pow(banach_norm(desc, CMatrix(sym / k)), g);
    sum_l += l;
    sum_r += r;
    sum_d += l - r;
    sum_d2 += (l - r) * (l - r);
  }
  SymmetrizationCheck out;
  out.lhs = sum_l / trials;
  out.rhs = sum_r / trials;
  const double md = sum_d / trials;
  out.sigma = std::sqrt(std::max(0.0, sum_d2 / trials - md * md) / trials);
  out.pass = out.lhs <= out.rhs + 3.0 * out.sigma;
  return out;
}

TailTable azuma_tail_check(const BanachDescriptor& desc, int k, int trials, const std::vector<double>& deltas,
                           std::uint64_t seed) {
  if (k < 1 || trials < 1) throw ParameterError("azuma_tail_check: bad parameters");
  const double s = desc.smoothness;
  const double c = 1.0 / (4.0 * s);
  std::vector<double> norms(trials);
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, {0xa2, static_cast<std::uint64_t>(t)});
    std::bernoulli_distribution coin(0.5);
    CMatrix sum = desc.family == Family::schatten ? CMatrix::Zero(desc.dim, desc.dim) : CMatrix::Zero(desc.dim, 1);
    for (int i = 0; i < k; ++i) {
      const CMatrix z = random_ball_element(rng, desc);
      sum += coin(rng) ? z : CMatrix(-z);
    }
    norms[t] = banach_norm(desc, sum) / k;
  }
  TailTable table;
  for (double delta : deltas) {
    TailRow row;
    row.delta = delta;
    int hits = 0;
    for (double n : norms) hits += n >= delta ? 1 : 0;
    row.empirical = static_cast<double>(hits) / trials;
    row.bound = std::min(1.0, std::exp(s + 2.0 - c * k * delta * delta));
    table.pass = table.pass && row.empirical <= row.bound;
    table.rows.push_back(row);
  }
  return table;
}

CoveringCheck net_covering_check(int instances, std::uint64_t seed) {
  CoveringCheck out;
  out.instances = instances;
  out.worst_slack = -std::numeric_limits<double>::infinity();
  const BanachDescriptor op = banach_constants(Family::schatten, kInf, 4);
  for (int t = 0; t < instances; ++t) {
    Rng rng = make_rng(seed, {0xc0, static_cast<std::uint64_t>(t)});
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    const int d2 = std::uniform_int_distribution<int>(2, 4)(rng);
    const int k = std::uniform_int_distribution<int>(4, 20)(rng);
    std::vector<CMatrix> ys;
    for (int i = 0; i < n; ++i) ys.push_back(random_effect(rng, d2));
    std::exponential_distribution<double> ex;
    RVector p(n);
    for (int i = 0; i < n; ++i) p(i) = ex(rng);
    p /= p.sum();
    double best = std::numeric_limits<double>::infinity();
    NetEnumerator(n, k).for_each([&](std::uint64_t, const NetPoint& pt) {
      best = std::min(best, y_norm(RVector(p - pt.probability()), ys, op));
    });
    const double bound = attained_delta_basic(d2, k);
    out.passed += best <= bound ? 1 : 0;
    out.worst_slack = std::max(out.worst_slack, best - bound);
  }
  return out;
}

std::vector<LemmaResult> run_lemma_suites(std::uint64_t seed) {
  std::vector<LemmaResult> out;

  const CoveringCheck cover = net_covering_check(100, seed);
  out.push_back({"net-covering", cover.passed == cover.instances,
                 std::to_string(cover.passed) + "/" + std::to_string(cover.instances) +
                     " within sqrt(9 ln d2 / k); worst slack " + fmt(cover.worst_slack)});

  bool hoeff = true;
  std::string hdetail;
  for (int d : {2, 4})
    for (int k : {50, 200}) {
      const TailTable tt = hoeffding_tail_check(d, k, 1.0, 2000, {0.25, 0.5, 1.0}, seed + 31 * d + k);
      hoeff = hoeff && tt.pass;
      for (const auto& r : tt.rows)
        hdetail += "d=" + std::to_string(d) + " k=" + std::to_string(k) + " delta=" + fmt(r.delta) + ": " +
                   fmt(r.empirical) + " <= " + fmt(r.bound) + "; ";
    }
  out.push_back({"matrix-hoeffding", hoeff, hdetail});

  const BanachDescriptor l2 = banach_constants(Family::ell, 2.0, 4);
  double worst_l2 = 0.0;
  for (int k = 1; k <= 12; ++k)
    worst_l2 = std::max(worst_l2, std::abs(type_constant_check(l2, k, 5, seed + k).ratio - 1.0));
  out.push_back({"type-constant-l2", worst_l2 <= 1e-12, "max |ratio - 1| = " + fmt(worst_l2)});

  const BanachDescriptor s4 = banach_constants(Family::schatten, 4.0, 3);
  const TypeCheck tc = type_constant_check(s4, 8, 50, seed);
  out.push_back({"type-constant-S4", tc.pass, "ratio " + fmt(tc.ratio) + " <= C^2 = " + fmt(tc.bound)});

  bool sym = true;
  std::string sdetail;
  for (double alpha : {2.0, 4.0})
    for (int k : {4, 16}) {
      const SymmetrizationCheck sc =
          symmetrization_check(banach_constants(Family::schatten, alpha, 3), k, 4000, seed + k);
      sym = sym && sc.pass;
      sdetail += "S" + fmt(alpha) + " k=" + std::to_string(k) + ": " + fmt(sc.lhs) + " <= " + fmt(sc.rhs) + "; ";
    }
  out.push_back({"symmetrization", sym, sdetail});

  const TailTable az = azuma_tail_check(s4, 100, 2000, {0.1, 0.25, 0.5}, seed);
  std::string adetail;
  for (const auto& r : az.rows) adetail += "delta=" + fmt(r.delta) + ": " + fmt(r.empirical) + " <= " + fmt(r.bound) + "; ";
  out.push_back({"azuma", az.pass, adetail});
  return out;
}

}  // namespace netnorm
