#include "netnorm/feascheck.hpp"

#include <cmath>
#include <optional>

#include "netnorm/rng.hpp"

namespace netnorm {

namespace {

bool is_vector_space(InputBall b) { return b == InputBall::l1 || b == InputBall::l2; }

CMatrix initial_point(const InputSpace& space, int restart, std::uint64_t seed) {
  const int d = space.dim;
  if (restart == 0) {
    if (space.ball == InputBall::density) return CMatrix::Identity(d, d) / static_cast<double>(d);
    if (is_vector_space(space.ball)) return CMatrix::Zero(d, 1);
    return CMatrix::Zero(d, d);
  }
  Rng rng = make_rng(seed, {0x1417, static_cast<std::uint64_t>(restart)});
  if (is_vector_space(space.ball)) {
    std::normal_distribution<double> g;
    RVector v(d);
    for (int i = 0; i < d; ++i) v(i) = g(rng);
    v /= (space.ball == InputBall::l1 ? v.cwiseAbs().sum() : v.norm());
    return v.cast<Complex>();
  }
  const CVector psi = random_unit_vector(rng, d);
  CMatrix rho = projector(psi);
  if (space.ball == InputBall::trace_ball && (restart % 2 == 0)) rho = -rho;
  return rho;
}

// Tangent part of a gradient: the density set lives in the trace-one
// hyperplane, so multiples of the identity do not move the iterate.
CMatrix tangent(const InputSpace& space, const CMatrix& h) {
  if (space.ball != InputBall::density) return h;
  const double shift = trace_re(h) / static_cast<double>(space.dim);
  return h - shift * CMatrix::Identity(space.dim, space.dim);
}

struct Evaluation {
  RVector q;
  CMatrix residual;
  double f = 0.0;
};

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::feasible:
      return "feasible";
    case Verdict::infeasible:
      return "infeasible";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

CMatrix combine(const RVector& a, std::span<const CMatrix> ys) {
  if (static_cast<std::size_t>(a.size()) != ys.size()) throw ParameterError("combine: length mismatch");
  if (ys.empty()) return CMatrix();
  CMatrix out = CMatrix::Zero(ys[0].rows(), ys[0].cols());
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (a(i) != 0.0) out += a(i) * ys[i];
  return out;
}

double y_norm(const RVector& a, std::span<const CMatrix> ys, const BanachDescriptor& desc) {
  if (static_cast<std::size_t>(a.size()) != ys.size()) throw ParameterError("y_norm: length mismatch");
  if (ys.empty()) return 0.0;
  return banach_norm(desc, combine(a, ys));
}

RVector apply_functionals(std::span<const CMatrix> xs, const CMatrix& a) {
  RVector q(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) q(i) = hs_inner(xs[i], a);
  return q;
}

CMatrix project_input(const InputSpace& space, const CMatrix& a) {
  switch (space.ball) {
    case InputBall::density:
      return project_to_density(a);
    case InputBall::trace_ball:
      return project_to_trace_ball(a);
    case InputBall::l1:
      return l1_ball_project(a.real().reshaped()).cast<Complex>();
    case InputBall::l2: {
      RVector v = a.real().reshaped();
      const double n = v.norm();
      if (n > 1.0) v /= n;
      return v.cast<Complex>();
    }
  }
  return a;
}

double support_function(const InputSpace& space, const CMatrix& c) {
  switch (space.ball) {
    case InputBall::density:
      return lambda_max(c);
    case InputBall::trace_ball:
      return hermitian_eigenvalues(c).cwiseAbs().maxCoeff();
    case InputBall::l1:
      return c.real().cwiseAbs().maxCoeff();
    case InputBall::l2:
      return c.real().norm();
  }
  return 0.0;
}

CMatrix support_point(const InputSpace& space, const CMatrix& c) {
  switch (space.ball) {
    case InputBall::density:
      return projector(top_eigenpair(c).vector);
    case InputBall::trace_ball: {
      const Eigenpair e = top_abs_eigenpair(c);
      return (e.value < 0.0 ? -1.0 : 1.0) * projector(e.vector);
    }
    case InputBall::l1: {
      const RVector r = c.real().reshaped();
      Eigen::Index arg = 0;
      r.cwiseAbs().maxCoeff(&arg);
      CMatrix out = CMatrix::Zero(r.size(), 1);
      out(arg) = r(arg) < 0.0 ? -1.0 : 1.0;
      return out;
    }
    case InputBall::l2: {
      const RVector r = c.real().reshaped();
      const double n = r.norm();
      if (n == 0.0) {
        CMatrix out = CMatrix::Zero(r.size(), 1);
        out(0) = 1.0;
        return out;
      }
      return (r / n).cast<Complex>();
    }
  }
  return c;
}

FeasibilityResult solve_feasibility(const RVector& target, std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                    const BanachDescriptor& desc, const InputSpace& space, double eps,
                                    const SolverConfig& cfg, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  if (target.size() != n || ys.size() != xs.size()) throw ParameterError("solve_feasibility: length mismatch");
  if (!(eps >= 0.0)) throw ParameterError("solve_feasibility: eps must be nonnegative");
  if (cfg.max_iters < 1 || cfg.restarts < 1 || !(cfg.tol > 0.0) || !(cfg.step_scale > 0.0))
    throw ParameterError("solve_feasibility: solver settings must be positive");

  const CMatrix target_sum = combine(target, ys);
  auto evaluate = [&](const CMatrix& a) {
    Evaluation e;
    e.q = apply_functionals(xs, a);
    e.residual = target_sum - combine(e.q, ys);
    e.f = banach_norm(desc, e.residual);
    return e;
  };
  // lower bound from coefficients c_i = <G, Y_i> of a dual-unit G
  auto dual_bound = [&](const RVector& c) {
    CMatrix lin = CMatrix::Zero(xs.empty() ? 0 : xs[0].rows(), xs.empty() ? 0 : xs[0].cols());
    for (Eigen::Index i = 0; i < n; ++i) lin += c(i) * xs[i];
    return target.dot(c) - support_function(space, lin);
  };

  FeasibilityResult best;
  best.achieved = std::numeric_limits<double>::infinity();
  best.lower_bound = 0.0;
  int total_iters = 0;

  auto finish = [&](Verdict v) {
    best.status = v;
    best.iterations = total_iters;
    if (v == Verdict::feasible) {
      // independent re-check of the witness
      const RVector q = apply_functionals(xs, best.alpha);
      const double f = y_norm(RVector(target - q), ys, desc);
      if (f > eps + cfg.tol) best.status = Verdict::indeterminate;
      best.q = q;
      best.achieved = f;
    }
    return best;
  };

  // Polyak step aimed at `level`, or at the dual bound of this iterate when
  // level is negative.
  auto descent = [&](const CMatrix& a, const Evaluation& e, double level, double& lb) -> std::optional<CMatrix> {
    const CMatrix g = norming_functional(desc, e.residual);
    RVector c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = hs_inner(g, ys[i]);
    lb = dual_bound(c);
    if (level < 0.0) level = std::max(0.0, lb);
    // gradient of f with respect to a is -sum_i c_i x_i
    CMatrix grad = CMatrix::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < n; ++i) grad -= c(i) * xs[i];
    if (is_vector_space(space.ball)) grad = grad.real().cast<Complex>();
    const CMatrix dir = tangent(space, grad);
    const double g2 = dir.squaredNorm();
    if (g2 < 1e-28) return std::nullopt;
    double step = cfg.step_scale * (e.f - level) / g2;
    step = std::min(step, 2.0 * cfg.step_scale / std::sqrt(g2));
    CMatrix next = project_input(space, a - step * grad);
    if ((next - a).norm() < 1e-15) return std::nullopt;
    return next;
  };

  // Once a witness is found, keep descending toward the minimum (Polyak
  // level = current dual bound) so the witness is as close as possible.
  auto polish = [&](CMatrix a) {
    double window_start = best.achieved;
    for (int t = 0; t < cfg.polish_iters && best.achieved > 1e-8; ++t) {
      const Evaluation e = evaluate(a);
      if (e.f < best.achieved) {
        best.achieved = e.f;
        best.alpha = a;
        best.q = e.q;
      }
      if (t % 10 == 9) {
        // stop once ten steps gain less than ten percent
        if (best.achieved > 0.9 * window_start) break;
        window_start = best.achieved;
      }
      double lb = 0.0;
      std::optional<CMatrix> next = descent(a, e, -1.0, lb);
      best.lower_bound = std::max(best.lower_bound, lb);
      if (!next || best.lower_bound >= best.achieved) break;
      a = std::move(*next);
    }
  };

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    CMatrix a = initial_point(space, restart, seed);
    RVector c_avg = RVector::Zero(n);
    for (int t = 0; t < cfg.max_iters; ++t) {
      ++total_iters;
      Evaluation e = evaluate(a);
      if (e.f < best.achieved) {
        best.achieved = e.f;
        best.alpha = a;
        best.q = e.q;
      }
      if (e.f <= eps + cfg.tol) {
        polish(a);
        return finish(Verdict::feasible);
      }

      const CMatrix g = norming_functional(desc, e.residual);
      RVector c(n);
      for (Eigen::Index i = 0; i < n; ++i) c(i) = hs_inner(g, ys[i]);
      c_avg += (c - c_avg) / static_cast<double>(t + 1);
      const double lb = std::max(dual_bound(c), dual_bound(c_avg));
      best.lower_bound = std::max(best.lower_bound, lb);
      if (best.lower_bound > eps) return finish(Verdict::infeasible);

      // gradient of f with respect to a is -sum_i c_i x_i
      CMatrix grad = CMatrix::Zero(a.rows(), a.cols());
      for (Eigen::Index i = 0; i < n; ++i) grad -= c(i) * xs[i];
      if (is_vector_space(space.ball)) grad = grad.real().cast<Complex>();
      const CMatrix dir = tangent(space, grad);
      const double g2 = dir.squaredNorm();
      if (g2 < 1e-28) break;
      double step = cfg.step_scale * (e.f - eps) / g2;
      step = std::min(step, 2.0 * cfg.step_scale / std::sqrt(g2));
      const CMatrix next = project_input(space, a - step * grad);
      if ((next - a).norm() < 1e-15) break;  // projected fixed point: optimal
      a = next;
    }
  }
  if (best.achieved > eps + 10.0 * cfg.tol) return finish(Verdict::infeasible);
  return finish(Verdict::indeterminate);
}

FeasibilityResult check_feasible(const RVector& p, std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                 const BanachDescriptor& desc, double eps, const SolverConfig& cfg,
                                 std::uint64_t seed) {
  if (xs.empty()) throw ParameterError("check_feasible: empty decomposition");
  if ((p.array() < -1e-9).any() || std::abs(p.sum() - 1.0) > 1e-9)
    throw ParameterError("check_feasible: p is not a probability vector");
  const InputSpace space{InputBall::density, static_cast<int>(xs[0].rows())};
  return solve_feasibility(p, xs, ys, desc, space, eps, cfg, seed);
}

}  // namespace netnorm
