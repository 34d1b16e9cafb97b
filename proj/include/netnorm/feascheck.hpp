#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "netnorm/matlib.hpp"
#include "netnorm/model.hpp"

namespace netnorm {

/// Convex input set the feasibility variable ranges over.
enum class InputBall {
  density,     // D_d: PSD, unit trace
  trace_ball,  // Hermitian, trace norm <= 1
  l1,          // real vectors, ||a||_1 <= 1
  l2,          // real vectors, ||a||_2 <= 1
};

struct InputSpace {
  InputBall ball = InputBall::density;
  int dim = 1;
};

/// Projected-subgradient settings.
struct SolverConfig {
  int max_iters = 2000;
  double tol = 1e-4;
  double step_scale = 1.0;
  int restarts = 3;
  int polish_iters = 100;  // extra descent steps after a witness is found
};

enum class Verdict { feasible, infeasible, indeterminate };

std::string to_string(Verdict v);

struct FeasibilityResult {
  Verdict status = Verdict::indeterminate;
  RVector q;              // q_i = <x_i, alpha>
  CMatrix alpha;          // best input point found
  double achieved = 0.0;  // ||target - q||_{B,Y} at alpha
  double lower_bound = 0.0;  // certified lower bound on the minimum over the input set
  int iterations = 0;
};

/// ||sum_i a_i Y_i||_B.
double y_norm(const RVector& a, std::span<const CMatrix> ys, const BanachDescriptor& desc);

/// sum_i a_i Y_i.
CMatrix combine(const RVector& a, std::span<const CMatrix> ys);

/// Linear map a -> (<x_i, a>)_i with the real Hilbert-Schmidt pairing.
RVector apply_functionals(std::span<const CMatrix> xs, const CMatrix& a);

/// Euclidean projection onto the input set.
CMatrix project_input(const InputSpace& space, const CMatrix& a);

/// max over the input set of <c, a>.
double support_function(const InputSpace& space, const CMatrix& c);

/// A maximizer of <c, a> over the input set (an extreme point).
CMatrix support_point(const InputSpace& space, const CMatrix& c);

/// Decides whether some a in the input set has
///   ||sum_i (target_i - <x_i, a>) Y_i||_B <= eps.
///
/// Projected subgradient on f(a) = ||R(a)||_B with Polyak steps aimed at
/// the level eps. Every iterate also yields a dual lower bound
///   min f >= <G, sum target_i Y_i> - max_a <sum_i <G, Y_i> x_i, a>
/// for the norming functional G of the current residual (and for the running
/// average of those functionals), which certifies infeasibility.
///
/// After a witness is found, up to `polish_iters` further steps move it
/// toward the minimum of f, so the returned q is as close to the target as
/// the solver can make it.
///
/// Verdicts: feasible iff the best f <= eps + tol (witness re-checked);
/// infeasible iff the dual bound exceeds eps, or the best f exceeds
/// eps + 10 tol after all restarts; indeterminate otherwise.
FeasibilityResult solve_feasibility(const RVector& target, std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                    const BanachDescriptor& desc, const InputSpace& space, double eps,
                                    const SolverConfig& cfg, std::uint64_t seed);

/// The density-matrix case: is S_X within eps of p in the ||.||_{B,Y} norm?
/// Requires p in the probability simplex (within 1e-9).
FeasibilityResult check_feasible(const RVector& p, std::span<const CMatrix> xs, std::span<const CMatrix> ys,
                                 const BanachDescriptor& desc, double eps, const SolverConfig& cfg,
                                 std::uint64_t seed);

}  // namespace netnorm
