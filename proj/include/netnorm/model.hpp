#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netnorm/matlib.hpp"

namespace netnorm {

// ---------------------------------------------------------------------------
// Banach-space geometry
// ---------------------------------------------------------------------------

enum class Family { schatten, ell };

/// Target space B together with the constants the net size depends on:
/// Rademacher type-gamma constant C, and the coefficient s of a quadratic
/// bound on the modulus of uniform smoothness, rho_B(tau) <= s tau^2.
///
/// Elements of a `schatten` space are dim x dim matrices; elements of an
/// `ell` space are stored as CMatrix columns (any shape works, the norm is
/// entrywise).
struct BanachDescriptor {
  Family family = Family::schatten;
  double exponent = kInf;
  int dim = 1;
  double gamma = 2.0;
  double type_constant = 1.0;
  double smoothness = 0.5;
};

/// Geometric constants for S_alpha / ell_alpha.
///  - alpha >= 2: gamma = 2, C = sqrt(alpha - 1), s = (alpha - 1) / 2
///  - 1 < alpha < 2: gamma = alpha, C = 1, s = 1/2
///  - alpha = inf: gamma = 2, C = max(1, sqrt(2 ln dim)), s = max(1/2, ln dim)
/// alpha <= 1 is rejected: the net size blows up as alpha -> 1.
BanachDescriptor banach_constants(Family family, double alpha, int dim);

double banach_norm(const BanachDescriptor& desc, const CMatrix& y);

/// A dual-unit element G with <G, y> = ||y||_B (real Hilbert-Schmidt pairing),
/// i.e. a subgradient of the norm at y. Zero input gives G = 0.
CMatrix norming_functional(const BanachDescriptor& desc, const CMatrix& y);

std::string describe(const BanachDescriptor& desc);

// ---------------------------------------------------------------------------
// Input objects
// ---------------------------------------------------------------------------

struct LoccTerm {
  CMatrix X;
  CMatrix Y;
};

/// M = sum_i X_i (x) Y_i with X_i >= 0, sum X_i <= I, 0 <= Y_i <= I.
struct OneWayLOCC {
  int d1 = 1;
  int d2 = 1;
  std::vector<LoccTerm> terms;

  CMatrix assemble() const;
  std::vector<CMatrix> xs() const;
  std::vector<CMatrix> ys() const;
};

/// X-side as for OneWayLOCC; Y_i live in the space described by `space`.
struct GeneralDecomposition {
  int d1 = 1;
  BanachDescriptor space;
  std::vector<CMatrix> X;
  std::vector<CMatrix> Y;
};

/// Lambda(rho) = sum_i tr(X_i rho) Y_i with sum X_i = I and each Y_i a state.
struct EBChannel {
  int d1 = 1;
  int d2 = 1;
  std::vector<LoccTerm> terms;

  CMatrix apply(const CMatrix& rho) const;
};

/// Node of a fully one-way LOCC tree. The node sits at some depth m and
/// carries X^{(m)}_{i_1..i_m} acting on party m.
struct TreeNode {
  CMatrix X;
  std::vector<TreeNode> children;
};

/// M = sum_{i1} X_{i1} (x) sum_{i2} X_{i1 i2} (x) ... ; `roots` are the
/// depth-1 nodes and leaves sit at depth dims.size().
struct MultipartiteLOCC {
  std::vector<int> dims;
  std::vector<TreeNode> roots;

  int parties() const { return static_cast<int>(dims.size()); }
  CMatrix assemble() const;
};

/// Operator of a forest whose nodes sit at `depth` (1-based), acting on
/// parties depth..dims.size(). Nodes without children above the leaf level
/// contribute zero.
CMatrix forest_operator(const std::vector<TreeNode>& forest, const std::vector<int>& dims, int depth);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
  std::string constraint;
  int index = -1;  // offending term, -1 when global
  double magnitude = 0.0;
};

std::vector<Violation> validate(const OneWayLOCC& m);
std::vector<Violation> validate(const GeneralDecomposition& g);
std::vector<Violation> validate(const EBChannel& ch);
std::vector<Violation> validate(const MultipartiteLOCC& t);
std::vector<Violation> validate(const BanachDescriptor& desc);

/// Throws ValidationError listing every violation.
template <typename T>
void require_valid(const T& obj) {
  auto v = validate(obj);
  if (v.empty()) return;
  std::string msg = "invalid input:";
  for (const auto& x : v)
    msg += " [" + x.constraint + (x.index >= 0 ? " at term " + std::to_string(x.index) : std::string()) +
           ", magnitude " + std::to_string(x.magnitude) + "]";
  throw ValidationError(msg);
}

/// Drops terms with ||Y_i|| < 1e-12 and rescales the rest to
/// (||Y_i|| X_i, Y_i / ||Y_i||). M is unchanged.
OneWayLOCC normalize_locc(const OneWayLOCC& m);

/// Same rescaling for a general decomposition, in the norm of its space.
GeneralDecomposition normalize_general(const GeneralDecomposition& g);

/// The X-operators' deficit I - sum X_i, or nullopt when sum X_i = I within 1e-8.
std::optional<CMatrix> povm_deficit(const std::vector<CMatrix>& xs);

}  // namespace netnorm
