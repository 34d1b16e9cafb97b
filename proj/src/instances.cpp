#include "netnorm/instances.hpp"

namespace netnorm {

namespace {

CMatrix basis_projector(int d, int i) {
  CMatrix p = CMatrix::Zero(d, d);
  p(i, i) = 1.0;
  return p;
}

std::vector<TreeNode> random_forest(Rng& rng, const std::vector<int>& dims, std::size_t depth, int branching) {
  std::vector<TreeNode> out;
  const auto xs = random_subnormalized_povm(rng, dims[depth], branching, false);
  for (const auto& x : xs) {
    TreeNode node{x, {}};
    if (depth + 1 < dims.size()) node.children = random_forest(rng, dims, depth + 1, branching);
    out.push_back(std::move(node));
  }
  return out;
}

std::vector<TreeNode> classical_forest(Rng& rng, int parties, int depth, bool all_ones) {
  std::vector<TreeNode> out;
  std::uniform_real_distribution<double> low(0.0, 0.6), high(0.6, 1.0);
  for (int b = 0; b < 2; ++b) {
    const bool ones = all_ones && b == 1;
    TreeNode node{basis_projector(2, b), {}};
    if (depth == parties)
      node.X *= ones ? high(rng) : low(rng);
    else
      node.children = classical_forest(rng, parties, depth + 1, ones);
    out.push_back(std::move(node));
  }
  return out;
}

}  // namespace

OneWayLOCC random_locc(Rng& rng, int d1, int d2, int n, bool complete) {
  OneWayLOCC m{d1, d2, {}};
  const auto xs = random_subnormalized_povm(rng, d1, n, complete);
  for (int i = 0; i < n; ++i) m.terms.push_back({xs[i], random_effect(rng, d2)});
  return m;
}

GeneralDecomposition random_general(Rng& rng, int d1, int n, const BanachDescriptor& space) {
  GeneralDecomposition g{d1, space, random_subnormalized_povm(rng, d1, n, true), {}};
  std::uniform_real_distribution<double> radius(0.3, 1.0);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < n; ++i) {
    CMatrix y;
    if (space.family == Family::schatten) {
      y = random_hermitian(rng, space.dim);
    } else {
      y = CMatrix(space.dim, 1);
      for (int j = 0; j < space.dim; ++j) y(j) = gauss(rng);
    }
    g.Y.push_back(y * (radius(rng) / banach_norm(space, y)));
  }
  return g;
}

EBChannel random_eb_channel(Rng& rng, int d1, int d2, int n) {
  EBChannel ch{d1, d2, {}};
  const auto xs = random_subnormalized_povm(rng, d1, n, true);
  for (int i = 0; i < n; ++i) ch.terms.push_back({xs[i], random_density(rng, d2, 1 + i % d2)});
  return ch;
}

EBChannel depolarizing_channel(int d) {
  return EBChannel{d, d, {{CMatrix::Identity(d, d), CMatrix::Identity(d, d) / static_cast<double>(d)}}};
}

EBChannel dephasing_channel(int d) {
  EBChannel ch{d, d, {}};
  for (int i = 0; i < d; ++i) ch.terms.push_back({basis_projector(d, i), basis_projector(d, i)});
  return ch;
}

MultipartiteLOCC random_tree(Rng& rng, const std::vector<int>& dims, int branching) {
  return MultipartiteLOCC{dims, random_forest(rng, dims, 0, branching)};
}

MultipartiteLOCC product_projector_tree(int parties, int d) {
  TreeNode leaf{basis_projector(d, 0), {}};
  for (int m = 1; m < parties; ++m) leaf = TreeNode{basis_projector(d, 0), {leaf}};
  return MultipartiteLOCC{std::vector<int>(parties, d), {leaf}};
}

MultipartiteLOCC classical_and_tree(Rng& rng, int parties) {
  return MultipartiteLOCC{std::vector<int>(parties, 2), classical_forest(rng, parties, 1, true)};
}

CMatrix random_real_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  CMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.reshaped()(i) = g(rng);
  return a;
}

}  // namespace netnorm
