#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "netnorm/matlib.hpp"

namespace netnorm {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based key derivation: the result depends only on (seed, path),
/// never on call order, so parallel workers draw identical streams.
inline std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (auto p : path) h = mix64(h ^ mix64(p + 0x3c6ef372fe94f82bULL));
  return h;
}

/// Uniform double in [0, 1) from a single counter value.
inline double counter_uniform(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  return static_cast<double>(derive_key(seed, path) >> 11) * 0x1.0p-53;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_key(seed, path));
}

/// Haar-random unit vector in C^d.
CVector random_unit_vector(Rng& rng, int d);

/// Ginibre-style random Hermitian matrix (GUE up to scale).
CMatrix random_hermitian(Rng& rng, int d);

/// Random density matrix from the induced measure of rank `rank`.
CMatrix random_density(Rng& rng, int d, int rank);

/// Random POVM-like family: n PSD matrices with sum <= I (equality when `complete`).
std::vector<CMatrix> random_subnormalized_povm(Rng& rng, int d, int n, bool complete);

/// Random PSD matrix with 0 <= Y <= I.
CMatrix random_effect(Rng& rng, int d);

}  // namespace netnorm
