#pragma once

#include <vector>

#include "netnorm/model.hpp"
#include "netnorm/rng.hpp"

namespace netnorm {

/// Random valid 1-LOCC measurement; sum X_i = I when `complete`.
OneWayLOCC random_locc(Rng& rng, int d1, int d2, int n, bool complete = false);

/// Random decomposition with sum X_i = I and ||Y_i||_B <= 1. Y_i are
/// Hermitian for Schatten spaces and real vectors for ell spaces.
GeneralDecomposition random_general(Rng& rng, int d1, int n, const BanachDescriptor& space);

/// Random entanglement-breaking channel: complete POVM, random output states.
EBChannel random_eb_channel(Rng& rng, int d1, int d2, int n);

/// rho -> tr(rho) I / d.
EBChannel depolarizing_channel(int d);

/// rho -> sum_i <i|rho|i> |i><i|.
EBChannel dephasing_channel(int d);

/// Tree with `branching` children per internal node; every sibling group is
/// a random subnormalized POVM.
MultipartiteLOCC random_tree(Rng& rng, const std::vector<int>& dims, int branching);

/// Single chain of |0><0| on every party.
MultipartiteLOCC product_projector_tree(int parties, int d);

/// Classical qubit tree: party m measures bit b_m in the computational basis,
/// leaves carry weights w(b) in [0, 0.6] with the all-ones string (the AND of
/// the bits) bumped to a random weight in [0.6, 1].
MultipartiteLOCC classical_and_tree(Rng& rng, int parties);

/// Entrywise standard normal real matrix.
CMatrix random_real_matrix(Rng& rng, int rows, int cols);

}  // namespace netnorm
