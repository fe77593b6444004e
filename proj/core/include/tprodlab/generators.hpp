#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tprodlab/rng.hpp"
#include "tprodlab/tensor.hpp"

namespace tprod {

// Random instance generators. Unless the name says "complex", outputs are
// real tensors, so the transpose and the Hermitian transpose coincide and
// eigentuples are real. All are deterministic in the seed.

/// Real tensor with independent N(0, 1) entries.
Tensor3 gen_tensor(Index m, Index n, Index p, std::uint64_t seed);
/// Complex tensor with independent standard complex normal entries.
Tensor3 gen_complex_tensor(Index m, Index n, Index p, std::uint64_t seed);

/// Real Hermitian tensor scaled so that its eigenvalues are O(scale).
Tensor3 gen_hermitian(Index m, Index p, std::uint64_t seed, double scale = 1.0);
/// Complex Hermitian tensor (no conjugate symmetry across frequencies).
Tensor3 gen_complex_hermitian(Index m, Index p, std::uint64_t seed, double scale = 1.0);

/// G star G^H / (mp) + floor * I, definite whenever floor > 0.
Tensor3 gen_tpd(Index m, Index p, std::uint64_t seed, double lambda_floor = 0.1);
/// TPSD tensor of tubal rank at most r.
Tensor3 gen_tpsd(Index m, Index p, std::uint64_t seed, Index rank);

/// (C, D) with C - D TPSD.
std::pair<Tensor3, Tensor3> gen_psd_pair(Index m, Index p, std::uint64_t seed, double scale = 1.0);
/// (C, D) with C - D TPSD and D definite, for log-order checks.
std::pair<Tensor3, Tensor3> gen_tpd_ordered_pair(Index m, Index p, std::uint64_t seed);

/// Tensors C_1..C_n with sum C_i^H star C_i = I.
struct IsometryFamily {
  std::vector<Tensor3> members;
};
IsometryFamily gen_isometry_family(Index m, Index p, Index n, std::uint64_t seed);

/// Commuting Hermitian pair sharing a per-frequency eigenbasis. With
/// `definite`, both have eigenvalues in [0.2, 2.2].
std::pair<Tensor3, Tensor3> gen_commuting_pair(Index m, Index p, std::uint64_t seed,
                                               bool definite = false);

/// `count` mutually commuting Hermitian tensors in one per-frequency eigenframe.
std::vector<Tensor3> gen_commuting_family(Index m, Index p, std::uint64_t seed, std::size_t count,
                                          bool definite = false);

/// Hermitian tensor whose eigenvalues take exactly `clusters` distinct values.
Tensor3 gen_clustered_hermitian(Index m, Index p, std::uint64_t seed, Index clusters);

/// Orthonormal basis of the mp-dimensional space of m x p lateral matrices.
std::vector<LateralMatrix> gen_orthonormal_basis(Index m, Index p, std::uint64_t seed);

/// Random real tube with N(0, 1) components.
Tube gen_tube(Index p, std::uint64_t seed);

}  // namespace tprod
