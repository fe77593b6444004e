#include "tprodlab/generators.hpp"

#include <cmath>

#include "tprodlab/algebra.hpp"
#include "tprodlab/spectral.hpp"

namespace tprod {

namespace {

// Per-frequency eigenvalues that are symmetric under f -> -f, so that the
// rebuilt tensor is real when the eigenbasis comes from a real tensor.
template <typename Draw>
RealMatrix mirrored_values(Index m, Index p, Draw draw) {
  RealMatrix v(m, p);
  for (Index f = 0; f < p; ++f) {
    const Index g = (p - f) % p;
    if (g < f) {
      v.col(f) = v.col(g);
      continue;
    }
    for (Index j = 0; j < m; ++j) v(j, f) = draw();
  }
  return v;
}

Tensor3 rebuild(const Spectrum& basis, const RealMatrix& values) {
  return real_part(hermitian_part(from_spectrum(basis.vectors, values)));
}

}  // namespace

Tensor3 gen_tensor(Index m, Index n, Index p, std::uint64_t seed) {
  Rng rng(seed);
  Tensor3 t(m, n, p);
  for (Index k = 0; k < p; ++k)
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) t(i, j, k) = rng.normal();
  return t;
}

Tensor3 gen_complex_tensor(Index m, Index n, Index p, std::uint64_t seed) {
  Rng rng(seed);
  Tensor3 t(m, n, p);
  for (Index k = 0; k < p; ++k)
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) t(i, j, k) = rng.complex_normal();
  return t;
}

Tensor3 gen_hermitian(Index m, Index p, std::uint64_t seed, double scale) {
  Tensor3 h = hermitian_part(gen_tensor(m, m, p, seed));
  h *= scale / std::sqrt(static_cast<double>(m * p));
  return real_part(h);
}

Tensor3 gen_complex_hermitian(Index m, Index p, std::uint64_t seed, double scale) {
  Tensor3 h = hermitian_part(gen_complex_tensor(m, m, p, seed));
  h *= scale / std::sqrt(static_cast<double>(m * p));
  return h;
}

Tensor3 gen_tpd(Index m, Index p, std::uint64_t seed, double lambda_floor) {
  const Tensor3 g = gen_tensor(m, m, p, seed);
  Tensor3 c = hermitian_part(tprod(g, herm_transpose(g)));
  c *= 1.0 / static_cast<double>(m * p);
  c += lambda_floor * identity(m, p);
  return real_part(c);
}

Tensor3 gen_tpsd(Index m, Index p, std::uint64_t seed, Index rank) {
  const Tensor3 g = gen_tensor(m, rank, p, seed);
  Tensor3 c = hermitian_part(tprod(g, herm_transpose(g)));
  c *= 1.0 / static_cast<double>(m * p);
  return real_part(c);
}

std::pair<Tensor3, Tensor3> gen_psd_pair(Index m, Index p, std::uint64_t seed, double scale) {
  const Tensor3 d = gen_hermitian(m, p, derive_seed(seed, 1), scale);
  Tensor3 gap = gen_tpsd(m, p, derive_seed(seed, 2), m);
  gap *= scale;
  return {d + gap, d};
}

std::pair<Tensor3, Tensor3> gen_tpd_ordered_pair(Index m, Index p, std::uint64_t seed) {
  const Tensor3 d = gen_tpd(m, p, derive_seed(seed, 1), 0.2);
  return {d + gen_tpsd(m, p, derive_seed(seed, 2), m), d};
}

IsometryFamily gen_isometry_family(Index m, Index p, Index n, std::uint64_t seed) {
  std::vector<Tensor3> g;
  Tensor3 gram(m, m, p);
  for (Index i = 0; i < n; ++i) {
    g.push_back(gen_tensor(m, m, p, derive_seed(seed, static_cast<std::uint64_t>(i))));
    gram += tprod(herm_transpose(g.back()), g.back());
  }
  // C_i = G_i star (sum G^H star G)^(-1/2).
  const Tensor3 root_inv = tpow(tsqrt(hermitian_part(gram)), -1);
  IsometryFamily fam;
  for (auto& gi : g) fam.members.push_back(tprod(gi, root_inv));
  return fam;
}

std::vector<Tensor3> gen_commuting_family(Index m, Index p, std::uint64_t seed, std::size_t count,
                                          bool definite) {
  const Spectrum basis = herm_spectrum(gen_hermitian(m, p, derive_seed(seed, 0)));
  Rng rng(derive_seed(seed, 1));
  auto draw = [&rng, definite] { return definite ? rng.uniform(0.2, 2.2) : rng.normal(); };
  std::vector<Tensor3> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(rebuild(basis, mirrored_values(m, p, draw)));
  return out;
}

std::pair<Tensor3, Tensor3> gen_commuting_pair(Index m, Index p, std::uint64_t seed, bool definite) {
  auto fam = gen_commuting_family(m, p, seed, 2, definite);
  return {std::move(fam[0]), std::move(fam[1])};
}

Tensor3 gen_clustered_hermitian(Index m, Index p, std::uint64_t seed, Index clusters) {
  const Spectrum basis = herm_spectrum(gen_hermitian(m, p, derive_seed(seed, 0)));
  Rng rng(derive_seed(seed, 1));
  std::vector<double> levels;
  for (Index c = 0; c < clusters; ++c) levels.push_back(static_cast<double>(c) - 0.5 * static_cast<double>(clusters - 1) + 0.25 * rng.uniform());
  // Every level appears at least once when there are enough eigenvalues.
  Index next = 0;
  auto draw = [&] {
    const Index pick = next < clusters ? next++ : static_cast<Index>(rng.below(static_cast<std::uint64_t>(clusters)));
    return levels[static_cast<std::size_t>(pick)];
  };
  return rebuild(basis, mirrored_values(m, p, draw));
}

std::vector<LateralMatrix> gen_orthonormal_basis(Index m, Index p, std::uint64_t seed) {
  const Index d = m * p;
  Rng rng(seed);
  Matrix g(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ() * Matrix::Identity(d, d);
  std::vector<LateralMatrix> basis;
  for (Index j = 0; j < d; ++j) basis.push_back(LateralMatrix::cfold(q.col(j), m, p));
  return basis;
}

Tube gen_tube(Index p, std::uint64_t seed) {
  Rng rng(seed);
  Tube t(p);
  for (Index k = 0; k < p; ++k) t[k] = rng.normal();
  return t;
}

}  // namespace tprod
