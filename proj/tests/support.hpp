#pragma once

// Random generators for property tests. Everything is seeded explicitly so
// failures reproduce.

#include <algorithm>
#include <cmath>
#include <random>

#include "memchan/channels.hpp"
#include "memchan/core.hpp"
#include "memchan/info.hpp"

namespace memchan::testing {

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gaussian(std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline ComplexMat4 random_hermitian(std::mt19937_64& rng) {
  ComplexMat4 m;
  for (std::size_t r = 0; r < 4; ++r) {
    m(r, r) = gaussian(rng);
    for (std::size_t c = r + 1; c < 4; ++c) {
      m(r, c) = Complex(gaussian(rng), gaussian(rng));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

/// Unitary whose columns are the eigenvectors of a random Hermitian matrix.
inline ComplexMat4 random_unitary(std::mt19937_64& rng) {
  const auto es = eig_hermitian(random_hermitian(rng));
  ComplexMat4 u;
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 4; ++r) u(r, c) = es.vectors[c][r];
  return u;
}

inline Ket4 random_ket(std::mt19937_64& rng) {
  Ket4 k;
  double norm = 0.0;
  for (auto& z : k) {
    z = Complex(gaussian(rng), gaussian(rng));
    norm += std::norm(z);
  }
  for (auto& z : k) z /= std::sqrt(norm);
  return k;
}

/// G G^dagger / tr, with G a complex Gaussian matrix: full-rank mixed states.
inline DensityMatrix random_density(std::mt19937_64& rng) {
  ComplexMat4 g;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) g(r, c) = Complex(gaussian(rng), gaussian(rng));
  ComplexMat4 m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  for (std::size_t r = 0; r < 4; ++r) {
    m(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < 4; ++c) m(c, r) = std::conj(m(r, c));
  }
  return DensityMatrix(m);
}

/// Alternates between pure and mixed states.
inline DensityMatrix random_state(std::mt19937_64& rng) {
  return uniform(rng) < 0.5 ? DensityMatrix::pure(random_ket(rng)) : random_density(rng);
}

inline ChannelSpec random_channel_spec(std::mt19937_64& rng) {
  std::array<double, 4> p{};
  double sum = 0.0;
  for (auto& x : p) {
    x = -std::log(uniform(rng, 1e-12, 1.0));  // Dirichlet(1,1,1,1)
    sum += x;
  }
  for (auto& x : p) x /= sum;
  p[3] = 1.0 - p[0] - p[1] - p[2];
  p[3] = std::max(p[3], 0.0);
  return ChannelSpec(p, uniform(rng));
}

inline DepolarizingSpec random_depolarizing(std::mt19937_64& rng) {
  return DepolarizingSpec(uniform(rng, -1.0 / 3.0, 1.0), uniform(rng));
}

inline Vec3 random_unit3(std::mt19937_64& rng) {
  Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  for (auto& x : v) x /= n;
  return v;
}

inline double max_abs_diff(const ComplexMat4& a, const ComplexMat4& b) { return (a - b).max_abs(); }

inline Complex expectation(const Ket4& psi, const ComplexMat4& op) {
  Complex acc = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) acc += std::conj(psi[r]) * op(r, c) * psi[c];
  return acc;
}

}  // namespace memchan::testing
