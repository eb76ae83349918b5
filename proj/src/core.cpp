#include "memchan/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace memchan {

namespace {

constexpr double kHermitianInputTol = 1e-10;
constexpr double kJacobiOffDiagTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_max(const ComplexMat4& a) {
  double m = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = r + 1; c < 4; ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

// Cyclic Jacobi with a phase-reduced real rotation per (p, q) pair:
// U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] restricted to rows/cols p, q,
// where a_pq = |a_pq| e^{i phi}. A <- U^dagger A U zeroes a_pq.
template <bool WithVectors>
void jacobi(ComplexMat4& a, ComplexMat4& v) {
  if (hermiticity_deviation(a) > kHermitianInputTol)
    throw NotHermitian("eig_hermitian: input is not Hermitian within 1e-10");

  // Symmetrise so that the iteration works on an exactly Hermitian matrix.
  for (std::size_t r = 0; r < 4; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < 4; ++c) {
      const Complex z = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = z;
      a(c, r) = std::conj(z);
    }
  }

  const double tol = kJacobiOffDiagTol * std::max(1.0, a.max_abs());
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_max(a) <= tol) return;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        // A <- A U
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        // A <- U^dagger A
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if constexpr (WithVectors) {
          for (std::size_t k = 0; k < 4; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = vkp * upp + vkq * uqp;
            v(k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }
  if (off_diagonal_max(a) > tol) throw std::runtime_error("eig_hermitian: Jacobi iteration did not converge");
}

std::array<std::size_t, 4> ascending_order(const ComplexMat4& a) {
  std::array<std::size_t, 4> idx{0, 1, 2, 3};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  return idx;
}

}  // namespace

ComplexMat2 pauli(Pauli k) {
  using namespace std::complex_literals;
  ComplexMat2 m;
  switch (k) {
    case Pauli::I:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case Pauli::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::Y:
      m(0, 1) = -1.0i;
      m(1, 0) = 1.0i;
      break;
    case Pauli::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

ComplexMat4 kron2(const ComplexMat2& a, const ComplexMat2& b) {
  ComplexMat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return m;
}

ComplexMat4 pauli_product(Pauli k1, Pauli k2) {
  static const auto table = [] {
    std::array<ComplexMat4, 16> t;
    for (Pauli a : kAllPaulis)
      for (Pauli b : kAllPaulis) t[4 * index_of(a) + index_of(b)] = kron2(pauli(a), pauli(b));
    return t;
  }();
  return table[4 * index_of(k1) + index_of(k2)];
}

EigenSystem4 eig_hermitian(const ComplexMat4& m) {
  ComplexMat4 a = m;
  ComplexMat4 v = ComplexMat4::identity();
  jacobi<true>(a, v);

  EigenSystem4 out;
  const auto order = ascending_order(a);
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t col = order[i];
    out.values[i] = a(col, col).real();
    for (std::size_t k = 0; k < 4; ++k) out.vectors[i][k] = v(k, col);
  }
  return out;
}

std::array<double, 4> eigvals_hermitian(const ComplexMat4& m) {
  ComplexMat4 a = m;
  ComplexMat4 unused;
  jacobi<false>(a, unused);
  std::array<double, 4> vals{};
  for (std::size_t i = 0; i < 4; ++i) vals[i] = a(i, i).real();
  std::sort(vals.begin(), vals.end());
  return vals;
}

DensityMatrix::DensityMatrix(const ComplexMat4& m) : mat_(m) {
  if (hermiticity_deviation(m) > kHermitianTol) throw InvalidState("density matrix is not Hermitian");
  if (std::abs(m.trace() - 1.0) > kTraceTol) throw InvalidState("density matrix does not have unit trace");
  if (eigvals_hermitian(m)[0] < -kPsdTol) throw InvalidState("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const Ket4& psi) {
  ComplexMat4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = psi[r] * std::conj(psi[c]);
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(ComplexMat4::identity() * 0.25); }

double shannon_entropy_bits(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p < -DensityMatrix::kPsdTol) throw InvalidState("negative eigenvalue below -1e-10");
    if (p <= 0.0) continue;
    s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto vals = eigvals_hermitian(rho.mat());
  return shannon_entropy_bits(vals);
}

BlochRep2 bloch_from_density(const DensityMatrix& rho) {
  // tr(rho P) = sum_{r,c} rho(r,c) P(c,r)
  const auto expect = [&](Pauli k1, Pauli k2) {
    const ComplexMat4 p = pauli_product(k1, k2);
    Complex t = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) t += rho(r, c) * p(c, r);
    return t.real();
  };
  BlochRep2 b;
  for (std::size_t k = 0; k < 3; ++k) {
    const Pauli pk = kNontrivialPaulis[k];
    b.beta1[k] = expect(pk, Pauli::I);
    b.beta2[k] = expect(Pauli::I, pk);
    for (std::size_t l = 0; l < 3; ++l) b.chi[k][l] = expect(pk, kNontrivialPaulis[l]);
  }
  return b;
}

ComplexMat4 matrix_from_bloch(const BlochRep2& b) {
  ComplexMat4 m = ComplexMat4::identity();
  for (std::size_t k = 0; k < 3; ++k) {
    const Pauli pk = kNontrivialPaulis[k];
    m += pauli_product(Pauli::I, pk) * b.beta2[k];
    m += pauli_product(pk, Pauli::I) * b.beta1[k];
    for (std::size_t l = 0; l < 3; ++l) m += pauli_product(pk, kNontrivialPaulis[l]) * b.chi[k][l];
  }
  return m * 0.25;
}

DensityMatrix density_from_bloch(const BlochRep2& b) {
  const ComplexMat4 m = matrix_from_bloch(b);
  if (eigvals_hermitian(m)[0] < -DensityMatrix::kPsdTol)
    throw InvalidBloch("Bloch data does not describe a positive semidefinite operator");
  return DensityMatrix::unchecked(m);
}

double max_abs_diff(const BlochRep2& a, const BlochRep2& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    d = std::max({d, std::abs(a.beta1[k] - b.beta1[k]), std::abs(a.beta2[k] - b.beta2[k])});
    for (std::size_t l = 0; l < 3; ++l) d = std::max(d, std::abs(a.chi[k][l] - b.chi[k][l]));
  }
  return d;
}

std::string to_string(Pauli k) {
  switch (k) {
    case Pauli::I: return "I";
    case Pauli::X: return "X";
    case Pauli::Y: return "Y";
    case Pauli::Z: return "Z";
  }
  return "?";
}

}  // namespace memchan
