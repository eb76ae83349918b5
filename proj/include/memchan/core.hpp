#pragma once

// Small dense complex linear algebra for one- and two-qubit operators, the
// Hermitian eigensolver, von Neumann entropy and the two-qubit Bloch
// decomposition.
//
// Two-qubit operators use the basis order |00>, |01>, |10>, |11>, i.e. the
// index of |ab> is 2a + b with qubit 1 the most significant.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace memchan {

using Complex = std::complex<double>;

struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidBloch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Square complex matrix of fixed size N, stored row-major.
template <std::size_t N>
class CMat {
 public:
  static constexpr std::size_t dim = N;

  constexpr CMat() = default;

  static constexpr CMat identity() {
    CMat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  CMat adjoint() const {
    CMat m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest absolute entry.
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

  CMat& operator+=(const CMat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMat& operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
  }

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, Complex s) { return a *= s; }
  friend CMat operator*(Complex s, CMat a) { return a *= s; }

  friend CMat operator*(const CMat& a, const CMat& b) {
    CMat m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::array<Complex, N * N> a_{};
};

using ComplexMat2 = CMat<2>;
using ComplexMat4 = CMat<4>;
using Ket4 = std::array<Complex, 4>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Pauli label; the numeric value doubles as the index into Bloch components
/// (x, y, z map to 0, 1, 2 after subtracting one).
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kAllPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
inline constexpr std::array<Pauli, 3> kNontrivialPaulis{Pauli::X, Pauli::Y, Pauli::Z};

constexpr std::size_t index_of(Pauli k) { return static_cast<std::size_t>(k); }

ComplexMat2 pauli(Pauli k);

/// Tensor product; (a (x) b)[2i+j, 2k+l] = a[i,k] * b[j,l].
ComplexMat4 kron2(const ComplexMat2& a, const ComplexMat2& b);

/// sigma_k1 (x) sigma_k2.
ComplexMat4 pauli_product(Pauli k1, Pauli k2);

/// max |m - m^dagger|.
template <std::size_t N>
double hermiticity_deviation(const CMat<N>& m) {
  double d = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = r; c < N; ++c) d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

struct EigenSystem4 {
  std::array<double, 4> values;  ///< ascending
  std::array<Ket4, 4> vectors;   ///< vectors[i] belongs to values[i]
};

/// Cyclic complex Jacobi diagonalisation. Throws NotHermitian when the
/// input deviates from Hermitian by more than 1e-10.
EigenSystem4 eig_hermitian(const ComplexMat4& m);

/// Eigenvalues only; same algorithm as eig_hermitian without accumulating
/// the eigenvector basis.
std::array<double, 4> eigvals_hermitian(const ComplexMat4& m);

/// Validated two-qubit density operator.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  /// Checks Hermiticity, unit trace and positivity; throws InvalidState.
  explicit DensityMatrix(const ComplexMat4& m);

  /// |psi><psi| for a normalised ket.
  static DensityMatrix pure(const Ket4& psi);
  static DensityMatrix maximally_mixed();

  /// Skips validation. For results of maps already known to be CPTP.
  static DensityMatrix unchecked(const ComplexMat4& m) { return DensityMatrix(m, Unchecked{}); }

  const ComplexMat4& mat() const { return mat_; }
  Complex operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

 private:
  struct Unchecked {};
  DensityMatrix(const ComplexMat4& m, Unchecked) : mat_(m) {}
  ComplexMat4 mat_;
};

/// Shannon entropy in bits with 0 log 0 = 0. Values in [-1e-10, 0) are
/// treated as zero; anything more negative throws InvalidState.
double shannon_entropy_bits(std::span<const double> probs);

double von_neumann_entropy(const DensityMatrix& rho);

/// Two-qubit Bloch data: beta1_k = tr(rho sigma_k (x) 1),
/// beta2_k = tr(rho 1 (x) sigma_k), chi_kl = tr(rho sigma_k (x) sigma_l),
/// with k, l running over x, y, z.
struct BlochRep2 {
  Vec3 beta1{};
  Vec3 beta2{};
  Mat3 chi{};

  friend bool operator==(const BlochRep2&, const BlochRep2&) = default;
};

BlochRep2 bloch_from_density(const DensityMatrix& rho);

/// Assembles (1/4)(1(x)1 + 1(x)beta2.sigma + beta1.sigma(x)1 + chi_kl sigma_k(x)sigma_l)
/// without any validity check.
ComplexMat4 matrix_from_bloch(const BlochRep2& b);

/// Throws InvalidBloch when the reconstructed operator is not positive
/// semidefinite (minimum eigenvalue below -1e-10).
DensityMatrix density_from_bloch(const BlochRep2& b);

/// Largest component-wise difference between two Bloch representations.
double max_abs_diff(const BlochRep2& a, const BlochRep2& b);

std::string to_string(Pauli k);

}  // namespace memchan
