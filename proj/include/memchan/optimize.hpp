#pragma once

// Numerical searches over the signal family and over product-state
// ensembles for the correlated depolarizing channel.

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "memchan/channels.hpp"
#include "memchan/core.hpp"

namespace memchan {

struct NoThreshold : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ThetaOptimum {
  double theta;
  double I2;
  /// Set when I2 varies by less than 1e-12 over the theta grid.
  bool degenerate;
};

/// Maximises analytic_I2(eta, mu, .) over theta in [0, pi/4]: a uniform grid
/// of grid_n points, then golden-section refinement to width tol around the
/// best grid point. Ties within 1e-12 go to the smaller theta.
ThetaOptimum optimal_theta(double eta, double mu, std::size_t grid_n = 65, double tol = 1e-8);

/// Bisection in mu on analytic_I2(pi/4) - analytic_I2(0) to width
/// max(tol, 1e-10). For the noiseless channel (eta = 1) the difference
/// vanishes identically and the limit eta -> 1 from below is returned.
double find_threshold_numeric(double eta, double tol = 1e-10);

/// Pure product input: Bloch vectors of qubit 1 and qubit 2.
class ProductStatePair {
 public:
  /// Throws std::invalid_argument unless both vectors have unit norm within 1e-12.
  ProductStatePair(const Vec3& b1, const Vec3& b2);

  const Vec3& b1() const { return b1_; }
  const Vec3& b2() const { return b2_; }

  BlochRep2 bloch() const;
  DensityMatrix density() const;

 private:
  Vec3 b1_;
  Vec3 b2_;
};

/// tr[Phi(pi)^2] from the closed form in the shrinking factors.
double product_output_purity(const ProductStatePair& pair, const DepolarizingSpec& spec);

/// tr[pi Phi(pi)] evaluated through the Kraus representation.
double product_output_fidelity(const ProductStatePair& pair, const DepolarizingSpec& spec);

struct ProductSearchResult {
  double best_I2;
  std::array<ProductStatePair, 4> states;
  std::size_t restart;  ///< index of the restart that produced best_I2
  std::string description;
};

/// Multi-start coordinate ascent over the spherical angles of four
/// equiprobable pure product states. Deterministic for a given seed; the
/// best restart wins, ties going to the lowest restart index.
ProductSearchResult best_product_ensemble_search(const DepolarizingSpec& spec, std::size_t restarts,
                                                 std::uint64_t seed);

/// Mutual information of four equiprobable product states through the
/// depolarizing channel, evaluated on the Bloch fast path.
double product_ensemble_I2(const std::array<ProductStatePair, 4>& states, const DepolarizingSpec& spec);

}  // namespace memchan
