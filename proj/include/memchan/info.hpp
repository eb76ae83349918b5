#pragma once

// Holevo mutual information of two-use signal ensembles, the closed-form
// output spectrum of the four-state signal family, and the memory threshold
// above which entangled signals beat product signals.

#include <array>
#include <vector>

#include "memchan/channels.hpp"
#include "memchan/core.hpp"

namespace memchan {

inline constexpr double kQuarterPi = 0.78539816339744830962;

struct EnsembleItem {
  double prior;
  DensityMatrix state;
};

class Ensemble {
 public:
  /// Throws std::invalid_argument when a prior is negative or the priors do
  /// not sum to 1 within 1e-12.
  explicit Ensemble(std::vector<EnsembleItem> items);

  const std::vector<EnsembleItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<EnsembleItem> items_;
};

/// The four orthonormal signals
///   cos t |00> + sin t |11>,  sin t |00> - cos t |11>,
///   cos t |01> + sin t |10>,  sin t |01> - cos t |10>.
/// t = 0 is the computational basis, t = pi/4 the Bell basis.
std::array<Ket4, 4> signal_kets(double theta);

/// signal_kets(theta) with priors 1/4 each.
Ensemble signal_states(double theta);

/// S(sum_i P_i rho_i) - sum_i P_i S(rho_i) with rho_i the channel outputs, in bits.
double mutual_information(const Ensemble& ens, const KrausSet& kraus);
double mutual_information(const Ensemble& ens, const ChannelSpec& spec);

/// Spectrum of the depolarizing output of each signal state, ascending:
///   (1/4)(1-mu)(1-eta^2) twice, and
///   (1/4)(1 + mu + eta^2(1-mu) -+ 2 sqrt(eta^2 cos^2 2t + [eta^2(1-mu)+mu]^2 sin^2 2t)).
std::array<double, 4> analytic_eigenvalues(double eta, double mu, double theta);

/// 2 - H(analytic_eigenvalues); assumes equiprobable signals, whose
/// average output is maximally mixed.
double analytic_I2(double eta, double mu, double theta);

enum class MemoryEndpoint { Memoryless, PerfectMemory };

/// Product-signal (theta = 0) information at the two memory endpoints:
///   memoryless:     (1+eta) log(1+eta) + (1-eta) log(1-eta)
///   perfect memory: 1 + half of the above.
double closed_form_I2_product(double eta, MemoryEndpoint endpoint);

/// eta / (1 + eta); throws std::domain_error unless eta in (0, 1].
double threshold_mu(double eta);

}  // namespace memchan
