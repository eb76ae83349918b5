#pragma once

// Two uses of a Pauli channel whose noise is a Markov chain: with probability
// mu the second use repeats the first use's Pauli rotation, otherwise it draws
// independently from the same distribution.

#include <array>
#include <stdexcept>
#include <vector>

#include "memchan/core.hpp"

namespace memchan {

struct InvalidChannel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pauli probabilities (p0, px, py, pz) and memory degree mu.
class ChannelSpec {
 public:
  /// Throws std::domain_error on negative probabilities, a sum off by more
  /// than 1e-12, or mu outside [0, 1].
  ChannelSpec(const std::array<double, 4>& probs, double mu);

  double prob(Pauli k) const { return probs_[index_of(k)]; }
  const std::array<double, 4>& probs() const { return probs_; }
  double mu() const { return mu_; }

 private:
  std::array<double, 4> probs_;
  double mu_;
};

double eta_from_p(double p);
double p_from_eta(double eta);

/// Depolarizing channel (p0 = 1 - p, px = py = pz = p/3) given by its
/// shrinking factor eta = 1 - 4p/3, eta in [-1/3, 1].
class DepolarizingSpec {
 public:
  DepolarizingSpec(double eta, double mu);
  static DepolarizingSpec from_p(double p, double mu) { return {eta_from_p(p), mu}; }

  double eta() const { return eta_; }
  double mu() const { return mu_; }
  double p() const { return p_from_eta(eta_); }

  ChannelSpec to_channel_spec() const;

 private:
  double eta_;
  double mu_;
};

/// One term of a Pauli Kraus decomposition: the Kraus operator is
/// sqrt(weight) * op.
struct KrausTerm {
  Pauli k1;
  Pauli k2;
  double weight;
  ComplexMat4 op;
};

struct KrausSet {
  std::vector<KrausTerm> terms;

  /// max |sum_i w_i op_i^dagger op_i - 1|.
  double completeness_error() const;
};

/// p_{k1} * ((1 - mu) p_{k2} + mu delta_{k1 k2}).
double markov_weight(const ChannelSpec& spec, Pauli k1, Pauli k2);

/// All 16 terms sigma_{k1} (x) sigma_{k2}, zero weights included, ordered
/// with k1 major.
KrausSet two_use_kraus(const ChannelSpec& spec);

/// rho -> sum_i w_i op_i rho op_i^dagger. Throws InvalidChannel when a
/// weight is negative or completeness is violated by more than 1e-10.
DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho);

/// Closed-form action of the correlated depolarizing channel on Bloch data:
/// local vectors shrink by eta, diagonal correlations by mu + (1-mu) eta^2,
/// off-diagonal correlations by mu eta + (1-mu) eta^2.
BlochRep2 apply_depolarizing_bloch(const DepolarizingSpec& spec, const BlochRep2& b);

/// Correlation-tensor scale factors of apply_depolarizing_bloch.
double diagonal_correlation_factor(double eta, double mu);
double offdiagonal_correlation_factor(double eta, double mu);

}  // namespace memchan
