#include "memchan/channels.hpp"

#include <cmath>
#include <string>

namespace memchan {

namespace {

constexpr double kProbSumTol = 1e-12;
constexpr double kCompletenessTol = 1e-10;

void check_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("memory degree mu must lie in [0, 1]");
}

}  // namespace

ChannelSpec::ChannelSpec(const std::array<double, 4>& probs, double mu) : probs_(probs), mu_(mu) {
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::domain_error("Pauli probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol) throw std::domain_error("Pauli probabilities must sum to 1");
  check_mu(mu);
}

double eta_from_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::out_of_range("depolarizing probability p must lie in [0, 1]");
  return 1.0 - 4.0 * p / 3.0;
}

double p_from_eta(double eta) {
  if (!(eta >= -1.0 / 3.0 && eta <= 1.0)) throw std::out_of_range("shrinking factor eta must lie in [-1/3, 1]");
  return 0.75 * (1.0 - eta);
}

DepolarizingSpec::DepolarizingSpec(double eta, double mu) : eta_(eta), mu_(mu) {
  (void)p_from_eta(eta);
  check_mu(mu);
}

ChannelSpec DepolarizingSpec::to_channel_spec() const {
  const double p = p_from_eta(eta_);
  return ChannelSpec({1.0 - p, p / 3.0, p / 3.0, p / 3.0}, mu_);
}

double KrausSet::completeness_error() const {
  ComplexMat4 sum;
  for (const auto& t : terms) sum += (t.op.adjoint() * t.op) * t.weight;
  return (sum - ComplexMat4::identity()).max_abs();
}

double markov_weight(const ChannelSpec& spec, Pauli k1, Pauli k2) {
  const double mu = spec.mu();
  const double conditional = (1.0 - mu) * spec.prob(k2) + (k1 == k2 ? mu : 0.0);
  return spec.prob(k1) * conditional;
}

KrausSet two_use_kraus(const ChannelSpec& spec) {
  KrausSet set;
  set.terms.reserve(16);
  for (Pauli k1 : kAllPaulis)
    for (Pauli k2 : kAllPaulis) set.terms.push_back({k1, k2, markov_weight(spec, k1, k2), pauli_product(k1, k2)});
  return set;
}

DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho) {
  for (const auto& t : kraus.terms)
    if (!(t.weight >= 0.0)) throw InvalidChannel("Kraus weight is negative");
  const double err = kraus.completeness_error();
  if (err > kCompletenessTol)
    throw InvalidChannel("Kraus set violates completeness by " + std::to_string(err));

  ComplexMat4 out;
  for (const auto& t : kraus.terms) {
    if (t.weight == 0.0) continue;
    out += (t.op * rho.mat() * t.op.adjoint()) * t.weight;
  }
  return DensityMatrix::unchecked(out);
}

double diagonal_correlation_factor(double eta, double mu) { return mu + (1.0 - mu) * eta * eta; }

double offdiagonal_correlation_factor(double eta, double mu) { return mu * eta + (1.0 - mu) * eta * eta; }

BlochRep2 apply_depolarizing_bloch(const DepolarizingSpec& spec, const BlochRep2& b) {
  const double eta = spec.eta();
  const double diag = diagonal_correlation_factor(eta, spec.mu());
  const double off = offdiagonal_correlation_factor(eta, spec.mu());
  BlochRep2 out;
  for (std::size_t k = 0; k < 3; ++k) {
    out.beta1[k] = eta * b.beta1[k];
    out.beta2[k] = eta * b.beta2[k];
    for (std::size_t l = 0; l < 3; ++l) out.chi[k][l] = (k == l ? diag : off) * b.chi[k][l];
  }
  return out;
}

}  // namespace memchan
