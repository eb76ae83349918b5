#include "memchan/info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memchan {

namespace {

constexpr double kPriorSumTol = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_depolarizing_domain(double eta, double mu) {
  if (!(eta >= -1.0 / 3.0 && eta <= 1.0)) throw std::domain_error("eta must lie in [-1/3, 1]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("mu must lie in [0, 1]");
}

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
  double sum = 0.0;
  for (const auto& it : items_) {
    if (!(it.prior >= 0.0)) throw std::invalid_argument("ensemble prior is negative");
    sum += it.prior;
  }
  if (std::abs(sum - 1.0) > kPriorSumTol) throw std::invalid_argument("ensemble priors do not sum to 1");
}

std::array<Ket4, 4> signal_kets(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {{
      {c, 0.0, 0.0, s},
      {s, 0.0, 0.0, -c},
      {0.0, c, s, 0.0},
      {0.0, s, -c, 0.0},
  }};
}

Ensemble signal_states(double theta) {
  std::vector<EnsembleItem> items;
  for (const auto& ket : signal_kets(theta)) items.push_back({0.25, DensityMatrix::pure(ket)});
  return Ensemble(std::move(items));
}

double mutual_information(const Ensemble& ens, const KrausSet& kraus) {
  ComplexMat4 avg;
  double conditional = 0.0;
  for (const auto& [prior, state] : ens.items()) {
    const DensityMatrix out = apply_channel(kraus, state);
    avg += out.mat() * prior;
    conditional += prior * von_neumann_entropy(out);
  }
  return von_neumann_entropy(DensityMatrix::unchecked(avg)) - conditional;
}

double mutual_information(const Ensemble& ens, const ChannelSpec& spec) {
  return mutual_information(ens, two_use_kraus(spec));
}

std::array<double, 4> analytic_eigenvalues(double eta, double mu, double theta) {
  check_depolarizing_domain(eta, mu);
  const double eta2 = eta * eta;
  const double corr = eta2 * (1.0 - mu) + mu;
  const double c2 = std::cos(2.0 * theta);
  const double s2 = std::sin(2.0 * theta);
  const double root = std::sqrt(eta2 * c2 * c2 + corr * corr * s2 * s2);
  const double degenerate = 0.25 * (1.0 - mu) * (1.0 - eta2);
  const double centre = 1.0 + mu + eta2 * (1.0 - mu);
  std::array<double, 4> vals{degenerate, degenerate, 0.25 * (centre + 2.0 * root), 0.25 * (centre - 2.0 * root)};
  std::sort(vals.begin(), vals.end());
  return vals;
}

double analytic_I2(double eta, double mu, double theta) {
  const auto vals = analytic_eigenvalues(eta, mu, theta);
  return 2.0 - shannon_entropy_bits(vals);
}

double closed_form_I2_product(double eta, MemoryEndpoint endpoint) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("eta must lie in [0, 1]");
  const double memoryless = xlog2x(1.0 + eta) + xlog2x(1.0 - eta);
  return endpoint == MemoryEndpoint::Memoryless ? memoryless : 1.0 + 0.5 * memoryless;
}

double threshold_mu(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("threshold requires eta in (0, 1]");
  return eta / (1.0 + eta);
}

}  // namespace memchan
