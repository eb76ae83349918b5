#include "memchan/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "memchan/info.hpp"

namespace memchan {

namespace {

constexpr double kTieTol = 1e-12;
constexpr double kDegenerateRange = 1e-12;
constexpr double kMinBisectionWidth = 1e-10;
constexpr double kUnitNormTol = 1e-12;
constexpr double kFlatGap = 1e-12;
constexpr double kInvPhi = 0.61803398874989484820;  // 1 / golden ratio

void check_threshold_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("eta must lie in (0, 1]");
}

// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

double bisect_threshold(double eta, double width) {
  const auto gap = [eta](double mu) { return analytic_I2(eta, mu, kQuarterPi) - analytic_I2(eta, mu, 0.0); };
  double lo = 0.0;
  double hi = 1.0;
  const double glo = gap(lo);
  const double ghi = gap(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0))
    throw NoThreshold(fmt::format("no sign change of the Bell/product gap on [0, 1] for eta = {}", eta));
  const bool lo_positive = glo > 0.0;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (g == 0.0) return mid;
    if ((g > 0.0) == lo_positive)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Vec3 unit_from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ComplexMat4 product_output_matrix(const Vec3& b1, const Vec3& b2, const DepolarizingSpec& spec) {
  BlochRep2 in;
  in.beta1 = b1;
  in.beta2 = b2;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) in.chi[k][l] = b1[k] * b2[l];
  return matrix_from_bloch(apply_depolarizing_bloch(spec, in));
}

// Four equiprobable product states parameterised by 16 angles:
// state s, qubit q uses angles[4s + 2q] (polar) and angles[4s + 2q + 1] (azimuth).
class ProductEnsembleObjective {
 public:
  static constexpr std::size_t kAngles = 16;

  ProductEnsembleObjective(const DepolarizingSpec& spec, const std::array<double, kAngles>& angles)
      : spec_(spec), angles_(angles) {
    for (std::size_t s = 0; s < 4; ++s) refresh_state(s, outputs_[s], entropies_[s]);
    value_ = evaluate_with(outputs_, entropies_);
  }

  double value() const { return value_; }
  double angle(std::size_t i) const { return angles_[i]; }

  /// Objective if angle i were set to x; leaves the state untouched.
  double trial(std::size_t i, double x) {
    const std::size_t s = i / 4;
    const double saved = angles_[i];
    angles_[i] = x;
    auto outputs = outputs_;
    auto entropies = entropies_;
    refresh_state(s, outputs[s], entropies[s]);
    angles_[i] = saved;
    return evaluate_with(outputs, entropies);
  }

  void commit(std::size_t i, double x) {
    angles_[i] = x;
    const std::size_t s = i / 4;
    refresh_state(s, outputs_[s], entropies_[s]);
    value_ = evaluate_with(outputs_, entropies_);
  }

  std::array<ProductStatePair, 4> states() const {
    auto pair = [&](std::size_t s) { return ProductStatePair(qubit_vector(s, 0), qubit_vector(s, 1)); };
    return {pair(0), pair(1), pair(2), pair(3)};
  }

 private:
  Vec3 qubit_vector(std::size_t s, std::size_t q) const {
    return unit_from_angles(angles_[4 * s + 2 * q], angles_[4 * s + 2 * q + 1]);
  }

  void refresh_state(std::size_t s, ComplexMat4& out, double& entropy) const {
    out = product_output_matrix(qubit_vector(s, 0), qubit_vector(s, 1), spec_);
    entropy = shannon_entropy_bits(eigvals_hermitian(out));
  }

  static double evaluate_with(const std::array<ComplexMat4, 4>& outputs, const std::array<double, 4>& entropies) {
    ComplexMat4 avg;
    double conditional = 0.0;
    for (std::size_t s = 0; s < 4; ++s) {
      avg += outputs[s] * 0.25;
      conditional += 0.25 * entropies[s];
    }
    return shannon_entropy_bits(eigvals_hermitian(avg)) - conditional;
  }

  DepolarizingSpec spec_;
  std::array<double, kAngles> angles_;
  std::array<ComplexMat4, 4> outputs_{};
  std::array<double, 4> entropies_{};
  double value_ = 0.0;
};

constexpr std::size_t kLineSamples = 12;
constexpr double kLineTol = 1e-7;
constexpr int kMaxSweeps = 300;
constexpr double kSweepImprovementTol = 1e-13;

// Coordinate ascent; each coordinate gets a periodic scan followed by
// golden-section refinement around the best sample.
double coordinate_ascent(ProductEnsembleObjective& obj) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  constexpr double kStep = kTwoPi / kLineSamples;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = obj.value();
    for (std::size_t i = 0; i < ProductEnsembleObjective::kAngles; ++i) {
      const double x0 = obj.angle(i);
      double best_x = x0;
      double best_f = obj.value();
      for (std::size_t j = 1; j < kLineSamples; ++j) {
        const double x = x0 + kStep * static_cast<double>(j);
        const double f = obj.trial(i, x);
        if (f > best_f) {
          best_f = f;
          best_x = x;
        }
      }
      const double refined =
          golden_section_max([&](double x) { return obj.trial(i, x); }, best_x - kStep, best_x + kStep, kLineTol);
      const double fr = obj.trial(i, refined);
      if (fr > best_f) {
        best_f = fr;
        best_x = refined;
      }
      if (best_f > obj.value()) obj.commit(i, std::remainder(best_x, kTwoPi));
    }
    if (obj.value() - before < kSweepImprovementTol) break;
  }
  return obj.value();
}

std::string describe_states(const std::array<ProductStatePair, 4>& states) {
  std::string out;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& b1 = states[s].b1();
    const auto& b2 = states[s].b2();
    out += fmt::format("{}state {}: b1=({:+.6f},{:+.6f},{:+.6f}) b2=({:+.6f},{:+.6f},{:+.6f})", s ? "; " : "", s + 1,
                       b1[0], b1[1], b1[2], b2[0], b2[1], b2[2]);
  }
  return out;
}

}  // namespace

ThetaOptimum optimal_theta(double eta, double mu, std::size_t grid_n, double tol) {
  check_threshold_eta(eta);
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("mu must lie in [0, 1]");
  if (grid_n < 9) throw std::invalid_argument("optimal_theta needs at least 9 grid points");
  if (!(tol > 0.0)) throw std::invalid_argument("optimal_theta tolerance must be positive");

  const auto f = [&](double theta) { return analytic_I2(eta, mu, theta); };
  const double h = kQuarterPi / static_cast<double>(grid_n - 1);

  std::vector<double> values(grid_n);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid_n; ++i) {
    values[i] = f(i + 1 == grid_n ? kQuarterPi : h * static_cast<double>(i));
    if (values[i] > values[best] + kTieTol) best = i;
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  if (*hi_it - *lo_it < kDegenerateRange) return {0.0, values[0], true};

  const double lo = best == 0 ? 0.0 : h * static_cast<double>(best - 1);
  const double hi = best + 1 >= grid_n ? kQuarterPi : h * static_cast<double>(best + 1);
  const double refined = golden_section_max(f, lo, hi, tol);

  // Candidates in ascending theta so ties resolve toward the smaller angle.
  ThetaOptimum out{lo, f(lo), false};
  for (double x : {refined, hi}) {
    const double v = f(x);
    if (v > out.I2 + kTieTol) out = {x, v, false};
  }
  return out;
}

double find_threshold_numeric(double eta, double tol) {
  check_threshold_eta(eta);
  if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
  const double width = std::max(tol, kMinBisectionWidth);

  const auto gap_at = [eta](double mu) { return analytic_I2(eta, mu, kQuarterPi) - analytic_I2(eta, mu, 0.0); };
  const bool flat = std::abs(gap_at(0.0)) <= kFlatGap && std::abs(gap_at(1.0)) <= kFlatGap;
  if (!flat) return bisect_threshold(eta, width);

  // Noiseless channel: every mu is a crossing. Extrapolate the crossing from
  // two nearby noisy channels (Richardson, linear term cancelled).
  constexpr double kStep = 1e-6;
  const double near = bisect_threshold(eta - kStep, width);
  const double far = bisect_threshold(eta - 2.0 * kStep, width);
  return 2.0 * near - far;
}

ProductStatePair::ProductStatePair(const Vec3& b1, const Vec3& b2) : b1_(b1), b2_(b2) {
  const auto norm = [](const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); };
  if (std::abs(norm(b1) - 1.0) > kUnitNormTol || std::abs(norm(b2) - 1.0) > kUnitNormTol)
    throw std::invalid_argument("product state Bloch vectors must have unit norm");
}

BlochRep2 ProductStatePair::bloch() const {
  BlochRep2 b;
  b.beta1 = b1_;
  b.beta2 = b2_;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) b.chi[k][l] = b1_[k] * b2_[l];
  return b;
}

DensityMatrix ProductStatePair::density() const { return DensityMatrix::unchecked(matrix_from_bloch(bloch())); }

double product_output_purity(const ProductStatePair& pair, const DepolarizingSpec& spec) {
  const double eta = spec.eta();
  const double diag = diagonal_correlation_factor(eta, spec.mu());
  const double off = offdiagonal_correlation_factor(eta, spec.mu());
  double aligned = 0.0;
  double crossed = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double w = pair.b1()[i] * pair.b1()[i] * pair.b2()[j] * pair.b2()[j];
      (i == j ? aligned : crossed) += w;
    }
  return 0.25 * (1.0 + 2.0 * eta * eta + diag * diag * aligned + off * off * crossed);
}

double product_output_fidelity(const ProductStatePair& pair, const DepolarizingSpec& spec) {
  const DensityMatrix in = pair.density();
  const DensityMatrix out = apply_channel(two_use_kraus(spec.to_channel_spec()), in);
  return (in.mat() * out.mat()).trace().real();
}

double product_ensemble_I2(const std::array<ProductStatePair, 4>& states, const DepolarizingSpec& spec) {
  ComplexMat4 avg;
  double conditional = 0.0;
  for (const auto& st : states) {
    const ComplexMat4 out = product_output_matrix(st.b1(), st.b2(), spec);
    avg += out * 0.25;
    conditional += 0.25 * shannon_entropy_bits(eigvals_hermitian(out));
  }
  return shannon_entropy_bits(eigvals_hermitian(avg)) - conditional;
}

ProductSearchResult best_product_ensemble_search(const DepolarizingSpec& spec, std::size_t restarts,
                                                 std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("product search needs at least one restart");

  std::optional<ProductSearchResult> best;
  for (std::size_t r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(r)));
    std::array<double, ProductEnsembleObjective::kAngles> angles{};
    for (std::size_t i = 0; i < angles.size(); i += 2) {
      angles[i] = std::acos(1.0 - 2.0 * uniform01(rng));
      angles[i + 1] = 2.0 * std::numbers::pi * uniform01(rng);
    }
    ProductEnsembleObjective obj(spec, angles);
    const double value = coordinate_ascent(obj);
    if (!best || value > best->best_I2) {
      auto states = obj.states();
      best = ProductSearchResult{value, states, r, {}};
    }
  }
  best->description = fmt::format("restart {}: {}", best->restart, describe_states(best->states));
  return *best;
}

}  // namespace memchan
