#include <doctest.h>

#include <cmath>

#include "memchan/info.hpp"
#include "memchan/optimize.hpp"
#include "support.hpp"

using namespace memchan;
using namespace memchan::testing;

namespace {

double distance_to_ends(double theta) { return std::min(theta, kQuarterPi - theta); }

double kraus_purity(const ProductStatePair& pair, const DepolarizingSpec& spec) {
  const auto out = apply_channel(two_use_kraus(spec.to_channel_spec()), pair.density()).mat();
  return (out * out).trace().real();
}

const Vec3 kZ{0, 0, 1};
const Vec3 kX{1, 0, 0};

}  // namespace

TEST_CASE("optimal_theta picks the product basis below the threshold") {
  const auto opt = optimal_theta(0.8, 0.1);
  CHECK_FALSE(opt.degenerate);
  CHECK(opt.theta == 0.0);
  CHECK(opt.I2 == doctest::Approx(analytic_I2(0.8, 0.1, 0.0)));
}

TEST_CASE("optimal_theta picks the Bell basis above the threshold") {
  const auto opt = optimal_theta(0.8, 0.9);
  CHECK_FALSE(opt.degenerate);
  CHECK(std::abs(opt.theta - kQuarterPi) <= 1e-6);
  CHECK(opt.I2 == doctest::Approx(analytic_I2(0.8, 0.9, kQuarterPi)));
}

TEST_CASE("optimal_theta flags the degenerate threshold") {
  const auto opt = optimal_theta(0.8, threshold_mu(0.8));
  CHECK(opt.degenerate);
  CHECK(opt.theta == 0.0);

  const auto noiseless = optimal_theta(1.0, 0.3);
  CHECK(noiseless.degenerate);
  CHECK(noiseless.I2 == doctest::Approx(2.0));
}

TEST_CASE("optimal_theta argument checks") {
  CHECK_THROWS_AS(optimal_theta(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(optimal_theta(0.8, 1.5), std::domain_error);
  CHECK_THROWS_AS(optimal_theta(0.8, 0.5, 8), std::invalid_argument);
  CHECK_THROWS_AS(optimal_theta(0.8, 0.5, 65, 0.0), std::invalid_argument);
}

TEST_CASE("optimal_theta is bimodal away from the threshold") {
  for (int i = 1; i <= 12; ++i) {
    const double eta = i / 12.0;
    const double mt = threshold_mu(eta);
    for (int j = 0; j <= 12; ++j) {
      const double mu = j / 12.0;
      if (std::abs(mu - mt) < 5e-4) continue;
      const auto opt = optimal_theta(eta, mu);
      CHECK(distance_to_ends(opt.theta) <= 1e-6);
      CHECK(opt.I2 >= std::max(analytic_I2(eta, mu, 0.0), analytic_I2(eta, mu, kQuarterPi)) - 1e-12);
    }
  }
}

TEST_CASE("numeric threshold") {
  CHECK(std::abs(find_threshold_numeric(0.8, 1e-10) - 4.0 / 9.0) <= 1e-9);
  CHECK(std::abs(find_threshold_numeric(1.0, 1e-10) - 0.5) <= 1e-9);
  CHECK(std::abs(find_threshold_numeric(0.3, 1e-10) - 0.3 / 1.3) <= 1e-9);
  CHECK(std::abs(find_threshold_numeric(0.8, 1e-4) - 4.0 / 9.0) <= 1e-4);
  CHECK_THROWS_AS(find_threshold_numeric(0.0), std::domain_error);
  CHECK_THROWS_AS(find_threshold_numeric(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("product state pairs") {
  CHECK_THROWS_AS(ProductStatePair({1, 1, 0}, kZ), std::invalid_argument);
  const ProductStatePair zz(kZ, kZ);
  const auto b = bloch_from_density(zz.density());
  CHECK(b.chi[2][2] == doctest::Approx(1.0));
  CHECK(b.beta1[2] == doctest::Approx(1.0));
}

TEST_CASE("product output purity examples") {
  CHECK(product_output_purity({kZ, kZ}, DepolarizingSpec(0.8, 0.0)) == doctest::Approx(0.6724).epsilon(1e-14));
  CHECK(product_output_purity({kZ, kX}, DepolarizingSpec(0.8, 1.0)) == doctest::Approx(0.73).epsilon(1e-14));
  CHECK(product_output_purity({kZ, kZ}, DepolarizingSpec(0.8, 1.0)) == doctest::Approx(0.82).epsilon(1e-14));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const ProductStatePair pair(random_unit3(rng), random_unit3(rng));
    CHECK(std::abs(product_output_purity(pair, DepolarizingSpec(1.0, uniform(rng))) - 1.0) <= 1e-12);
  }
}

TEST_CASE("purity formula matches the Kraus path") {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 500; ++trial) {
    const ProductStatePair pair(random_unit3(rng), random_unit3(rng));
    const DepolarizingSpec spec = random_depolarizing(rng);
    CHECK(std::abs(product_output_purity(pair, spec) - kraus_purity(pair, spec)) <= 1e-12);
  }
}

TEST_CASE("co-directed axis-aligned pairs maximise fidelity") {
  std::mt19937_64 rng(314);
  for (int s = 0; s < 5; ++s) {
    const DepolarizingSpec spec(uniform(rng, 0.0, 1.0), uniform(rng));
    const double aligned = product_output_fidelity({kZ, kZ}, spec);
    for (int trial = 0; trial < 200; ++trial) {
      const ProductStatePair pair(random_unit3(rng), random_unit3(rng));
      CHECK(product_output_fidelity(pair, spec) <= aligned + 1e-12);
    }
  }
}

TEST_CASE("product ensemble I2 of the computational basis equals the ansatz") {
  const Vec3 mz{0, 0, -1};
  const std::array<ProductStatePair, 4> basis{ProductStatePair(kZ, kZ), ProductStatePair(mz, mz),
                                              ProductStatePair(kZ, mz), ProductStatePair(mz, kZ)};
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const DepolarizingSpec spec(uniform(rng, -1.0 / 3.0, 1.0), uniform(rng));
    CHECK(std::abs(product_ensemble_I2(basis, spec) - analytic_I2(spec.eta(), spec.mu(), 0.0)) <= 1e-12);
  }
}

TEST_CASE("product ensemble search") {
  SUBCASE("memoryless channel reaches the closed form") {
    const auto res = best_product_ensemble_search(DepolarizingSpec(0.8, 0.0), 10, 1);
    CHECK(std::abs(res.best_I2 - closed_form_I2_product(0.8, MemoryEndpoint::Memoryless)) <= 1e-6);
    CHECK(res.best_I2 <= analytic_I2(0.8, 0.0, 0.0) + 1e-9);
    CHECK(std::abs(product_ensemble_I2(res.states, DepolarizingSpec(0.8, 0.0)) - res.best_I2) <= 1e-12);
  }
  SUBCASE("perfect memory reaches the closed form with co-directed axis states") {
    const auto res = best_product_ensemble_search(DepolarizingSpec(0.8, 1.0), 10, 2);
    CHECK(std::abs(res.best_I2 - closed_form_I2_product(0.8, MemoryEndpoint::PerfectMemory)) <= 1e-6);
    CHECK(res.best_I2 <= analytic_I2(0.8, 1.0, 0.0) + 1e-9);
    for (const auto& st : res.states) {
      double dot = 0.0, largest = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        dot += st.b1()[k] * st.b2()[k];
        largest = std::max(largest, std::abs(st.b1()[k]));
      }
      CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-3));
      CHECK(largest == doctest::Approx(1.0).epsilon(1e-3));
    }
  }
  SUBCASE("noiseless channel") {
    const auto res = best_product_ensemble_search(DepolarizingSpec(1.0, 0.4), 5, 3);
    CHECK(res.best_I2 == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("deterministic for a fixed seed") {
    const DepolarizingSpec spec(0.6, 0.3);
    const auto a = best_product_ensemble_search(spec, 3, 42);
    const auto b = best_product_ensemble_search(spec, 3, 42);
    CHECK(a.best_I2 == b.best_I2);
    CHECK(a.restart == b.restart);
    CHECK(a.description == b.description);
  }
  CHECK_THROWS_AS(best_product_ensemble_search(DepolarizingSpec(0.8, 0.0), 0, 1), std::invalid_argument);
}
