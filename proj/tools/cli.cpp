#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "memchan/channels.hpp"
#include "memchan/optimize.hpp"

namespace memchan::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string num(double x) { return fmt::format("{:.12g}", x); }

// --eta xor --p on one subcommand.
struct NoiseOptions {
  std::optional<double> eta;
  std::optional<double> p;

  void attach(CLI::App& sub) {
    auto* e = sub.add_option("--eta", eta, "shrinking factor eta = 1 - 4p/3");
    auto* q = sub.add_option("--p", p, "depolarizing probability p");
    e->excludes(q);
  }

  double resolve() const {
    if (eta) {
      if (!(*eta >= -1.0 / 3.0 && *eta <= 1.0)) throw UsageError("--eta must lie in [-1/3, 1]");
      return *eta;
    }
    if (p) {
      if (!(*p >= 0.0 && *p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
      return eta_from_p(*p);
    }
    throw UsageError("one of --eta or --p is required");
  }

  double resolve_shrinking() const {
    const double e = resolve();
    if (!(e > 0.0)) throw UsageError("this command requires eta in (0, 1] (p < 3/4)");
    return e;
  }
};

void require_mu(double mu, const char* name) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw UsageError(fmt::format("{} must lie in [0, 1]", name));
}

void require_positive(double tol) {
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
}

int cmd_sweep(double eta, double mu_min, double mu_max, std::size_t steps, double tol, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const std::string csv = render_sweep_csv(sweep_rows(eta, mu_min, mu_max, steps, tol));
  if (out_path.empty()) {
    out << csv;
    return kOk;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << out_path << "' for writing\n";
    return kFailure;
  }
  file << csv;
  file.close();
  if (!file) {
    err << "error: failed writing '" << out_path << "'\n";
    return kFailure;
  }
  return kOk;
}

int cmd_threshold(double eta, double tol, std::ostream& out) {
  const double analytic = threshold_mu(eta);
  const double numeric = find_threshold_numeric(eta, tol);
  const double diff = std::abs(analytic - numeric);
  out << "eta=" << num(eta) << " mu_t_analytic=" << num(analytic) << " mu_t_numeric=" << num(numeric)
      << " abs_diff=" << num(diff) << '\n';
  return diff <= 1e-6 ? kOk : kFailure;
}

int cmd_info(double eta, double mu, double theta, std::ostream& out) {
  const DepolarizingSpec spec(eta, mu);
  const KrausSet kraus = two_use_kraus(spec.to_channel_spec());
  const auto analytic = analytic_eigenvalues(eta, mu, theta);
  const auto numeric = eigvals_hermitian(apply_channel(kraus, DensityMatrix::pure(signal_kets(theta)[0])).mat());
  const double i2_analytic = analytic_I2(eta, mu, theta);
  const double i2_numeric = mutual_information(signal_states(theta), kraus);

  double discrepancy = std::abs(i2_analytic - i2_numeric);
  for (std::size_t i = 0; i < 4; ++i) discrepancy = std::max(discrepancy, std::abs(analytic[i] - numeric[i]));

  const auto list = [](const std::array<double, 4>& v) {
    return fmt::format("{} {} {} {}", num(v[0]), num(v[1]), num(v[2]), num(v[3]));
  };
  out << "eta=" << num(eta) << " mu=" << num(mu) << " theta=" << num(theta) << '\n'
      << "eigenvalues_analytic: " << list(analytic) << '\n'
      << "eigenvalues_numeric: " << list(numeric) << '\n'
      << "I2_analytic: " << num(i2_analytic) << '\n'
      << "I2_numeric: " << num(i2_numeric) << '\n'
      << "max_abs_discrepancy: " << num(discrepancy) << '\n';
  return discrepancy <= 1e-10 ? kOk : kFailure;
}

int cmd_search(double eta, double mu, std::size_t restarts, std::uint64_t seed, std::ostream& out) {
  const DepolarizingSpec spec(eta, mu);
  const ProductSearchResult res = best_product_ensemble_search(spec, restarts, seed);
  const double ansatz = analytic_I2(eta, mu, 0.0);
  out << "eta=" << num(eta) << " mu=" << num(mu) << " restarts=" << restarts << " seed=" << seed << '\n'
      << "best_product_I2: " << num(res.best_I2) << '\n'
      << "ansatz_theta0_I2: " << num(ansatz) << '\n'
      << "excess: " << num(res.best_I2 - ansatz) << '\n'
      << "best_config: " << res.description << '\n';
  return kOk;
}

}  // namespace

std::vector<SweepRow> sweep_rows(double eta, double mu_min, double mu_max, std::size_t steps, double tol) {
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double mu =
        i + 1 == steps ? mu_max : mu_min + (mu_max - mu_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const ThetaOptimum opt = optimal_theta(eta, mu, 65, tol);
    rows.push_back({mu, analytic_I2(eta, mu, 0.0), analytic_I2(eta, mu, kQuarterPi), opt.I2, opt.theta});
  }
  return rows;
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string csv = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows)
    csv += fmt::format("{},{},{},{},{}\n", num(r.mu), num(r.I2_product), num(r.I2_bell), num(r.I2_opt),
                       num(r.theta_opt));
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-use mutual information of Pauli channels with Markov-correlated noise"};
  app.require_subcommand(1);

  NoiseOptions sweep_noise, threshold_noise, info_noise, search_noise;
  double mu_min = 0.0, mu_max = 1.0, mu = 0.0, theta = 0.0;
  double sweep_tol = 1e-8, threshold_tol = 1e-8;
  std::size_t steps = 101, restarts = 50;
  std::uint64_t seed = 0;
  std::string out_path;

  auto* sweep = app.add_subcommand("sweep", "CSV of I2 for product, Bell and optimal signals over mu");
  sweep_noise.attach(*sweep);
  sweep->add_option("--mu-min", mu_min, "first mu (default 0)");
  sweep->add_option("--mu-max", mu_max, "last mu (default 1)");
  sweep->add_option("--steps", steps, "number of rows (default 101)");
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--tol", sweep_tol, "golden-section tolerance in radians (default 1e-8)");

  auto* threshold = app.add_subcommand("threshold", "analytic and numeric memory threshold");
  threshold_noise.attach(*threshold);
  threshold->add_option("--tol", threshold_tol, "bisection width (default 1e-8)");

  auto* info = app.add_subcommand("info", "analytic vs numeric output spectrum and I2 at one point");
  info_noise.attach(*info);
  info->add_option("--mu", mu, "memory degree")->required();
  info->add_option("--theta", theta, "signal angle in radians")->required();

  auto* search = app.add_subcommand("search", "random-restart search over product-state ensembles");
  search_noise.attach(*search);
  search->add_option("--mu", mu, "memory degree")->required();
  search->add_option("--restarts", restarts, "number of restarts (default 50)");
  search->add_option("--seed", seed, "RNG seed (default 0)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (sweep->parsed()) {
      const double eta = sweep_noise.resolve_shrinking();
      require_mu(mu_min, "--mu-min");
      require_mu(mu_max, "--mu-max");
      if (mu_min > mu_max) throw UsageError("--mu-min must not exceed --mu-max");
      if (steps < 2) throw UsageError("--steps must be at least 2");
      require_positive(sweep_tol);
      return cmd_sweep(eta, mu_min, mu_max, steps, sweep_tol, out_path, out, err);
    }
    if (threshold->parsed()) {
      const double eta = threshold_noise.resolve_shrinking();
      require_positive(threshold_tol);
      return cmd_threshold(eta, threshold_tol, out);
    }
    if (info->parsed()) {
      const double eta = info_noise.resolve();
      require_mu(mu, "--mu");
      if (!std::isfinite(theta)) throw UsageError("--theta must be finite");
      return cmd_info(eta, mu, theta, out);
    }
    if (search->parsed()) {
      const double eta = search_noise.resolve();
      require_mu(mu, "--mu");
      if (restarts < 1) throw UsageError("--restarts must be at least 1");
      return cmd_search(eta, mu, restarts, seed, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace memchan::cli
