#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "memchan/info.hpp"

namespace memchan::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// CSV header of `sweep`.
inline constexpr const char* kSweepHeader = "mu,I2_product,I2_bell,I2_opt,theta_opt";

struct SweepRow {
  double mu;
  double I2_product;
  double I2_bell;
  double I2_opt;
  double theta_opt;
};

std::vector<SweepRow> sweep_rows(double eta, double mu_min, double mu_max, std::size_t steps, double tol);

/// Renders rows (with header) exactly as `sweep` writes them.
std::string render_sweep_csv(const std::vector<SweepRow>& rows);

/// Runs the command line (args excludes the program name). Returns the
/// process exit code: 0 success, 1 numerical or I/O failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace memchan::cli
