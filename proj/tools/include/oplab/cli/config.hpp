#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oplab::cli {

enum class OutputFormat { kTable, kCsv, kJson };

std::string to_string(OutputFormat f);

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"toeplitz-example", "toeplitz-winding", "witten-estimate",
                                                 "ptf-check",        "compose-check",    "levinson",
                                                 "sigma-index",      "corrected-index",  "scan"};
  return names;
}

struct RunConfig {
  std::string command;

  // toeplitz-example, toeplitz-winding
  int n = 64;               ///< interior half-size of the lattice window
  int svd_size = 128;       ///< truncation columns
  int svd_guard = 32;       ///< extra truncation rows
  int symbol_power = 1;     ///< toeplitz-winding: symbol e^{ik theta}
  int samples = 1024;       ///< winding samples

  // witten-estimate, compose-check
  double mu = 1.0;
  double half_width = 40.0;
  int points = 1024;
  double t0 = 1.0;
  int t_count = 8;
  int s_nodes = 8;
  double mu1 = 0.7;
  double mu2 = 0.9;
  double split_t = 2.0;

  // ptf-check
  int nt = 48;
  int nx = 48;
  double t_half_width = 15.0;
  double x_half_width = 20.0;
  std::vector<double> ptf_t = {0.5, 1.0, 2.0};

  // levinson, corrected-index, scan
  double well_depth = 2.0;
  double well_width = 1.0;  ///< half-width a
  std::vector<double> depths = {0.5, 1.0, 2.0, 5.0, 10.0, 25.0};
  bool resonance = true;    ///< scan: also run the located resonance depth

  // sigma-index
  std::string sigma_input = "parity";  ///< identity | parity | rotation
  double sigma_theta = 1.0471975511965976;

  OutputFormat format = OutputFormat::kTable;
  std::string out;
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

/// Bad command line or configuration file; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseResult {
  RunConfig config;
  bool help = false;
  std::string help_text;
};

/// Command line with an optional `--config FILE` holding `key = value` lines
/// or a flat JSON object. Flags override file values. Throws UsageError.
ParseResult parse_config(int argc, const char* const* argv);

/// Help text including defaults and the CSV schema.
std::string usage();

}  // namespace oplab::cli
