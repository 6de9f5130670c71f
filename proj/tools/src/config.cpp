#include "oplab/cli/config.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <sstream>

namespace oplab::cli {

namespace {

/// Reads `key = value` lines, or a flat JSON object when the file starts with '{'.
class KeyValueOrJson : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream kv(text);
      return CLI::ConfigTOML::from_config(kv);
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("malformed JSON configuration: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    for (auto it = j.begin(); it != j.end(); ++it) {
      CLI::ConfigItem item;
      item.name = it.key();
      const auto scalar = [&](const nlohmann::json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number() || v.is_boolean()) return v.dump();
        throw CLI::ConversionError("JSON configuration value for '" + it.key() + "' must be a scalar or array");
      };
      if (it.value().is_array()) {
        for (const auto& v : it.value()) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(it.value()));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

const char* kCsvSchema =
    "CSV schema (all commands): header `kind,name,x,re,im,text`.\n"
    "  kind = param | scalar | label | residual | curve | convention | status\n"
    "  curve rows: name = <curve>.<column>, x = abscissa, re/im = value\n"
    "  floats are printed with 17 significant digits; empty fields are blank.\n";

void build(CLI::App& app, RunConfig& c, std::string& format) {
  app.add_option("command", c.command, "Experiment to run")->required()->check(CLI::IsMember(commands()));

  app.add_option("--n", c.n, "Toeplitz interior size (lattice sites)")->check(CLI::Range(4, 4096))->capture_default_str();
  app.add_option("--svd-size", c.svd_size, "SVD truncation size")->check(CLI::Range(8, 4096))->capture_default_str();
  app.add_option("--svd-guard", c.svd_guard, "SVD guard band")->check(CLI::Range(1, 1024))->capture_default_str();
  app.add_option("--symbol-power", c.symbol_power, "toeplitz-winding: symbol exp(i k theta)")
      ->check(CLI::Range(-16, 16))
      ->capture_default_str();
  app.add_option("--samples", c.samples, "Winding-number samples")->check(CLI::Range(64, 1 << 20))->capture_default_str();

  app.add_option("--mu", c.mu, "Perturbation scale mu in mu/(1+x^2)")->check(CLI::Range(-100.0, 100.0))->capture_default_str();
  app.add_option("--half-width", c.half_width, "x-grid half-width L")->check(CLI::Range(1.0, 1e4))->capture_default_str();
  app.add_option("--points", c.points, "x-grid points n (even)")->check(CLI::Range(16, 4096))->capture_default_str();
  app.add_option("--t0", c.t0, "First t of the geometric schedule")->check(CLI::Range(1e-6, 1e6))->capture_default_str();
  app.add_option("--t-count", c.t_count, "Schedule length (t0 * 2^j)")->check(CLI::Range(8, 40))->capture_default_str();
  app.add_option("--s-nodes", c.s_nodes, "Gauss-Legendre nodes in s")->check(CLI::Range(2, 128))->capture_default_str();
  app.add_option("--mu1", c.mu1, "compose-check: scale of B1")->check(CLI::Range(-100.0, 100.0))->capture_default_str();
  app.add_option("--mu2", c.mu2, "compose-check: scale of B2")->check(CLI::Range(-100.0, 100.0))->capture_default_str();
  app.add_option("--split-t", c.split_t, "compose-check: t of the path-splitting check")
      ->check(CLI::Range(1e-6, 1e6))
      ->capture_default_str();

  app.add_option("--nt", c.nt, "ptf-check: t-grid points")->check(CLI::Range(16, 128))->capture_default_str();
  app.add_option("--nx", c.nx, "ptf-check: x-grid points")->check(CLI::Range(16, 128))->capture_default_str();
  app.add_option("--t-half-width", c.t_half_width, "ptf-check: t-grid half-width")->check(CLI::Range(1.0, 1e3))->capture_default_str();
  app.add_option("--x-half-width", c.x_half_width, "ptf-check: x-grid half-width")->check(CLI::Range(1.0, 1e3))->capture_default_str();
  app.add_option("--ptf-t", c.ptf_t, "ptf-check: heat times")->check(CLI::Range(1e-6, 1e3))->capture_default_str();

  app.add_option("--well-depth", c.well_depth, "Square-well depth V0")->check(CLI::Range(1e-6, 1e4))->capture_default_str();
  app.add_option("--well-width", c.well_width, "Square-well half-width a")->check(CLI::Range(1e-3, 1e2))->capture_default_str();
  app.add_option("--depths", c.depths, "scan: well depths")->check(CLI::Range(1e-6, 1e4))->capture_default_str();
  app.add_option("--resonance", c.resonance, "scan: include the located resonance depth")->capture_default_str();

  app.add_option("--sigma-input", c.sigma_input, "sigma-index: S(-inf) = identity | parity | rotation")
      ->check(CLI::IsMember({"identity", "parity", "rotation"}))
      ->capture_default_str();
  app.add_option("--sigma-theta", c.sigma_theta, "sigma-index: rotation angle theta")
      ->check(CLI::Range(0.0, 6.283185307179586))
      ->capture_default_str();

  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "Write the record to this path instead of stdout");
  app.add_option("--seed", c.seed, "Reserved; all computations are deterministic")->capture_default_str();

  app.set_config("--config", "", "Configuration file: key = value lines or a flat JSON object");
  app.config_formatter(std::make_shared<KeyValueOrJson>());
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.footer(std::string("\nExit codes: 0 accepted, 1 failed verification, 2 usage error, 3 inconclusive.\n") +
             kCsvSchema);
}

}  // namespace

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::kTable:
      return "table";
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
  }
  return "table";
}

std::string usage() {
  CLI::App app("oplab: operator-index laboratory", "oplab");
  RunConfig c;
  std::string format = "table";
  build(app, c, format);
  return app.help();
}

ParseResult parse_config(int argc, const char* const* argv) {
  CLI::App app("oplab: operator-index laboratory", "oplab");
  ParseResult result;
  std::string format = "table";
  build(app, result.config, format);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    result.help = true;
    result.help_text = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  auto& c = result.config;
  c.format = format == "csv" ? OutputFormat::kCsv : format == "json" ? OutputFormat::kJson : OutputFormat::kTable;
  if (c.points % 2 != 0) throw UsageError("--points must be even");
  if (c.nt % 2 != 0 || c.nx % 2 != 0) throw UsageError("--nt and --nx must be even");
  if (c.svd_size < 4 * c.svd_guard) throw UsageError("--svd-size must be at least 4x --svd-guard");
  if (c.ptf_t.empty() || c.depths.empty()) throw UsageError("--ptf-t and --depths need at least one value");
  return result;
}

}  // namespace oplab::cli
