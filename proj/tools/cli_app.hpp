#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhosc/nhosc.h"

namespace nhosc_cli {

enum class Command { CommutatorCheck, Spectrum, TableOne, TableTwo, SweepW, SweepN, Duality };
enum class Format { Text, Csv, Json };

const char* command_name(Command c) noexcept;

/// Fully resolved run configuration: defaults applied, table shorthands expanded
/// and `--w auto` replaced by the variational frequency.
struct RunConfig {
  Command command = Command::Spectrum;
  std::size_t n_dim = 100;
  double scale = 1.0;
  double freq = 1.0;
  bool freq_auto = false;
  double l_coef = 0.0;
  double r_coef = 0.0;
  double a_coef = 1.0;
  double b_coef = 1.0;
  std::optional<double> capital_w;
  std::optional<std::string> output_path;
  Format format = Format::Text;
  std::size_t print_count = 50;
  std::vector<double> sweep_values;
  nhosc_sort_order sort_order = NHOSC_SORT_RE_THEN_IM;
  double report_tol = 1e-3;

  nhosc_basis basis() const { return {n_dim, freq, scale}; }
  nhosc_params params() const { return {l_coef, r_coef, a_coef, b_coef}; }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses subcommand and flags (program name excluded). Throws ConfigError.
RunConfig parse_config(const std::vector<std::string>& tokens);

/// Executes the pipeline for config; returns the process exit code
/// (0 ok, 2 config, 3 solver, 4 I/O).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run, with usage errors reported on err.
int main_entry(const std::vector<std::string>& tokens, std::ostream& out, std::ostream& err);

/// Two-decimal rendering with trailing zeros removed ("5", "12.5").
std::string format_real(double v);

/// Table-style complex rendering, e.g. "395.53-59.95i". Values whose
/// imaginary part rounds to zero render as format_real.
std::string format_complex(double re, double im);

}  // namespace nhosc_cli
