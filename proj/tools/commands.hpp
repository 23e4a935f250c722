#pragma once

// Command implementations behind the `betatail` executable. Each command
// writes to the given streams and returns the process exit code.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "betatail/bounds.hpp"
#include "betatail/specfun.hpp"
#include "betatail/verify.hpp"

namespace betatail::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kBadArguments = 2,
  kIoError = 3,
  kSoundnessViolation = 4,
};

/// A shape parameter as typed on the command line, e.g. "2", "0.5" or "11/3".
struct ParamLiteral {
  std::string text;
  Rational exact;
  double real = 0.0;
  bool fraction = false;

  static ParamLiteral parse(std::string_view text);
};

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  bool log_spacing = false;

  /// Parses "start:stop:steps"; throws std::invalid_argument.
  static GridSpec parse(std::string_view text, bool log_spacing = false);
  std::vector<double> points() const;
};

struct ComparisonRow {
  double epsilon = 0.0;
  double exact = 0.0;
  double bernstein = 0.0;
  double subgaussian = 0.0;
  double chernoff = 0.0;
};

inline constexpr std::string_view kCsvHeader = "epsilon,exact,bernstein,subgaussian,chernoff";

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

std::vector<ComparisonRow> comparison_rows(const RealBeta& p, const GridSpec& grid, TailSide side,
                                           const EvalConfig& cfg = {});

/// Empty when the row is consistent, otherwise a description of the violation.
std::string row_violation(const ComparisonRow& row);

std::string render_csv(const std::vector<ComparisonRow>& rows);

int cmd_moments(const ParamLiteral& alpha, const ParamLiteral& beta, std::uint32_t dmax, std::ostream& out,
                std::ostream& err);
int cmd_bound(const ParamLiteral& alpha, const ParamLiteral& beta, double eps, TailSide side, std::ostream& out,
              std::ostream& err);
int cmd_tail(const ParamLiteral& alpha, const ParamLiteral& beta, double eps, TailSide side,
             const EvalConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const ParamLiteral& alpha, const ParamLiteral& beta, const GridSpec& grid, TailSide side,
                const std::string& out_path, const EvalConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(verify::Level level, verify::Fault fault, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace betatail::cli
