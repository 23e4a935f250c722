#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "betatail/chernoff.hpp"
#include "betatail/moments.hpp"

namespace betatail::cli {

ParamLiteral ParamLiteral::parse(std::string_view text) {
  ParamLiteral p;
  p.text = std::string(text);
  p.exact = parse_rational(text);
  p.fraction = is_fraction_literal(text);
  if (p.fraction) {
    p.real = to_double(p.exact);
  } else {
    // Correctly rounded, unlike the truncating rational conversion.
    std::string s(text);
    std::size_t used = 0;
    p.real = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  }
  if (!(p.exact > 0)) throw std::invalid_argument("shape parameters must be positive, got '" + p.text + "'");
  return p;
}

GridSpec GridSpec::parse(std::string_view text, bool log_spacing) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw std::invalid_argument("grid must look like start:stop:steps");
  GridSpec g;
  g.log_spacing = log_spacing;
  try {
    g.start = std::stod(std::string(text.substr(0, first)));
    g.stop = std::stod(std::string(text.substr(first + 1, second - first - 1)));
    g.steps = std::stoi(std::string(text.substr(second + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like start:stop:steps");
  }
  if (!(g.start >= 0.0) || !(g.stop > g.start) || g.steps < 2) {
    throw std::invalid_argument("grid needs start >= 0, stop > start and steps >= 2");
  }
  if (log_spacing && !(g.start > 0.0)) throw std::invalid_argument("a log grid needs start > 0");
  return g;
}

std::vector<double> GridSpec::points() const {
  std::vector<double> xs(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / (steps - 1);
    xs[i] = log_spacing ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  xs.front() = start;
  xs.back() = stop;
  return xs;
}

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

std::vector<ComparisonRow> comparison_rows(const RealBeta& p, const GridSpec& grid, TailSide side,
                                           const EvalConfig& cfg) {
  const double proxy = bounds::subgaussian_optimal_proxy(p, cfg);
  const double width = bounds::support_width(p, side);
  std::vector<ComparisonRow> rows;
  for (double eps : grid.points()) {
    ComparisonRow row;
    row.epsilon = eps;
    row.exact = bounds::exact_tail(p, eps, side, cfg);
    row.bernstein = bounds::bernstein_tail_bound(p, eps, side);
    row.subgaussian = bounds::subgaussian_bound(proxy, eps);
    if (eps >= width) {
      row.chernoff = 0.0;
    } else {
      const auto result = chernoff::chernoff_exponent_numeric(p, eps, side, cfg);
      if (!result.converged) throw ConvergenceError("Chernoff optimiser did not converge at eps=" + format_number(eps));
      row.chernoff = std::exp(-result.exponent);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string row_violation(const ComparisonRow& row) {
  constexpr double slack = 1e-10;
  for (double prob : {row.exact, row.bernstein, row.subgaussian, row.chernoff}) {
    if (!(prob >= 0.0 && prob <= 1.0)) return "probability outside [0, 1]";
  }
  if (row.chernoff < row.exact - slack) return "Chernoff bound below the exact tail";
  if (row.bernstein < row.exact - slack) return "Bernstein bound below the exact tail";
  if (row.subgaussian < row.exact - slack) return "sub-gaussian bound below the exact tail";
  if (row.chernoff > row.bernstein + slack) return "Chernoff bound above the Bernstein bound";
  return {};
}

std::string render_csv(const std::vector<ComparisonRow>& rows) {
  std::string csv(kCsvHeader);
  csv += '\n';
  for (const auto& r : rows) {
    csv += format_number(r.epsilon) + ',' + format_number(r.exact) + ',' + format_number(r.bernstein) + ',' +
           format_number(r.subgaussian) + ',' + format_number(r.chernoff) + '\n';
  }
  return csv;
}

int cmd_moments(const ParamLiteral& alpha, const ParamLiteral& beta, std::uint32_t dmax, std::ostream& out,
                std::ostream& err) {
  if (dmax > moments::kMaxOrder) {
    err << "error: --dmax must not exceed " << moments::kMaxOrder << '\n';
    return kBadArguments;
  }
  const auto table = moments::central_moments_recursive(make_beta(alpha.exact, beta.exact), dmax);
  out << "d\tmu_d\tdecimal\n";
  for (std::uint32_t d = 0; d <= dmax; ++d) {
    out << d << '\t' << to_string(table.central(d)) << '\t' << format_number(to_double(table.central(d))) << '\n';
  }
  return kSuccess;
}

int cmd_bound(const ParamLiteral& alpha, const ParamLiteral& beta, double eps, TailSide side, std::ostream& out,
              std::ostream& err) {
  if (!(eps >= 0.0)) {
    err << "error: --eps must be non-negative\n";
    return kBadArguments;
  }
  const auto exact = bounds::theorem1_params(make_beta(alpha.exact, beta.exact));
  const RealBeta p = make_beta(alpha.real, beta.real);
  const bool sub_gamma = side == TailSide::Upper ? p.beta >= p.alpha : p.alpha >= p.beta;
  const double c = to_double(exact.c);
  out << "v = " << to_string(exact.v) << " (" << format_number(to_double(exact.v)) << ")\n";
  out << "c = " << to_string(exact.c) << " (" << format_number(c) << ")\n";
  out << "side = " << (side == TailSide::Upper ? "upper" : "lower") << '\n';
  out << "branch = " << (sub_gamma ? "sub-gamma" : "gaussian") << '\n';
  out << "bound = " << format_number(bounds::bernstein_tail_bound(p, eps, side)) << '\n';
  return kSuccess;
}

int cmd_tail(const ParamLiteral& alpha, const ParamLiteral& beta, double eps, TailSide side,
             const EvalConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(eps >= 0.0)) {
    err << "error: --eps must be non-negative\n";
    return kBadArguments;
  }
  const RealBeta p = make_beta(alpha.real, beta.real);
  out << "exact = " << format_number(bounds::exact_tail(p, eps, side, cfg)) << '\n';
  out << "bernstein = " << format_number(bounds::bernstein_tail_bound(p, eps, side)) << '\n';
  if (eps > 0.0 && eps < bounds::support_width(p, side)) {
    const auto result = chernoff::chernoff_exponent_numeric(p, eps, side, cfg);
    out << "chernoff = " << format_number(std::exp(-result.exponent)) << '\n';
    out << "t_star = " << format_number(result.t_star) << '\n';
  }
  return kSuccess;
}

int cmd_compare(const ParamLiteral& alpha, const ParamLiteral& beta, const GridSpec& grid, TailSide side,
                const std::string& out_path, const EvalConfig& cfg, std::ostream& out, std::ostream& err) {
  const RealBeta p = make_beta(alpha.real, beta.real);
  const auto rows = comparison_rows(p, grid, side, cfg);
  for (const auto& row : rows) {
    if (auto problem = row_violation(row); !problem.empty()) {
      err << "error: " << problem << " at eps=" << format_number(row.epsilon) << '\n';
      return kSoundnessViolation;
    }
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << out_path << "' for writing\n";
    return kIoError;
  }
  file << render_csv(rows);
  file.close();
  if (!file) {
    err << "error: failed writing '" << out_path << "'\n";
    return kIoError;
  }
  out << "wrote " << rows.size() << " rows to " << out_path << '\n';
  return kSuccess;
}

int cmd_verify(verify::Level level, verify::Fault fault, std::ostream& out, std::ostream& err) {
  const auto report = verify::run(level, fault, &out);
  if (const auto* failure = report.first_failure()) {
    err << "verification failed [" << failure->label << "]: " << failure->detail << '\n';
    return kVerificationFailed;
  }
  out << "all checks passed\n";
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Beta central moments and Bernstein-type tail bounds"};
  app.require_subcommand(1);

  std::string alpha_text;
  std::string beta_text;
  std::string side_text = "upper";
  std::string grid_text = "0:0.05:100";
  std::string out_path = "comparison.csv";
  std::string level_text = "quick";
  std::string fault_text = "none";
  double eps = 0.0;
  double tol = EvalConfig{}.rel_tol;
  std::uint32_t dmax = 10;
  bool log_grid = false;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--alpha", alpha_text, "shape alpha (decimal or p/q)")->required();
    sub->add_option("--beta", beta_text, "shape beta (decimal or p/q)")->required();
  };
  auto add_side = [&](CLI::App* sub) {
    sub->add_option("--side", side_text, "tail side")->check(CLI::IsMember({"upper", "lower"}));
  };

  auto* moments_cmd = app.add_subcommand("moments", "exact central moments via the order-2 recursion");
  add_params(moments_cmd);
  moments_cmd->add_option("--dmax", dmax, "highest order");

  auto* bound_cmd = app.add_subcommand("bound", "Bernstein-type tail bound");
  add_params(bound_cmd);
  bound_cmd->add_option("--eps", eps, "deviation")->required();
  add_side(bound_cmd);

  auto* tail_cmd = app.add_subcommand("tail", "exact tail next to the bounds");
  add_params(tail_cmd);
  tail_cmd->add_option("--eps", eps, "deviation")->required();
  add_side(tail_cmd);
  tail_cmd->add_option("--tol", tol, "relative tolerance of numeric kernels");

  auto* compare_cmd = app.add_subcommand("compare", "write a bound comparison CSV");
  add_params(compare_cmd);
  compare_cmd->add_option("--grid", grid_text, "start:stop:steps");
  compare_cmd->add_option("--out", out_path, "output CSV path");
  compare_cmd->add_flag("--log-grid", log_grid, "log-spaced grid");
  compare_cmd->add_option("--tol", tol, "relative tolerance of numeric kernels");
  add_side(compare_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  verify_cmd->add_option("--level", level_text, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--inject-fault", fault_text)->group("")->check(CLI::IsMember({"none", "sign-c"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  const TailSide side = side_text == "lower" ? TailSide::Lower : TailSide::Upper;
  try {
    if (*verify_cmd) {
      return cmd_verify(level_text == "full" ? verify::Level::Full : verify::Level::Quick,
                        fault_text == "sign-c" ? verify::Fault::FlipScaleSign : verify::Fault::None, out, err);
    }
    EvalConfig cfg;
    cfg.rel_tol = tol;
    cfg.validate();
    const auto alpha = ParamLiteral::parse(alpha_text);
    const auto beta = ParamLiteral::parse(beta_text);
    if (*moments_cmd) return cmd_moments(alpha, beta, dmax, out, err);
    if (*bound_cmd) return cmd_bound(alpha, beta, eps, side, out, err);
    if (*tail_cmd) return cmd_tail(alpha, beta, eps, side, cfg, out, err);
    if (*compare_cmd) {
      return cmd_compare(alpha, beta, GridSpec::parse(grid_text, log_grid), side, out_path, cfg, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kSoundnessViolation;
  }
  return kBadArguments;
}

}  // namespace betatail::cli
