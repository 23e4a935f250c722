#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace {

namespace cli = betatail::cli;
using betatail::make_rational;
using betatail::Rational;
using betatail::TailSide;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "betatail");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_csv(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("betatail_test_" + name + ".csv");
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
    rows.push_back(row);
  }
  return rows;
}

TEST(ParamLiteral, DecimalAndFraction) {
  const auto half = cli::ParamLiteral::parse("0.5");
  EXPECT_EQ(half.exact, make_rational(1, 2));
  EXPECT_FALSE(half.fraction);
  const auto third = cli::ParamLiteral::parse("11/3");
  EXPECT_EQ(third.exact, make_rational(11, 3));
  EXPECT_TRUE(third.fraction);
  EXPECT_EQ(third.real, 11.0 / 3.0);
  // A decimal's double is the correctly rounded literal, not the rounded rational.
  EXPECT_EQ(cli::ParamLiteral::parse("0.1").real, 0.1);
  EXPECT_EQ(cli::ParamLiteral::parse("0.1").exact, make_rational(1, 10));
  EXPECT_THROW(cli::ParamLiteral::parse("abc"), std::invalid_argument);
  EXPECT_THROW(cli::ParamLiteral::parse("1/0"), std::invalid_argument);
}

TEST(GridSpec, ParsesAndSpaces) {
  const auto g = cli::GridSpec::parse("0:0.05:101");
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 101u);
  EXPECT_EQ(pts.front(), 0.0);
  EXPECT_EQ(pts.back(), 0.05);
  EXPECT_DOUBLE_EQ(pts[50], 0.025);
  const auto lg = cli::GridSpec::parse("1e-4:1e-1:4", true).points();
  EXPECT_DOUBLE_EQ(lg[1], 1e-3);
  EXPECT_EQ(lg.back(), 0.1);
  EXPECT_THROW(cli::GridSpec::parse("0:0.05"), std::invalid_argument);
  EXPECT_THROW(cli::GridSpec::parse("0.1:0.05:10"), std::invalid_argument);
  EXPECT_THROW(cli::GridSpec::parse("0:0.05:1"), std::invalid_argument);
  EXPECT_THROW(cli::GridSpec::parse("-1:0.05:10"), std::invalid_argument);
  EXPECT_THROW(cli::GridSpec::parse("0:1:10", true), std::invalid_argument);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(cli::format_number(0.0), "0");
  EXPECT_EQ(cli::format_number(1.0), "1");
  EXPECT_EQ(cli::format_number(0.1), "0.1");
  for (double x : {1.0 / 3.0, 4.625434603704297e-05, 0.5347901118017586, 1e-300}) {
    EXPECT_EQ(std::stod(cli::format_number(x)), x);
  }
}

TEST(Moments, PrintsExactRows) {
  auto r = run({"moments", "--alpha", "2", "--beta", "3", "--dmax", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3\t2/875\t"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2\t1/25\t0.04\n"), std::string::npos) << r.out;
  r = run({"moments", "--alpha", "1", "--beta", "1", "--dmax", "3"});
  EXPECT_NE(r.out.find("3\t0\t0\n"), std::string::npos) << r.out;
  r = run({"moments", "--alpha", "1/2", "--beta", "0.5", "--dmax", "2"});
  EXPECT_NE(r.out.find("2\t1/8\t"), std::string::npos) << r.out;
}

TEST(Bound, Examples) {
  auto r = run({"bound", "--alpha", "2", "--beta", "98", "--eps", "0.02"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("branch = sub-gamma"), std::string::npos);
  EXPECT_NE(r.out.find("bound = 0.5347901118017586"), std::string::npos) << r.out;
  r = run({"bound", "--alpha", "98", "--beta", "2", "--eps", "0.02", "--side", "upper"});
  EXPECT_NE(r.out.find("branch = gaussian"), std::string::npos);
  const double v = 196.0 / 1010000.0;
  EXPECT_NE(r.out.find("bound = " + cli::format_number(std::exp(-0.0004 / (2 * v)))), std::string::npos) << r.out;
  r = run({"bound", "--alpha", "2", "--beta", "98", "--eps", "0"});
  EXPECT_NE(r.out.find("bound = 1\n"), std::string::npos) << r.out;
}

TEST(Tail, PrintsExactAndBounds) {
  auto r = run({"tail", "--alpha", "2", "--beta", "98", "--eps", "0.02"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("exact = 0.0900629"), std::string::npos) << r.out;
}

TEST(ExitCodes, ArgumentErrors) {
  EXPECT_EQ(run({}).code, cli::kBadArguments);
  EXPECT_EQ(run({"bound", "--alpha", "-1", "--beta", "2", "--eps", "0.1"}).code, cli::kBadArguments);
  EXPECT_EQ(run({"bound", "--alpha", "2", "--beta", "2", "--eps", "-0.1"}).code, cli::kBadArguments);
  EXPECT_EQ(run({"bound", "--alpha", "2", "--beta", "2", "--eps", "0.1", "--side", "left"}).code, cli::kBadArguments);
  EXPECT_EQ(run({"moments", "--alpha", "2", "--beta", "3", "--dmax", "20000"}).code, cli::kBadArguments);
  EXPECT_EQ(run({"compare", "--alpha", "2", "--beta", "3", "--grid", "1:0:3", "--out", "x.csv"}).code,
            cli::kBadArguments);
  EXPECT_EQ(run({"tail", "--alpha", "2", "--beta", "3", "--eps", "0.1", "--tol", "1e-3"}).code, cli::kBadArguments);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kBadArguments);
}

TEST(ExitCodes, UnwritableOutput) {
  const auto r = run({"compare", "--alpha", "2", "--beta", "98", "--grid", "0:0.05:5", "--out",
                      "/nonexistent-dir/out.csv"});
  EXPECT_EQ(r.code, cli::kIoError);
}

TEST(Compare, HeaderOrderingAndDeterminism) {
  const auto path = temp_csv("fig1a");
  ASSERT_EQ(run({"compare", "--alpha", "2", "--beta", "98", "--grid", "0:0.05:100", "--out", path.string()}).code, 0);
  const std::string first = slurp(path);
  ASSERT_EQ(run({"compare", "--alpha", "2", "--beta", "98", "--grid", "0:0.05:100", "--out", path.string()}).code, 0);
  EXPECT_EQ(slurp(path), first);
  EXPECT_EQ(first.substr(0, first.find('\n')), cli::kCsvHeader);
  EXPECT_EQ(first.find('\r'), std::string::npos);
  const auto rows = parse_csv(first);
  ASSERT_EQ(rows.size(), 100u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double value : {rows[i][1], rows[i][2], rows[i][3], rows[i][4]}) {
      EXPECT_GE(value, 0.0);
      EXPECT_LE(value, 1.0);
    }
    EXPECT_LE(rows[i][1], rows[i][4] + 1e-10);
    EXPECT_LE(rows[i][4], rows[i][2] + 1e-10);
    if (i > 0 && i + 1 < rows.size()) {
      EXPECT_LT(rows[i][1], rows[i][2]);
      EXPECT_LT(rows[i][2], rows[i][3]);
    }
  }
  std::filesystem::remove(path);
}

TEST(Compare, SymmetricBernsteinIsGaussian) {
  const auto rows = cli::comparison_rows({5, 5}, cli::GridSpec::parse("0:0.4:9"), TailSide::Upper);
  const double v = 25.0 / (100.0 * 11.0);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.bernstein, std::exp(-row.epsilon * row.epsilon / (2 * v)), 1e-15);
    EXPECT_TRUE(cli::row_violation(row).empty());
  }
}

TEST(Compare, RowViolationDetection) {
  cli::ComparisonRow row{0.01, 0.5, 0.4, 0.9, 0.45};
  EXPECT_FALSE(cli::row_violation(row).empty());
  row = {0.01, 0.1, 0.4, 0.9, 0.3};
  EXPECT_TRUE(cli::row_violation(row).empty());
}

TEST(Compare, RenderCsv) {
  const std::vector<cli::ComparisonRow> rows{{0.0, 0.5, 1.0, 1.0, 1.0}, {0.25, 0.125, 0.5, 0.75, 0.25}};
  EXPECT_EQ(cli::render_csv(rows), std::string(cli::kCsvHeader) + "\n0,0.5,1,1,1\n0.25,0.125,0.5,0.75,0.25\n");
}

TEST(Verify, QuickPassesAndFaultIsCaught) {
  auto r = run({"verify", "--level", "quick"});
  EXPECT_EQ(r.code, cli::kSuccess) << r.out << r.err;
  r = run({"verify", "--level", "quick", "--inject-fault", "sign-c"});
  EXPECT_EQ(r.code, cli::kVerificationFailed);
  EXPECT_NE((r.out + r.err).find("SIGN"), std::string::npos);
}

}  // namespace
