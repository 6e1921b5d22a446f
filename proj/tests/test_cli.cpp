// Copyright 2026 The uqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

using namespace uqfi::cli;
using std::numbers::pi;

namespace {

struct Result
{
  int         code;
  std::string out, err;
};

Result invoke(std::vector<std::string> const &args)
{
  std::ostringstream out, err;
  int const          code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(std::string const &text, std::string const &key)
{
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(key + "=", 0) == 0) { return line.substr(key.size() + 1); }
  }
  return {};
}

std::filesystem::path temp_path(std::string const &name) { return std::filesystem::temp_directory_path() / ("uqfi_test_" + name); }

} // namespace

TEST(ParseAngle, Forms)
{
  EXPECT_DOUBLE_EQ(parse_angle("0.7854"), 0.7854);
  EXPECT_DOUBLE_EQ(parse_angle("pi/4"), pi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("3pi/20"), 3 * pi / 20);
  EXPECT_DOUBLE_EQ(parse_angle("3*pi/20"), 3 * pi / 20);
  EXPECT_DOUBLE_EQ(parse_angle("pi/4-1e-6"), pi / 4 - 1e-6);
  EXPECT_DOUBLE_EQ(parse_angle("2pi"), 2 * pi);
  EXPECT_DOUBLE_EQ(parse_angle("-pi/2"), -pi / 2);
  EXPECT_DOUBLE_EQ(parse_angle("1/3"), 1.0 / 3);
  for (char const *bad : {"", "abc", "pi/", "pi/0", "3 4", "pi pi", "1e", "*pi"}) { EXPECT_ANY_THROW(parse_angle(bad)) << bad; }
}

TEST(ParseGrid, Points)
{
  auto const g = parse_grid("0:pi/2:5");
  auto const p = g.points();
  ASSERT_EQ(p.size(), 5u);
  EXPECT_EQ(p.front(), 0.0);
  EXPECT_EQ(p.back(), pi / 2);
  EXPECT_NEAR(p[2], pi / 4, 1e-15);
  for (char const *bad : {"0:1", "0:1:1", "1:0:5", "0:1:x", "0:1:5:6", "0:1:2.5"}) { EXPECT_ANY_THROW(parse_grid(bad)) << bad; }
}

TEST(Compute, DiracSpotValue)
{
  auto const r = invoke({"compute", "--field", "dirac", "--theta", "pi/4", "--r", "pi/6", "--param", "phi"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NEAR(std::stod(value_of(r.out, "closed_form")), 6.0 / 7, 1e-12);
  EXPECT_NEAR(std::stod(value_of(r.out, "spectral")), 6.0 / 7, 1e-10);
  EXPECT_NEAR(std::stod(value_of(r.out, "support_total")), 6.0 / 7, 1e-10);
}

TEST(Compute, ScalarAndEndpoint)
{
  auto const s = invoke({"compute", "--field", "scalar", "--theta", "pi/4", "--r", "1"});
  EXPECT_EQ(s.code, kOk);
  EXPECT_NEAR(std::stod(value_of(s.out, "closed_form")), 0.8939201365755086, 1e-11);
  EXPECT_FALSE(value_of(s.out, "n_max").empty());

  auto const t = invoke({"compute", "--theta", "pi/2", "--r", "0.3", "--param", "phi"});
  EXPECT_EQ(t.code, kOk);
  EXPECT_NE(t.out.find("breakdown=unavailable"), std::string::npos);

  // pure at theta = pi/2 but rank 2 nearby: the routes disagree by 4 sin^2 r
  auto const u = invoke({"compute", "--theta", "pi/2", "--r", "0.3", "--param", "theta"});
  EXPECT_EQ(u.code, kCheckFailed);
  EXPECT_NEAR(std::stod(value_of(u.out, "abs_diff")), 4 * std::sin(0.3) * std::sin(0.3), 1e-9);
  EXPECT_FALSE(value_of(u.out, "note").empty());
}

TEST(ExitCodes, UsageErrors)
{
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"compute", "--bogus"}).code, kUsage);
  EXPECT_EQ(invoke({"compute", "--theta", "2"}).code, kUsage);
  EXPECT_EQ(invoke({"compute", "--r", "pi/4"}).code, kUsage);
  EXPECT_EQ(invoke({"compute", "--field", "scalar", "--r", "-1"}).code, kUsage);
  EXPECT_EQ(invoke({"compute", "--field", "boson"}).code, kUsage);
  EXPECT_EQ(invoke({"fig2", "--field", "scalar"}).code, kUsage);
  EXPECT_EQ(invoke({"fig1a", "--field", "dirac"}).code, kUsage);
  EXPECT_EQ(invoke({"fig1a", "--field", "scalar", "--grid-r", "0:400:2"}).code, kUsage);
  EXPECT_EQ(invoke({"fig2", "--grid-r", "0:1:5"}).code, kUsage);
  EXPECT_EQ(invoke({"estimate", "--theta", "0"}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(ExitCodes, UnwritableOutput)
{
  auto const r = invoke({"fig2", "--grid-theta", "0.1:1:3", "--grid-r", "0:0.5:3", "--out", "/nonexistent-dir/out.csv"});
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.err.find("/nonexistent-dir/out.csv"), std::string::npos);
}

TEST(Figures, CsvDeterministicWithMetadata)
{
  std::vector<std::string> const args{"fig1a", "--field", "scalar", "--grid-r", "0:2:9"};
  auto const                     a = invoke(args);
  auto const                     b = invoke(args);
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# figure=fig1a\n", 0), 0u);
  EXPECT_NE(a.out.find("# grid_r=0:2:9\n"), std::string::npos);
  EXPECT_NE(a.out.find("\nr,F_phi(theta=pi/20),F_phi(theta=pi/10),F_phi(theta=3pi/20),F_phi(theta=pi/5),F_phi(theta=pi/4)\n"), std::string::npos);
  auto const        start = a.out.find("\n0,") + 1;
  std::string const row0 = a.out.substr(start, a.out.find('\n', start) - start);
  EXPECT_TRUE(row0.ends_with(",1")) << row0; // sin^2(2 theta) at theta = pi/4
}

TEST(Figures, Fig2LongFormatToFile)
{
  auto const path = temp_path("fig2.csv");
  auto const r = invoke({"fig2", "--grid-theta", "0:pi/2:3", "--grid-r", "0:pi/6:2", "--out", path.string()});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string   line;
  int           rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "theta,r,F_phi") { continue; }
    ++rows;
  }
  EXPECT_EQ(rows, 6);
  std::filesystem::remove(path);
}

TEST(Config, FileDefaultsAndFlagOverride)
{
  auto const path = temp_path("config.ini");
  {
    std::ofstream f(path);
    f << "field=dirac\ntheta=pi/4\nr=pi/6\nparam=theta\n";
  }
  auto const a = invoke({"compute", "--config", path.string()});
  EXPECT_EQ(value_of(a.out, "param"), "theta");
  EXPECT_NEAR(std::stod(value_of(a.out, "closed_form")), 4.0, 1e-12);
  auto const b = invoke({"compute", "--config", path.string(), "--param", "phi"});
  EXPECT_EQ(value_of(b.out, "param"), "phi");
  EXPECT_NEAR(std::stod(value_of(b.out, "closed_form")), 6.0 / 7, 1e-12);
  std::filesystem::remove(path);
}

TEST(Verify, QuickPassesAndTamperedToleranceFails)
{
  auto const ok = invoke({"verify"});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);
  auto const bad = invoke({"verify", "--tol-scale", "1e-30"});
  EXPECT_EQ(bad.code, kCheckFailed);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--level", "slow"}).code, kUsage);
}

TEST(Estimate, ReportsSeedAndIsReproducible)
{
  std::vector<std::string> const args{"estimate", "--theta", "pi/4", "--r", "0.2", "--samples", "500", "--trials", "50", "--seed", "77"};
  auto const                     a = invoke(args);
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(value_of(a.out, "seed"), "77");
  EXPECT_EQ(a.out, invoke(args).out);
}
