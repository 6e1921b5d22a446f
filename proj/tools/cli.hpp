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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uqfi::cli {

enum ExitCode : int
{
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
};

/// Radians from a decimal literal or a rational multiple of pi, optionally
/// offset: "0.7854", "pi/4", "3pi/20", "3*pi/20", "pi/4-1e-6", "2pi".
double parse_angle(std::string_view text);

/// "start:stop:count" with count >= 2; start and stop accept angle syntax.
struct Grid
{
  double      start = 0, stop = 0;
  long        count = 0;
  std::string text;

  std::vector<double> points() const;
};

Grid parse_grid(std::string const &text);

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace uqfi::cli
