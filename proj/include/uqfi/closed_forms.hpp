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

#include <utility>

// Analytic QFI expressions for the two-qubit input family under both Unruh
// channels. These are the targets the spectral engines are checked against.

namespace uqfi::closed_forms {

struct ThetaPhi
{
  double f_theta = 0;
  double f_phi = 0;
};

ThetaPhi inertial_qfi(double theta);

struct ThetaParts
{
  double classical = 0;
  double quantum = 0;
  double total() const { return classical + quantum; }
};

/// Scalar F_theta; identically 4.
double scalar_f_theta(double theta, double r);

/// Truncated block sums F_C and F_Q of the scalar F_theta over n = 0..n_max
/// (auto-sized to a 1e-12 tail when n_max < 0).
ThetaParts scalar_f_theta_parts(double theta, double r, long n_max = -1);

struct SeriesValue
{
  double value = 0;      // partial sum plus midpoint tail estimate
  double lower = 0;      // certified bracket around the full sum
  double upper = 0;
  double half_width = 0; // (upper - lower) / 2
  long   terms = 0;
  bool   converged = false; // half_width <= tail_tol
};

/// Scalar F_phi = sin^2(2 theta) / cosh^4 r * sum_n (n+1) tanh^{2n} r / Theta_n.
/// The tail is bracketed two ways: (n+1)/Theta_n increases monotonically towards
/// cosh^2 r / sin^2 theta, and its non-geometric remainder is a completely
/// monotone sequence whose sum the trapezoid rule brackets. Summation stops
/// once the tighter bracket has half-width at most tail_tol, or at max_terms.
SeriesValue scalar_f_phi_series(double theta, double r, double tail_tol = 1e-12, long max_terms = 10'000'000);

/// Hypergeometric closed form of the scalar F_phi. Refuses |cot theta| > 1e6,
/// where the series route should be used instead.
double scalar_f_phi_hyper(double theta, double r);

ThetaParts dirac_f_theta(double theta, double r);
double     dirac_f_phi(double theta, double r);
double     dirac_f_phi_dr(double theta, double r);
double     dirac_f_phi_limit(double theta);

struct SubsystemQfi
{
  double f_theta_a = 0, f_theta_r = 0;
  double f_phi_a = 0, f_phi_r = 0;
};

SubsystemQfi dirac_subsystem_qfi(double theta, double r);

/// F_phi(pi/3, r) - F_phi(pi/6, r) for the scalar channel.
double delta_f_phi_scalar(double r, double tail_tol = 1e-12);

} // namespace uqfi::closed_forms
