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

#include "uqfi/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uqfi/errors.hpp"
#include "uqfi/specfun.hpp"
#include "uqfi/unruh.hpp"

namespace uqfi::closed_forms {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double sq(double x) { return x * x; }

void check_theta(double theta)
{
  if (!(theta >= 0 && theta <= kHalfPi)) { throw DomainError("theta must lie in [0, pi/2], got " + std::to_string(theta)); }
}

void check_scalar_r(double r)
{
  if (!(r >= 0) || !std::isfinite(r)) { throw DomainError("scalar r must be finite and >= 0, got " + std::to_string(r)); }
}

void check_dirac_r(double r)
{
  if (!(r >= 0 && r < unruh::kDiracRMax)) { throw DomainError("dirac r must lie in [0, pi/4), got " + std::to_string(r)); }
}

} // namespace

ThetaPhi inertial_qfi(double theta)
{
  check_theta(theta);
  return {4.0, sq(std::sin(2 * theta))};
}

double scalar_f_theta(double theta, double r)
{
  check_theta(theta);
  check_scalar_r(r);
  return 4.0;
}

ThetaParts scalar_f_theta_parts(double theta, double r, long n_max)
{
  check_theta(theta);
  check_scalar_r(r);
  long const   n_top = n_max < 0 ? unruh::scalar_truncation(r) : n_max;
  double const ch2 = sq(std::cosh(r));
  double const t = sq(std::tanh(r));
  double const c2 = sq(std::cos(theta)), s2 = sq(std::sin(theta)), s2t = std::sin(2 * theta);

  ThetaParts out;
  double     w = 1.0 / ch2;
  for (long n = 0; n <= n_top; ++n) {
    double const k = double(n + 1);
    double const big_theta = c2 + k * s2 / ch2;
    double const big_lambda = s2 + k * c2 / ch2;
    double const dtheta = s2t * (k / ch2 - 1.0);
    double const classical = sq(dtheta) / big_theta;
    out.classical += w * classical;
    out.quantum += w * (4.0 * big_lambda - classical);
    w *= t;
  }
  return out;
}

SeriesValue scalar_f_phi_series(double theta, double r, double tail_tol, long max_terms)
{
  check_theta(theta);
  check_scalar_r(r);
  if (!(tail_tol > 0) || max_terms <= 0) { throw DomainError("scalar_f_phi_series: tail_tol and max_terms must be positive"); }

  double const s2t = sq(std::sin(2 * theta));
  SeriesValue  out;
  if (s2t == 0.0) {
    out.converged = true;
    out.terms = 1;
    return out;
  }

  double const ch2 = sq(std::cosh(r));
  if (!std::isfinite(ch2)) { throw DomainError("scalar_f_phi_series: cosh^2 r overflows, r=" + std::to_string(r)); }
  double const t = sq(std::tanh(r));
  double const c2 = sq(std::cos(theta)), s2 = sq(std::sin(theta));
  double const prefactor = s2t / (ch2 * ch2);
  double const ceiling = ch2 / s2; // sup_n (n+1) / Theta_n

  // (n+1)/Theta_n = (ch2/s2) (1 - kappa/(n+1+kappa)), so the tail from m = M is
  // 4 c2 t^M - 4 c2 cot^2 sum_{m>=M} g(m) with g(x) = t^x / (x+1+kappa).
  // g is completely monotone, which brackets its sum by the trapezoid rule.
  double const kappa = c2 * ch2 / s2;
  double const a = 1 + kappa;
  double const beta = -std::log1p(-1 / ch2); // -ln t
  double const weight = 4 * c2 * c2 / s2;    // 4 c2 cot^2 theta
  auto em_bracket = [&](long m, double tm, double &lo, double &hi) {
    if (t == 0.0) { return false; }
    double const mm = double(m);
    double const x = beta * (mm + a);
    double const integral = tm * expint_e1_scaled(x); // int_M^inf g
    double const gm = tm / (mm + a), gm1 = gm * t * (mm + a) / (mm + 1 + a);
    double const u = 1 / (mm + a), u1 = 1 / (mm + 1 + a);
    double const dg = -gm * (beta + u), dg1 = -gm1 * (beta + u1);
    double const d2g = gm * (sq(beta + u) + sq(u));
    double const r_lo = integral + gm / 2 - dg1 / 12;
    double const r_hi = integral + gm / 2 + (d2g - dg) / 12;
    lo = 4 * c2 * tm - weight * r_hi;
    hi = 4 * c2 * tm - weight * r_lo;
    return std::isfinite(lo) && std::isfinite(hi);
  };

  double sum = 0;
  double tn = 1; // tanh^{2n} r
  long   n = 0;
  double lower = 0, upper = 0;
  for (; n < max_terms; ++n) {
    double const k = double(n + 1);
    sum += k * tn / (c2 + k * s2 / ch2);
    tn *= t;
    if (t == 0.0) {
      lower = upper = prefactor * sum;
      ++n;
      out.converged = true;
      break;
    }
    // tail over m > n: sum t^m (m+1)/Theta_m, bracketed by the first and limiting ratio.
    double const geometric = tn * ch2; // tn / (1 - t)
    double const first = (k + 1) / (c2 + (k + 1) * s2 / ch2);
    lower = prefactor * (sum + first * geometric);
    upper = prefactor * (sum + ceiling * geometric);
    if ((upper - lower) / 2 <= tail_tol) {
      ++n;
      out.converged = true;
      break;
    }
    if (((n + 1) & n) == 0 && n + 1 >= 1024) {
      double lo = 0, hi = 0;
      if (em_bracket(n + 1, tn, lo, hi)) {
        lower = std::max(lower, prefactor * sum + lo);
        upper = std::min(upper, prefactor * sum + hi);
        if ((upper - lower) / 2 <= tail_tol) {
          ++n;
          out.converged = true;
          break;
        }
      }
    }
  }
  out.terms = n;
  out.lower = lower;
  out.upper = upper;
  out.value = (lower + upper) / 2;
  out.half_width = (upper - lower) / 2;
  return out;
}

double scalar_f_phi_hyper(double theta, double r)
{
  check_theta(theta);
  check_scalar_r(r);
  if (!(theta > 0 && theta < kHalfPi) || std::abs(1.0 / std::tan(theta)) > 1e6) {
    throw DomainError("scalar_f_phi_hyper: theta too close to 0 or pi/2 (|cot theta| > 1e6); use scalar_f_phi_series");
  }
  double const sech2 = 1.0 / sq(std::cosh(r));
  double const t = sq(std::tanh(r));
  double const c2 = sq(std::cos(theta)), s2 = sq(std::sin(theta));
  double const kappa = sq(std::cosh(r)) * sq(1.0 / std::tan(theta)); // cosh^2 r cot^2 theta

  double const f1 = hyp2f1<double>({1.0, 1.0 + kappa, 2.0 + kappa, t}).value;
  double const f2 = hyp2f1<double>({2.0, 2.0 + kappa, 3.0 + kappa, t}).value;
  double const numerator = sq(sech2) * sq(std::sin(2 * theta)) * (f1 * (c2 + 2 * sech2 * s2) + f2 * (c2 + sech2 * s2) * t);
  double const denominator = c2 * c2 + 3 * sech2 * s2 * c2 + 2 * sq(sech2) * s2 * s2;
  return numerator / denominator;
}

ThetaParts dirac_f_theta(double theta, double r)
{
  check_theta(theta);
  check_dirac_r(r);
  double const sr2 = sq(std::sin(r));
  double const denom = 1 - sr2 * sq(std::cos(theta));
  return {4 * sr2 * sq(std::sin(theta)) / denom, 4 * sq(std::cos(r)) / denom};
}

double dirac_f_phi(double theta, double r)
{
  check_theta(theta);
  check_dirac_r(r);
  return sq(std::cos(r)) * sq(std::sin(2 * theta)) / (1 - sq(std::sin(r)) * sq(std::cos(theta)));
}

double dirac_f_phi_dr(double theta, double r)
{
  check_theta(theta);
  check_dirac_r(r);
  double const c2 = sq(std::cos(theta)), s2 = sq(std::sin(theta));
  return -4 * std::sin(2 * r) * s2 * s2 * c2 / sq(1 - sq(std::sin(r)) * c2);
}

double dirac_f_phi_limit(double theta)
{
  check_theta(theta);
  return (1 - std::cos(4 * theta)) / (3 - std::cos(2 * theta));
}

SubsystemQfi dirac_subsystem_qfi(double theta, double r)
{
  check_theta(theta);
  check_dirac_r(r);
  double const cr2 = sq(std::cos(r));
  double const denom = 1 - cr2 * sq(std::cos(theta));
  // theta = r = 0 is 0/0; take the continuous extension.
  double const f_r = denom == 0.0 ? 4.0 : 4 * cr2 * sq(std::sin(theta)) / denom;
  return {4.0, f_r, 0.0, 0.0};
}

double delta_f_phi_scalar(double r, double tail_tol)
{
  return scalar_f_phi_series(std::numbers::pi / 3, r, tail_tol).value - scalar_f_phi_series(std::numbers::pi / 6, r, tail_tol).value;
}

} // namespace uqfi::closed_forms
