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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace uqfi {

// Rising factorial (q)_n = q (q+1) ... (q+n-1), with (q)_0 = 1.
template <typename Real> Real pochhammer(Real q, unsigned n)
{
  Real out = Real(1);
  for (unsigned k = 0; k < n; ++k) { out *= q + Real(k); }
  return out;
}

template <typename Real> struct Hyp2F1Params
{
  Real a, b, c, z;
  Real tol = Real(1e-14);
  long max_terms = 100000;
};

template <typename Real> struct Hyp2F1Result
{
  Real value;
  long terms;      // number of series terms summed
  Real tail_bound; // bound on the neglected tail
};

/// Gauss hypergeometric 2F1(a, b; c; z) by its power series, |z| < 1.
///
/// Terms follow t_{n+1} = t_n (a+n)(b+n) z / ((c+n)(n+1)), so large b and c
/// never form explicit Pochhammer products. The ratio factors (a+m)/(m+1) and
/// (b+m)/(c+m) are monotone in m once all shifted parameters are positive, so
/// each is bounded over the tail by the larger of its next value and its limit
/// 1. Summation stops when the resulting geometric bound on the tail drops
/// below tol.
template <typename Real> Hyp2F1Result<Real> hyp2f1(Hyp2F1Params<Real> const &p)
{
  if (!(std::abs(p.z) < Real(1))) { throw DomainError("hyp2f1: |z| must be < 1, got z=" + std::to_string(double(p.z))); }
  if (p.c <= Real(0) && p.c == std::floor(p.c)) { throw DomainError("hyp2f1: c must not be zero or a negative integer"); }
  if (!(p.tol > Real(0)) || p.max_terms <= 0) { throw DomainError("hyp2f1: tol and max_terms must be positive"); }

  auto ratio = [&](long n) {
    Real const nn = Real(n);
    return (p.a + nn) * (p.b + nn) * p.z / ((p.c + nn) * (nn + Real(1)));
  };
  // sup over m >= n of |ratio(m)|, valid once a+n, b+n, c+n are all positive
  auto ratio_bound = [&](long n) {
    Real const nn = Real(n);
    return std::abs(p.z) * std::max(Real(1), (p.a + nn) / (nn + Real(1))) * std::max(Real(1), (p.b + nn) / (p.c + nn));
  };
  Real const shift = -std::min({p.a, p.b, p.c});

  Real term = Real(1);
  Real sum = Real(1);
  for (long n = 0; n < p.max_terms; ++n) {
    Real const next = term * ratio(n);
    if (next == Real(0)) { return {sum, n + 1, Real(0)}; }
    if (Real(n + 1) > shift) {
      Real const rho = ratio_bound(n + 1);
      if (rho < Real(1)) {
        Real const tail = std::abs(next) / (Real(1) - rho);
        if (tail <= p.tol) { return {sum + next, n + 2, tail}; }
      }
    }
    sum += next;
    term = next;
  }
  throw ConvergenceError("hyp2f1: series did not converge", p.max_terms, static_cast<double>(std::abs(term)));
}

/// e^x E1(x) for x > 0, where E1 is the exponential integral. Stays finite
/// where e^x and E1(x) separately overflow and underflow.
template <typename Real> Real expint_e1_scaled(Real x)
{
  if (!(x > Real(0))) { throw DomainError("expint_e1_scaled: x must be > 0"); }
  if (x <= Real(1)) { return -std::exp(x) * std::expint(-x); }
  // modified Lentz evaluation of the continued fraction 1/(x+1- 1/(x+3- 4/(x+5- ...)))
  Real const tiny = std::numeric_limits<Real>::min() / std::numeric_limits<Real>::epsilon();
  Real       b = x + Real(1);
  Real       c = Real(1) / tiny;
  Real       d = Real(1) / b;
  Real       h = d;
  for (int i = 1; i < 1000; ++i) {
    Real const an = -Real(i) * Real(i);
    b += Real(2);
    d = Real(1) / (an * d + b);
    c = b + an / c;
    Real const del = c * d;
    h *= del;
    if (std::abs(del - Real(1)) <= std::numeric_limits<Real>::epsilon()) { return h; }
  }
  throw ConvergenceError("expint_e1_scaled: continued fraction did not converge", 1000, double(x));
}

} // namespace uqfi
