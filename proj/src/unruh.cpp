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

#include "uqfi/unruh.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uqfi/errors.hpp"

namespace uqfi::unruh {

namespace {

using C = Complex<double>;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr long   kMaxBlocks = 20'000'000;

void validate_scalar_r(double r)
{
  if (!(r >= 0) || !std::isfinite(r)) { throw DomainError("scalar channel: r must be finite and >= 0, got " + std::to_string(r)); }
}

void validate_dirac_r(double r)
{
  if (!(r >= 0 && r < kDiracRMax)) { throw DomainError("dirac channel: r must lie in [0, pi/4), got " + std::to_string(r)); }
}

C expi(double x) { return {std::cos(x), std::sin(x)}; }

} // namespace

void validate(InputParams const &p)
{
  if (!(p.theta >= 0 && p.theta <= kHalfPi)) { throw DomainError("theta must lie in [0, pi/2], got " + std::to_string(p.theta)); }
  if (!(p.phi >= 0 && p.phi < kTwoPi)) { throw DomainError("phi must lie in [0, 2 pi), got " + std::to_string(p.phi)); }
}

ComplexVector initial_state(InputParams const &p)
{
  validate(p);
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = std::cos(p.theta);
  psi[3] = expi(p.phi) * std::sin(p.theta);
  return psi;
}

ComplexVector initial_state_derivative(InputParams const &p, Parameter which)
{
  validate(p);
  ComplexVector d = ComplexVector::Zero(4);
  if (which == Parameter::theta) {
    d[0] = -std::sin(p.theta);
    d[3] = expi(p.phi) * std::cos(p.theta);
  } else {
    d[3] = C(0, 1) * expi(p.phi) * std::sin(p.theta);
  }
  return d;
}

double r_from_acceleration(Field field, double x)
{
  if (std::isnan(x) || x <= 0) { throw DomainError("r_from_acceleration: infinite acceleration (frequency/acceleration ratio must be > 0)"); }
  if (std::isinf(x)) { return 0.0; }
  double const e = std::exp(-std::numbers::pi * x);
  // scalar: tanh^2 r = e^{-2 pi x}; dirac: tan^2 r = e^{-2 pi x}
  return field == Field::scalar ? std::atanh(e) : std::atan(e);
}

double scalar_tail_bound(double r, long n_max)
{
  validate_scalar_r(r);
  double const t = std::pow(std::tanh(r), 2);
  if (t == 0) { return 0.0; }
  double const n = double(n_max);
  // sum_{n > N} P_n <= tail of sum (n+1) t^n / cosh^4 r = t^{N+1} ((N+2) - (N+1) t)
  return std::exp((n + 1) * std::log(t)) * ((n + 2) - (n + 1) * t);
}

long scalar_truncation(double r, double tail_tol)
{
  validate_scalar_r(r);
  if (!(tail_tol > 0)) { throw DomainError("scalar_truncation: tail tolerance must be positive"); }
  if (scalar_tail_bound(r, 0) <= tail_tol) { return 0; }
  long hi = 1;
  while (scalar_tail_bound(r, hi) > tail_tol) {
    if (hi > (1L << 40)) { throw TruncationError("scalar_truncation: tail does not reach tolerance", hi); }
    hi *= 2;
  }
  long lo = hi / 2; // bound(lo) > tol
  while (hi - lo > 1) {
    long const mid = lo + (hi - lo) / 2;
    (scalar_tail_bound(r, mid) <= tail_tol ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> bogoliubov_vacuum(Field field, double r, std::optional<long> n_max)
{
  if (field == Field::dirac) {
    validate_dirac_r(r);
    return {std::cos(r), std::sin(r)};
  }
  validate_scalar_r(r);
  long const          n = n_max.value_or(scalar_truncation(r));
  double const        th = std::tanh(r);
  std::vector<double> amps(static_cast<std::size_t>(n + 1));
  double              a = 1.0 / std::cosh(r);
  for (auto &x : amps) {
    x = a;
    a *= th;
  }
  return amps;
}

ScalarBlockState scalar_channel(InputParams const &p, double r, std::optional<long> n_max)
{
  validate(p);
  validate_scalar_r(r);
  long const n = n_max ? *n_max : scalar_truncation(r);
  if (n < 0) { throw DomainError("scalar_channel: n_max must be >= 0"); }
  double const tail = scalar_tail_bound(r, n);
  if (tail > kTailTolerance) { throw TruncationError("scalar_channel: truncation tail " + std::to_string(tail) + " exceeds 1e-12", scalar_truncation(r)); }
  if (n > kMaxBlocks) { throw TruncationError("scalar_channel: too many blocks for r=" + std::to_string(r), n); }

  ScalarBlockState s;
  s.input = p;
  s.r = r;
  s.n_max = n;
  s.tail_bound = tail;
  s.blocks.reserve(static_cast<std::size_t>(n + 1));

  double const ch2 = std::pow(std::cosh(r), 2);
  double const ch = std::cosh(r);
  double const t = std::pow(std::tanh(r), 2);
  double const ct = std::cos(p.theta), st = std::sin(p.theta), s2t = std::sin(2 * p.theta);
  C const      ph = expi(p.phi);

  double w = 1.0 / ch2; // tanh^{2n} r / cosh^2 r
  for (long k = 0; k <= n; ++k) {
    ScalarBlock b;
    double const beta = std::sqrt(double(k + 1)) / ch;
    b.n = k;
    b.theta_n = ct * ct + double(k + 1) * st * st / ch2;
    b.lambda_n = st * st + double(k + 1) * ct * ct / ch2;
    b.weight = w * b.theta_n;
    b.dtheta_n = s2t * (double(k + 1) / ch2 - 1.0);
    b.dweight_dtheta = w * b.dtheta_n;

    double const root = std::sqrt(b.theta_n);
    C const      u0 = ct, u1 = ph * beta * st;
    b.amplitudes = {u0 / root, u1 / root};
    // d sqrt(Theta_n) = d Theta_n / (2 sqrt(Theta_n))
    double const droot = b.dtheta_n / (2 * root);
    C const      du0 = -st, du1 = ph * beta * ct;
    b.damp_dtheta = {du0 / root - u0 * droot / b.theta_n, du1 / root - u1 * droot / b.theta_n};
    b.damp_dphi = {C(0), C(0, 1) * u1 / root};
    s.blocks.push_back(b);
    w *= t;
  }
  return s;
}

Index scalar_basis_index(long n_max, int a, long m) { return Index(a) * (n_max + 2) + m; }

DensityOperator<double> scalar_state_as_matrix(ScalarBlockState const &s)
{
  ComplexMatrix m = ComplexMatrix::Zero(s.dim(), s.dim());
  for (auto const &b : s.blocks) {
    Index const idx[2] = {scalar_basis_index(s.n_max, 0, b.n), scalar_basis_index(s.n_max, 1, b.n + 1)};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) { m(idx[i], idx[j]) = b.weight * b.amplitudes[i] * std::conj(b.amplitudes[j]); }
    }
  }
  return DensityOperator<double>(std::move(m));
}

ComplexMatrix scalar_state_derivative_matrix(ScalarBlockState const &s, Parameter which)
{
  ComplexMatrix m = ComplexMatrix::Zero(s.dim(), s.dim());
  for (auto const &b : s.blocks) {
    Index const idx[2] = {scalar_basis_index(s.n_max, 0, b.n), scalar_basis_index(s.n_max, 1, b.n + 1)};
    auto const &damp = which == Parameter::theta ? b.damp_dtheta : b.damp_dphi;
    double const dw = which == Parameter::theta ? b.dweight_dtheta : 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        m(idx[i], idx[j]) = dw * b.amplitudes[i] * std::conj(b.amplitudes[j]) +
                            b.weight * (damp[i] * std::conj(b.amplitudes[j]) + b.amplitudes[i] * std::conj(damp[j]));
      }
    }
  }
  return m;
}

ScalarMatrixBlocks scalar_matrix_blocks(InputParams const &p, double r, long n_max, Parameter which)
{
  validate(p);
  validate_scalar_r(r);
  if (n_max < 0) { throw DomainError("scalar_matrix_blocks: n_max must be >= 0"); }
  double const ch = std::cosh(r), ch2 = ch * ch;
  double const t = std::pow(std::tanh(r), 2);
  double const ct = std::cos(p.theta), st = std::sin(p.theta);
  double const s2t = std::sin(2 * p.theta), c2t = std::cos(2 * p.theta);
  C const      eph = expi(-p.phi);

  ScalarMatrixBlocks out;
  out.rho.dim = out.drho.dim = 2 * (n_max + 2);
  double w = 1.0 / ch2;
  for (long n = 0; n <= n_max; ++n) {
    double const k = double(n + 1);
    std::vector<Index> idx = {scalar_basis_index(n_max, 0, n), scalar_basis_index(n_max, 1, n + 1)};
    // rho_n = cos^2 |0,n><0,n| + (n+1) sin^2 / cosh^2 |1,n+1><1,n+1|
    //       + sqrt(n+1) sin cos / cosh (e^{-i phi} |0,n><1,n+1| + h.c.)
    C const off = std::sqrt(k) * st * ct / ch * eph;
    ComplexMatrix rho(2, 2);
    rho << w * ct * ct, w * off, w * std::conj(off), w * k * st * st / ch2;

    ComplexMatrix d(2, 2);
    if (which == Parameter::theta) {
      C const doff = std::sqrt(k) * c2t / ch * eph;
      d << -w * s2t, w * doff, w * std::conj(doff), w * k * s2t / ch2;
    } else {
      C const doff = C(0, -1) * off;
      d << 0.0, w * doff, w * std::conj(doff), 0.0;
    }
    out.rho.blocks.push_back({idx, std::move(rho)});
    out.drho.blocks.push_back({std::move(idx), std::move(d)});
    w *= t;
  }
  return out;
}

ComplexMatrix dirac_channel_matrix(InputParams const &p, double r)
{
  validate(p);
  validate_dirac_r(r);
  double const  c = std::cos(r), s = std::sin(r);
  double const  ct = std::cos(p.theta), st = std::sin(p.theta);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = c * c * ct * ct;
  m(1, 1) = s * s * ct * ct;
  m(3, 3) = st * st;
  m(0, 3) = 0.5 * c * std::sin(2 * p.theta) * expi(-p.phi);
  m(3, 0) = std::conj(m(0, 3));
  return m;
}

DensityOperator<double> dirac_channel(InputParams const &p, double r) { return DensityOperator<double>(dirac_channel_matrix(p, r)); }

ComplexMatrix dirac_channel_derivative(InputParams const &p, double r, Parameter which)
{
  validate(p);
  validate_dirac_r(r);
  double const  c = std::cos(r), s = std::sin(r);
  double const  s2t = std::sin(2 * p.theta);
  ComplexMatrix d = ComplexMatrix::Zero(4, 4);
  if (which == Parameter::theta) {
    d(0, 0) = -c * c * s2t;
    d(1, 1) = -s * s * s2t;
    d(3, 3) = s2t;
    d(0, 3) = c * std::cos(2 * p.theta) * expi(-p.phi);
  } else {
    d(0, 3) = C(0, -1) * 0.5 * c * s2t * expi(-p.phi);
  }
  d(3, 0) = std::conj(d(0, 3));
  return d;
}

DiracEigensystem dirac_eigensystem(InputParams const &p, double r, Parameter which)
{
  validate(p);
  validate_dirac_r(r);
  if (!(p.theta > 0 && p.theta < kHalfPi)) {
    throw DomainError("dirac_eigensystem: theta must lie strictly inside (0, pi/2); use the matrix route at the endpoints");
  }
  double const c = std::cos(r), s2 = std::pow(std::sin(r), 2);
  double const ct = std::cos(p.theta), st = std::sin(p.theta);
  C const      eph = expi(-p.phi);

  DiracEigensystem e;
  e.lambda1 = 1 - s2 * ct * ct;
  e.lambda2 = s2 * ct * ct;

  // (e^{-i phi} cos r cot theta, 0, 0, 1) / sqrt(1 + cos^2 r cot^2 theta), scaled by sin theta.
  double const  root = std::sqrt(e.lambda1);
  ComplexVector v = ComplexVector::Zero(4);
  v[0] = eph * c * ct;
  v[3] = st;
  e.phi1 = v / root;
  e.phi2 = ComplexVector::Zero(4);
  e.phi2[1] = 1.0;

  e.dphi2 = ComplexVector::Zero(4);
  if (which == Parameter::theta) {
    e.dlambda1 = s2 * std::sin(2 * p.theta);
    e.dlambda2 = -e.dlambda1;
    ComplexVector dv = ComplexVector::Zero(4);
    dv[0] = -eph * c * st;
    dv[3] = ct;
    e.dphi1 = dv / root - v * (e.dlambda1 / (2 * e.lambda1 * root));
  } else {
    e.dphi1 = ComplexVector::Zero(4);
    e.dphi1[0] = C(0, -1) * eph * c * ct / root;
  }
  return e;
}

DensityOperator<double> reduced_state(DensityOperator<double> const &rho, Keep keep)
{
  if (rho.dim() % 2 != 0) { throw DomainError("reduced_state: dimension must be 2 * d"); }
  return partial_trace(rho, 2, rho.dim() / 2, keep);
}

ComplexMatrix reduced_derivative(ComplexMatrix const &drho, Keep keep)
{
  if (drho.rows() % 2 != 0) { throw DomainError("reduced_derivative: dimension must be 2 * d"); }
  return partial_trace<double>(drho, 2, drho.rows() / 2, keep);
}

} // namespace uqfi::unruh
