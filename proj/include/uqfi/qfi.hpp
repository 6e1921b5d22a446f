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

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "errors.hpp"
#include "linalg.hpp"

// Quantum Fisher information engines for a single real parameter.

namespace uqfi {

template <typename Real> struct QfiBreakdown
{
  Real total = 0;
  Real classical = 0;   // Fisher information of the spectrum
  Real quantum_avg = 0; // weighted pure-state QFI of the eigenvectors
  Real mixing = 0;      // cross terms between eigenvectors, never positive
};

namespace detail {

template <typename Real> void check_derivative(Matrix<Real> const &drho, Index dim, bool traceless)
{
  if (drho.rows() != dim || drho.cols() != dim) { throw DomainError("derivative dimension does not match the state"); }
  Real const asym = (drho - drho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > Real(1e-10)) { throw DomainError("derivative is not Hermitian (defect " + std::to_string(double(asym)) + ")"); }
  if (traceless && std::abs(drho.trace()) > Real(1e-10)) { throw DomainError("derivative is not traceless"); }
}

// drho expressed in the eigenbasis of rho, with the support condition checked:
// on pairs with p_m + p_n <= eps the derivative must vanish.
template <typename Real> Matrix<Real> derivative_in_eigenbasis(SpectralDecomposition<Real> const &sd, Matrix<Real> const &drho, Real eps)
{
  Matrix<Real> d = sd.eigenvectors.adjoint() * drho * sd.eigenvectors;
  Real const   scale = std::max(Real(1), d.cwiseAbs().maxCoeff());
  for (Index m = 0; m < d.rows(); ++m) {
    for (Index n = 0; n < d.cols(); ++n) {
      if (sd.eigenvalues[m] + sd.eigenvalues[n] <= eps && std::abs(d(m, n)) > Real(1e-8) * scale) {
        throw SupportError("parameter moves the support of rho: derivative element " + std::to_string(double(std::abs(d(m, n)))) +
                           " outside the support; no SLD exists");
      }
    }
  }
  return d;
}

template <typename Real> Real spectral_sum(SpectralDecomposition<Real> const &sd, Matrix<Real> const &drho, Real eps)
{
  Matrix<Real> const d = derivative_in_eigenbasis(sd, drho, eps);
  Real               f = 0;
  for (Index m = 0; m < d.rows(); ++m) {
    for (Index n = 0; n < d.cols(); ++n) {
      Real const s = sd.eigenvalues[m] + sd.eigenvalues[n];
      if (s > eps) { f += Real(2) * std::norm(d(m, n)) / s; }
    }
  }
  return f;
}

} // namespace detail

/// Symmetric logarithmic derivative: the Hermitian L with d(rho) = (rho L + L rho)/2
/// on the support of rho, and zero on pairs of eigenvectors with p_m + p_n <= eps.
template <typename Real> Matrix<Real> sld(DensityOperator<Real> const &rho, Matrix<Real> const &drho, Real eps = Real(1e-12))
{
  detail::check_derivative(drho, rho.dim(), true);
  auto const        &sd = rho.spectrum();
  Matrix<Real> const d = detail::derivative_in_eigenbasis(sd, drho, eps);
  Matrix<Real>       l = Matrix<Real>::Zero(d.rows(), d.cols());
  for (Index m = 0; m < d.rows(); ++m) {
    for (Index n = 0; n < d.cols(); ++n) {
      Real const s = sd.eigenvalues[m] + sd.eigenvalues[n];
      if (s > eps) { l(m, n) = Real(2) * d(m, n) / s; }
    }
  }
  Matrix<Real> out = sd.eigenvectors * l * sd.eigenvectors.adjoint();
  return (out + out.adjoint()) / Real(2);
}

// Tr(rho L^2).
template <typename Real> Real qfi_from_sld(DensityOperator<Real> const &rho, Matrix<Real> const &l)
{
  return (rho.matrix() * l * l).trace().real();
}

/// 2 sum_{m,n} |<psi_m| d(rho) |psi_n>|^2 / (p_m + p_n) over pairs with p_m + p_n > eps.
template <typename Real> Real qfi_spectral(DensityOperator<Real> const &rho, Matrix<Real> const &drho, Real eps = Real(1e-12))
{
  detail::check_derivative(drho, rho.dim(), true);
  return detail::spectral_sum(rho.spectrum(), drho, eps);
}

/// Spectral QFI of a block-diagonal state. Cross-block terms vanish because
/// d(rho) shares the block structure, so the sum runs block by block. The
/// blocks of rho need not have unit trace individually.
template <typename Real> Real qfi_spectral(BlockDiagonal<Real> const &rho, BlockDiagonal<Real> const &drho, Real eps = Real(1e-12))
{
  if (rho.dim != drho.dim || rho.blocks.size() != drho.blocks.size()) { throw DomainError("qfi_spectral: block structures differ"); }
  Real                  f = 0;
  Complex<Real>         dtrace = 0;
  for (std::size_t b = 0; b < rho.blocks.size(); ++b) {
    auto const &rb = rho.blocks[b];
    auto const &db = drho.blocks[b];
    if (rb.indices != db.indices) { throw DomainError("qfi_spectral: block " + std::to_string(b) + " index sets differ"); }
    detail::check_derivative(db.matrix, rb.matrix.rows(), false);
    dtrace += db.matrix.trace();
    auto sd = eig_hermitian(rb.matrix, eps);
    clamp_psd(sd);
    f += detail::spectral_sum(sd, db.matrix, eps);
  }
  if (std::abs(dtrace) > Real(1e-10)) { throw DomainError("qfi_spectral: derivative is not traceless"); }
  return f;
}

/// 4 (<dpsi|dpsi> - |<psi|dpsi>|^2) for a normalised pure state.
template <typename Real> Real qfi_pure(Vector<Real> const &psi, Vector<Real> const &dpsi)
{
  if (psi.size() != dpsi.size()) { throw DomainError("qfi_pure: vector sizes differ"); }
  if (std::abs(psi.norm() - Real(1)) > Real(1e-10)) { throw DomainError("qfi_pure: state is not normalised (norm " + std::to_string(double(psi.norm())) + ")"); }
  return Real(4) * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

/// QFI from the support of rho only: eigenvalues p_i > 0 with derivatives dp_i,
/// orthonormal eigenvectors psi_i with derivatives dpsi_i. Split as
///   classical   = sum (p_i')^2 / p_i
///   quantum_avg = sum p_i * qfi_pure(psi_i, psi_i')
///   mixing      = -sum_{i != j} 8 p_i p_j / (p_i + p_j) |<psi_i|psi_j'>|^2
template <typename Real>
QfiBreakdown<Real> qfi_support(std::span<Real const> p, std::span<Vector<Real> const> psis, std::span<Real const> dp, std::span<Vector<Real> const> dpsis)
{
  std::size_t const m = p.size();
  if (psis.size() != m || dp.size() != m || dpsis.size() != m || m == 0) { throw DomainError("qfi_support: inconsistent support sizes"); }
  Real mass = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(p[i] > Real(0))) { throw DomainError("qfi_support: support weights must be positive"); }
    mass += p[i];
  }
  if (mass > Real(1) + Real(1e-10)) { throw DomainError("qfi_support: support weights exceed unit mass"); }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Complex<Real> const g = psis[i].dot(psis[j]);
      Real const          expect = i == j ? Real(1) : Real(0);
      if (std::abs(g - expect) > Real(1e-10)) { throw DomainError("qfi_support: eigenvectors are not orthonormal"); }
    }
  }

  QfiBreakdown<Real> out;
  for (std::size_t i = 0; i < m; ++i) {
    out.classical += dp[i] * dp[i] / p[i];
    out.quantum_avg += p[i] * qfi_pure(psis[i], dpsis[i]);
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) { continue; }
      out.mixing -= Real(8) * p[i] * p[j] / (p[i] + p[j]) * std::norm(psis[i].dot(dpsis[j]));
    }
  }
  out.total = out.classical + out.quantum_avg + out.mixing;
  return out;
}

/// Root fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), taken as the trace norm
/// of sqrt(rho) sqrt(sigma). Singular values avoid squaring the small
/// eigenvalues into rounding noise.
template <typename Real> Real fidelity(DensityOperator<Real> const &rho, DensityOperator<Real> const &sigma)
{
  if (rho.dim() != sigma.dim()) { throw DomainError("fidelity: dimension mismatch"); }
  Matrix<Real> const                  a = sqrtm_psd(rho.spectrum()) * sqrtm_psd(sigma.spectrum());
  Eigen::JacobiSVD<Matrix<Real>> const svd(a);
  return svd.singularValues().sum();
}

/// sqrt(2 (1 - Tr sqrt(rho^{1/2} sigma rho^{1/2}))).
template <typename Real> Real bures_distance(DensityOperator<Real> const &rho, DensityOperator<Real> const &sigma)
{
  Real const f = fidelity(rho, sigma);
  return std::sqrt(Real(2) * std::max(Real(0), Real(1) - f));
}

/// One-parameter family of states. The derivative comes from drho_at when
/// given, otherwise from a central difference with step fd_step.
template <typename Real> struct ParametrizedState
{
  std::function<DensityOperator<Real>(Real)> rho_at;
  std::function<Matrix<Real>(Real)>          drho_at;
  Real                                       fd_step = Real(1e-6);

  Matrix<Real> derivative(Real lambda) const
  {
    if (drho_at) { return drho_at(lambda); }
    return central_difference(lambda);
  }

  Matrix<Real> central_difference(Real lambda) const
  {
    Matrix<Real> d = (rho_at(lambda + fd_step).matrix() - rho_at(lambda - fd_step).matrix()) / (Real(2) * fd_step);
    return (d + d.adjoint()) / Real(2);
  }
};

template <typename Real> struct BuresQfi
{
  Real  value = 0;
  bool  rank_changed = false; // support dimension differs across the stencil
  Index rank_low = 0, rank_high = 0;
};

/// QFI as 4 d_B^2(rho(l - dl/2), rho(l + dl/2)) / dl^2.
template <typename Real> BuresQfi<Real> qfi_from_bures(ParametrizedState<Real> const &state, Real lambda, Real dlambda = Real(1e-4))
{
  if (!(dlambda > Real(0))) { throw DomainError("qfi_from_bures: step must be positive"); }
  auto const lo = state.rho_at(lambda - dlambda / Real(2));
  auto const hi = state.rho_at(lambda + dlambda / Real(2));
  Real const f = fidelity(lo, hi);
  Real const d2 = Real(2) * std::max(Real(0), Real(1) - f);

  BuresQfi<Real> out;
  out.value = Real(4) * d2 / (dlambda * dlambda);
  out.rank_low = lo.spectrum().rank();
  out.rank_high = hi.spectrum().rank();
  out.rank_changed = out.rank_low != out.rank_high || state.rho_at(lambda).spectrum().rank() != out.rank_low;
  return out;
}

} // namespace uqfi
