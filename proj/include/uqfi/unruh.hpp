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

#include <array>
#include <optional>
#include <vector>

#include "linalg.hpp"
#include "types.hpp"

// Input state cos(theta)|00> + e^{i phi} sin(theta)|11> and its images under the
// bosonic and fermionic Unruh channels acting on the second qubit. Two-qubit
// bases are ordered |00>, |01>, |10>, |11> (first factor major).

namespace uqfi::unruh {

struct InputParams
{
  double theta = 0; // [0, pi/2]
  double phi = 0;   // [0, 2 pi)
};

void validate(InputParams const &p);

constexpr double kDiracRMax = 0.78539816339744830962; // pi/4, excluded
constexpr double kTailTolerance = 1e-12;

ComplexVector initial_state(InputParams const &p);
ComplexVector initial_state_derivative(InputParams const &p, Parameter which);

/// Acceleration parameter from the dimensionless frequency/acceleration ratio
/// x = Omega (scalar) or omega c / a (Dirac). x = +inf is the inertial limit.
double r_from_acceleration(Field field, double x);

/// Two-mode vacuum amplitudes c_n on |n>_I |n>_II.
/// Scalar: tanh^n r / cosh r for n = 0..n_max. Dirac: (cos r, sin r).
std::vector<double> bogoliubov_vacuum(Field field, double r, std::optional<long> n_max = std::nullopt);

/// Smallest n_max whose neglected block mass 1 - sum_{n<=n_max} P_n is at most
/// tail_tol for every theta.
long scalar_truncation(double r, double tail_tol = kTailTolerance);

/// Bound on 1 - sum_{n<=n_max} P_n, uniform in theta.
double scalar_tail_bound(double r, long n_max);

struct ScalarBlock
{
  long                         n = 0;
  double                       weight = 0;   // P_n
  double                       theta_n = 0;  // Theta_n = P_n cosh^2 r / tanh^{2n} r
  double                       lambda_n = 0; // sin^2 theta + (n+1) cos^2 theta / cosh^2 r
  std::array<Complex<double>, 2> amplitudes;  // Phi_n on (|0,n>, |1,n+1>)
  double                       dweight_dtheta = 0;
  double                       dtheta_n = 0; // d Theta_n / d theta
  std::array<Complex<double>, 2> damp_dtheta;
  std::array<Complex<double>, 2> damp_dphi;
};

struct ScalarBlockState
{
  InputParams              input;
  double                   r = 0;
  long                     n_max = 0;
  double                   tail_bound = 0;
  std::vector<ScalarBlock> blocks;

  Index dim() const { return 2 * (n_max + 2); }
};

/// Bosonic channel output as a direct sum of weighted pure qubits. n_max is
/// sized automatically when omitted; an explicit n_max whose tail bound
/// exceeds 1e-12 raises TruncationError.
ScalarBlockState scalar_channel(InputParams const &p, double r, std::optional<long> n_max = std::nullopt);

// Basis positions of |a, m> in the embedding used by the dense scalar matrices.
Index scalar_basis_index(long n_max, int a, long m);

/// Dense embedding of the block state on {|a, m>: a in {0,1}, m in 0..n_max+1}.
DensityOperator<double> scalar_state_as_matrix(ScalarBlockState const &s);
ComplexMatrix           scalar_state_derivative_matrix(ScalarBlockState const &s, Parameter which);

struct ScalarMatrixBlocks
{
  BlockDiagonal<double> rho;
  BlockDiagonal<double> drho;
};

/// Block-diagonal rho_AR and its analytic derivative assembled entry by entry
/// from the unnormalised blocks rho_n on {|0,n>, |1,n+1>}, without going
/// through P_n or Phi_n.
ScalarMatrixBlocks scalar_matrix_blocks(InputParams const &p, double r, long n_max, Parameter which);

DensityOperator<double> dirac_channel(InputParams const &p, double r);
ComplexMatrix           dirac_channel_matrix(InputParams const &p, double r);
ComplexMatrix           dirac_channel_derivative(InputParams const &p, double r, Parameter which);

struct DiracEigensystem
{
  double        lambda1 = 0, lambda2 = 0;
  ComplexVector phi1, phi2;
  double        dlambda1 = 0, dlambda2 = 0; // with respect to the requested parameter
  ComplexVector dphi1, dphi2;
};

/// Nonzero eigenpairs of the Dirac output with their derivatives with respect
/// to `which`. Requires theta strictly inside (0, pi/2), where cot theta is finite.
DiracEigensystem dirac_eigensystem(InputParams const &p, double r, Parameter which = Parameter::theta);

/// Reduced state of a two-party operator of dimension 2 * d, keeping the first
/// (A) or second (R) party.
DensityOperator<double> reduced_state(DensityOperator<double> const &rho, Keep keep);
ComplexMatrix           reduced_derivative(ComplexMatrix const &drho, Keep keep);

} // namespace uqfi::unruh
