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

#include <cstdint>
#include <span>
#include <vector>

#include "linalg.hpp"
#include "unruh.hpp"

// Monte Carlo check that the QFI is attainable: measure in the SLD eigenbasis,
// estimate by maximum likelihood, compare the variance with 1 / (M F).

namespace uqfi::estimation {

/// Projectors onto the eigenspaces of the SLD, coincident eigenvalues merged.
/// The elements sum to the identity.
std::vector<ComplexMatrix> optimal_povm(DensityOperator<double> const &rho, ComplexMatrix const &drho, double eps = 1e-12);

/// sum_k (p_k')^2 / p_k over outcomes with p_k > eps.
double classical_fisher(std::span<double const> probs, std::span<double const> dprobs, double eps = 1e-12);

std::vector<double> outcome_probabilities(std::vector<ComplexMatrix> const &povm, ComplexMatrix const &rho);

struct EstimationRun
{
  Field              field = Field::dirac;
  unruh::InputParams truth;
  double             r = 0;
  Parameter          target = Parameter::phi;
  long               samples = 10000; // M, >= 100
  long               trials = 200;    // T, >= 50
  std::uint64_t      seed = 0;
};

struct EstimationReport
{
  double              qfi = 0;          // at the true point
  double              mean = 0;         // mean estimate over trials
  double              variance = 0;     // unbiased empirical variance of the estimates
  double              crb_ratio = 0;    // variance * M * F
  double              noise_floor = 0;  // 1 - 3 sqrt(2 / (T - 1)): lower edge of the statistical band
  std::uint64_t       seed = 0;
  long                samples = 0, trials = 0;
  std::vector<double> estimates;
};

/// Dense state matrix of the channel output as a function of the target
/// parameter, the other parameter held at its true value.
ComplexMatrix state_at(EstimationRun const &run, double value);

EstimationReport simulate_crb(EstimationRun const &run);

} // namespace uqfi::estimation
