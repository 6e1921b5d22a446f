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

#include "uqfi/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "uqfi/errors.hpp"
#include "uqfi/philox.hpp"
#include "uqfi/qfi.hpp"

namespace uqfi::estimation {

namespace {

constexpr Index kMaxScalarDim = 128;

// Nonzero entries of a POVM element, enough to evaluate Tr(E rho) cheaply.
struct SparseElement
{
  std::vector<Index>           rows, cols;
  std::vector<Complex<double>> values;

  explicit SparseElement(ComplexMatrix const &e)
  {
    for (Index j = 0; j < e.cols(); ++j) {
      for (Index i = 0; i < e.rows(); ++i) {
        if (std::abs(e(i, j)) > 1e-15) {
          rows.push_back(i);
          cols.push_back(j);
          values.push_back(e(i, j));
        }
      }
    }
  }

  double expectation(ComplexMatrix const &rho) const
  {
    Complex<double> acc = 0;
    for (std::size_t k = 0; k < values.size(); ++k) { acc += values[k] * rho(cols[k], rows[k]); }
    return acc.real();
  }
};

unruh::InputParams params_at(EstimationRun const &run, double value)
{
  unruh::InputParams p = run.truth;
  if (run.target == Parameter::theta) {
    p.theta = value;
  } else {
    double const two_pi = 2 * std::numbers::pi;
    p.phi = std::fmod(value, two_pi);
    if (p.phi < 0) { p.phi += two_pi; }
    if (p.phi >= two_pi) { p.phi = 0; }
  }
  return p;
}

ComplexMatrix scalar_matrix(unruh::ScalarBlockState const &s)
{
  ComplexMatrix m = ComplexMatrix::Zero(s.dim(), s.dim());
  for (auto const &b : s.blocks) {
    Index const idx[2] = {unruh::scalar_basis_index(s.n_max, 0, b.n), unruh::scalar_basis_index(s.n_max, 1, b.n + 1)};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) { m(idx[i], idx[j]) = b.weight * b.amplitudes[i] * std::conj(b.amplitudes[j]); }
    }
  }
  return m;
}

ComplexMatrix derivative_at(EstimationRun const &run)
{
  if (run.field == Field::dirac) { return unruh::dirac_channel_derivative(run.truth, run.r, run.target); }
  return unruh::scalar_state_derivative_matrix(unruh::scalar_channel(run.truth, run.r), run.target);
}

template <typename F> double golden_section_max(F const &f, double lo, double hi)
{
  double const inv_phi = (std::sqrt(5.0) - 1) / 2;
  double       a = lo, b = hi;
  double       x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double       f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-10 * (1 + std::abs(a)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return (a + b) / 2;
}

} // namespace

std::vector<ComplexMatrix> optimal_povm(DensityOperator<double> const &rho, ComplexMatrix const &drho, double eps)
{
  ComplexMatrix const l = sld(rho, drho, eps);
  auto const          sd = eig_hermitian(l);
  double const        scale = std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());

  std::vector<ComplexMatrix> povm;
  Index                      start = 0;
  for (Index k = 1; k <= sd.dim(); ++k) {
    if (k < sd.dim() && std::abs(sd.eigenvalues[k] - sd.eigenvalues[k - 1]) <= 1e-9 * scale) { continue; }
    auto const    vecs = sd.eigenvectors.middleCols(start, k - start);
    ComplexMatrix e = vecs * vecs.adjoint();
    povm.push_back((e + e.adjoint()) / 2.0);
    start = k;
  }
  return povm;
}

double classical_fisher(std::span<double const> probs, std::span<double const> dprobs, double eps)
{
  if (probs.size() != dprobs.size()) { throw DomainError("classical_fisher: size mismatch"); }
  double f = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > eps) { f += dprobs[k] * dprobs[k] / probs[k]; }
  }
  return f;
}

std::vector<double> outcome_probabilities(std::vector<ComplexMatrix> const &povm, ComplexMatrix const &rho)
{
  std::vector<double> p;
  p.reserve(povm.size());
  for (auto const &e : povm) { p.push_back((e * rho).trace().real()); }
  return p;
}

ComplexMatrix state_at(EstimationRun const &run, double value)
{
  auto const p = params_at(run, value);
  if (run.field == Field::dirac) { return unruh::dirac_channel_matrix(p, run.r); }
  long const n_max = unruh::scalar_truncation(run.r);
  return scalar_matrix(unruh::scalar_channel(p, run.r, n_max));
}

EstimationReport simulate_crb(EstimationRun const &run)
{
  if (run.samples < 100) { throw DomainError("simulate_crb: samples must be >= 100"); }
  if (run.trials < 50) { throw DomainError("simulate_crb: trials must be >= 50"); }
  unruh::validate(run.truth);
  if (run.field == Field::scalar && 2 * (unruh::scalar_truncation(run.r) + 2) > kMaxScalarDim) {
    throw DomainError("simulate_crb: scalar state at r=" + std::to_string(run.r) + " exceeds the dense estimation limit of dimension 128");
  }

  double const        truth = run.target == Parameter::theta ? run.truth.theta : run.truth.phi;
  DensityOperator<double> const rho0(state_at(run, truth));
  ComplexMatrix const drho0 = derivative_at(run);
  double const        qfi = qfi_spectral(rho0, drho0);
  if (!(qfi > 1e-12)) { throw DomainError("simulate_crb: QFI vanishes at the true point; the parameter is not estimable"); }

  auto const povm = optimal_povm(rho0, drho0);
  auto const p0 = outcome_probabilities(povm, rho0.matrix());
  auto const dp0 = outcome_probabilities(povm, drho0);
  if (!(classical_fisher(p0, dp0) > 1e-12)) { throw DomainError("simulate_crb: measurement outcome distribution carries no information"); }

  std::vector<SparseElement> elements;
  elements.reserve(povm.size());
  for (auto const &e : povm) { elements.emplace_back(e); }

  std::vector<double> cumulative(p0.size());
  double              acc = 0;
  for (std::size_t k = 0; k < p0.size(); ++k) {
    acc += std::max(0.0, p0[k]);
    cumulative[k] = acc;
  }

  double const width = 10.0 / std::sqrt(double(run.samples) * qfi);
  double       lo = truth - width, hi = truth + width;
  if (run.target == Parameter::theta) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, std::numbers::pi / 2);
  } else {
    lo = std::max(lo, truth - std::numbers::pi / 2);
    hi = std::min(hi, truth + std::numbers::pi / 2);
  }

  EstimationReport rep;
  rep.qfi = qfi;
  rep.seed = run.seed;
  rep.samples = run.samples;
  rep.trials = run.trials;
  rep.estimates.reserve(static_cast<std::size_t>(run.trials));

  std::vector<long> counts(p0.size());
  for (long trial = 0; trial < run.trials; ++trial) {
    UniformStream rng(run.seed, static_cast<std::uint64_t>(trial));
    std::fill(counts.begin(), counts.end(), 0L);
    for (long s = 0; s < run.samples; ++s) {
      double const u = rng.next() * acc;
      auto const   it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      ++counts[std::min<std::size_t>(std::size_t(it - cumulative.begin()), counts.size() - 1)];
    }
    auto const loglik = [&](double value) {
      ComplexMatrix const rho = state_at(run, value);
      double              ll = 0;
      for (std::size_t k = 0; k < elements.size(); ++k) {
        if (counts[k] == 0) { continue; }
        ll += double(counts[k]) * std::log(std::max(elements[k].expectation(rho), std::numeric_limits<double>::min()));
      }
      return ll;
    };
    rep.estimates.push_back(golden_section_max(loglik, lo, hi));
  }

  double sum = 0;
  for (double e : rep.estimates) { sum += e; }
  rep.mean = sum / double(run.trials);
  double ss = 0;
  for (double e : rep.estimates) { ss += (e - rep.mean) * (e - rep.mean); }
  rep.variance = ss / double(run.trials - 1);
  rep.crb_ratio = rep.variance * double(run.samples) * qfi;
  rep.noise_floor = 1 - 3 * std::sqrt(2.0 / double(run.trials - 1));
  return rep;
}

} // namespace uqfi::estimation
