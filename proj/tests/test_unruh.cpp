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
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uqfi/qfi.hpp"

using namespace uqfi;
using namespace uqfi::unruh;
using std::numbers::pi;

namespace {

double max_abs(ComplexMatrix const &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

ComplexMatrix projector(ComplexVector const &v) { return v * v.adjoint(); }

double weight_sum(ScalarBlockState const &s)
{
  double sum = 0;
  for (auto const &b : s.blocks) { sum += b.weight; }
  return sum;
}

} // namespace

TEST(InitialState, Examples)
{
  ComplexVector const a = initial_state({0, 2.0});
  EXPECT_EQ(a, (ComplexVector(4) << 1, 0, 0, 0).finished());

  ComplexVector const bell = initial_state({pi / 4, 0});
  EXPECT_NEAR(bell[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(bell[3].real(), 1 / std::sqrt(2.0), 1e-15);

  ComplexVector const c = initial_state({pi / 3, pi / 2});
  EXPECT_NEAR(std::abs(c[0] - Complex<double>(0.5, 0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(c[3] - Complex<double>(0, std::sqrt(3.0) / 2)), 0, 1e-15);
  EXPECT_NEAR(c.norm(), 1.0, 1e-15);
}

TEST(InitialState, RejectsOutOfRange)
{
  EXPECT_THROW(initial_state({-0.1, 0}), DomainError);
  EXPECT_THROW(initial_state({pi / 2 + 1e-9, 0}), DomainError);
  EXPECT_THROW(initial_state({0.3, 2 * pi}), DomainError);
  EXPECT_THROW(initial_state({std::numeric_limits<double>::quiet_NaN(), 0}), DomainError);
}

TEST(InitialState, DerivativeMatchesFiniteDifference)
{
  InputParams const p{0.7, 1.9};
  for (Parameter which : {Parameter::theta, Parameter::phi}) {
    double const  h = 1e-6;
    InputParams   lo = p, hi = p;
    (which == Parameter::theta ? lo.theta : lo.phi) -= h;
    (which == Parameter::theta ? hi.theta : hi.phi) += h;
    ComplexVector fd = (initial_state(hi) - initial_state(lo)) / (2 * h);
    EXPECT_LT((fd - initial_state_derivative(p, which)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Acceleration, Limits)
{
  EXPECT_EQ(r_from_acceleration(Field::dirac, std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(r_from_acceleration(Field::scalar, std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_NEAR(r_from_acceleration(Field::dirac, 1e-9), pi / 4, 1e-8);
  EXPECT_LT(r_from_acceleration(Field::dirac, 1e-9), pi / 4);
  EXPECT_NEAR(r_from_acceleration(Field::scalar, 20.0), 0.0, 1e-20);
  EXPECT_THROW(r_from_acceleration(Field::scalar, 0.0), DomainError);
  EXPECT_THROW(r_from_acceleration(Field::scalar, -1.0), DomainError);
  EXPECT_THROW(r_from_acceleration(Field::dirac, 0.0), DomainError);
}

TEST(Acceleration, MatchesDefiningRelations)
{
  for (double x : {0.05, 0.3, 1.0, 2.5}) {
    double const rs = r_from_acceleration(Field::scalar, x);
    EXPECT_NEAR(std::cosh(rs), 1 / std::sqrt(1 - std::exp(-2 * pi * x)), 1e-12 * std::cosh(rs));
    double const rd = r_from_acceleration(Field::dirac, x);
    EXPECT_NEAR(std::cos(rd), 1 / std::sqrt(1 + std::exp(-2 * pi * x)), 1e-14);
    EXPECT_LT(rd, pi / 4);
  }
}

TEST(BogoliubovVacuum, Examples)
{
  auto const s0 = bogoliubov_vacuum(Field::scalar, 0.0);
  ASSERT_EQ(s0.size(), 1u);
  EXPECT_EQ(s0[0], 1.0);

  auto const d = bogoliubov_vacuum(Field::dirac, pi / 6);
  EXPECT_NEAR(d[0], std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(d[1], 0.5, 1e-15);

  auto const s = bogoliubov_vacuum(Field::scalar, 0.8);
  double     norm = 0;
  for (double a : s) { norm += a * a; }
  EXPECT_LE(1 - norm, 1e-12);
  EXPECT_GE(1 - norm, -1e-14);
  EXPECT_THROW(bogoliubov_vacuum(Field::dirac, pi / 4), DomainError);
}

TEST(ScalarTruncation, TailBoundIsMinimalAndSufficient)
{
  for (double r : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    long const n = scalar_truncation(r);
    EXPECT_LE(scalar_tail_bound(r, n), 1e-12);
    if (n > 0) { EXPECT_GT(scalar_tail_bound(r, n - 1), 1e-12); }
  }
  EXPECT_EQ(scalar_truncation(0.0), 0);
}

TEST(ScalarTruncation, TailBoundDominatesExactTail)
{
  // exact tail mass over n > N at theta = pi/2 where Theta_n is largest
  double const r = 0.9, t = std::pow(std::tanh(r), 2), ch2 = std::pow(std::cosh(r), 2);
  for (long nmax : {0L, 3L, 10L}) {
    long double tail = 0, tn = std::pow((long double)t, nmax + 1);
    for (long n = nmax + 1; n < nmax + 4000; ++n) {
      tail += tn / ch2 * (n + 1) / ch2;
      tn *= t;
    }
    EXPECT_LE(double(tail), scalar_tail_bound(r, nmax) * (1 + 1e-12));
  }
}

TEST(ScalarChannel, IdentityAtZeroAcceleration)
{
  InputParams const p{0.6, 2.2};
  auto const        s = scalar_channel(p, 0.0);
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_EQ(s.blocks[0].weight, 1.0);
  EXPECT_NEAR(std::abs(s.blocks[0].amplitudes[0] - std::cos(p.theta)), 0, 1e-15);
  EXPECT_NEAR(std::abs(s.blocks[0].amplitudes[1] - std::polar(std::sin(p.theta), p.phi)), 0, 1e-15);

  // embedded: |0,0> <-> index 0, |1,1> <-> index n_max + 2 + 1
  auto const    rho = scalar_state_as_matrix(s);
  ComplexVector psi = ComplexVector::Zero(s.dim());
  psi[scalar_basis_index(0, 0, 0)] = std::cos(p.theta);
  psi[scalar_basis_index(0, 1, 1)] = std::polar(std::sin(p.theta), p.phi);
  EXPECT_LT(max_abs(rho.matrix() - projector(psi)), 1e-12);
}

TEST(ScalarChannel, VacuumInputIsThermal)
{
  double const r = 0.7;
  auto const   s = scalar_channel({0, 1.0}, r);
  double       w = 1 / std::pow(std::cosh(r), 2);
  for (auto const &b : s.blocks) {
    EXPECT_EQ(b.amplitudes[0], Complex<double>(1, 0));
    EXPECT_EQ(b.amplitudes[1], Complex<double>(0, 0));
    EXPECT_NEAR(b.weight, w, 1e-15);
    w *= std::pow(std::tanh(r), 2);
  }
}

TEST(ScalarChannel, BlockInvariants)
{
  double const theta = pi / 4, r = 1.0;
  auto const   s = scalar_channel({theta, 0.3}, r);
  double const ch2 = std::pow(std::cosh(r), 2), t = std::pow(std::tanh(r), 2);
  long double  geo = 0, geo1 = 0, tn = 1;
  for (auto const &b : s.blocks) {
    double const theta_n = std::pow(std::cos(theta), 2) + double(b.n + 1) * std::pow(std::sin(theta), 2) / ch2;
    EXPECT_NEAR(b.theta_n, theta_n, 1e-12);
    EXPECT_NEAR(b.weight, double(tn) / ch2 * theta_n, 1e-12);
    EXPECT_NEAR(std::norm(b.amplitudes[0]) + std::norm(b.amplitudes[1]), 1.0, 1e-12);
    // analytic tangent is orthogonal to the block state
    auto const tangent = std::conj(b.amplitudes[0]) * b.damp_dtheta[0] + std::conj(b.amplitudes[1]) * b.damp_dtheta[1];
    EXPECT_LT(std::abs(tangent), 1e-12);
    geo += tn;
    geo1 += (b.n + 1) * tn;
    tn *= t;
  }
  EXPECT_NEAR(weight_sum(s), 1.0, 1e-12);
  EXPECT_GE(weight_sum(s) + s.tail_bound, 1 - 1e-12);
  EXPECT_NEAR(double(geo), ch2, 1e-10 * ch2);
  EXPECT_NEAR(double(geo1), ch2 * ch2, 1e-10 * ch2 * ch2);
}

TEST(ScalarChannel, WeightNormalisationAcrossGrid)
{
  for (double theta : {0.0, 0.4, pi / 4, 1.3, pi / 2}) {
    for (double r : {0.05, 0.5, 1.5, 3.0}) { EXPECT_NEAR(weight_sum(scalar_channel({theta, 0}, r)), 1.0, 1e-12) << theta << " " << r; }
  }
}

TEST(ScalarChannel, RejectsShortTruncation)
{
  try {
    scalar_channel({0.5, 0}, 1.0, 5);
    FAIL() << "expected TruncationError";
  } catch (TruncationError const &e) {
    EXPECT_EQ(e.required_n_max(), scalar_truncation(1.0));
  }
  EXPECT_THROW(scalar_channel({0.5, 0}, -0.1), DomainError);
}

TEST(ScalarChannel, AnalyticDerivativesMatchFiniteDifferences)
{
  InputParams const p{0.8, 1.2};
  double const      r = 0.6, h = 1e-6;
  long const        n = scalar_truncation(r);
  auto const        s = scalar_channel(p, r, n);
  for (Parameter which : {Parameter::theta, Parameter::phi}) {
    InputParams lo = p, hi = p;
    (which == Parameter::theta ? lo.theta : lo.phi) -= h;
    (which == Parameter::theta ? hi.theta : hi.phi) += h;
    auto const slo = scalar_channel(lo, r, n), shi = scalar_channel(hi, r, n);
    for (std::size_t k = 0; k < s.blocks.size(); k += 7) {
      auto const &damp = which == Parameter::theta ? s.blocks[k].damp_dtheta : s.blocks[k].damp_dphi;
      for (int i = 0; i < 2; ++i) {
        auto const fd = (shi.blocks[k].amplitudes[i] - slo.blocks[k].amplitudes[i]) / (2 * h);
        EXPECT_LT(std::abs(fd - damp[i]), 1e-8) << k << " " << i;
      }
      if (which == Parameter::theta) {
        EXPECT_LT(std::abs((shi.blocks[k].theta_n - slo.blocks[k].theta_n) / (2 * h) - s.blocks[k].dtheta_n), 1e-8);
        EXPECT_LT(std::abs((shi.blocks[k].weight - slo.blocks[k].weight) / (2 * h) - s.blocks[k].dweight_dtheta), 1e-8);
      }
    }
  }
}

TEST(ScalarMatrix, SpectrumEqualsBlockWeights)
{
  auto const s = scalar_channel({1.1, 0.4}, 0.5);
  auto const rho = scalar_state_as_matrix(s);
  EXPECT_EQ(rho.dim(), 2 * (s.n_max + 2));
  EXPECT_LT(hermiticity_defect(rho.matrix()), 1e-15);
  std::vector<double> w;
  for (auto const &b : s.blocks) { w.push_back(b.weight); }
  w.resize(std::size_t(rho.dim()), 0.0);
  std::sort(w.begin(), w.end(), std::greater<>());
  for (Index i = 0; i < rho.dim(); ++i) { EXPECT_NEAR(rho.spectrum().eigenvalues[i], w[std::size_t(i)], 1e-10); }
}

TEST(ScalarMatrix, ThetaQfiIsFour)
{
  auto const s = scalar_channel({pi / 4, 0}, 0.5);
  EXPECT_NEAR(qfi_spectral(scalar_state_as_matrix(s), scalar_state_derivative_matrix(s, Parameter::theta)), 4.0, 1e-8);
}

TEST(ScalarMatrix, EntrywiseBlocksAgreeWithAmplitudeRoute)
{
  InputParams const p{0.9, 2.4};
  double const      r = 0.7;
  auto const        s = scalar_channel(p, r);
  for (Parameter which : {Parameter::theta, Parameter::phi}) {
    auto const blocks = scalar_matrix_blocks(p, r, s.n_max, which);
    EXPECT_LT(max_abs(blocks.rho.dense() - scalar_state_as_matrix(s).matrix()), 1e-14);
    EXPECT_LT(max_abs(blocks.drho.dense() - scalar_state_derivative_matrix(s, which)), 1e-13);
  }
}

TEST(DiracChannel, Entries)
{
  InputParams const p{0.5, 1.0};
  double const      r = 0.3;
  ComplexMatrix     rho = dirac_channel(p, r).matrix();
  double const      c = std::cos(r), s = std::sin(r), ct = std::cos(p.theta), st = std::sin(p.theta);
  EXPECT_EQ(rho(0, 0).real(), c * c * ct * ct);
  EXPECT_EQ(rho(1, 1).real(), s * s * ct * ct);
  EXPECT_EQ(rho(2, 2), Complex<double>(0));
  EXPECT_EQ(rho(3, 3).real(), st * st);
  EXPECT_NEAR(std::abs(rho(0, 3) - 0.5 * c * std::sin(2 * p.theta) * std::polar(1.0, -p.phi)), 0, 1e-16);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
}

TEST(DiracChannel, Examples)
{
  InputParams const p{0.8, 0.6};
  EXPECT_LT(max_abs(dirac_channel(p, 0).matrix() - projector(initial_state(p))), 1e-12);

  ComplexMatrix vac = ComplexMatrix::Zero(4, 4);
  vac(0, 0) = std::pow(std::cos(0.4), 2);
  vac(1, 1) = std::pow(std::sin(0.4), 2);
  EXPECT_LT(max_abs(dirac_channel({0, 0}, 0.4).matrix() - vac), 1e-15);

  auto const ev = dirac_channel({pi / 4, 0}, pi / 6).spectrum().eigenvalues;
  EXPECT_NEAR(ev[0], 7.0 / 8, 1e-12);
  EXPECT_NEAR(ev[1], 1.0 / 8, 1e-12);
  EXPECT_NEAR(ev[2], 0.0, 1e-12);
  EXPECT_NEAR(ev[3], 0.0, 1e-12);

  EXPECT_THROW(dirac_channel(p, pi / 4), DomainError);
  EXPECT_THROW(dirac_channel(p, -0.01), DomainError);
}

TEST(DiracChannel, DerivativeMatchesFiniteDifference)
{
  InputParams const p{1.0, 4.0};
  for (Parameter which : {Parameter::theta, Parameter::phi}) {
    ParametrizedState<double> st;
    st.rho_at = [&](double x) {
      InputParams q = p;
      (which == Parameter::theta ? q.theta : q.phi) = x;
      return dirac_channel(q, 0.45);
    };
    double const x0 = which == Parameter::theta ? p.theta : p.phi;
    EXPECT_LT(max_abs(st.central_difference(x0) - dirac_channel_derivative(p, 0.45, which)), 1e-8);
  }
}

TEST(DiracEigensystem, Examples)
{
  InputParams const p{0.9, 0.2};
  auto const        e0 = dirac_eigensystem(p, 0.0);
  EXPECT_EQ(e0.lambda1, 1.0);
  EXPECT_LT(max_abs(projector(e0.phi1) - projector(initial_state(p))), 1e-15); // equal up to the global phase e^{-i phi}

  auto const e = dirac_eigensystem({pi / 4, 0}, pi / 6);
  EXPECT_NEAR(e.lambda2, 1.0 / 8, 1e-15);
  EXPECT_EQ(e.phi2, (ComplexVector(4) << 0, 1, 0, 0).finished());

  EXPECT_THROW(dirac_eigensystem({0, 0}, 0.3), DomainError);
  EXPECT_THROW(dirac_eigensystem({pi / 2, 0}, 0.3), DomainError);
}

TEST(DiracEigensystem, AgreesWithEigenRouteOnGrid)
{
  for (double theta : {0.1, 0.5, pi / 4, 1.2, 1.5}) {
    for (double r : {0.0, 0.2, 0.5, 0.78}) {
      for (double phi : {0.0, 1.0, 4.0}) {
        InputParams const p{theta, phi};
        auto const        e = dirac_eigensystem(p, r);
        auto const        rho = dirac_channel(p, r);
        EXPECT_NEAR(e.lambda1 + e.lambda2, 1.0, 1e-15);
        EXPECT_LT(std::abs(e.phi1.dot(e.phi2)), 1e-15);
        EXPECT_NEAR(e.phi1.norm(), 1.0, 1e-14);
        EXPECT_LT(max_abs(rho.matrix() - e.lambda1 * projector(e.phi1) - e.lambda2 * projector(e.phi2)), 1e-14);

        auto const &ev = rho.spectrum().eigenvalues;
        double      big = std::max(e.lambda1, e.lambda2), small = std::min(e.lambda1, e.lambda2);
        EXPECT_NEAR(ev[0], big, 1e-10);
        EXPECT_NEAR(ev[1], small, 1e-10);
        EXPECT_NEAR(ev[2], 0, 1e-10);
        EXPECT_NEAR(ev[3], 0, 1e-10);
      }
    }
  }
}

TEST(DiracEigensystem, DerivativesMatchFiniteDifferences)
{
  InputParams const p{0.7, 2.0};
  double const      r = 0.5, h = 1e-6;
  for (Parameter which : {Parameter::theta, Parameter::phi}) {
    InputParams lo = p, hi = p;
    (which == Parameter::theta ? lo.theta : lo.phi) -= h;
    (which == Parameter::theta ? hi.theta : hi.phi) += h;
    auto const e = dirac_eigensystem(p, r, which), elo = dirac_eigensystem(lo, r), ehi = dirac_eigensystem(hi, r);
    EXPECT_NEAR((ehi.lambda1 - elo.lambda1) / (2 * h), e.dlambda1, 1e-8);
    EXPECT_NEAR((ehi.lambda2 - elo.lambda2) / (2 * h), e.dlambda2, 1e-8);
    EXPECT_LT(((ehi.phi1 - elo.phi1) / (2 * h) - e.dphi1).norm(), 1e-8);
    EXPECT_LT(e.dphi2.norm(), 1e-15);
  }
  // phase convention: the phi tangent of Phi_1 is not orthogonal to Phi_1
  auto const e = dirac_eigensystem(p, r, Parameter::phi);
  EXPECT_GT(std::abs(e.phi1.dot(e.dphi1)), 1e-3);
}

TEST(ReducedState, DiracMarginals)
{
  for (double r : {0.0, 0.3, 0.7}) {
    double const theta = 0.6;
    auto const   rho = dirac_channel({theta, 1.3}, r);
    ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
    a(0, 0) = std::pow(std::cos(theta), 2);
    a(1, 1) = std::pow(std::sin(theta), 2);
    b(0, 0) = std::pow(std::cos(r) * std::cos(theta), 2);
    b(1, 1) = 1.0 - b(0, 0);
    EXPECT_LT(max_abs(reduced_state(rho, Keep::first).matrix() - a), 1e-15);
    EXPECT_LT(max_abs(reduced_state(rho, Keep::second).matrix() - b), 1e-15);
  }
}
