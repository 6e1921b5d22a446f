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
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

// Small dense complex linear algebra for Hermitian problems: a cyclic Jacobi
// eigensolver, PSD square roots, Kronecker products and partial traces.

namespace uqfi {

namespace detail {
template <typename Real> constexpr Real hermitian_tolerance = Real(1e-12);
template <typename Real> constexpr Real psd_tolerance = Real(1e-10);
} // namespace detail

template <typename Real> Matrix<Real> identity(Index dim) { return Matrix<Real>::Identity(dim, dim); }

// max|A - A^H| / max|A|; zero for the zero matrix.
template <typename Derived> auto hermiticity_defect(Eigen::MatrixBase<Derived> const &a)
{
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (a.rows() != a.cols()) { return std::numeric_limits<Real>::infinity(); }
  Real const scale = a.cwiseAbs().maxCoeff();
  if (scale == Real(0)) { return Real(0); }
  return Real((a - a.adjoint()).cwiseAbs().maxCoeff() / scale);
}

template <typename Real> struct SpectralDecomposition
{
  RealVector<Real> eigenvalues;  // descending
  Matrix<Real>     eigenvectors; // orthonormal columns, same order
  Real             support_cutoff = Real(1e-12);
  int              sweeps = 0;
  int              clamped = 0; // eigenvalues in [-psd_tolerance, 0) set to zero

  Index dim() const { return eigenvalues.size(); }

  std::vector<Index> support() const
  {
    std::vector<Index> s;
    for (Index i = 0; i < eigenvalues.size(); ++i) {
      if (eigenvalues[i] > support_cutoff) { s.push_back(i); }
    }
    return s;
  }

  Index rank() const { return static_cast<Index>(support().size()); }

  Matrix<Real> reconstruct() const
  {
    return eigenvectors * eigenvalues.template cast<Complex<Real>>().asDiagonal() * eigenvectors.adjoint();
  }
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot a(p,q), then applies the
/// real symmetric Jacobi rotation that annihilates it. Eigenvalues come back in
/// descending order. Throws NotHermitianError for inputs whose relative
/// symmetry defect exceeds 1e-12 and ConvergenceError after max_sweeps.
template <typename Derived>
auto eig_hermitian(Eigen::MatrixBase<Derived> const                                            &input,
                   typename Eigen::NumTraits<typename Derived::Scalar>::Real support_cutoff = 1e-12,
                   int                                                       max_sweeps = 64)
{
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using C = Complex<Real>;
  if (input.rows() != input.cols()) { throw DomainError("eig_hermitian: matrix is not square"); }
  Real const defect = hermiticity_defect(input);
  if (defect > detail::hermitian_tolerance<Real>) { throw NotHermitianError(static_cast<double>(defect)); }

  Index const  n = input.rows();
  Matrix<Real> a = (input.template cast<C>() + input.template cast<C>().adjoint()) / Real(2);
  Matrix<Real> v = Matrix<Real>::Identity(n, n);

  Real const eps = std::numeric_limits<Real>::epsilon();
  Real const scale = a.norm();
  Real const target = Real(4) * Real(std::max<Index>(n, 1)) * eps * scale;

  int  sweep = 0;
  Real off = 0;
  for (;; ++sweep) {
    off = 0;
    for (Index q = 1; q < n; ++q) {
      for (Index p = 0; p < q; ++p) { off += std::norm(a(p, q)); }
    }
    off = std::sqrt(Real(2) * off);
    if (off <= target || scale == Real(0)) { break; }
    if (sweep >= max_sweeps) { throw ConvergenceError("eig_hermitian: Jacobi sweeps exhausted", sweep, static_cast<double>(off)); }

    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        C const    apq = a(p, q);
        Real const mag = std::abs(apq);
        if (mag == Real(0)) { continue; }
        C const    phase = apq / mag;
        Real const app = a(p, p).real();
        Real const aqq = a(q, q).real();
        Real const tau = (aqq - app) / (Real(2) * mag);
        Real const t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
        Real const c = Real(1) / std::sqrt(Real(1) + t * t);
        Real const s = t * c;

        // V = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, q).
        C const vpp = c;
        C const vpq = s;
        C const vqp = -s * std::conj(phase);
        C const vqq = c * std::conj(phase);

        Vector<Real> const colp = a.col(p);
        Vector<Real> const colq = a.col(q);
        a.col(p) = colp * vpp + colq * vqp;
        a.col(q) = colp * vpq + colq * vqq;

        Eigen::Matrix<C, 1, Eigen::Dynamic> const rowp = a.row(p);
        Eigen::Matrix<C, 1, Eigen::Dynamic> const rowq = a.row(q);
        a.row(p) = std::conj(vpp) * rowp + std::conj(vqp) * rowq;
        a.row(q) = std::conj(vpq) * rowp + std::conj(vqq) * rowq;

        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(a(p, p).real());
        a(q, q) = C(a(q, q).real());

        Vector<Real> const vp = v.col(p);
        Vector<Real> const vq = v.col(q);
        v.col(p) = vp * vpp + vq * vqp;
        v.col(q) = vp * vpq + vq * vqq;
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i).real() > a(j, j).real(); });

  SpectralDecomposition<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  out.support_cutoff = support_cutoff;
  out.sweeps = sweep;
  return out;
}

// Clamp eigenvalue dust in [-tolerance, 0) to zero; anything more negative is rejected.
template <typename Real> void clamp_psd(SpectralDecomposition<Real> &sd, Real tolerance = detail::psd_tolerance<Real>)
{
  for (Index i = 0; i < sd.eigenvalues.size(); ++i) {
    Real &p = sd.eigenvalues[i];
    if (p < -tolerance) { throw DomainError("matrix is not positive semidefinite: eigenvalue " + std::to_string(double(p))); }
    if (p < Real(0)) {
      p = Real(0);
      ++sd.clamped;
    }
  }
}

/// Hermitian, unit-trace, positive semidefinite matrix, certified on construction.
/// The spectral decomposition computed during certification is kept.
template <typename Real> class DensityOperator
{
public:
  explicit DensityOperator(Matrix<Real> m, Real trace_tolerance = detail::psd_tolerance<Real>, Real support_cutoff = Real(1e-12))
    : matrix_(std::move(m))
  {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) { throw DomainError("DensityOperator: matrix must be square and non-empty"); }
    Real const tr = matrix_.trace().real();
    if (std::abs(tr - Real(1)) > trace_tolerance) { throw DomainError("DensityOperator: trace " + std::to_string(double(tr)) + " differs from 1"); }
    spectrum_ = eig_hermitian(matrix_, support_cutoff);
    clamp_psd(spectrum_);
    matrix_ = (matrix_ + matrix_.adjoint()).eval() / Real(2);
  }

  Matrix<Real> const                &matrix() const { return matrix_; }
  SpectralDecomposition<Real> const &spectrum() const { return spectrum_; }
  Index                              dim() const { return matrix_.rows(); }
  int                                clamped_eigenvalues() const { return spectrum_.clamped; }

private:
  Matrix<Real>                matrix_;
  SpectralDecomposition<Real> spectrum_;
};

template <typename Real> Matrix<Real> from_spectrum(RealVector<Real> const &values, Matrix<Real> const &vectors)
{
  return vectors * values.template cast<Complex<Real>>().asDiagonal() * vectors.adjoint();
}

template <typename Real> Matrix<Real> sqrtm_psd(SpectralDecomposition<Real> sd)
{
  clamp_psd(sd);
  return from_spectrum<Real>(sd.eigenvalues.cwiseSqrt(), sd.eigenvectors);
}

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in [-1e-10, 0)
/// are treated as zero; more negative ones are rejected.
template <typename Derived> auto sqrtm_psd(Eigen::MatrixBase<Derived> const &a)
{
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  SpectralDecomposition<Real> sd = eig_hermitian(a);
  return sqrtm_psd(std::move(sd));
}

template <typename DA, typename DB> auto tensor(Eigen::MatrixBase<DA> const &a, Eigen::MatrixBase<DB> const &b)
{
  using Scalar = typename DA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Partial trace of an operator on C^dA (x) C^dB, A-major index order.
template <typename Real> Matrix<Real> partial_trace(Matrix<Real> const &m, Index dA, Index dB, Keep keep)
{
  if (dA <= 0 || dB <= 0 || m.rows() != dA * dB || m.cols() != dA * dB) {
    throw DomainError("partial_trace: operator dimension " + std::to_string(m.rows()) + " does not match " + std::to_string(dA) + "x" + std::to_string(dB));
  }
  if (keep == Keep::first) {
    Matrix<Real> out = Matrix<Real>::Zero(dA, dA);
    for (Index i = 0; i < dA; ++i) {
      for (Index j = 0; j < dA; ++j) {
        for (Index k = 0; k < dB; ++k) { out(i, j) += m(i * dB + k, j * dB + k); }
      }
    }
    return out;
  }
  Matrix<Real> out = Matrix<Real>::Zero(dB, dB);
  for (Index k = 0; k < dB; ++k) {
    for (Index l = 0; l < dB; ++l) {
      for (Index i = 0; i < dA; ++i) { out(k, l) += m(i * dB + k, i * dB + l); }
    }
  }
  return out;
}

template <typename Real> DensityOperator<Real> partial_trace(DensityOperator<Real> const &rho, Index dA, Index dB, Keep keep)
{
  return DensityOperator<Real>(partial_trace<Real>(rho.matrix(), dA, dB, keep));
}

/// Operator that is block diagonal after a permutation of the basis. Each block
/// lists the basis indices it occupies; blocks are disjoint.
template <typename Real> struct BlockDiagonal
{
  struct Block
  {
    std::vector<Index> indices;
    Matrix<Real>       matrix;
  };
  Index              dim = 0;
  std::vector<Block> blocks;

  Matrix<Real> dense() const
  {
    Matrix<Real> out = Matrix<Real>::Zero(dim, dim);
    for (auto const &b : blocks) {
      for (std::size_t i = 0; i < b.indices.size(); ++i) {
        for (std::size_t j = 0; j < b.indices.size(); ++j) { out(b.indices[i], b.indices[j]) = b.matrix(Index(i), Index(j)); }
      }
    }
    return out;
  }

  Real trace() const
  {
    Real t = 0;
    for (auto const &b : blocks) { t += b.matrix.trace().real(); }
    return t;
  }
};

/// Connected components of the joint sparsity pattern of a and b: the finest
/// basis partition in which both are block diagonal. Components are ordered by
/// their smallest index.
template <typename Real>
std::vector<std::vector<Index>> connected_blocks(Matrix<Real> const &a, Matrix<Real> const &b, Real threshold = Real(0))
{
  Index const        n = a.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index(0));
  auto find = [&](Index x) {
    while (parent[x] != x) { x = parent[x] = parent[parent[x]]; }
    return x;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j)) > threshold || std::abs(b(i, j)) > threshold) {
        Index ri = find(i), rj = find(j);
        if (ri != rj) { parent[std::max(ri, rj)] = std::min(ri, rj); }
      }
    }
  }
  std::vector<std::vector<Index>> groups;
  std::vector<Index>              slot(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    Index const r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

template <typename Real> BlockDiagonal<Real> restrict_to_blocks(Matrix<Real> const &m, std::vector<std::vector<Index>> const &partition)
{
  BlockDiagonal<Real> out;
  out.dim = m.rows();
  for (auto const &idx : partition) {
    Index const  k = static_cast<Index>(idx.size());
    Matrix<Real> blk(k, k);
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < k; ++j) { blk(i, j) = m(idx[i], idx[j]); }
    }
    out.blocks.push_back({idx, std::move(blk)});
  }
  return out;
}

} // namespace uqfi
