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

#include <complex>

#include <Eigen/Dense>

namespace uqfi {

using Index = Eigen::Index;

template <typename Real> using Complex = std::complex<Real>;

template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<double>;
using ComplexVector = Vector<double>;
using RealArray = RealVector<double>;

// Estimable parameters of the input family cos(theta)|00> + e^{i phi} sin(theta)|11>.
enum class Parameter { theta, phi };

enum class Field { scalar, dirac };

// Which factor of a bipartite operator survives a partial trace.
enum class Keep { first, second };

} // namespace uqfi
