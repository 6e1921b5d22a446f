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

#include <stdexcept>
#include <string>

namespace uqfi {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Arguments outside an operation's domain (ranges, dimensions, normalisation).
class DomainError : public Error
{
public:
  using Error::Error;
};

class NotHermitianError : public DomainError
{
public:
  NotHermitianError(double defect)
    : DomainError("matrix is not Hermitian: relative symmetry defect " + std::to_string(defect))
    , defect_(defect)
  {
  }
  double defect() const { return defect_; }

private:
  double defect_;
};

class ConvergenceError : public Error
{
public:
  ConvergenceError(const std::string &what, long iterations, double residual)
    : Error(what + " (iterations=" + std::to_string(iterations) + ", residual=" + std::to_string(residual) + ")")
    , iterations_(iterations)
    , residual_(residual)
  {
  }
  long   iterations() const { return iterations_; }
  double residual() const { return residual_; }

private:
  long   iterations_;
  double residual_;
};

// d(rho) has weight outside the support of rho: no SLD exists at this point.
class SupportError : public Error
{
public:
  using Error::Error;
};

class TruncationError : public Error
{
public:
  TruncationError(const std::string &what, long required_n_max)
    : Error(what + " (required n_max >= " + std::to_string(required_n_max) + ")")
    , required_(required_n_max)
  {
  }
  long required_n_max() const { return required_; }

private:
  long required_;
};

} // namespace uqfi
