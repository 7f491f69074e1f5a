// SPDX-License-Identifier: Apache-2.0
//
// cfstbc: cell-free massive MIMO uplink simulator with Golden-code STBC users
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfstbc
{

// Dimension or argument violations. Maps to CLI exit code 2 when raised during config handling.
class InvalidArgument : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Base class for numerical failures (CLI exit code 3).
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Cholesky hit a non-positive pivot.
class SingularMatrixError : public NumericalError
{
public:
    explicit SingularMatrixError(std::size_t pivot)
        : NumericalError("matrix is not positive definite: non-positive pivot at index " + std::to_string(pivot)),
          pivot_(pivot)
    {
    }

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

// Diagonal/off-diagonal split with a zero diagonal entry.
class DegenerateSplitError : public NumericalError
{
public:
    explicit DegenerateSplitError(std::size_t index)
        : NumericalError("zero diagonal entry at index " + std::to_string(index) + " prevents diagonal splitting"),
          index_(index)
    {
    }

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class DegenerateSinrError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

} // namespace cfstbc
