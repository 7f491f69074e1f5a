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

#include "cfstbc/complex_matrix.hpp"
#include "cfstbc/rng.hpp"

#include <array>
#include <span>

namespace cfstbc
{

/// Golden-code constants. The same values are used for every user.
struct GoldenParams
{
    cplx a;
    cplx b;
    cplx c;
    cplx d;
    cplx gamma;

    /// |a|^2 + |c|^2, the large-M diagonal gain of odd symbol slots.
    double p() const;
    /// |ab|^2 + |cd|^2, the large-M diagonal gain of even symbol slots.
    double s() const;
};

GoldenParams golden_params();

/// Four symbols sent by one user over two slots.
using SymbolVector = std::array<cplx, 4>;

/// 2x2 Golden code block, rows = transmit antennas, columns = time slots.
class CodeBlock
{
public:
    const ComplexMatrix& matrix() const noexcept { return x_; }

private:
    friend CodeBlock encode(const SymbolVector& x, const GoldenParams& p);
    explicit CodeBlock(ComplexMatrix x) : x_(std::move(x)) {}
    ComplexMatrix x_;
};

/// X = [[a(x1 + b x2), gamma a(x3 + b x4)], [c(x3 + d x4), c(x1 + d x2)]]
CodeBlock encode(const SymbolVector& x, const GoldenParams& p);

/// Equivalent 2M x 4 channel H~ with vec(H X) = H~ x, vec stacking column-major.
ComplexMatrix equivalent_channel(const ComplexMatrix& h, const GoldenParams& p);

/// [beta_1 H~_1, ..., beta_K H~_K]. Blocks may have any common row count and width.
ComplexMatrix stack_system(std::span<const ComplexMatrix> blocks, std::span<const double> betas);

/// ||vec(H encode(x)) - H~ x||_2
double verify_exchangeability(const ComplexMatrix& h, const SymbolVector& x, const GoldenParams& p);

struct LargeMDiagnostic
{
    double diag_error;  // ||H~^H H~ / M - I_4||_max
    double cross_error; // ||H~_1^H H~_2 / M||_max for independent channels
};

LargeMDiagnostic large_m_diagnostic(const GoldenParams& p, std::size_t antennas, Stream& rng);

} // namespace cfstbc
