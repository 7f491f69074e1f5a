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

#include "cfstbc/golden.hpp"
#include "cfstbc/channel.hpp"
#include "cfstbc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cfstbc
{

double GoldenParams::p() const
{
    return std::norm(a) + std::norm(c);
}

double GoldenParams::s() const
{
    return std::norm(a * b) + std::norm(c * d);
}

GoldenParams golden_params()
{
    const double sqrt5 = std::sqrt(5.0);
    const double b = (1.0 + sqrt5) / 2.0;
    const double d = (1.0 - sqrt5) / 2.0;
    const cplx i{0.0, 1.0};
    return {
        (1.0 + i * (1.0 - b)) / sqrt5,
        b,
        (1.0 + i * (1.0 - d)) / sqrt5,
        d,
        i,
    };
}

CodeBlock encode(const SymbolVector& x, const GoldenParams& p)
{
    ComplexMatrix m(2, 2);
    m(0, 0) = p.a * (x[0] + p.b * x[1]);
    m(0, 1) = p.gamma * p.a * (x[2] + p.b * x[3]);
    m(1, 0) = p.c * (x[2] + p.d * x[3]);
    m(1, 1) = p.c * (x[0] + p.d * x[1]);
    return CodeBlock(std::move(m));
}

ComplexMatrix equivalent_channel(const ComplexMatrix& h, const GoldenParams& p)
{
    if (h.cols() != 2)
        throw InvalidArgument("equivalent_channel: expected an M x 2 channel, got " + std::to_string(h.rows()) + "x" +
                              std::to_string(h.cols()));
    const std::size_t m = h.rows();
    const cplx ab = p.a * p.b;
    const cplx cd = p.c * p.d;
    ComplexMatrix out(2 * m, 4);
    for (std::size_t r = 0; r < m; ++r)
    {
        const cplx h1 = h(r, 0);
        const cplx h2 = h(r, 1);
        // slot 1 rows
        out(r, 0) = p.a * h1;
        out(r, 1) = ab * h1;
        out(r, 2) = p.c * h2;
        out(r, 3) = cd * h2;
        // slot 2 rows
        out(m + r, 0) = p.c * h2;
        out(m + r, 1) = cd * h2;
        out(m + r, 2) = p.gamma * p.a * h1;
        out(m + r, 3) = p.gamma * ab * h1;
    }
    return out;
}

ComplexMatrix stack_system(std::span<const ComplexMatrix> blocks, std::span<const double> betas)
{
    if (blocks.empty())
        throw InvalidArgument("stack_system: need at least one user block");
    if (blocks.size() != betas.size())
        throw InvalidArgument("stack_system: " + std::to_string(blocks.size()) + " blocks but " +
                              std::to_string(betas.size()) + " gains");
    const std::size_t rows = blocks.front().rows();
    std::size_t cols = 0;
    for (const auto& b : blocks)
    {
        if (b.rows() != rows)
            throw InvalidArgument("stack_system: inconsistent block row counts");
        cols += b.cols();
    }
    ComplexMatrix out(rows, cols);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k)
    {
        const auto& b = blocks[k];
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                out(r, offset + c) = betas[k] * b(r, c);
        offset += b.cols();
    }
    return out;
}

double verify_exchangeability(const ComplexMatrix& h, const SymbolVector& x, const GoldenParams& p)
{
    const CVector lhs = (h * encode(x, p).matrix()).vec();
    const CVector rhs = equivalent_channel(h, p) * std::span<const cplx>(x);
    CVector diff(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i)
        diff[i] = lhs[i] - rhs[i];
    return norm2(diff);
}

LargeMDiagnostic large_m_diagnostic(const GoldenParams& p, std::size_t antennas, Stream& rng)
{
    if (antennas < 1)
        throw InvalidArgument("large_m_diagnostic: M must be >= 1");
    const ComplexMatrix h1 = equivalent_channel(draw_small_scale(antennas, 2, rng), p);
    const ComplexMatrix h2 = equivalent_channel(draw_small_scale(antennas, 2, rng), p);
    const double inv_m = 1.0 / static_cast<double>(antennas);

    ComplexMatrix self = h1.adjoint() * h1;
    self *= inv_m;
    const ComplexMatrix cross = inv_m * (h1.adjoint() * h2);
    return {max_abs_diff(self, ComplexMatrix::identity(4)), cross.max_abs()};
}

} // namespace cfstbc
