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

#include "cfstbc/receiver.hpp"
#include "cfstbc/errors.hpp"

#include <cmath>
#include <limits>

namespace cfstbc
{

std::string to_string(DecoderKind k)
{
    return k == DecoderKind::zf ? "zf" : "mmse";
}

DecoderKind parse_decoder(const std::string& text)
{
    if (text == "zf" || text == "ZF")
        return DecoderKind::zf;
    if (text == "mmse" || text == "MMSE")
        return DecoderKind::mmse;
    throw InvalidArgument("decoder must be 'zf' or 'mmse', got '" + text + "'");
}

DecoderMatrix zf_matrix(const ComplexMatrix& g, const Inversion& inversion, FlopCounter& counter)
{
    ComplexMatrix z = gram(g);
    ComplexMatrix a = invert(z, inversion, counter) * g.adjoint();
    return {std::move(a), DecoderKind::zf, inversion, std::move(z)};
}

DecoderMatrix mmse_matrix(const ComplexMatrix& g, double rho, const Inversion& inversion, FlopCounter& counter,
                          unsigned antennas_per_user)
{
    if (!(rho > 0.0))
        throw InvalidArgument("mmse_matrix: rho must be > 0");
    ComplexMatrix z = gram(g);
    const double reg = static_cast<double>(antennas_per_user) / rho;
    for (std::size_t i = 0; i < z.rows(); ++i)
        z(i, i) += reg;
    ComplexMatrix a = invert(z, inversion, counter) * g.adjoint();
    return {std::move(a), DecoderKind::mmse, inversion, std::move(z)};
}

DecoderMatrix build_decoder(DecoderKind kind, const ComplexMatrix& g, double rho, const Inversion& inversion,
                            FlopCounter& counter, unsigned antennas_per_user)
{
    if (kind == DecoderKind::zf)
        return zf_matrix(g, inversion, counter);
    return mmse_matrix(g, rho, inversion, counter, antennas_per_user);
}

CVector effective_gains(const ComplexMatrix& a, const ComplexMatrix& g)
{
    if (a.cols() != g.rows() || a.rows() != g.cols())
        throw InvalidArgument("effective_gains: decoder and system matrix shapes do not match");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        cplx acc{};
        const auto row = a.row(i);
        for (std::size_t r = 0; r < g.rows(); ++r)
            acc += row[r] * g(r, i);
        out[i] = acc;
    }
    return out;
}

SoftOutput per_bs_soft(const DecoderMatrix& decoder, const ComplexMatrix& g, std::span<const cplx> y)
{
    if (y.size() != decoder.a.cols())
        throw InvalidArgument("per_bs_soft: received vector length " + std::to_string(y.size()) +
                              " does not match decoder width " + std::to_string(decoder.a.cols()));
    return {decoder.a * y, effective_gains(decoder.a, g)};
}

Combined cpu_combine(std::span<const CVector> soft, std::span<const CVector> gains)
{
    if (soft.empty() || soft.size() != gains.size())
        throw InvalidArgument("cpu_combine: need matching, non-empty per-BS soft and gain lists");
    const std::size_t n = soft.front().size();
    Combined out{CVector(n), CVector(n)};
    for (std::size_t l = 0; l < soft.size(); ++l)
    {
        if (soft[l].size() != n || gains[l].size() != n)
            throw InvalidArgument("cpu_combine: per-BS vectors differ in length");
        for (std::size_t i = 0; i < n; ++i)
        {
            out.r[i] += soft[l][i];
            out.gains[i] += gains[l][i];
        }
    }
    return out;
}

std::size_t detect(cplx r, cplx combined_gain, double rho, const Constellation& c, unsigned antennas_per_user)
{
    const cplx scaled_gain = std::sqrt(rho / static_cast<double>(antennas_per_user)) * combined_gain;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    const auto& pts = c.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        const double dist = std::norm(r - pts[i] * scaled_gain);
        if (dist < best_dist)
        {
            best_dist = dist;
            best = i;
        }
    }
    return best;
}

} // namespace cfstbc
