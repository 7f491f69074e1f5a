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

#include "cfstbc/metrics.hpp"
#include "cfstbc/errors.hpp"

#include <cmath>

namespace cfstbc
{

namespace
{

struct PowerTerms
{
    double desired = 0.0;      // sum_l |(A_l G_l)_ii|^2
    double interference = 0.0; // sum_l sum_{t != i} |(A_l G_l)_it|^2
    double noise = 0.0;        // sum_l ||a_i||^2
};

PowerTerms power_terms(std::span<const StreamCoupling> couplings, std::size_t index)
{
    PowerTerms t;
    for (const auto& c : couplings)
    {
        if (index >= c.product.rows())
            throw InvalidArgument("stream index " + std::to_string(index) + " out of range");
        const auto row = c.product.row(index);
        for (std::size_t j = 0; j < row.size(); ++j)
        {
            if (j == index)
                t.desired += std::norm(row[j]);
            else
                t.interference += std::norm(row[j]);
        }
        t.noise += c.row_sq[index];
    }
    return t;
}

double variance_of(const PowerTerms& t, double signal_scale, NoiseScaling scaling)
{
    if (scaling == NoiseScaling::printed)
        return signal_scale * (t.interference + t.noise);
    return signal_scale * t.interference + t.noise;
}

std::vector<StreamCoupling> couplings_of(std::span<const ComplexMatrix> decoders,
                                         std::span<const ComplexMatrix> systems)
{
    if (decoders.empty() || decoders.size() != systems.size())
        throw InvalidArgument("need one system matrix per decoder and at least one BS");
    std::vector<StreamCoupling> out;
    out.reserve(decoders.size());
    for (std::size_t l = 0; l < decoders.size(); ++l)
        out.push_back(stream_coupling(decoders[l], systems[l]));
    return out;
}

void require_rho(double rho)
{
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw InvalidArgument("rho must be finite and >= 0");
}

} // namespace

std::string to_string(NoiseScaling s)
{
    return s == NoiseScaling::printed ? "printed" : "corrected";
}

NoiseScaling parse_noise_scaling(const std::string& text)
{
    if (text == "printed")
        return NoiseScaling::printed;
    if (text == "corrected")
        return NoiseScaling::corrected;
    throw InvalidArgument("noise scaling must be 'printed' or 'corrected', got '" + text + "'");
}

StreamCoupling stream_coupling(const ComplexMatrix& a, const ComplexMatrix& g)
{
    if (a.cols() != g.rows())
        throw InvalidArgument("stream_coupling: decoder width does not match system matrix rows");
    StreamCoupling c{a * g, std::vector<double>(a.rows())};
    for (std::size_t i = 0; i < a.rows(); ++i)
        c.row_sq[i] = squared_norm(a.row(i));
    return c;
}

double interference_noise_variance(std::span<const ComplexMatrix> decoders, std::span<const ComplexMatrix> systems,
                                   double rho, std::size_t index, NoiseScaling scaling, unsigned antennas_per_user)
{
    require_rho(rho);
    const auto couplings = couplings_of(decoders, systems);
    const double scale = rho / static_cast<double>(antennas_per_user);
    return variance_of(power_terms(couplings, index), scale, scaling);
}

double sinr(std::span<const ComplexMatrix> decoders, std::span<const ComplexMatrix> systems, double rho,
            std::size_t index, NoiseScaling scaling, unsigned antennas_per_user)
{
    require_rho(rho);
    const auto couplings = couplings_of(decoders, systems);
    const double scale = rho / static_cast<double>(antennas_per_user);
    const PowerTerms t = power_terms(couplings, index);
    const double denom = variance_of(t, scale, scaling);
    if (!(denom > 0.0))
        throw DegenerateSinrError("SINR denominator is zero for stream " + std::to_string(index));
    return scale * t.desired / denom;
}

std::vector<double> sinr_all(std::span<const StreamCoupling> couplings, double rho, NoiseScaling scaling,
                             unsigned antennas_per_user)
{
    require_rho(rho);
    if (couplings.empty())
        throw InvalidArgument("sinr_all: need at least one BS");
    const double scale = rho / static_cast<double>(antennas_per_user);
    const std::size_t streams = couplings.front().product.rows();
    std::vector<double> out(streams);
    for (std::size_t i = 0; i < streams; ++i)
    {
        const PowerTerms t = power_terms(couplings, i);
        const double denom = variance_of(t, scale, scaling);
        if (!(denom > 0.0))
            throw DegenerateSinrError("SINR denominator is zero for stream " + std::to_string(i));
        out[i] = scale * t.desired / denom;
    }
    return out;
}

double spectral_efficiency(std::span<const double> sinrs, unsigned slots)
{
    if (slots == 0)
        throw InvalidArgument("spectral_efficiency: slots must be >= 1");
    double se = 0.0;
    for (double s : sinrs)
    {
        if (!(s >= 0.0))
            throw InvalidArgument("spectral_efficiency: SINR must be non-negative");
        se += std::log2(1.0 + s);
    }
    return se / static_cast<double>(slots);
}

BerEstimate BerEstimate::from_counts(std::uint64_t errors, std::uint64_t total)
{
    BerEstimate e{errors, total, 0.0, 0.0};
    if (total > 0)
    {
        const double n = static_cast<double>(total);
        e.ber = static_cast<double>(errors) / n;
        e.confidence_halfwidth = 1.96 * std::sqrt(e.ber * (1.0 - e.ber) / n);
    }
    return e;
}

BerEstimate ber_accumulate(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits)
{
    if (tx_bits.size() != rx_bits.size())
        throw InvalidArgument("ber_accumulate: bit streams differ in length");
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < tx_bits.size(); ++i)
        errors += (tx_bits[i] != rx_bits[i]) ? 1U : 0U;
    return BerEstimate::from_counts(errors, tx_bits.size());
}

} // namespace cfstbc
