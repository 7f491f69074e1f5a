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
// Monte Carlo estimate of the per-stream interference-plus-noise power, obtained by running the
// full transmit chain and subtracting the desired term from each BS's soft output.

#pragma once

#include "cfstbc/channel.hpp"
#include "cfstbc/constellation.hpp"
#include "cfstbc/golden.hpp"
#include "cfstbc/metrics.hpp"
#include "cfstbc/receiver.hpp"
#include "cfstbc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cfstbc::testing
{

struct VarianceComparison
{
    std::vector<double> analytic;
    std::vector<double> empirical;
    double max_relative_error = 0.0;
};

struct VarianceInstance
{
    ChannelRealization channel;
    std::vector<ComplexMatrix> systems;
    std::vector<ComplexMatrix> decoders;
};

inline VarianceInstance make_variance_instance(std::size_t antennas, std::size_t users, std::size_t bs_count,
                                               double rho, DecoderKind kind, const Inversion& inversion,
                                               std::uint64_t seed)
{
    Stream rng(seed);
    VarianceInstance inst;
    inst.channel.antennas = antennas;
    inst.channel.antennas_per_user = 2;
    inst.channel.profile = draw_large_scale(bs_count, users, rng);
    for (std::size_t i = 0; i < bs_count * users; ++i)
        inst.channel.small.push_back(draw_small_scale(antennas, 2, rng));
    const GoldenParams p = golden_params();
    FlopCounter fc;
    for (std::size_t l = 0; l < bs_count; ++l)
    {
        std::vector<ComplexMatrix> blocks;
        for (std::size_t k = 0; k < users; ++k)
            blocks.push_back(equivalent_channel(inst.channel.h(l, k), p));
        inst.systems.push_back(stack_system(blocks, inst.channel.profile.row(l)));
        inst.decoders.push_back(build_decoder(kind, inst.systems.back(), rho, inversion, fc).a);
    }
    return inst;
}

/// Sum over BSs of the empirical power of s_l - sqrt(rho/2) (A_l G_l)_ii x_i, for every stream i.
inline std::vector<double> empirical_variance(const VarianceInstance& inst, double rho, std::size_t draws,
                                              std::uint64_t seed)
{
    const GoldenParams p = golden_params();
    const Constellation qam = Constellation::qam4();
    const std::size_t users = inst.channel.user_count();
    const std::size_t bs_count = inst.channel.bs_count();
    const std::size_t streams = 4 * users;
    const double amp = std::sqrt(rho / 2.0);

    std::vector<CVector> gains;
    for (std::size_t l = 0; l < bs_count; ++l)
        gains.push_back(effective_gains(inst.decoders[l], inst.systems[l]));

    Stream rng(seed);
    std::vector<double> power(streams, 0.0);
    std::vector<cplx> x(streams);
    std::vector<ComplexMatrix> blocks(users);
    for (std::size_t d = 0; d < draws; ++d)
    {
        for (std::size_t k = 0; k < users; ++k)
        {
            SymbolVector sv;
            for (std::size_t j = 0; j < 4; ++j)
            {
                sv[j] = qam.points()[rng.next_u64() & 3U];
                x[4 * k + j] = sv[j];
            }
            blocks[k] = encode(sv, p).matrix();
        }
        for (std::size_t l = 0; l < bs_count; ++l)
        {
            const ComplexMatrix w = draw_noise(inst.channel.antennas, 2, rng);
            const CVector y = received_block(inst.channel, blocks, rho, w, l).vec();
            const CVector s = inst.decoders[l] * y;
            for (std::size_t i = 0; i < streams; ++i)
                power[i] += std::norm(s[i] - amp * gains[l][i] * x[i]);
        }
    }
    for (auto& v : power)
        v /= static_cast<double>(draws);
    return power;
}

inline VarianceComparison compare_variance(const VarianceInstance& inst, double rho, NoiseScaling scaling,
                                           std::size_t draws, std::uint64_t seed)
{
    VarianceComparison out;
    out.empirical = empirical_variance(inst, rho, draws, seed);
    for (std::size_t i = 0; i < out.empirical.size(); ++i)
    {
        out.analytic.push_back(interference_noise_variance(inst.decoders, inst.systems, rho, i, scaling));
        out.max_relative_error = std::max(out.max_relative_error,
                                          std::abs(out.analytic[i] - out.empirical[i]) / out.empirical[i]);
    }
    return out;
}

} // namespace cfstbc::testing
