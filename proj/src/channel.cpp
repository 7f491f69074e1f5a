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

#include "cfstbc/channel.hpp"
#include "cfstbc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace cfstbc
{

LargeScaleProfile draw_large_scale(std::size_t bs_count, std::size_t user_count, Stream& rng)
{
    if (bs_count < 1 || user_count < 1)
        throw InvalidArgument("draw_large_scale: L and K must be >= 1");
    LargeScaleProfile profile{bs_count, user_count, std::vector<double>(bs_count * user_count)};
    for (std::size_t l = 0; l < bs_count; ++l)
    {
        auto first = profile.betas.begin() + static_cast<std::ptrdiff_t>(l * user_count);
        auto last = first + static_cast<std::ptrdiff_t>(user_count);
        std::generate(first, last, [&] { return rng.uniform(); });
        std::sort(first, last, std::greater<>());
    }
    return profile;
}

ComplexMatrix draw_small_scale(std::size_t antennas, std::size_t antennas_per_user, Stream& rng)
{
    if (antennas < 1 || antennas_per_user < 1)
        throw InvalidArgument("draw_small_scale: dimensions must be >= 1");
    ComplexMatrix h(antennas, antennas_per_user);
    for (auto& v : h.data())
        v = rng.complex_normal();
    return h;
}

ComplexMatrix draw_noise(std::size_t antennas, std::size_t slots, Stream& rng)
{
    return draw_small_scale(antennas, slots, rng);
}

ComplexMatrix received_block(const ChannelRealization& channels, std::span<const ComplexMatrix> transmitted,
                             double rho, const ComplexMatrix& noise, std::size_t bs)
{
    if (!(rho > 0.0))
        throw InvalidArgument("received_block: rho must be > 0");
    if (bs >= channels.bs_count() && channels.user_count() > 0)
        throw InvalidArgument("received_block: BS index out of range");
    if (transmitted.size() != channels.user_count())
        throw InvalidArgument("received_block: expected " + std::to_string(channels.user_count()) +
                              " transmit blocks, got " + std::to_string(transmitted.size()));
    if (noise.rows() != channels.antennas)
        throw InvalidArgument("received_block: noise must have M rows");

    const double amplitude = std::sqrt(rho / static_cast<double>(channels.antennas_per_user));
    ComplexMatrix y = noise;
    for (std::size_t k = 0; k < transmitted.size(); ++k)
    {
        const ComplexMatrix& h = channels.h(bs, k);
        const ComplexMatrix& x = transmitted[k];
        if (h.cols() != x.rows() || x.cols() != noise.cols())
            throw InvalidArgument("received_block: transmit block shape does not match channel/noise");
        const double gain = amplitude * channels.profile(bs, k);
        ComplexMatrix hx = h * x;
        hx *= gain;
        y += hx;
    }
    return y;
}

} // namespace cfstbc
