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

#include "cfstbc/rng.hpp"

#include <cmath>
#include <numbers>

namespace cfstbc
{

double Stream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Stream::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::complex<double> Stream::complex_normal(double variance)
{
    const double scale = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {scale * re, scale * im};
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Stream trial_rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t bs, std::uint64_t user,
                 Purpose purpose)
{
    // Chained absorption: each field is mixed in turn, so no two keys share a prefix state.
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ trial);
    h = mix64(h ^ bs);
    h = mix64(h ^ user);
    h = mix64(h ^ static_cast<std::uint64_t>(purpose));
    return Stream(h);
}

} // namespace cfstbc
