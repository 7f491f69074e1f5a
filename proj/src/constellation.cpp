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

#include "cfstbc/constellation.hpp"
#include "cfstbc/errors.hpp"

#include <cmath>
#include <numbers>

namespace cfstbc
{

std::string to_string(Modulation m)
{
    return m == Modulation::bpsk ? "bpsk" : "4qam";
}

Modulation parse_modulation(const std::string& text)
{
    if (text == "bpsk" || text == "BPSK")
        return Modulation::bpsk;
    if (text == "4qam" || text == "4QAM" || text == "qpsk" || text == "QPSK")
        return Modulation::qam4;
    throw InvalidArgument("modulation must be 'bpsk' or '4qam', got '" + text + "'");
}

Constellation Constellation::bpsk()
{
    return Constellation(Modulation::bpsk, 1, {cplx(1.0, 0.0), cplx(-1.0, 0.0)});
}

Constellation Constellation::qam4()
{
    const double s = 1.0 / std::numbers::sqrt2;
    return Constellation(Modulation::qam4, 2, {cplx(s, s), cplx(s, -s), cplx(-s, s), cplx(-s, -s)});
}

Constellation Constellation::of(Modulation m)
{
    return m == Modulation::bpsk ? bpsk() : qam4();
}

std::vector<cplx> Constellation::modulate(std::span<const std::uint8_t> bits) const
{
    if (bits.size() % bits_per_symbol_ != 0)
        throw InvalidArgument("modulate: bit count " + std::to_string(bits.size()) + " is not a multiple of " +
                              std::to_string(bits_per_symbol_));
    std::vector<cplx> symbols;
    symbols.reserve(bits.size() / bits_per_symbol_);
    for (std::size_t i = 0; i < bits.size(); i += bits_per_symbol_)
    {
        std::size_t index = 0;
        for (unsigned b = 0; b < bits_per_symbol_; ++b)
        {
            if (bits[i + b] > 1)
                throw InvalidArgument("modulate: bits must be 0 or 1");
            index = (index << 1) | bits[i + b];
        }
        symbols.push_back(points_[index]);
    }
    return symbols;
}

void Constellation::demodulate(std::size_t index, std::vector<std::uint8_t>& out) const
{
    if (index >= points_.size())
        throw InvalidArgument("demodulate: point index out of range");
    for (unsigned b = bits_per_symbol_; b-- > 0;)
        out.push_back(static_cast<std::uint8_t>((index >> b) & 1U));
}

std::vector<std::uint8_t> Constellation::demodulate(std::size_t index) const
{
    std::vector<std::uint8_t> out;
    demodulate(index, out);
    return out;
}

} // namespace cfstbc
