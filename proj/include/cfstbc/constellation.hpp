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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cfstbc
{

enum class Modulation
{
    bpsk,
    qam4,
};

std::string to_string(Modulation m);
Modulation parse_modulation(const std::string& text);

/// Unit-average-energy Gray-mapped constellation. Point index == integer value of its bit label
/// (first bit most significant).
///
///   BPSK: 0 -> +1, 1 -> -1
///   4QAM: first bit selects the sign of the real part, second bit the imaginary part (0 -> +)
class Constellation
{
public:
    static Constellation bpsk();
    static Constellation qam4();
    static Constellation of(Modulation m);

    Modulation kind() const noexcept { return kind_; }
    unsigned bits_per_symbol() const noexcept { return bits_per_symbol_; }
    const std::vector<cplx>& points() const noexcept { return points_; }

    /// Bits are 0/1 bytes; the count must be a multiple of bits_per_symbol().
    std::vector<cplx> modulate(std::span<const std::uint8_t> bits) const;

    /// Bit label of the point at `index`, appended to `out`.
    void demodulate(std::size_t index, std::vector<std::uint8_t>& out) const;
    std::vector<std::uint8_t> demodulate(std::size_t index) const;

private:
    Constellation(Modulation kind, unsigned bps, std::vector<cplx> points)
        : kind_(kind), bits_per_symbol_(bps), points_(std::move(points))
    {
    }

    Modulation kind_;
    unsigned bits_per_symbol_;
    std::vector<cplx> points_;
};

} // namespace cfstbc
