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

/// Where the signal-power factor rho / n enters the interference-plus-noise variance.
///
/// `printed` multiplies both the interference and the decoder-noise terms by rho / n.
/// `corrected` applies it to the interference only, matching unit-variance receiver noise.
enum class NoiseScaling
{
    printed,
    corrected,
};

std::string to_string(NoiseScaling s);
NoiseScaling parse_noise_scaling(const std::string& text);

/// Per-stream link quantities of one BS: the product A_l G_l and the squared row norms of A_l.
struct StreamCoupling
{
    ComplexMatrix product;       // A_l G_l
    std::vector<double> row_sq;  // ||a_i||^2 for each row i of A_l
};

StreamCoupling stream_coupling(const ComplexMatrix& a, const ComplexMatrix& g);

/// Interference plus noise variance of stream `index` summed over BSs. `decoders[l]` and
/// `systems[l]` are A_l and G_l. `antennas_per_user` sets the rho / n signal scale.
double interference_noise_variance(std::span<const ComplexMatrix> decoders, std::span<const ComplexMatrix> systems,
                                   double rho, std::size_t index, NoiseScaling scaling = NoiseScaling::printed,
                                   unsigned antennas_per_user = 2);

double sinr(std::span<const ComplexMatrix> decoders, std::span<const ComplexMatrix> systems, double rho,
            std::size_t index, NoiseScaling scaling = NoiseScaling::printed, unsigned antennas_per_user = 2);

/// SINR of every stream from precomputed couplings (one per BS).
std::vector<double> sinr_all(std::span<const StreamCoupling> couplings, double rho,
                             NoiseScaling scaling = NoiseScaling::printed, unsigned antennas_per_user = 2);

/// (1 / slots) sum_i log2(1 + sinr_i). Golden-code users: 4 SINRs over 2 slots.
double spectral_efficiency(std::span<const double> sinrs, unsigned slots = 2);

struct BerEstimate
{
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_total = 0;
    double ber = 0.0;
    double confidence_halfwidth = 0.0; // 95% normal approximation

    static BerEstimate from_counts(std::uint64_t errors, std::uint64_t total);
};

BerEstimate ber_accumulate(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits);

} // namespace cfstbc
