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

#include <cstddef>
#include <span>
#include <vector>

namespace cfstbc
{

/// Large-scale amplitude gains beta_lk, one per (BS, user) pair, shared by both user antennas.
/// Rows (BSs) are sorted non-increasing across users.
struct LargeScaleProfile
{
    std::size_t bs_count = 0;
    std::size_t user_count = 0;
    std::vector<double> betas; // row-major L x K

    double operator()(std::size_t l, std::size_t k) const { return betas[l * user_count + k]; }
    std::span<const double> row(std::size_t l) const { return {betas.data() + l * user_count, user_count}; }
};

/// Small-scale fading per (BS, user) plus the large-scale profile.
struct ChannelRealization
{
    std::size_t antennas = 0;         // M, per BS
    std::size_t antennas_per_user = 2;
    LargeScaleProfile profile;
    std::vector<ComplexMatrix> small; // index l * K + k, each M x antennas_per_user

    std::size_t bs_count() const { return profile.bs_count; }
    std::size_t user_count() const { return profile.user_count; }
    const ComplexMatrix& h(std::size_t l, std::size_t k) const { return small[l * profile.user_count + k]; }
};

/// Each row: K independent U[0, 1] draws sorted descending.
LargeScaleProfile draw_large_scale(std::size_t bs_count, std::size_t user_count, Stream& rng);

/// M x n matrix of i.i.d. CN(0, 1) entries.
ComplexMatrix draw_small_scale(std::size_t antennas, std::size_t antennas_per_user, Stream& rng);

/// M x T receiver noise, i.i.d. CN(0, 1).
ComplexMatrix draw_noise(std::size_t antennas, std::size_t slots, Stream& rng);

/// Y_l = sum_k sqrt(rho / n) beta_lk H_lk X_k + W_l, with n = antennas per user
/// (n = 2 gives the sqrt(rho / 2) per-slot energy normalization of the dual-antenna model).
ComplexMatrix received_block(const ChannelRealization& channels, std::span<const ComplexMatrix> transmitted,
                             double rho, const ComplexMatrix& noise, std::size_t bs);

} // namespace cfstbc
