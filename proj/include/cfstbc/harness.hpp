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

#include "cfstbc/channel.hpp"
#include "cfstbc/constellation.hpp"
#include "cfstbc/linalg.hpp"
#include "cfstbc/metrics.hpp"
#include "cfstbc/receiver.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cfstbc
{

/// Full description of one experiment. Defaults are the desk-scale setup (M = 64, K = 4, L = 4).
struct ScenarioConfig
{
    std::size_t bs_count = 4;      // L
    std::size_t antennas = 64;     // M, per BS (BER runs)
    std::size_t users = 4;         // K
    unsigned antennas_per_user = 2;
    Modulation modulation = Modulation::bpsk;
    DecoderKind decoder = DecoderKind::zf;
    Inversion inversion = Inversion::exact();
    std::vector<double> snr_grid_db{-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10};
    double rho_fixed = 10.0;       // linear SNR for SE runs
    std::vector<std::size_t> m_grid{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    std::size_t trials = 100;
    std::uint64_t master_seed = 1;
    bool noiseless = false;        // diagnostic: zero receiver noise
    NoiseScaling sinr_noise = NoiseScaling::printed;
    unsigned threads = 0;          // 0: CFSTBC_THREADS or hardware concurrency

    /// Dual-antenna users send 4 symbols over 2 slots; single-antenna users 1 symbol per slot.
    unsigned symbols_per_block() const { return antennas_per_user == 2 ? 4U : 1U; }
    unsigned slots() const { return antennas_per_user == 2 ? 2U : 1U; }
    std::size_t streams() const { return users * symbols_per_block(); }
};

/// Paper-scale BER preset: M = 256, K = 10, L = 4.
ScenarioConfig paper_scale_ber();

/// Information bits per user per time slot (2 for both dual-antenna BPSK and single-antenna 4QAM).
double bits_per_user_per_slot(const ScenarioConfig& cfg);

/// Every constraint violation, empty when valid.
std::vector<std::string> validate_ber(const ScenarioConfig& cfg);
std::vector<std::string> validate_se(const ScenarioConfig& cfg);

struct BerPoint
{
    double snr_db = 0.0;
    BerEstimate ber;
    double conv_margin_mean = 0.0;
    FlopCounter flops; // inversion cost summed over trials and BSs
};

struct SePoint
{
    std::size_t antennas = 0;
    double se_mean_per_user = 0.0;
    double se_sum = 0.0;
    double conv_margin_mean = 0.0;
};

struct RunResult
{
    enum class Kind
    {
        ber,
        se
    };

    Kind kind = Kind::ber;
    ScenarioConfig config;
    std::vector<BerPoint> ber_points;
    std::vector<SePoint> se_points;
    double wall_seconds = 0.0;
};

/// Called once per finished grid point, in grid order.
using ProgressFn = std::function<void(const std::string&)>;

/// Channel realization for trial `trial` with M antennas per BS. Small-scale draws for a smaller M
/// are the leading rows of those for a larger M.
ChannelRealization draw_channel(const ScenarioConfig& cfg, std::size_t antennas, std::uint64_t trial);

/// System matrix of BS l: stacked beta-scaled equivalent channels (dual) or raw channels (single).
ComplexMatrix system_matrix(const ChannelRealization& ch, std::size_t bs);

RunResult run_ber_sweep(const ScenarioConfig& cfg, const ProgressFn& progress = {});
RunResult run_se_sweep(const ScenarioConfig& cfg, const ProgressFn& progress = {});

/// Worker count for a sweep.
unsigned resolve_threads(unsigned requested);

} // namespace cfstbc
