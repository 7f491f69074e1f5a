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

#include <complex>
#include <cstdint>
#include <random>

namespace cfstbc
{

/// What a substream is used for. The numeric values are part of the reproducibility contract.
enum class Purpose : std::uint64_t
{
    large_scale = 1,
    small_scale = 2,
    noise = 3,
    bits = 4,
    diagnostic = 5,
};

/// Seeded random stream. Built on mt19937_64 (fully specified by the standard) with
/// hand-written uniform and Gaussian transforms, so draws do not depend on the
/// standard library's distribution implementations.
class Stream
{
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller (both outputs are used).
    double normal();

    /// Circularly symmetric CN(0, variance): real and imaginary parts each N(0, variance / 2).
    std::complex<double> complex_normal(double variance = 1.0);

    bool bit() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic substream for a (trial, BS, user, purpose) key. Unused indices are passed as 0.
Stream trial_rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t bs, std::uint64_t user,
                 Purpose purpose);

} // namespace cfstbc
