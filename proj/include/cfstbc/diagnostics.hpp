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

#include "cfstbc/golden.hpp"
#include "cfstbc/harness.hpp"

#include <optional>
#include <string>

namespace cfstbc
{

struct DiagnosticReport
{
    GoldenParams params;
    double p = 0.0;
    double s = 0.0;
    double conv_margin = 0.0;        // BS 0 of trial 0, ZF Gram matrix
    bool conv_margin_converged = true;
    double exchangeability_residual = 0.0; // max over 100 seeded (H, x) pairs
    double exchangeability_limit = 0.0;    // 1e-12 * M

    bool p_ok() const;
    bool s_ok() const;
    bool margin_ok() const { return conv_margin < 1.0; }
    bool exchangeability_ok() const { return exchangeability_residual < exchangeability_limit; }
    bool all_ok() const { return p_ok() && s_ok() && margin_ok() && exchangeability_ok(); }

    std::string to_text() const;
};

/// Golden-code identities, Neumann convergence margin and exchangeability residual for the
/// configured M, K, L and seed. `override_b` replaces the constant b (negative control).
DiagnosticReport run_diagnostics(const ScenarioConfig& cfg, std::optional<double> override_b = std::nullopt);

} // namespace cfstbc
