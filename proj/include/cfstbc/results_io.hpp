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

#include "cfstbc/harness.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfstbc
{

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* ber_csv_header = "snr_db,ber,ci_halfwidth,bits,conv_margin_mean,mults,divs";
inline constexpr const char* se_csv_header = "M,se_mean_per_user,se_sum,conv_margin_mean";

/// 10 significant digits, '.' decimal separator, locale independent.
std::string format_number(double v);

/// Effective configuration as ordered key/value pairs (same keys as the CLI flags).
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg, RunResult::Kind kind);

/// Header row plus one row per grid point.
std::string csv_body(const RunResult& result);

/// '#'-prefixed metadata lines followed by csv_body().
std::string render_csv(const RunResult& result);

/// Writes render_csv() through a temporary file and rename, so a failed write leaves no partial file.
void write_results(const RunResult& result, const std::filesystem::path& path);

} // namespace cfstbc
