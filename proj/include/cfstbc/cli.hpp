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

#include "cfstbc/errors.hpp"
#include "cfstbc/harness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfstbc
{

enum class Subcommand
{
    ber,
    se,
    diag,
};

struct CliInvocation
{
    Subcommand subcommand = Subcommand::ber;
    std::string config_path;            // empty: flags only
    std::string output_path;            // empty: CSV goes to stdout
    int verbosity = 1;                  // 0 quiet, 1 per-point log, 2 extra detail
    std::optional<double> inject_b;     // diag only: negative control
};

struct ParsedCommand
{
    CliInvocation invocation;
    ScenarioConfig config;
    bool help_requested = false;
    std::string help_text;
};

/// All problems found while reading the command line and config file.
class ConfigError : public InvalidArgument
{
public:
    explicit ConfigError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const noexcept { return messages_; }

private:
    std::vector<std::string> messages_;
};

/// Parses "a:step:b" (inclusive), a comma list, or a single value.
std::vector<double> parse_real_grid(const std::string& text);
std::vector<std::size_t> parse_count_grid(const std::string& text);

/// Flags override values from --config (flat "key = value" lines with the flag names as keys).
/// Throws ConfigError listing every violation.
ParsedCommand parse_and_validate(int argc, const char* const* argv);

} // namespace cfstbc
