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

// cfstbc ber|se|diag [flags]
//
// Exit codes: 0 success, 2 config error, 3 numerical error, 4 I/O error.

#include "cfstbc/cli.hpp"
#include "cfstbc/diagnostics.hpp"
#include "cfstbc/results_io.hpp"

#include <iostream>

namespace
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_failed_check = 1,
    exit_config = 2,
    exit_numerical = 3,
    exit_io = 4,
};

int run(const cfstbc::ParsedCommand& cmd)
{
    using namespace cfstbc;
    const CliInvocation& inv = cmd.invocation;

    if (inv.subcommand == Subcommand::diag)
    {
        const DiagnosticReport report = run_diagnostics(cmd.config, inv.inject_b);
        std::cout << report.to_text();
        return report.all_ok() ? exit_ok : exit_failed_check;
    }

    ProgressFn log;
    if (inv.verbosity > 0)
        log = [](const std::string& line) { std::cerr << line << '\n'; };

    const RunResult result =
        inv.subcommand == Subcommand::ber ? run_ber_sweep(cmd.config, log) : run_se_sweep(cmd.config, log);

    if (inv.output_path.empty())
        std::cout << render_csv(result);
    else
        write_results(result, inv.output_path);

    if (inv.verbosity > 0)
        std::cerr << "done: " << (result.kind == RunResult::Kind::ber ? result.ber_points.size() : result.se_points.size())
                  << " grid points, seed " << cmd.config.master_seed << ", " << format_number(result.wall_seconds)
                  << " s\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    using namespace cfstbc;
    ParsedCommand cmd;
    try
    {
        cmd = parse_and_validate(argc, argv);
    }
    catch (const ConfigError& e)
    {
        for (const auto& m : e.messages())
            std::cerr << "config error: " << m << '\n';
        return exit_config;
    }
    if (cmd.help_requested)
    {
        std::cout << cmd.help_text;
        return exit_ok;
    }

    try
    {
        return run(cmd);
    }
    catch (const IoError& e)
    {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const NumericalError& e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (const InvalidArgument& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
}
