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
#include <doctest.h>

#include "cfstbc/cli.hpp"
#include "cfstbc/results_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace cfstbc;

namespace
{
ParsedCommand parse(std::vector<std::string> args)
{
    args.insert(args.begin(), "cfstbc");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return parse_and_validate(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> errors_of(std::vector<std::string> args)
{
    try
    {
        (void)parse(std::move(args));
    }
    catch (const ConfigError& e)
    {
        return e.messages();
    }
    return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

#ifdef CFSTBC_CLI_PATH
int run_cli(const std::string& args)
{
    const std::string cmd = std::string(CFSTBC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif
} // namespace

TEST_CASE("grid parsing")
{
    CHECK(parse_real_grid("-10:2:10") == std::vector<double>{-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10});
    CHECK(parse_real_grid("1.5,2,-3") == std::vector<double>{1.5, 2, -3});
    CHECK(parse_real_grid("7") == std::vector<double>{7});
    CHECK(parse_real_grid("0:0.1:0.3").size() == 4);
    CHECK(parse_count_grid("50:50:500").size() == 10);
    CHECK(parse_count_grid("50:50:500").back() == 500);
    CHECK_THROWS_AS(parse_real_grid("1:0:3"), InvalidArgument);
    CHECK_THROWS_AS(parse_real_grid("a,b"), InvalidArgument);
    CHECK_THROWS_AS(parse_real_grid(""), InvalidArgument);
}

TEST_CASE("paper-scale BER command line")
{
    const ParsedCommand pc = parse({"ber", "--M", "256", "--K", "10", "--L", "4", "--decoder", "zf", "--inversion",
                                    "neumann:2", "--snr-db", "-10:2:10", "--trials", "200", "--seed", "7"});
    CHECK(pc.invocation.subcommand == Subcommand::ber);
    CHECK(pc.config.antennas == 256);
    CHECK(pc.config.users == 10);
    CHECK(pc.config.bs_count == 4);
    CHECK(pc.config.decoder == DecoderKind::zf);
    CHECK(pc.config.inversion == Inversion::neumann(2));
    CHECK(pc.config.snr_grid_db.size() == 11);
    CHECK(pc.config.snr_grid_db.front() == -10.0);
    CHECK(pc.config.trials == 200);
    CHECK(pc.config.master_seed == 7);
}

TEST_CASE("spectral-efficiency command line")
{
    const ParsedCommand pc = parse({"se", "--K", "10", "--rho", "10", "--M-grid", "50:50:500"});
    CHECK(pc.invocation.subcommand == Subcommand::se);
    CHECK(pc.config.users == 10);
    CHECK(pc.config.rho_fixed == 10.0);
    CHECK(pc.config.m_grid == std::vector<std::size_t>{50, 100, 150, 200, 250, 300, 350, 400, 450, 500});
}

TEST_CASE("rank violation and multiple errors are reported together")
{
    const auto one = errors_of({"ber", "--M", "4", "--K", "10"});
    REQUIRE_FALSE(one.empty());
    CHECK(one.front().find("rank violation") != std::string::npos);

    const auto many = errors_of({"ber", "--M", "4", "--K", "10", "--trials", "0", "--decoder", "ml"});
    CHECK(many.size() >= 3);
    CHECK_FALSE(errors_of({"ber", "--bogus"}).empty());
    CHECK_FALSE(errors_of({"ber", "--M", "many"}).empty());
    CHECK_FALSE(errors_of({}).empty());
}

TEST_CASE("single-antenna mode defaults to 4QAM; presets and flags")
{
    const ParsedCommand single = parse({"ber", "--antennas", "1"});
    CHECK(single.config.antennas_per_user == 1);
    CHECK(single.config.modulation == Modulation::qam4);

    const ParsedCommand paper = parse({"ber", "--paper-scale", "--trials", "3"});
    CHECK(paper.config.antennas == 256);
    CHECK(paper.config.users == 10);
    CHECK(paper.config.trials == 3);

    const ParsedCommand misc = parse({"se", "--sinr-noise", "corrected", "--threads", "2", "-q", "-o", "out.csv"});
    CHECK(misc.config.sinr_noise == NoiseScaling::corrected);
    CHECK(misc.config.threads == 2);
    CHECK(misc.invocation.verbosity == 0);
    CHECK(misc.invocation.output_path == "out.csv");

    const ParsedCommand diag = parse({"diag", "--inject-b", "1.7"});
    CHECK(diag.invocation.subcommand == Subcommand::diag);
    REQUIRE(diag.invocation.inject_b.has_value());
    CHECK(*diag.invocation.inject_b == 1.7);
}

TEST_CASE("config file supplies values and flags win")
{
    const auto path = temp_file("cfstbc_test_config.ini", "M = 32\nK = 3\ntrials = 9\nsnr-db = 0:5:10\ndecoder = mmse\n");
    const ParsedCommand from_file = parse({"ber", "--config", path.string()});
    CHECK(from_file.config.antennas == 32);
    CHECK(from_file.config.users == 3);
    CHECK(from_file.config.trials == 9);
    CHECK(from_file.config.decoder == DecoderKind::mmse);
    CHECK(from_file.config.snr_grid_db == std::vector<double>{0, 5, 10});
    CHECK(from_file.invocation.config_path == path.string());

    const ParsedCommand overridden = parse({"ber", "--config", path.string(), "--M", "48", "--trials", "2"});
    CHECK(overridden.config.antennas == 48);
    CHECK(overridden.config.trials == 2);
    CHECK(overridden.config.users == 3);
    std::filesystem::remove(path);

    CHECK_FALSE(errors_of({"ber", "--config", "/nonexistent/cfstbc.ini"}).empty());
}

TEST_CASE("effective config is echoed in the CSV metadata")
{
    const ParsedCommand pc = parse({"ber", "--M", "16", "--K", "2", "--L", "2", "--trials", "2", "--snr-db", "0"});
    const std::string csv = render_csv(run_ber_sweep(pc.config));
    CHECK(csv.find("# M = 16\n") != std::string::npos);
    CHECK(csv.find("# K = 2\n") != std::string::npos);
    CHECK(csv.find("# L = 2\n") != std::string::npos);
    CHECK(csv.find("# trials = 2\n") != std::string::npos);
}

TEST_CASE("write_results: atomic write, byte-identical reruns, I/O failure")
{
    const ParsedCommand pc = parse({"ber", "--M", "16", "--K", "2", "--L", "2", "--trials", "4", "--snr-db", "0,3"});
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "cfstbc_test_a.csv";
    const auto b = dir / "cfstbc_test_b.csv";
    write_results(run_ber_sweep(pc.config), a);
    write_results(run_ber_sweep(pc.config), b);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        const std::string s = ss.str();
        return s.substr(s.find(ber_csv_header));
    };
    CHECK(slurp(a) == slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    CHECK_THROWS_AS(write_results(run_ber_sweep(pc.config), "/nonexistent-dir/x.csv"), IoError);
}

#ifdef CFSTBC_CLI_PATH
TEST_CASE("cli exit codes")
{
    CHECK(run_cli("diag") == 0);
    CHECK(run_cli("diag --inject-b 1.7") == 1);
    CHECK(run_cli("ber --M 4 --K 10") == 2);
    CHECK(run_cli("ber --bogus") == 2);
    CHECK(run_cli("ber --M 16 --K 2 --L 2 --trials 2 --snr-db 0 -q -o /nonexistent-dir/out.csv") == 4);
    CHECK(run_cli("se --M-grid 8 --K 2 --L 2 --trials 2 -q") == 0);
}
#endif
