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

#include "cfstbc/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace cfstbc
{

namespace
{

std::string join_messages(const std::vector<std::string>& messages)
{
    std::string out;
    for (const auto& m : messages)
    {
        if (!out.empty())
            out += "; ";
        out += m;
    }
    return out;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text)
{
    const std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        throw InvalidArgument("'" + text + "' is not a finite number");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(item);
    if (!text.empty() && text.back() == sep)
        parts.emplace_back();
    return parts;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : InvalidArgument(join_messages(messages)), messages_(std::move(messages))
{
}

std::vector<double> parse_real_grid(const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw InvalidArgument("grid is empty");
    if (t.find(':') != std::string::npos)
    {
        const auto parts = split(t, ':');
        if (parts.size() != 3)
            throw InvalidArgument("range grid must be start:step:stop, got '" + text + "'");
        const double start = parse_real(parts[0]);
        const double step = parse_real(parts[1]);
        const double stop = parse_real(parts[2]);
        if (!(step > 0.0) || stop < start)
            throw InvalidArgument("range grid needs step > 0 and stop >= start, got '" + text + "'");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000)
            throw InvalidArgument("range grid '" + text + "' has too many points");
        std::vector<double> grid;
        for (std::size_t i = 0; i < count; ++i)
            grid.push_back(start + static_cast<double>(i) * step);
        return grid;
    }
    std::vector<double> grid;
    for (const auto& part : split(t, ','))
        grid.push_back(parse_real(part));
    return grid;
}

std::vector<std::size_t> parse_count_grid(const std::string& text)
{
    std::vector<std::size_t> out;
    for (double v : parse_real_grid(text))
    {
        if (v < 0.0 || v != std::floor(v))
            throw InvalidArgument("grid value " + std::to_string(v) + " is not a non-negative integer");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

ParsedCommand parse_and_validate(int argc, const char* const* argv)
{
    CLI::App app{"Cell-free massive MIMO uplink simulator with Golden-code dual-antenna users", "cfstbc"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "Flat 'key = value' file using the flag names as keys; flags win");
    app.allow_config_extras(false);

    std::optional<std::size_t> bs_count, antennas, users, trials;
    std::optional<unsigned> antennas_per_user, threads;
    std::optional<std::string> modulation, decoder, inversion, snr_db, m_grid, sinr_noise;
    std::optional<double> rho, inject_b;
    std::optional<std::uint64_t> seed;
    bool noiseless = false;
    bool paper_scale = false;
    std::string output;
    int verbose = 0;
    bool quiet = false;

    app.add_option("--L", bs_count, "Number of BSs");
    app.add_option("--M", antennas, "Antennas per BS (ber, diag)");
    app.add_option("--K", users, "Number of users");
    app.add_option("--antennas", antennas_per_user, "Antennas per user: 2 (Golden code) or 1 (no STBC)");
    app.add_option("--modulation", modulation, "bpsk | 4qam");
    app.add_option("--decoder", decoder, "zf | mmse");
    app.add_option("--inversion", inversion, "exact | neumann:R");
    app.add_option("--snr-db", snr_db, "SNR grid in dB: start:step:stop or comma list");
    app.add_option("--rho", rho, "Linear SNR for SE runs");
    app.add_option("--M-grid", m_grid, "BS antenna grid for SE runs: start:step:stop or comma list");
    app.add_option("--trials", trials, "Monte Carlo trials per grid point");
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--sinr-noise", sinr_noise, "printed | corrected noise scaling in the SINR formula");
    app.add_option("--threads", threads, "Worker threads (default: CFSTBC_THREADS or all cores)");
    app.add_option("--inject-b", inject_b, "diag: replace the Golden constant b (negative control)");
    app.add_flag("--noiseless", noiseless, "Zero receiver noise (diagnostic)");
    app.add_flag("--paper-scale", paper_scale, "Start from the M = 256, K = 10 preset");
    app.add_option("-o,--output", output, "CSV output path (default: stdout)");
    app.add_flag("-v,--verbose", verbose, "More log output");
    app.add_flag("-q,--quiet", quiet, "No per-point log");

    auto* ber = app.add_subcommand("ber", "BER versus SNR sweep");
    auto* se = app.add_subcommand("se", "Spectral efficiency versus BS antennas sweep");
    auto* diag = app.add_subcommand("diag", "Golden-code and Neumann diagnostics");
    for (auto* sub : {ber, se, diag})
        sub->fallthrough();

    ParsedCommand parsed;
    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&)
    {
        parsed.help_requested = true;
        parsed.help_text = app.help();
        return parsed;
    }
    catch (const CLI::ParseError& e)
    {
        throw ConfigError({e.what()});
    }

    CliInvocation& inv = parsed.invocation;
    inv.subcommand = ber->parsed() ? Subcommand::ber : (se->parsed() ? Subcommand::se : Subcommand::diag);
    inv.output_path = output;
    inv.verbosity = quiet ? 0 : 1 + verbose;
    inv.inject_b = inject_b;
    if (auto* cfg_opt = app.get_option("--config"); cfg_opt->count() > 0)
        inv.config_path = cfg_opt->as<std::string>();

    ScenarioConfig cfg = paper_scale ? paper_scale_ber() : ScenarioConfig{};
    std::vector<std::string> errors;
    auto guarded = [&](auto&& fn) {
        try
        {
            fn();
        }
        catch (const InvalidArgument& e)
        {
            errors.emplace_back(e.what());
        }
    };

    if (bs_count)
        cfg.bs_count = *bs_count;
    if (antennas)
        cfg.antennas = *antennas;
    if (users)
        cfg.users = *users;
    if (antennas_per_user)
    {
        cfg.antennas_per_user = *antennas_per_user;
        // Single-antenna users default to 4QAM so bits per slot match the dual-antenna BPSK mode.
        if (*antennas_per_user == 1 && !modulation)
            cfg.modulation = Modulation::qam4;
    }
    if (trials)
        cfg.trials = *trials;
    if (seed)
        cfg.master_seed = *seed;
    if (threads)
        cfg.threads = *threads;
    if (rho)
        cfg.rho_fixed = *rho;
    cfg.noiseless = noiseless;
    if (modulation)
        guarded([&] { cfg.modulation = parse_modulation(*modulation); });
    if (decoder)
        guarded([&] { cfg.decoder = parse_decoder(*decoder); });
    if (inversion)
        guarded([&] { cfg.inversion = Inversion::parse(*inversion); });
    if (sinr_noise)
        guarded([&] { cfg.sinr_noise = parse_noise_scaling(*sinr_noise); });
    if (snr_db)
        guarded([&] { cfg.snr_grid_db = parse_real_grid(*snr_db); });
    if (m_grid)
        guarded([&] { cfg.m_grid = parse_count_grid(*m_grid); });

    std::vector<std::string> violations;
    switch (inv.subcommand)
    {
    case Subcommand::ber:
        violations = validate_ber(cfg);
        break;
    case Subcommand::se:
        violations = validate_se(cfg);
        break;
    case Subcommand::diag:
        if (cfg.antennas_per_user != 2)
            violations.push_back("diag runs on dual-antenna (Golden-code) users only");
        else
            violations = validate_ber(cfg);
        break;
    }
    errors.insert(errors.end(), violations.begin(), violations.end());
    if (!errors.empty())
        throw ConfigError(std::move(errors));

    parsed.config = cfg;
    return parsed;
}

} // namespace cfstbc
