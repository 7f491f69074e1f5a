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

#include "cfstbc/results_io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>
#include <type_traits>

namespace cfstbc
{

namespace
{

template <class T>
std::string join(const std::vector<T>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i)
            out += ',';
        if constexpr (std::is_floating_point_v<T>)
            out += format_number(values[i]);
        else
            out += std::to_string(values[i]);
    }
    return out;
}

} // namespace

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    if (ec != std::errc{})
        return "nan";
    return std::string(buf, ptr);
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg, RunResult::Kind kind)
{
    std::vector<std::pair<std::string, std::string>> out{
        {"L", std::to_string(cfg.bs_count)},
        {"K", std::to_string(cfg.users)},
        {"antennas", std::to_string(cfg.antennas_per_user)},
        {"modulation", to_string(cfg.modulation)},
        {"decoder", to_string(cfg.decoder)},
        {"inversion", cfg.inversion.label()},
        {"trials", std::to_string(cfg.trials)},
        {"seed", std::to_string(cfg.master_seed)},
    };
    if (kind == RunResult::Kind::ber)
    {
        out.emplace_back("M", std::to_string(cfg.antennas));
        out.emplace_back("snr-db", join(cfg.snr_grid_db));
        out.emplace_back("noiseless", cfg.noiseless ? "true" : "false");
    }
    else
    {
        out.emplace_back("M-grid", join(cfg.m_grid));
        out.emplace_back("rho", format_number(cfg.rho_fixed));
        out.emplace_back("sinr-noise", to_string(cfg.sinr_noise));
    }
    return out;
}

std::string csv_body(const RunResult& result)
{
    std::string out;
    if (result.kind == RunResult::Kind::ber)
    {
        out += ber_csv_header;
        out += '\n';
        for (const auto& p : result.ber_points)
        {
            out += format_number(p.snr_db) + ',' + format_number(p.ber.ber) + ',' +
                   format_number(p.ber.confidence_halfwidth) + ',' + std::to_string(p.ber.bits_total) + ',' +
                   format_number(p.conv_margin_mean) + ',' + std::to_string(p.flops.complex_mults) + ',' +
                   std::to_string(p.flops.complex_divs) + '\n';
        }
    }
    else
    {
        out += se_csv_header;
        out += '\n';
        for (const auto& p : result.se_points)
        {
            out += std::to_string(p.antennas) + ',' + format_number(p.se_mean_per_user) + ',' +
                   format_number(p.se_sum) + ',' + format_number(p.conv_margin_mean) + '\n';
        }
    }
    return out;
}

std::string render_csv(const RunResult& result)
{
    std::string out = "# cfstbc " CFSTBC_VERSION "\n";
    out += std::string("# command = ") + (result.kind == RunResult::Kind::ber ? "ber" : "se") + '\n';
    for (const auto& [key, value] : describe(result.config, result.kind))
        out += "# " + key + " = " + value + '\n';
    out += csv_body(result);
    return out;
}

void write_results(const RunResult& result, const std::filesystem::path& path)
{
    const std::string text = render_csv(result);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f)
        {
            f.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move results into '" + path.string() + "': " + ec.message());
    }
}

} // namespace cfstbc
