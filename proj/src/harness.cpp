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

#include "cfstbc/harness.hpp"
#include "cfstbc/errors.hpp"
#include "cfstbc/golden.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace cfstbc
{

namespace
{

void check_common(const ScenarioConfig& cfg, std::vector<std::string>& errors)
{
    if (cfg.bs_count < 1)
        errors.push_back("L (BS count) must be >= 1");
    if (cfg.users < 1)
        errors.push_back("K (users) must be >= 1");
    if (cfg.antennas_per_user != 1 && cfg.antennas_per_user != 2)
        errors.push_back("antennas per user must be 1 or 2");
    if (cfg.trials < 1)
        errors.push_back("trials must be >= 1");
    if (cfg.inversion.method == Inversion::Method::neumann && cfg.inversion.order < 1)
        errors.push_back("Neumann order R must be >= 1");
}

void check_rank(const ScenarioConfig& cfg, std::size_t m, std::vector<std::string>& errors)
{
    if (m < 1)
    {
        errors.push_back("M (antennas per BS) must be >= 1");
        return;
    }
    if (cfg.antennas_per_user == 2 && 2 * m < 4 * cfg.users)
        errors.push_back("rank violation: dual-antenna users need 2M >= 4K, got M = " + std::to_string(m) +
                         ", K = " + std::to_string(cfg.users));
    if (cfg.antennas_per_user == 1 && m < cfg.users)
        errors.push_back("rank violation: single-antenna users need M >= K, got M = " + std::to_string(m) +
                         ", K = " + std::to_string(cfg.users));
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

/// Runs body(t) for t in [0, count) on `threads` workers. Outputs are written by trial index,
/// so the schedule never affects results.
template <class Body>
void for_each_trial(std::size_t count, unsigned threads, Body&& body)
{
    if (threads <= 1 || count <= 1)
    {
        for (std::size_t t = 0; t < count; ++t)
            body(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t t = next.fetch_add(1); t < count; t = next.fetch_add(1))
            {
                try
                {
                    body(t);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(count);
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

struct TrialTraffic
{
    std::vector<std::uint8_t> bits;         // all users, stream order
    std::vector<ComplexMatrix> transmitted; // per user, antennas_per_user x slots
    std::vector<ComplexMatrix> noise;       // per BS, M x slots
};

TrialTraffic draw_traffic(const ScenarioConfig& cfg, const Constellation& constellation, std::uint64_t trial)
{
    const GoldenParams params = golden_params();
    const unsigned per_user_bits = cfg.symbols_per_block() * constellation.bits_per_symbol();
    TrialTraffic traffic;
    traffic.bits.reserve(cfg.users * per_user_bits);
    for (std::size_t k = 0; k < cfg.users; ++k)
    {
        Stream rng = trial_rng(cfg.master_seed, trial, 0, k, Purpose::bits);
        std::vector<std::uint8_t> bits(per_user_bits);
        for (auto& b : bits)
            b = rng.bit() ? 1 : 0;
        const auto symbols = constellation.modulate(bits);
        traffic.bits.insert(traffic.bits.end(), bits.begin(), bits.end());
        if (cfg.antennas_per_user == 2)
            traffic.transmitted.push_back(encode({symbols[0], symbols[1], symbols[2], symbols[3]}, params).matrix());
        else
            traffic.transmitted.push_back(ComplexMatrix{{symbols[0]}});
    }
    for (std::size_t l = 0; l < cfg.bs_count; ++l)
    {
        if (cfg.noiseless)
            traffic.noise.emplace_back(cfg.antennas, cfg.slots());
        else
        {
            Stream rng = trial_rng(cfg.master_seed, trial, l, 0, Purpose::noise);
            traffic.noise.push_back(draw_noise(cfg.antennas, cfg.slots(), rng));
        }
    }
    return traffic;
}

struct BsDecoders
{
    std::vector<DecoderMatrix> decoders;
    double margin_mean = 0.0;
    FlopCounter flops;
};

BsDecoders build_all(const ScenarioConfig& cfg, const std::vector<ComplexMatrix>& systems, double rho)
{
    BsDecoders out;
    out.decoders.reserve(systems.size());
    double margin_sum = 0.0;
    for (const auto& g : systems)
    {
        out.decoders.push_back(build_decoder(cfg.decoder, g, rho, cfg.inversion, out.flops, cfg.antennas_per_user));
        margin_sum += convergence_margin(out.decoders.back().source_gram).spectral_radius;
    }
    out.margin_mean = margin_sum / static_cast<double>(systems.size());
    return out;
}

struct BerTrialOutcome
{
    std::vector<std::uint64_t> errors; // per SNR point
    std::vector<double> margin;        // per SNR point
    std::vector<FlopCounter> flops;    // per SNR point
};

BerTrialOutcome run_ber_trial(const ScenarioConfig& cfg, const Constellation& constellation,
                              const std::vector<double>& rhos, std::uint64_t trial)
{
    const ChannelRealization ch = draw_channel(cfg, cfg.antennas, trial);
    const TrialTraffic traffic = draw_traffic(cfg, constellation, trial);

    std::vector<ComplexMatrix> systems;
    systems.reserve(cfg.bs_count);
    for (std::size_t l = 0; l < cfg.bs_count; ++l)
        systems.push_back(system_matrix(ch, l));

    BerTrialOutcome out{std::vector<std::uint64_t>(rhos.size()), std::vector<double>(rhos.size()),
                        std::vector<FlopCounter>(rhos.size())};

    // ZF decoders do not depend on rho; build them once per trial.
    BsDecoders shared;
    if (cfg.decoder == DecoderKind::zf)
        shared = build_all(cfg, systems, rhos.front());

    std::vector<CVector> soft(cfg.bs_count);
    std::vector<CVector> gains(cfg.bs_count);
    std::vector<std::uint8_t> rx_bits;
    for (std::size_t p = 0; p < rhos.size(); ++p)
    {
        const double rho = rhos[p];
        const BsDecoders local = cfg.decoder == DecoderKind::zf ? BsDecoders{} : build_all(cfg, systems, rho);
        const BsDecoders& dec = cfg.decoder == DecoderKind::zf ? shared : local;

        for (std::size_t l = 0; l < cfg.bs_count; ++l)
        {
            const ComplexMatrix y = received_block(ch, traffic.transmitted, rho, traffic.noise[l], l);
            SoftOutput s = per_bs_soft(dec.decoders[l], systems[l], y.vec());
            soft[l] = std::move(s.soft);
            gains[l] = std::move(s.gains);
        }
        const Combined combined = cpu_combine(soft, gains);

        rx_bits.clear();
        for (std::size_t i = 0; i < combined.r.size(); ++i)
        {
            const std::size_t idx =
                detect(combined.r[i], combined.gains[i], rho, constellation, cfg.antennas_per_user);
            constellation.demodulate(idx, rx_bits);
        }
        out.errors[p] = ber_accumulate(traffic.bits, rx_bits).bit_errors;
        out.margin[p] = dec.margin_mean;
        out.flops[p] = dec.flops;
    }
    return out;
}

struct SeTrialOutcome
{
    double se_sum = 0.0;
    double margin = 0.0;
};

SeTrialOutcome run_se_trial(const ScenarioConfig& cfg, std::size_t antennas, std::uint64_t trial)
{
    const ChannelRealization ch = draw_channel(cfg, antennas, trial);
    std::vector<ComplexMatrix> systems;
    for (std::size_t l = 0; l < cfg.bs_count; ++l)
        systems.push_back(system_matrix(ch, l));
    const BsDecoders dec = build_all(cfg, systems, cfg.rho_fixed);

    std::vector<StreamCoupling> couplings;
    couplings.reserve(cfg.bs_count);
    for (std::size_t l = 0; l < cfg.bs_count; ++l)
        couplings.push_back(stream_coupling(dec.decoders[l].a, systems[l]));
    const std::vector<double> sinrs = sinr_all(couplings, cfg.rho_fixed, cfg.sinr_noise, cfg.antennas_per_user);

    const std::size_t per_user = cfg.symbols_per_block();
    SeTrialOutcome out;
    for (std::size_t k = 0; k < cfg.users; ++k)
        out.se_sum += spectral_efficiency(std::span<const double>(sinrs).subspan(k * per_user, per_user), cfg.slots());
    out.margin = dec.margin_mean;
    return out;
}

std::string format_point(const BerPoint& p)
{
    std::ostringstream os;
    os << "snr_db=" << p.snr_db << " ber=" << p.ber.ber << " errors=" << p.ber.bit_errors << "/" << p.ber.bits_total
       << " conv_margin=" << p.conv_margin_mean;
    return os.str();
}

std::string format_point(const SePoint& p)
{
    std::ostringstream os;
    os << "M=" << p.antennas << " se_per_user=" << p.se_mean_per_user << " se_sum=" << p.se_sum
       << " conv_margin=" << p.conv_margin_mean;
    return os.str();
}

} // namespace

ScenarioConfig paper_scale_ber()
{
    ScenarioConfig cfg;
    cfg.antennas = 256;
    cfg.users = 10;
    cfg.bs_count = 4;
    return cfg;
}

double bits_per_user_per_slot(const ScenarioConfig& cfg)
{
    const unsigned bps = Constellation::of(cfg.modulation).bits_per_symbol();
    return static_cast<double>(cfg.symbols_per_block() * bps) / static_cast<double>(cfg.slots());
}

std::vector<std::string> validate_ber(const ScenarioConfig& cfg)
{
    std::vector<std::string> errors;
    check_common(cfg, errors);
    check_rank(cfg, cfg.antennas, errors);
    if (cfg.snr_grid_db.empty())
        errors.push_back("SNR grid must not be empty");
    for (double db : cfg.snr_grid_db)
        if (!std::isfinite(db))
        {
            errors.push_back("SNR grid values must be finite");
            break;
        }
    return errors;
}

std::vector<std::string> validate_se(const ScenarioConfig& cfg)
{
    std::vector<std::string> errors;
    check_common(cfg, errors);
    if (cfg.m_grid.empty())
        errors.push_back("M grid must not be empty");
    for (std::size_t m : cfg.m_grid)
        check_rank(cfg, m, errors);
    if (!(cfg.rho_fixed > 0.0) || !std::isfinite(cfg.rho_fixed))
        errors.push_back("rho must be finite and > 0");
    return errors;
}

ChannelRealization draw_channel(const ScenarioConfig& cfg, std::size_t antennas, std::uint64_t trial)
{
    ChannelRealization ch;
    ch.antennas = antennas;
    ch.antennas_per_user = cfg.antennas_per_user;
    Stream large = trial_rng(cfg.master_seed, trial, 0, 0, Purpose::large_scale);
    ch.profile = draw_large_scale(cfg.bs_count, cfg.users, large);
    ch.small.reserve(cfg.bs_count * cfg.users);
    for (std::size_t l = 0; l < cfg.bs_count; ++l)
        for (std::size_t k = 0; k < cfg.users; ++k)
        {
            Stream rng = trial_rng(cfg.master_seed, trial, l, k, Purpose::small_scale);
            ch.small.push_back(draw_small_scale(antennas, cfg.antennas_per_user, rng));
        }
    return ch;
}

ComplexMatrix system_matrix(const ChannelRealization& ch, std::size_t bs)
{
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(ch.user_count());
    if (ch.antennas_per_user == 2)
    {
        const GoldenParams params = golden_params();
        for (std::size_t k = 0; k < ch.user_count(); ++k)
            blocks.push_back(equivalent_channel(ch.h(bs, k), params));
    }
    else
    {
        for (std::size_t k = 0; k < ch.user_count(); ++k)
            blocks.push_back(ch.h(bs, k));
    }
    return stack_system(blocks, ch.profile.row(bs));
}

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("CFSTBC_THREADS"))
    {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

RunResult run_ber_sweep(const ScenarioConfig& cfg, const ProgressFn& progress)
{
    if (auto errors = validate_ber(cfg); !errors.empty())
        throw InvalidArgument("invalid BER scenario: " + errors.front());
    const auto start = std::chrono::steady_clock::now();

    const Constellation constellation = Constellation::of(cfg.modulation);
    std::vector<double> rhos;
    for (double db : cfg.snr_grid_db)
        rhos.push_back(db_to_linear(db));

    std::vector<BerTrialOutcome> outcomes(cfg.trials);
    for_each_trial(cfg.trials, resolve_threads(cfg.threads),
                   [&](std::size_t t) { outcomes[t] = run_ber_trial(cfg, constellation, rhos, t); });

    RunResult result;
    result.kind = RunResult::Kind::ber;
    result.config = cfg;
    const std::uint64_t bits_per_trial = cfg.streams() * constellation.bits_per_symbol();
    for (std::size_t p = 0; p < rhos.size(); ++p)
    {
        std::uint64_t errors = 0;
        double margin_sum = 0.0;
        BerPoint point;
        point.snr_db = cfg.snr_grid_db[p];
        for (const auto& o : outcomes)
        {
            errors += o.errors[p];
            margin_sum += o.margin[p];
            point.flops += o.flops[p];
        }
        point.ber = BerEstimate::from_counts(errors, bits_per_trial * cfg.trials);
        point.conv_margin_mean = margin_sum / static_cast<double>(cfg.trials);
        result.ber_points.push_back(point);
        if (progress)
            progress(format_point(point));
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

RunResult run_se_sweep(const ScenarioConfig& cfg, const ProgressFn& progress)
{
    if (auto errors = validate_se(cfg); !errors.empty())
        throw InvalidArgument("invalid SE scenario: " + errors.front());
    const auto start = std::chrono::steady_clock::now();
    const unsigned threads = resolve_threads(cfg.threads);

    RunResult result;
    result.kind = RunResult::Kind::se;
    result.config = cfg;
    for (std::size_t m : cfg.m_grid)
    {
        std::vector<SeTrialOutcome> outcomes(cfg.trials);
        for_each_trial(cfg.trials, threads, [&](std::size_t t) { outcomes[t] = run_se_trial(cfg, m, t); });

        SePoint point;
        point.antennas = m;
        double se_sum = 0.0;
        double margin_sum = 0.0;
        for (const auto& o : outcomes)
        {
            se_sum += o.se_sum;
            margin_sum += o.margin;
        }
        const double n = static_cast<double>(cfg.trials);
        point.se_sum = se_sum / n;
        point.se_mean_per_user = point.se_sum / static_cast<double>(cfg.users);
        point.conv_margin_mean = margin_sum / n;
        result.se_points.push_back(point);
        if (progress)
            progress(format_point(point));
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace cfstbc
