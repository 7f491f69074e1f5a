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

#include "cfstbc/diagnostics.hpp"
#include "cfstbc/linalg.hpp"
#include "cfstbc/results_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cfstbc
{

namespace
{
constexpr double identity_tol = 1e-12;

std::string fmt(cplx v)
{
    return "(" + format_number(v.real()) + ", " + format_number(v.imag()) + ")";
}

const char* verdict(bool ok)
{
    return ok ? "ok" : "FAIL";
}
} // namespace

bool DiagnosticReport::p_ok() const
{
    return std::abs(p - 1.0) < identity_tol;
}

bool DiagnosticReport::s_ok() const
{
    return std::abs(s - 1.0) < identity_tol;
}

std::string DiagnosticReport::to_text() const
{
    std::ostringstream os;
    os << "golden a = " << fmt(params.a) << "\n"
       << "golden b = " << fmt(params.b) << "\n"
       << "golden c = " << fmt(params.c) << "\n"
       << "golden d = " << fmt(params.d) << "\n"
       << "golden gamma = " << fmt(params.gamma) << "\n"
       << "p = |a|^2 + |c|^2 = " << format_number(p) << "  [" << verdict(p_ok()) << "]\n"
       << "s = |ab|^2 + |cd|^2 = " << format_number(s) << "  [" << verdict(s_ok()) << "]\n"
       << "conv_margin = " << format_number(conv_margin) << (conv_margin_converged ? "" : " (not converged)")
       << "  [" << verdict(margin_ok()) << "]\n"
       << "exchangeability residual = " << format_number(exchangeability_residual) << " (limit "
       << format_number(exchangeability_limit) << ")  [" << verdict(exchangeability_ok()) << "]\n";
    return os.str();
}

DiagnosticReport run_diagnostics(const ScenarioConfig& cfg, std::optional<double> override_b)
{
    DiagnosticReport report;
    report.params = golden_params();
    if (override_b)
        report.params.b = *override_b;
    report.p = report.params.p();
    report.s = report.params.s();

    ScenarioConfig zf = cfg;
    zf.antennas_per_user = 2;
    const ChannelRealization ch = draw_channel(zf, zf.antennas, 0);
    const ConvergenceEstimate est = convergence_margin(gram(system_matrix(ch, 0)));
    report.conv_margin = est.spectral_radius;
    report.conv_margin_converged = est.converged;

    Stream rng = trial_rng(cfg.master_seed, 0, 0, 0, Purpose::diagnostic);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const ComplexMatrix h = draw_small_scale(cfg.antennas, 2, rng);
        SymbolVector x;
        for (auto& v : x)
            v = rng.complex_normal();
        worst = std::max(worst, verify_exchangeability(h, x, report.params));
    }
    report.exchangeability_residual = worst;
    report.exchangeability_limit = 1e-12 * static_cast<double>(cfg.antennas);
    return report;
}

} // namespace cfstbc
