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
#include "cfstbc/errors.hpp"
#include "cfstbc/golden.hpp"
#include "cfstbc/harness.hpp"
#include "cfstbc/linalg.hpp"
#include "cfstbc/receiver.hpp"
#include "cfstbc/results_io.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cfstbc;

namespace
{

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& in)
{
    if (in.ndim() != 2)
        throw InvalidArgument("expected a 2-D array");
    const auto rows = static_cast<std::size_t>(in.shape(0));
    const auto cols = static_cast<std::size_t>(in.shape(1));
    ComplexMatrix m(rows, cols);
    std::copy(in.data(), in.data() + rows * cols, m.data().begin());
    return m;
}

CArray to_array(const ComplexMatrix& m)
{
    CArray out({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

py::dict flops_dict(const FlopCounter& f)
{
    py::dict d;
    d["mults"] = f.complex_mults;
    d["divs"] = f.complex_divs;
    d["adds"] = f.complex_adds;
    return d;
}

py::dict result_dict(const RunResult& r)
{
    py::list points;
    for (const auto& p : r.ber_points)
    {
        py::dict d;
        d["snr_db"] = p.snr_db;
        d["ber"] = p.ber.ber;
        d["ci_halfwidth"] = p.ber.confidence_halfwidth;
        d["bit_errors"] = p.ber.bit_errors;
        d["bits"] = p.ber.bits_total;
        d["conv_margin_mean"] = p.conv_margin_mean;
        d["flops"] = flops_dict(p.flops);
        points.append(d);
    }
    for (const auto& p : r.se_points)
    {
        py::dict d;
        d["M"] = p.antennas;
        d["se_mean_per_user"] = p.se_mean_per_user;
        d["se_sum"] = p.se_sum;
        d["conv_margin_mean"] = p.conv_margin_mean;
        points.append(d);
    }
    py::dict out;
    out["points"] = points;
    out["csv"] = render_csv(r);
    out["wall_seconds"] = r.wall_seconds;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Cell-free massive MIMO uplink simulator core";
    m.attr("__version__") = CFSTBC_VERSION;

    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_ArithmeticError);
    py::register_exception<DegenerateSplitError>(m, "DegenerateSplitError", PyExc_ArithmeticError);
    py::register_exception<DegenerateSinrError>(m, "DegenerateSinrError", PyExc_ArithmeticError);

    m.def("golden_params", [] {
        const GoldenParams p = golden_params();
        py::dict d;
        d["a"] = p.a;
        d["b"] = p.b;
        d["c"] = p.c;
        d["d"] = p.d;
        d["gamma"] = p.gamma;
        d["p"] = p.p();
        d["s"] = p.s();
        return d;
    });

    m.def(
        "encode",
        [](const std::array<cplx, 4>& x) { return to_array(encode(x, golden_params()).matrix()); }, py::arg("x"),
        "2x2 Golden code block for four symbols.");
    m.def(
        "equivalent_channel", [](const CArray& h) { return to_array(equivalent_channel(to_matrix(h), golden_params())); },
        py::arg("h"), "2M x 4 equivalent channel of an M x 2 user channel.");

    m.def("gram", [](const CArray& g) { return to_array(gram(to_matrix(g))); }, py::arg("g"));
    m.def("exact_inverse", [](const CArray& z) { return to_array(exact_inverse(to_matrix(z))); }, py::arg("z"));
    m.def(
        "neumann_inverse", [](const CArray& z, unsigned terms) { return to_array(neumann_inverse(to_matrix(z), terms)); },
        py::arg("z"), py::arg("terms"));
    m.def("neumann_r2", [](const CArray& z) { return to_array(neumann_r2(to_matrix(z))); }, py::arg("z"));
    m.def(
        "convergence_margin",
        [](const CArray& z, unsigned max_iters, double tol) {
            const ConvergenceEstimate e = convergence_margin(to_matrix(z), max_iters, tol);
            return py::make_tuple(e.spectral_radius, e.converged, e.iterations);
        },
        py::arg("z"), py::arg("max_iters") = 200, py::arg("tol") = 1e-8,
        "(spectral radius of D^-1 E, converged, iterations)");
    m.def(
        "inversion_flops",
        [](const CArray& z, const std::string& inversion) {
            FlopCounter f;
            (void)invert(to_matrix(z), Inversion::parse(inversion), f);
            return flops_dict(f);
        },
        py::arg("z"), py::arg("inversion") = "exact");

    m.def(
        "zf_matrix",
        [](const CArray& g, const std::string& inversion) {
            FlopCounter f;
            return to_array(zf_matrix(to_matrix(g), Inversion::parse(inversion), f).a);
        },
        py::arg("g"), py::arg("inversion") = "exact");
    m.def(
        "mmse_matrix",
        [](const CArray& g, double rho, const std::string& inversion, unsigned antennas_per_user) {
            FlopCounter f;
            return to_array(mmse_matrix(to_matrix(g), rho, Inversion::parse(inversion), f, antennas_per_user).a);
        },
        py::arg("g"), py::arg("rho"), py::arg("inversion") = "exact", py::arg("antennas_per_user") = 2);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("L", &ScenarioConfig::bs_count)
        .def_readwrite("M", &ScenarioConfig::antennas)
        .def_readwrite("K", &ScenarioConfig::users)
        .def_readwrite("antennas_per_user", &ScenarioConfig::antennas_per_user)
        .def_property(
            "modulation", [](const ScenarioConfig& c) { return to_string(c.modulation); },
            [](ScenarioConfig& c, const std::string& s) { c.modulation = parse_modulation(s); })
        .def_property(
            "decoder", [](const ScenarioConfig& c) { return to_string(c.decoder); },
            [](ScenarioConfig& c, const std::string& s) { c.decoder = parse_decoder(s); })
        .def_property(
            "inversion", [](const ScenarioConfig& c) { return c.inversion.label(); },
            [](ScenarioConfig& c, const std::string& s) { c.inversion = Inversion::parse(s); })
        .def_property(
            "sinr_noise", [](const ScenarioConfig& c) { return to_string(c.sinr_noise); },
            [](ScenarioConfig& c, const std::string& s) { c.sinr_noise = parse_noise_scaling(s); })
        .def_readwrite("snr_grid_db", &ScenarioConfig::snr_grid_db)
        .def_readwrite("rho", &ScenarioConfig::rho_fixed)
        .def_readwrite("m_grid", &ScenarioConfig::m_grid)
        .def_readwrite("trials", &ScenarioConfig::trials)
        .def_readwrite("seed", &ScenarioConfig::master_seed)
        .def_readwrite("noiseless", &ScenarioConfig::noiseless)
        .def_readwrite("threads", &ScenarioConfig::threads)
        .def_static("paper_scale", &paper_scale_ber)
        .def("validate_ber", &validate_ber)
        .def("validate_se", &validate_se);

    m.def(
        "run_ber_sweep",
        [](const ScenarioConfig& cfg) {
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_ber_sweep(cfg);
            }
            return result_dict(r);
        },
        py::arg("config"));
    m.def(
        "run_se_sweep",
        [](const ScenarioConfig& cfg) {
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_se_sweep(cfg);
            }
            return result_dict(r);
        },
        py::arg("config"));

    m.def(
        "diagnostics",
        [](const ScenarioConfig& cfg, std::optional<double> inject_b) {
            const DiagnosticReport r = run_diagnostics(cfg, inject_b);
            py::dict d;
            d["p"] = r.p;
            d["s"] = r.s;
            d["conv_margin"] = r.conv_margin;
            d["exchangeability_residual"] = r.exchangeability_residual;
            d["ok"] = r.all_ok();
            d["text"] = r.to_text();
            return d;
        },
        py::arg("config") = ScenarioConfig{}, py::arg("inject_b") = py::none());
}
