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

#include "cfstbc/complex_matrix.hpp"
#include "cfstbc/constellation.hpp"
#include "cfstbc/linalg.hpp"

#include <span>
#include <string>
#include <vector>

namespace cfstbc
{

enum class DecoderKind
{
    zf,
    mmse,
};

std::string to_string(DecoderKind k);
DecoderKind parse_decoder(const std::string& text);

/// Per-BS linear decoder A_l together with the Gram-based matrix it inverted.
struct DecoderMatrix
{
    ComplexMatrix a;           // streams x rows(G)
    DecoderKind kind = DecoderKind::zf;
    Inversion inversion;
    ComplexMatrix source_gram; // Z_l (including the MMSE regularizer)
};

/// A = inv(G^H G) G^H. `counter` receives the cost of the inversion step only.
DecoderMatrix zf_matrix(const ComplexMatrix& g, const Inversion& inversion, FlopCounter& counter);

/// A = inv(G^H G + (n / rho) I) G^H with n antennas per user (n = 2 for Golden-code users).
DecoderMatrix mmse_matrix(const ComplexMatrix& g, double rho, const Inversion& inversion, FlopCounter& counter,
                          unsigned antennas_per_user = 2);

DecoderMatrix build_decoder(DecoderKind kind, const ComplexMatrix& g, double rho, const Inversion& inversion,
                            FlopCounter& counter, unsigned antennas_per_user = 2);

/// Per-BS soft output s_l = A y and the effective gains diag(A G).
struct SoftOutput
{
    CVector soft;
    CVector gains;
};

SoftOutput per_bs_soft(const DecoderMatrix& decoder, const ComplexMatrix& g, std::span<const cplx> y);

/// diag(A G), computed as one inner product per stream.
CVector effective_gains(const ComplexMatrix& a, const ComplexMatrix& g);

struct Combined
{
    CVector r;     // sum_l s_l
    CVector gains; // sum_l diag(A_l G_l)
};

Combined cpu_combine(std::span<const CVector> soft, std::span<const CVector> gains);

/// argmin_x |r - sqrt(rho / n) x g| over the constellation; ties go to the lowest index.
std::size_t detect(cplx r, cplx combined_gain, double rho, const Constellation& c, unsigned antennas_per_user = 2);

} // namespace cfstbc
