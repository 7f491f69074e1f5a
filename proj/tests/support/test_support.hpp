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

// Test-only generators and brute-force oracles. Nothing here calls the code path it is used to check.

#pragma once

#include "cfstbc/channel.hpp"
#include "cfstbc/complex_matrix.hpp"
#include "cfstbc/golden.hpp"
#include "cfstbc/rng.hpp"

#include <cmath>
#include <vector>

namespace cfstbc::testing
{

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Stream& rng)
{
    ComplexMatrix m(rows, cols);
    for (auto& v : m.data())
        v = rng.complex_normal();
    return m;
}

/// Entry-by-entry Gram: Z_ij = sum_r conj(G_ri) G_rj, every entry summed independently.
inline ComplexMatrix brute_gram(const ComplexMatrix& g)
{
    ComplexMatrix z(g.cols(), g.cols());
    for (std::size_t i = 0; i < g.cols(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
        {
            cplx acc{};
            for (std::size_t r = 0; r < g.rows(); ++r)
                acc += std::conj(g(r, i)) * g(r, j);
            z(i, j) = acc;
        }
    return z;
}

/// Naive triple-loop product.
inline ComplexMatrix brute_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
        {
            cplx acc{};
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

/// Unitary matrix from modified Gram-Schmidt on a random square matrix.
inline ComplexMatrix random_unitary(std::size_t n, Stream& rng)
{
    ComplexMatrix q = random_matrix(n, n, rng);
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t p = 0; p < j; ++p)
        {
            cplx dot{};
            for (std::size_t r = 0; r < n; ++r)
                dot += std::conj(q(r, p)) * q(r, j);
            for (std::size_t r = 0; r < n; ++r)
                q(r, j) -= dot * q(r, p);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            nrm += std::norm(q(r, j));
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < n; ++r)
            q(r, j) /= nrm;
    }
    return q;
}

/// Hermitian PD matrix U diag(lambda) U^H with eigenvalues log-spaced in [1, cond].
inline ComplexMatrix random_hpd(std::size_t n, double cond, Stream& rng)
{
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexMatrix scaled = u;
    for (std::size_t j = 0; j < n; ++j)
    {
        const double t = n > 1 ? static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
        const double lambda = std::pow(cond, t);
        for (std::size_t r = 0; r < n; ++r)
            scaled(r, j) *= lambda;
    }
    return brute_product(scaled, u.adjoint());
}

/// Stacked Golden-code system matrix for K users with the given gains, drawn from `rng`.
inline ComplexMatrix random_golden_system(std::size_t antennas, std::size_t users, Stream& rng,
                                          std::vector<double> betas = {})
{
    if (betas.empty())
        betas.assign(users, 1.0);
    std::vector<ComplexMatrix> blocks;
    for (std::size_t k = 0; k < users; ++k)
        blocks.push_back(equivalent_channel(random_matrix(antennas, 2, rng), golden_params()));
    return stack_system(blocks, betas);
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return (a - b).frobenius_norm();
}

/// Gaussian tail probability.
inline double q_function(double x)
{
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

} // namespace cfstbc::testing
