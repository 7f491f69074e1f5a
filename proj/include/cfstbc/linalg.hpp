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

#include <cstdint>
#include <string>

namespace cfstbc
{

/// Complex-operation tally. One complex multiply, divide or add counts as one unit.
struct FlopCounter
{
    std::uint64_t complex_mults = 0;
    std::uint64_t complex_divs = 0;
    std::uint64_t complex_adds = 0;

    FlopCounter& operator+=(const FlopCounter& o)
    {
        complex_mults += o.complex_mults;
        complex_divs += o.complex_divs;
        complex_adds += o.complex_adds;
        return *this;
    }
};

/// Z = D + E with D diagonal and E carrying the off-diagonal part.
struct NeumannSplit
{
    CVector diagonal;     // entries of D
    ComplexMatrix off;    // E, zero diagonal
};

/// Selects how the Hermitian matrix Z is inverted inside the linear decoders.
struct Inversion
{
    enum class Method
    {
        exact,
        neumann
    };

    Method method = Method::exact;
    unsigned order = 0; // Neumann terms R, only meaningful for Method::neumann

    static Inversion exact() { return {Method::exact, 0}; }
    static Inversion neumann(unsigned r) { return {Method::neumann, r}; }

    /// "exact" or "neumann:R"
    std::string label() const;
    static Inversion parse(const std::string& text);

    bool operator==(const Inversion&) const = default;
};

struct ConvergenceEstimate
{
    double spectral_radius = 0.0;
    bool converged = true; // false: power iteration hit the iteration cap
    unsigned iterations = 0;
};

/// G^H G. Requires rows >= cols; the result is exactly Hermitian with a real diagonal.
ComplexMatrix gram(const ComplexMatrix& g, FlopCounter& counter);
ComplexMatrix gram(const ComplexMatrix& g);

/// Inverse of a Hermitian positive definite matrix via Cholesky factorization and triangular
/// inversion. Throws SingularMatrixError naming the first non-positive pivot.
ComplexMatrix exact_inverse(const ComplexMatrix& z, FlopCounter& counter);
ComplexMatrix exact_inverse(const ComplexMatrix& z);

/// Throws DegenerateSplitError if any diagonal entry is zero.
NeumannSplit split_diag(const ComplexMatrix& z);

/// Truncated Neumann series sum_{r=0}^{R-1} (-D^{-1}E)^r D^{-1}, evaluated with dense products.
ComplexMatrix neumann_inverse(const ComplexMatrix& z, unsigned terms, FlopCounter& counter);
ComplexMatrix neumann_inverse(const ComplexMatrix& z, unsigned terms);

/// Two-term series D^{-1} - D^{-1} E D^{-1}, exploiting that D is diagonal.
ComplexMatrix neumann_r2(const ComplexMatrix& z, FlopCounter& counter);
ComplexMatrix neumann_r2(const ComplexMatrix& z);

/// Power-iteration estimate of the spectral radius of I - D^{-1} Z. The series converges iff < 1.
ConvergenceEstimate convergence_margin(const ComplexMatrix& z, unsigned max_iters = 200, double tol = 1e-8);

/// Dispatches on the inversion method; Neumann with R = 2 uses the specialized two-term form.
ComplexMatrix invert(const ComplexMatrix& z, const Inversion& how, FlopCounter& counter);

} // namespace cfstbc
