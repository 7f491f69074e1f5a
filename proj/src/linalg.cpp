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

#include "cfstbc/linalg.hpp"
#include "cfstbc/errors.hpp"

#include <charconv>
#include <cmath>
#include <vector>

namespace cfstbc
{

namespace
{

void require_square(const ComplexMatrix& z, const char* what)
{
    if (z.empty() || !z.square())
        throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
}

// Dense product with nominal operation accounting (zeros are not skipped in the tally).
ComplexMatrix counted_product(const ComplexMatrix& a, const ComplexMatrix& b, FlopCounter& counter)
{
    const auto n = static_cast<std::uint64_t>(a.rows());
    const auto k = static_cast<std::uint64_t>(a.cols());
    const auto m = static_cast<std::uint64_t>(b.cols());
    counter.complex_mults += n * k * m;
    counter.complex_adds += n * (k - 1) * m;
    return a * b;
}

bool is_hermitian_with_positive_diagonal(const ComplexMatrix& z)
{
    const double scale = z.max_abs();
    const double tol = 1e-12 * (scale > 0.0 ? scale : 1.0);
    for (std::size_t i = 0; i < z.rows(); ++i)
    {
        if (!(z(i, i).real() > 0.0) || std::abs(z(i, i).imag()) > tol)
            return false;
        for (std::size_t j = i + 1; j < z.cols(); ++j)
            if (std::abs(z(i, j) - std::conj(z(j, i))) > tol)
                return false;
    }
    return true;
}

} // namespace

std::string Inversion::label() const
{
    if (method == Method::exact)
        return "exact";
    return "neumann:" + std::to_string(order);
}

Inversion Inversion::parse(const std::string& text)
{
    if (text == "exact")
        return exact();
    const std::string prefix = "neumann:";
    if (text.rfind(prefix, 0) == 0)
    {
        unsigned r = 0;
        const char* first = text.data() + prefix.size();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, r);
        if (ec == std::errc{} && ptr == last && first != last && r >= 1)
            return neumann(r);
    }
    throw InvalidArgument("inversion must be 'exact' or 'neumann:R' with R >= 1, got '" + text + "'");
}

ComplexMatrix gram(const ComplexMatrix& g, FlopCounter& counter)
{
    if (g.empty() || g.rows() < g.cols())
        throw InvalidArgument("gram: expected a tall matrix (rows >= cols), got " + std::to_string(g.rows()) + "x" +
                              std::to_string(g.cols()));
    const std::size_t n = g.cols();
    const std::size_t m = g.rows();
    // Row-wise rank-1 accumulation keeps memory access contiguous; each entry still sums over r in order.
    std::vector<double> diag(n, 0.0);
    ComplexMatrix z(n, n);
    for (std::size_t r = 0; r < m; ++r)
    {
        const auto row = g.row(r);
        for (std::size_t i = 0; i < n; ++i)
        {
            const cplx gi = std::conj(row[i]);
            diag[i] += std::norm(row[i]);
            auto zrow = z.row(i);
            for (std::size_t j = i + 1; j < n; ++j)
                zrow[j] += gi * row[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        z(i, i) = diag[i];
        for (std::size_t j = i + 1; j < n; ++j)
            z(j, i) = std::conj(z(i, j));
    }
    const auto upper = static_cast<std::uint64_t>(n * (n + 1) / 2);
    counter.complex_mults += upper * m;
    counter.complex_adds += upper * (m - 1);
    return z;
}

ComplexMatrix gram(const ComplexMatrix& g)
{
    FlopCounter scratch;
    return gram(g, scratch);
}

ComplexMatrix exact_inverse(const ComplexMatrix& z, FlopCounter& counter)
{
    require_square(z, "exact_inverse");
    const std::size_t n = z.rows();

    // Z = L L^H, L lower triangular with a real positive diagonal.
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        double d = z(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        counter.complex_mults += j;
        counter.complex_adds += j;
        if (!(d > 0.0) || !std::isfinite(d))
            throw SingularMatrixError(j);
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i)
        {
            cplx acc = z(i, j);
            for (std::size_t k = 0; k < j; ++k)
                acc -= l(i, k) * std::conj(l(j, k));
            l(i, j) = acc / ljj;
        }
        const auto below = static_cast<std::uint64_t>(n - j - 1);
        counter.complex_mults += below * j;
        counter.complex_adds += below * j;
        counter.complex_divs += below;
    }

    // L^{-1} by forward substitution, column by column.
    ComplexMatrix linv(n, n);
    for (std::size_t c = 0; c < n; ++c)
    {
        linv(c, c) = 1.0 / l(c, c);
        counter.complex_divs += 1;
        for (std::size_t i = c + 1; i < n; ++i)
        {
            cplx acc{};
            for (std::size_t k = c; k < i; ++k)
                acc += l(i, k) * linv(k, c);
            linv(i, c) = -acc / l(i, i);
            counter.complex_mults += i - c;
            counter.complex_adds += i - c - 1;
            counter.complex_divs += 1;
        }
    }

    // Z^{-1} = L^{-H} L^{-1}; fill the upper triangle and mirror.
    ComplexMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i; j < n; ++j)
        {
            cplx acc{};
            for (std::size_t k = j; k < n; ++k)
                acc += std::conj(linv(k, i)) * linv(k, j);
            counter.complex_mults += n - j;
            counter.complex_adds += n - j - 1;
            if (i == j)
                inv(i, i) = acc.real();
            else
            {
                inv(i, j) = acc;
                inv(j, i) = std::conj(acc);
            }
        }
    }
    return inv;
}

ComplexMatrix exact_inverse(const ComplexMatrix& z)
{
    FlopCounter scratch;
    return exact_inverse(z, scratch);
}

NeumannSplit split_diag(const ComplexMatrix& z)
{
    require_square(z, "split_diag");
    NeumannSplit split{CVector(z.rows()), z};
    for (std::size_t i = 0; i < z.rows(); ++i)
    {
        if (z(i, i) == cplx{})
            throw DegenerateSplitError(i);
        split.diagonal[i] = z(i, i);
        split.off(i, i) = 0.0;
    }
    return split;
}

ComplexMatrix neumann_inverse(const ComplexMatrix& z, unsigned terms, FlopCounter& counter)
{
    if (terms < 1)
        throw InvalidArgument("neumann_inverse: order R must be >= 1");
    const NeumannSplit split = split_diag(z);
    const std::size_t n = z.rows();

    CVector inv_d(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_d[i] = 1.0 / split.diagonal[i];
    counter.complex_divs += n;

    // step = -D^{-1} E
    ComplexMatrix step(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                step(i, j) = -(inv_d[i] * split.off(i, j));
    counter.complex_mults += static_cast<std::uint64_t>(n * (n - 1));

    ComplexMatrix term = ComplexMatrix::diagonal(inv_d);
    ComplexMatrix sum = term;
    for (unsigned r = 1; r < terms; ++r)
    {
        term = counted_product(step, term, counter);
        sum += term;
        counter.complex_adds += static_cast<std::uint64_t>(n * n);
    }
    return sum;
}

ComplexMatrix neumann_inverse(const ComplexMatrix& z, unsigned terms)
{
    FlopCounter scratch;
    return neumann_inverse(z, terms, scratch);
}

ComplexMatrix neumann_r2(const ComplexMatrix& z, FlopCounter& counter)
{
    const NeumannSplit split = split_diag(z);
    const std::size_t n = z.rows();

    CVector inv_d(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_d[i] = 1.0 / split.diagonal[i];
    counter.complex_divs += n;

    // Off-diagonal of D^{-1} E D^{-1} is inv_d[i] * E_ij * inv_d[j]; its diagonal is zero.
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        out(i, i) = inv_d[i];
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                out(i, j) = -((inv_d[i] * split.off(i, j)) * inv_d[j]);
    }
    counter.complex_mults += static_cast<std::uint64_t>(2 * n * (n - 1));
    return out;
}

ComplexMatrix neumann_r2(const ComplexMatrix& z)
{
    FlopCounter scratch;
    return neumann_r2(z, scratch);
}

ConvergenceEstimate convergence_margin(const ComplexMatrix& z, unsigned max_iters, double tol)
{
    const NeumannSplit split = split_diag(z);
    const std::size_t n = z.rows();

    if (split.off.max_abs() == 0.0)
        return {0.0, true, 0};

    // For Hermitian Z with positive diagonal, D^{-1}E is similar to the Hermitian
    // D^{-1/2} E D^{-1/2}; iterating on that form gives monotone norm-ratio estimates.
    ComplexMatrix iter(n, n);
    if (is_hermitian_with_positive_diagonal(z))
    {
        CVector s(n);
        for (std::size_t i = 0; i < n; ++i)
            s[i] = 1.0 / std::sqrt(split.diagonal[i].real());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                iter(i, j) = s[i] * split.off(i, j) * s[j];
    }
    else
    {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                iter(i, j) = split.off(i, j) / split.diagonal[i];
    }

    // Two products per step: sqrt(||T^2 v||) is stable when the dominant eigenvalues form a +-lambda pair.
    CVector v(n, cplx(1.0 / std::sqrt(static_cast<double>(n))));
    double estimate = 0.0;
    for (unsigned it = 1; it <= max_iters; ++it)
    {
        const CVector w = iter * (iter * v);
        const double grown = norm2(w);
        if (grown == 0.0)
            return {0.0, true, it};
        const double next = std::sqrt(grown);
        const bool settled = it > 1 && std::abs(next - estimate) < tol;
        estimate = next;
        if (settled)
            return {estimate, true, it};
        for (std::size_t i = 0; i < n; ++i)
            v[i] = w[i] / grown;
    }
    return {estimate, false, max_iters};
}

ComplexMatrix invert(const ComplexMatrix& z, const Inversion& how, FlopCounter& counter)
{
    if (how.method == Inversion::Method::exact)
        return exact_inverse(z, counter);
    if (how.order == 2)
        return neumann_r2(z, counter);
    return neumann_inverse(z, how.order, counter);
}

} // namespace cfstbc
