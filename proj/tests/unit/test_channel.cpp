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

#include "cfstbc/channel.hpp"
#include "cfstbc/errors.hpp"
#include "cfstbc/rng.hpp"
#include "support/test_support.hpp"

#include <cmath>
#include <set>

using namespace cfstbc;
using cfstbc::testing::random_matrix;

namespace
{

ChannelRealization make_channel(std::size_t antennas, std::size_t bs_count, std::size_t users, Stream& rng)
{
    ChannelRealization ch;
    ch.antennas = antennas;
    ch.antennas_per_user = 2;
    ch.profile = draw_large_scale(bs_count, users, rng);
    for (std::size_t i = 0; i < bs_count * users; ++i)
        ch.small.push_back(draw_small_scale(antennas, 2, rng));
    return ch;
}

/// Y(m, t) = W(m, t) + sum_k sqrt(rho/2) beta_k sum_j H_k(m, j) X_k(j, t), one entry at a time.
ComplexMatrix triple_loop_block(const ChannelRealization& ch, const std::vector<ComplexMatrix>& xs, double rho,
                                const ComplexMatrix& w, std::size_t l)
{
    ComplexMatrix y(w.rows(), w.cols());
    for (std::size_t m = 0; m < w.rows(); ++m)
        for (std::size_t t = 0; t < w.cols(); ++t)
        {
            cplx acc = w(m, t);
            for (std::size_t k = 0; k < xs.size(); ++k)
                for (std::size_t j = 0; j < 2; ++j)
                    acc += std::sqrt(rho / 2.0) * ch.profile(l, k) * ch.h(l, k)(m, j) * xs[k](j, t);
            y(m, t) = acc;
        }
    return y;
}

} // namespace

TEST_CASE("draw_large_scale: single entry lies in [0, 1]")
{
    Stream rng(1);
    const LargeScaleProfile p = draw_large_scale(1, 1, rng);
    REQUIRE(p.betas.size() == 1);
    CHECK(p(0, 0) >= 0.0);
    CHECK(p(0, 0) <= 1.0);
}

TEST_CASE("draw_large_scale: rows are non-increasing and entries lie in [0, 1]")
{
    Stream rng(2);
    for (int draw = 0; draw < 200; ++draw)
    {
        const LargeScaleProfile p = draw_large_scale(4, 10, rng);
        for (std::size_t l = 0; l < 4; ++l)
            for (std::size_t k = 0; k < 10; ++k)
            {
                CHECK(p(l, k) >= 0.0);
                CHECK(p(l, k) <= 1.0);
                if (k > 0)
                    CHECK(p(l, k) <= p(l, k - 1));
            }
    }
    CHECK_THROWS_AS(draw_large_scale(0, 3, rng), InvalidArgument);
}

TEST_CASE("draw_large_scale: entry means follow uniform order statistics")
{
    // k-th largest of 10 uniforms has mean (11 - k) / 11
    Stream rng(3);
    constexpr int draws = 100000;
    std::vector<double> sums(10, 0.0);
    for (int d = 0; d < draws; ++d)
    {
        const LargeScaleProfile p = draw_large_scale(4, 10, rng);
        for (std::size_t l = 0; l < 4; ++l)
            for (std::size_t k = 0; k < 10; ++k)
                sums[k] += p(l, k);
    }
    for (std::size_t k = 0; k < 10; ++k)
    {
        const double expected = (10.0 - static_cast<double>(k)) / 11.0;
        const double mean = sums[k] / (4.0 * draws);
        CHECK(std::abs(mean - expected) < 0.01 * expected);
    }
}

TEST_CASE("draw_small_scale: unit variance, zero mean, independent halves")
{
    Stream rng(4);
    const ComplexMatrix h = draw_small_scale(100000, 2, rng);
    REQUIRE(h.all_finite());
    double power = 0.0, re2 = 0.0, im2 = 0.0, cross = 0.0;
    cplx mean{};
    for (const auto& v : h.data())
    {
        power += std::norm(v);
        re2 += v.real() * v.real();
        im2 += v.imag() * v.imag();
        cross += v.real() * v.imag();
        mean += v;
    }
    const double n = static_cast<double>(h.data().size());
    CHECK(std::abs(power / n - 1.0) < 0.02);
    CHECK(std::abs(re2 / n - 0.5) < 0.01);
    CHECK(std::abs(im2 / n - 0.5) < 0.01);
    CHECK(std::abs(cross / n) < 0.01);
    CHECK(std::abs(mean / n) < 0.01);
}

TEST_CASE("draw_small_scale and draw_noise are deterministic per seed")
{
    Stream a(77), b(77);
    CHECK(draw_small_scale(10, 2, a) == draw_small_scale(10, 2, b));
    CHECK(draw_noise(10, 2, a) == draw_noise(10, 2, b));
}

TEST_CASE("draw_noise: unit variance and zero mean")
{
    Stream rng(5);
    const ComplexMatrix w = draw_noise(100000, 2, rng);
    double power = 0.0;
    cplx mean{};
    for (const auto& v : w.data())
    {
        power += std::norm(v);
        mean += v;
    }
    const double n = static_cast<double>(w.data().size());
    CHECK(std::abs(power / n - 1.0) < 0.02);
    CHECK(std::abs(mean / n) < 0.01);
}

TEST_CASE("received_block: no users gives the noise")
{
    Stream rng(6);
    ChannelRealization ch;
    ch.antennas = 8;
    ch.profile.bs_count = 1;
    const ComplexMatrix w = draw_noise(8, 2, rng);
    CHECK(received_block(ch, {}, 3.0, w, 0) == w);
}

TEST_CASE("received_block: identity code with zero noise returns sqrt(rho/2) H")
{
    Stream rng(7);
    ChannelRealization ch;
    ch.antennas = 6;
    ch.profile = {1, 1, {1.0}};
    ch.small.push_back(draw_small_scale(6, 2, rng));
    const std::vector<ComplexMatrix> xs{ComplexMatrix::identity(2)};
    const double rho = 5.0;
    const ComplexMatrix y = received_block(ch, xs, rho, ComplexMatrix(6, 2), 0);
    ComplexMatrix expected = ch.h(0, 0);
    expected *= std::sqrt(rho / 2.0);
    CHECK(max_abs_diff(y, expected) < 1e-15);
}

TEST_CASE("received_block: matches the triple-loop oracle (K=2)")
{
    Stream rng(8);
    const ChannelRealization ch = make_channel(12, 3, 2, rng);
    const std::vector<ComplexMatrix> xs{random_matrix(2, 2, rng), random_matrix(2, 2, rng)};
    const ComplexMatrix w = draw_noise(12, 2, rng);
    for (std::size_t l = 0; l < 3; ++l)
        CHECK(max_abs_diff(received_block(ch, xs, 7.5, w, l), triple_loop_block(ch, xs, 7.5, w, l)) < 1e-12);
}

TEST_CASE("received_block: superposition and gain scaling")
{
    Stream rng(9);
    const ChannelRealization ch = make_channel(10, 1, 3, rng);
    std::vector<ComplexMatrix> xs;
    for (int k = 0; k < 3; ++k)
        xs.push_back(random_matrix(2, 2, rng));
    const ComplexMatrix zero(10, 2);
    const ComplexMatrix all = received_block(ch, xs, 4.0, zero, 0);

    ComplexMatrix sum(10, 2);
    for (std::size_t k = 0; k < 3; ++k)
    {
        std::vector<ComplexMatrix> alone(3, ComplexMatrix(2, 2));
        alone[k] = xs[k];
        sum += received_block(ch, alone, 4.0, zero, 0);
    }
    CHECK(max_abs_diff(all, sum) < 1e-12);

    ChannelRealization scaled = ch;
    for (auto& b : scaled.profile.betas)
        b *= 0.5;
    ComplexMatrix half = all;
    half *= 0.5;
    CHECK(max_abs_diff(received_block(scaled, xs, 4.0, zero, 0), half) == 0.0);
}

TEST_CASE("received_block: shape and argument errors")
{
    Stream rng(10);
    const ChannelRealization ch = make_channel(4, 1, 1, rng);
    const std::vector<ComplexMatrix> xs{ComplexMatrix::identity(2)};
    CHECK_THROWS_AS(received_block(ch, xs, 1.0, ComplexMatrix(5, 2), 0), InvalidArgument);
    CHECK_THROWS_AS(received_block(ch, xs, 1.0, ComplexMatrix(4, 3), 0), InvalidArgument);
    CHECK_THROWS_AS(received_block(ch, xs, 0.0, ComplexMatrix(4, 2), 0), InvalidArgument);
    CHECK_THROWS_AS(received_block(ch, {}, 1.0, ComplexMatrix(4, 2), 0), InvalidArgument);
}

TEST_CASE("trial_rng: same key repeats, different keys diverge")
{
    Stream a = trial_rng(1, 5, 2, 3, Purpose::noise);
    Stream b = trial_rng(1, 5, 2, 3, Purpose::noise);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());

    // first 16 draws of neighbouring keys share nothing
    std::set<std::uint64_t> seen;
    std::size_t produced = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial)
        for (std::uint64_t l = 0; l < 4; ++l)
            for (std::uint64_t k = 0; k < 4; ++k)
                for (Purpose p : {Purpose::large_scale, Purpose::small_scale, Purpose::noise, Purpose::bits})
                {
                    Stream s = trial_rng(1, trial, l, k, p);
                    for (int i = 0; i < 16; ++i)
                    {
                        seen.insert(s.next_u64());
                        ++produced;
                    }
                }
    CHECK(seen.size() == produced);

    Stream t0 = trial_rng(9, 0, 0, 0, Purpose::bits);
    Stream t1 = trial_rng(9, 1, 0, 0, Purpose::bits);
    int equal = 0;
    for (int i = 0; i < 16; ++i)
        equal += t0.next_u64() == t1.next_u64();
    CHECK(equal == 0);
}

TEST_CASE("Stream: uniform range and normal moments")
{
    Stream rng(11);
    double sum = 0.0, sq = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i)
    {
        const double u = rng.uniform();
        CHECK_FALSE((u < 0.0 || u >= 1.0));
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}
