// SPDX-License-Identifier: Apache-2.0
//
// coprime-array: sparse planar array design, coarray analysis and DOA estimation
// Copyright (C) 2026 The coprime-array authors
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

#include <climits>

#include <catch_amalgamated.hpp>

#include "coprime/coarray.hpp"
#include "coprime/kernels.hpp"
#include "oracles.hpp"

using namespace coprime;

TEST_CASE("coarray matches pair enumeration on random arrays", "[coarray]")
{
    std::mt19937_64 rng(20261015);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto pos = oracle::random_positions(rng, 12, 15);
        const SensorArray array(pos);
        const auto co = difference_coarray(array);
        const auto ref = oracle::pair_differences(array.positions());

        REQUIRE(co.weights().size() == ref.size());
        auto it = ref.begin();
        long total = 0;
        for (const auto &[lag, w] : co.weights())
        {
            CHECK(lag == it->first);
            CHECK(w == it->second);
            total += w;
            ++it;
        }
        CHECK(total == long(array.size() * array.size()));
        CHECK(co.weight({0, 0}) == long(array.size()));
        CHECK(co.contiguous_half_width() == oracle::contiguous_half_width(ref));
        CHECK(co.holes() == oracle::holes(ref));
    }
}

TEST_CASE("rcpa(2,3) coarray", "[coarray]")
{
    const auto co = difference_coarray(rcpa(CoprimePair(2, 3)));
    CHECK(co.lags().size() == 289);
    CHECK(co.contiguous_half_width() == 7);
    CHECK(contiguous_range(co) == 2 * 3 + 2 - 1);
    CHECK(co.weight({0, 0}) == 36);
    CHECK(co.weight({9, 9}) == 1);
    CHECK(co.weight({8, 0}) == 0);
    CHECK(co.holes().size() == 72);
    for (const auto &h : co.holes())
        CHECK((std::abs(h.x) == 8 || std::abs(h.y) == 8));
    CHECK(hole_percentage(co) == 72.0 / 361.0);
    const auto &b = co.bounding_box();
    CHECK(b.min_x == -9);
    CHECK(b.max_y == 9);
    CHECK(b.area() == 361);
}

TEST_CASE("contiguous half-width follows MN+M-1 for rcpa", "[coarray]")
{
    for (auto [m, n] : {std::pair{2, 3}, {3, 4}, {2, 5}, {3, 5}})
        CHECK(difference_coarray(rcpa(CoprimePair(m, n))).contiguous_half_width() == m * n + m - 1);
}

TEST_CASE("cpa and gcpa coarrays", "[coarray]")
{
    const auto c = difference_coarray(cpa(CoprimePair(3, 4)));
    CHECK(c.sensor_count() == 24);
    CHECK(c.lags().size() == 265);
    CHECK(c.contiguous_half_width() == 3);
    CHECK(c.holes().size() == 96);
    CHECK(hole_percentage(c) == 96.0 / 361.0);

    const auto g = difference_coarray(gcpa(2, 2, 3, 3));
    CHECK(g.lags().size() == 73);
    CHECK(g.contiguous_half_width() == 2);
    CHECK(g.holes().size() == 8);
    CHECK(g.bounding_box().area() == 81);
}

TEST_CASE("weight table is lexicographic and symmetric", "[coarray]")
{
    const auto co = difference_coarray(coprime_1d(CoprimePair(3, 5)));
    const auto &t = weight_table(co);
    Lattice prev{INT_MIN, INT_MIN};
    for (const auto &[lag, w] : t)
    {
        CHECK(prev < lag);
        CHECK(co.weight(-lag) == w);
        CHECK(lag.y == 0);
        prev = lag;
    }
    CHECK(holes(co) == co.holes());
}

TEST_CASE("serial and parallel lag histograms agree", "[coarray]")
{
    const auto a = rcpa(CoprimePair(3, 5));
    const auto &p = a.positions();
    int ex = 0, ey = 0;
    for (const auto &q : p)
    {
        ex = std::max(ex, q.x);
        ey = std::max(ey, q.y);
    }
    CHECK(kernels::lag_histogram_serial(p, ex, ey) == kernels::lag_histogram_parallel(p, ex, ey));
}

TEST_CASE("single sensor coarray", "[coarray]")
{
    const auto co = difference_coarray(SensorArray({{4, 7}}));
    CHECK(co.lags() == std::vector<Lattice>{{0, 0}});
    CHECK(co.holes().empty());
    CHECK(co.contiguous_half_width() == 0);
    CHECK(hole_percentage(co) == 0.0);
}
