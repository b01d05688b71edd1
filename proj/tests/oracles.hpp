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

// Independent reference computations shared by the unit and acceptance tests.

#ifndef COPRIME_TESTS_ORACLES_HPP
#define COPRIME_TESTS_ORACLES_HPP

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "coprime/geometry.hpp"

namespace oracle
{
    using coprime::Lattice;

    // Every ordered pair (p, q), counted.
    inline std::map<Lattice, long> pair_differences(const std::vector<Lattice> &pos)
    {
        std::map<Lattice, long> w;
        for (const auto &p : pos)
            for (const auto &q : pos)
                ++w[p - q];
        return w;
    }

    inline int contiguous_half_width(const std::map<Lattice, long> &w)
    {
        int h = 0;
        auto has = [&](int x, int y) { return w.count({x, y}) > 0; };
        for (;;)
        {
            const int r = h + 1;
            for (int a = -r; a <= r; ++a)
                for (int b = -r; b <= r; ++b)
                    if (!has(a, b))
                        return h;
            h = r;
        }
    }

    inline std::vector<Lattice> holes(const std::map<Lattice, long> &w)
    {
        int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
        for (const auto &[l, c] : w)
        {
            x0 = std::min(x0, l.x);
            x1 = std::max(x1, l.x);
            y0 = std::min(y0, l.y);
            y1 = std::max(y1, l.y);
        }
        std::vector<Lattice> out;
        for (int x = x0; x <= x1; ++x)
            for (int y = y0; y <= y1; ++y)
                if (!w.count({x, y}))
                    out.push_back({x, y});
        return out;
    }

    inline double box_area(const std::map<Lattice, long> &w)
    {
        int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
        for (const auto &[l, c] : w)
        {
            x0 = std::min(x0, l.x);
            x1 = std::max(x1, l.x);
            y0 = std::min(y0, l.y);
            y1 = std::max(y1, l.y);
        }
        return double(x1 - x0 + 1) * double(y1 - y0 + 1);
    }

    // Up to max_sensors distinct points in [0, extent]^2.
    inline std::vector<Lattice> random_positions(std::mt19937_64 &rng, int max_sensors, int extent)
    {
        std::uniform_int_distribution<int> count(1, max_sensors), coord(0, extent);
        const int n = count(rng);
        std::set<Lattice> s;
        while (static_cast<int>(s.size()) < n)
            s.insert({coord(rng), coord(rng)});
        return {s.begin(), s.end()};
    }

} // namespace oracle

#endif
