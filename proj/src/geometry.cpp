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

#include "coprime/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace coprime
{
    namespace
    {
        std::string gcd_message(int a, int b)
        {
            return "gcd(" + std::to_string(a) + "," + std::to_string(b) + ")=" + std::to_string(std::gcd(a, b));
        }

        void require_positive(int value, const char *field)
        {
            if (value < 1)
                throw ValidationError(std::string(field) + " must be >= 1, got " + std::to_string(value), field);
        }

        std::vector<int> coprime_axis(const CoprimePair &pair)
        {
            const int M = pair.m(), N = pair.n();
            std::vector<int> s;
            s.reserve(2 * M + N);
            for (int n = 1; n <= N - 1; ++n)
                s.push_back(M * n);
            for (int m = 0; m <= 2 * M - 1; ++m)
                s.push_back(N * m);
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            return s;
        }

        std::string pair_label(const char *kind, const CoprimePair &pair)
        {
            return std::string(kind) + "(" + std::to_string(pair.m()) + "," + std::to_string(pair.n()) + ")";
        }
    } // namespace

    CoprimePair::CoprimePair(int m, int n) : m_(m), n_(n)
    {
        require_positive(m, "m");
        require_positive(n, "n");
        if (std::gcd(m, n) != 1)
            throw ValidationError(gcd_message(m, n) + ", not coprime", "m");
    }

    SensorArray::SensorArray(std::vector<Lattice> positions, double spacing_over_lambda, std::string label)
        : positions_(std::move(positions)), spacing_over_lambda_(spacing_over_lambda), label_(std::move(label))
    {
        if (positions_.empty())
            throw ValidationError("sensor array must contain at least one sensor", "positions");
        if (!(spacing_over_lambda_ > 0.0 && spacing_over_lambda_ <= 0.5))
            throw ValidationError("spacing_over_lambda must lie in (0, 0.5], got " + std::to_string(spacing_over_lambda_),
                                  "spacing_over_lambda");
        for (const auto &p : positions_)
            if (p.x < 0 || p.y < 0)
                throw ValidationError("sensor coordinates must be non-negative, got (" + std::to_string(p.x) + "," +
                                          std::to_string(p.y) + ")",
                                      "positions");
        std::sort(positions_.begin(), positions_.end());
        positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
    }

    bool SensorArray::contains(Lattice p) const
    {
        return std::binary_search(positions_.begin(), positions_.end(), p);
    }

    long SensorArray::index_of(Lattice p) const
    {
        auto it = std::lower_bound(positions_.begin(), positions_.end(), p);
        if (it == positions_.end() || *it != p)
            return -1;
        return static_cast<long>(it - positions_.begin());
    }

    SensorArray coprime_1d(const CoprimePair &pair, double spacing_over_lambda)
    {
        std::vector<Lattice> pos;
        for (int s : coprime_axis(pair))
            pos.push_back({s, 0});
        return SensorArray(std::move(pos), spacing_over_lambda, pair_label("coprime1d", pair));
    }

    SensorArray rcpa(const CoprimePair &pair, double spacing_over_lambda)
    {
        const auto axis = coprime_axis(pair);
        std::vector<Lattice> pos;
        pos.reserve(axis.size() * axis.size());
        for (int u : axis)
            for (int v : axis)
                pos.push_back({u, v});
        return SensorArray(std::move(pos), spacing_over_lambda, pair_label("rcpa", pair));
    }

    SensorArray cpa(const CoprimePair &pair, Lattice offset, double spacing_over_lambda)
    {
        const int M = pair.m(), N = pair.n();
        std::vector<Lattice> pos;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                pos.push_back({N * i, N * j});
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                pos.push_back({offset.x + M * i, offset.y + M * j});
        return SensorArray(std::move(pos), spacing_over_lambda, pair_label("cpa", pair));
    }

    SensorArray gcpa(int n1, int m1, int n2, int m2, double spacing_over_lambda)
    {
        require_positive(n1, "n1");
        require_positive(m1, "m1");
        require_positive(n2, "n2");
        require_positive(m2, "m2");
        if (std::gcd(n1, n2) != 1)
            throw ValidationError(gcd_message(n1, n2) + " on x-axis", "n1");
        if (std::gcd(m1, m2) != 1)
            throw ValidationError(gcd_message(m1, m2) + " on y-axis", "m1");

        std::vector<Lattice> pos;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < m1; ++j)
                pos.push_back({n2 * i, m2 * j});
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < m2; ++j)
                pos.push_back({n1 * i, m1 * j});
        const std::string label = "gcpa(" + std::to_string(n1) + "," + std::to_string(m1) + "," + std::to_string(n2) +
                                  "," + std::to_string(m2) + ")";
        return SensorArray(std::move(pos), spacing_over_lambda, label);
    }

    SensorArray uniform_rectangular(int nx, int ny, double spacing_over_lambda)
    {
        require_positive(nx, "nx");
        require_positive(ny, "ny");
        std::vector<Lattice> pos;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                pos.push_back({i, j});
        return SensorArray(std::move(pos), spacing_over_lambda,
                           "ura(" + std::to_string(nx) + "," + std::to_string(ny) + ")");
    }

} // namespace coprime
