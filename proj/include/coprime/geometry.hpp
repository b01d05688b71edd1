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

#ifndef COPRIME_GEOMETRY_HPP
#define COPRIME_GEOMETRY_HPP

#include <string>
#include <vector>

#include "coprime/types.hpp"

namespace coprime
{
    // A validated pair of coprime integers (M, N), both >= 1.
    class CoprimePair
    {
    public:
        // Throws ValidationError "gcd(a,b)=g, not coprime" when gcd(m, n) != 1.
        CoprimePair(int m, int n);

        int m() const noexcept { return m_; }
        int n() const noexcept { return n_; }

    private:
        int m_;
        int n_;
    };

    /*!
    Planar sensor array on an integer lattice.

    Positions are stored in units of the element spacing d and kept sorted
    lexicographically with duplicates removed. Physical coordinates are
    `position * spacing_over_lambda` wavelengths. One-dimensional arrays use
    y = 0 for every sensor.
    */
    class SensorArray
    {
    public:
        // Throws ValidationError for an empty set, negative coordinates, or
        // spacing_over_lambda outside (0, 0.5].
        SensorArray(std::vector<Lattice> positions, double spacing_over_lambda = 0.5, std::string label = {});

        const std::vector<Lattice> &positions() const noexcept { return positions_; }
        std::size_t size() const noexcept { return positions_.size(); }
        double spacing_over_lambda() const noexcept { return spacing_over_lambda_; }
        const std::string &label() const noexcept { return label_; }

        bool contains(Lattice p) const;

        // Index of p in positions(), or -1.
        long index_of(Lattice p) const;

    private:
        std::vector<Lattice> positions_;
        double spacing_over_lambda_;
        std::string label_;
    };

    // 1-D coprime array {M n | 1 <= n <= N-1} U {N m | 0 <= m <= 2M-1}; 2M+N-1 sensors on the x axis.
    SensorArray coprime_1d(const CoprimePair &pair, double spacing_over_lambda = 0.5);

    // Rectangular coprime planar array: the 1-D coprime set crossed with itself.
    SensorArray rcpa(const CoprimePair &pair, double spacing_over_lambda = 0.5);

    // Coprime planar array: {(N i, N j) | 0 <= i,j < M} U offset + {(M i, M j) | 0 <= i,j < N}.
    // With the default zero offset both subarrays share the origin sensor (M^2 + N^2 - 1 sensors).
    SensorArray cpa(const CoprimePair &pair, Lattice offset = {}, double spacing_over_lambda = 0.5);

    // Generalized coprime planar array. Subarray 1 has n1 x m1 sensors at spacing (n2, m2),
    // subarray 2 has n2 x m2 sensors at spacing (n1, m1); they share the origin.
    // Throws ValidationError "gcd(a,b)=g on x-axis" (or y-axis) for non-coprime axis pairs.
    SensorArray gcpa(int n1, int m1, int n2, int m2, double spacing_over_lambda = 0.5);

    // Filled nx x ny uniform rectangular array.
    SensorArray uniform_rectangular(int nx, int ny, double spacing_over_lambda = 0.5);

} // namespace coprime

#endif
