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

#ifndef COPRIME_COARRAY_HPP
#define COPRIME_COARRAY_HPP

#include <map>
#include <vector>

#include "coprime/geometry.hpp"

namespace coprime
{
    struct BoundingBox
    {
        int min_x = 0, max_x = 0, min_y = 0, max_y = 0;

        long area() const noexcept { return long(max_x - min_x + 1) * long(max_y - min_y + 1); }
        bool contains(Lattice p) const noexcept { return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y; }
    };

    /*!
    Difference coarray of a sensor array.

    Holds the multiset {p - q : p, q in positions} as a weight map (lag -> multiplicity),
    together with the derived quantities used downstream: the tight bounding box of all
    lags, the hole set inside that box, and the half-width h of the largest centered
    square [-h, h]^2 that contains no hole.

    Immutable after construction.
    */
    class Coarray
    {
    public:
        // Built from a dense (2 * extent_x + 1) x (2 * extent_y + 1) weight grid, row-major in x,
        // with lag (0, 0) at the center. Normally produced by difference_coarray().
        Coarray(std::vector<long> dense_weights, int extent_x, int extent_y, std::size_t sensor_count);

        std::size_t sensor_count() const noexcept { return sensor_count_; }

        // Distinct lags, sorted lexicographically.
        const std::vector<Lattice> &lags() const noexcept { return lags_; }

        // Multiplicity of lag l; 0 when l is not in the coarray.
        long weight(Lattice l) const noexcept;
        bool contains(Lattice l) const noexcept { return weight(l) > 0; }

        const std::map<Lattice, long> &weights() const noexcept { return weights_; }
        const BoundingBox &bounding_box() const noexcept { return bbox_; }
        const std::vector<Lattice> &holes() const noexcept { return holes_; }
        int contiguous_half_width() const noexcept { return contiguous_half_width_; }

    private:
        std::vector<long> dense_;
        int extent_x_, extent_y_;
        std::size_t sensor_count_;
        std::vector<Lattice> lags_;
        std::map<Lattice, long> weights_;
        BoundingBox bbox_;
        std::vector<Lattice> holes_;
        int contiguous_half_width_ = 0;
    };

    // 2-D autocorrelation of the sensor indicator function, i.e. all ordered pairwise differences.
    Coarray difference_coarray(const SensorArray &array);

    // Largest h such that every lag in [-h, h]^2 is present.
    int contiguous_range(const Coarray &co);

    // Integer points of the coarray bounding box that are not lags (sorted).
    std::vector<Lattice> holes(const Coarray &co);

    // |holes| / bounding-box area (tight box of the whole coarray, isolated extreme lags included).
    double hole_percentage(const Coarray &co);

    // Lag -> multiplicity, iterated in lexicographic lag order.
    const std::map<Lattice, long> &weight_table(const Coarray &co);

} // namespace coprime

#endif
