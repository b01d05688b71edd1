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

#include "coprime/coarray.hpp"

#include <algorithm>
#include <climits>

#include "coprime/kernels.hpp"

namespace coprime
{
    Coarray::Coarray(std::vector<long> dense_weights, int extent_x, int extent_y, std::size_t sensor_count)
        : dense_(std::move(dense_weights)), extent_x_(extent_x), extent_y_(extent_y), sensor_count_(sensor_count)
    {
        const long wy = 2L * extent_y_ + 1;
        if (extent_x_ < 0 || extent_y_ < 0 || long(dense_.size()) != (2L * extent_x_ + 1) * wy)
            throw ValidationError("dense weight grid does not match the stated extents", "weights");

        bbox_ = {INT_MAX, INT_MIN, INT_MAX, INT_MIN};
        for (int x = -extent_x_; x <= extent_x_; ++x)
            for (int y = -extent_y_; y <= extent_y_; ++y)
            {
                const long w = dense_[static_cast<std::size_t>((x + extent_x_) * wy + (y + extent_y_))];
                if (w <= 0)
                    continue;
                lags_.push_back({x, y});
                weights_.emplace_hint(weights_.end(), Lattice{x, y}, w);
                bbox_.min_x = std::min(bbox_.min_x, x);
                bbox_.max_x = std::max(bbox_.max_x, x);
                bbox_.min_y = std::min(bbox_.min_y, y);
                bbox_.max_y = std::max(bbox_.max_y, y);
            }
        if (lags_.empty())
            throw ValidationError("coarray has no lags", "weights");

        for (int x = bbox_.min_x; x <= bbox_.max_x; ++x)
            for (int y = bbox_.min_y; y <= bbox_.max_y; ++y)
                if (!contains({x, y}))
                    holes_.push_back({x, y});

        if (contains({0, 0}))
        {
            // Grow the centered square one ring at a time.
            int h = 0;
            for (;;)
            {
                const int r = h + 1;
                bool full = true;
                for (int t = -r; t <= r && full; ++t)
                    full = contains({t, r}) && contains({t, -r}) && contains({r, t}) && contains({-r, t});
                if (!full)
                    break;
                h = r;
            }
            contiguous_half_width_ = h;
        }
    }

    long Coarray::weight(Lattice l) const noexcept
    {
        if (l.x < -extent_x_ || l.x > extent_x_ || l.y < -extent_y_ || l.y > extent_y_)
            return 0;
        const long wy = 2L * extent_y_ + 1;
        return dense_[static_cast<std::size_t>((l.x + extent_x_) * wy + (l.y + extent_y_))];
    }

    Coarray difference_coarray(const SensorArray &array)
    {
        int min_x = INT_MAX, max_x = INT_MIN, min_y = INT_MAX, max_y = INT_MIN;
        for (const auto &p : array.positions())
        {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        const int ex = max_x - min_x, ey = max_y - min_y;
        auto hist = kernels::lag_histogram_parallel(array.positions(), ex, ey);
        return Coarray(std::move(hist), ex, ey, array.size());
    }

    int contiguous_range(const Coarray &co) { return co.contiguous_half_width(); }

    std::vector<Lattice> holes(const Coarray &co) { return co.holes(); }

    double hole_percentage(const Coarray &co)
    {
        return static_cast<double>(co.holes().size()) / static_cast<double>(co.bounding_box().area());
    }

    const std::map<Lattice, long> &weight_table(const Coarray &co) { return co.weights(); }

} // namespace coprime
