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

#include "coprime/kernels.hpp"

#include <omp.h>

namespace coprime::kernels
{
    std::vector<long> lag_histogram_serial(std::span<const Lattice> positions, int ex, int ey)
    {
        const long wx = 2L * ex + 1, wy = 2L * ey + 1;
        std::vector<long> hist(static_cast<std::size_t>(wx * wy), 0);
        for (const auto &p : positions)
            for (const auto &q : positions)
                ++hist[static_cast<std::size_t>((p.x - q.x + ex) * wy + (p.y - q.y + ey))];
        return hist;
    }

    std::vector<long> lag_histogram_parallel(std::span<const Lattice> positions, int ex, int ey)
    {
        const long wx = 2L * ex + 1, wy = 2L * ey + 1;
        const std::size_t cells = static_cast<std::size_t>(wx * wy);
        const long n = static_cast<long>(positions.size());
        std::vector<long> hist(cells, 0);

        // Integer counts: the reduction is exact, so thread count never changes the result.
#pragma omp parallel
        {
            std::vector<long> local(cells, 0);
#pragma omp for schedule(static)
            for (long i = 0; i < n; ++i)
            {
                const Lattice p = positions[static_cast<std::size_t>(i)];
                for (const auto &q : positions)
                    ++local[static_cast<std::size_t>((p.x - q.x + ex) * wy + (p.y - q.y + ey))];
            }
#pragma omp critical
            for (std::size_t c = 0; c < cells; ++c)
                hist[c] += local[c];
        }
        return hist;
    }

} // namespace coprime::kernels
