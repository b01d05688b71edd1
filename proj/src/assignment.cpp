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

#include "coprime/assignment.hpp"

#include <limits>

#include "coprime/types.hpp"

namespace coprime
{
    std::vector<int> solve_assignment(const Eigen::MatrixXd &cost)
    {
        if (cost.rows() != cost.cols())
            throw ValidationError("assignment cost matrix must be square", "cost");
        if (!cost.allFinite())
            throw ValidationError("assignment cost matrix must be finite", "cost");

        const int n = static_cast<int>(cost.rows());
        if (n == 0)
            return {};

        // Shortest augmenting paths with row/column potentials; 1-based with a virtual column 0.
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
        std::vector<int> match(n + 1, 0), way(n + 1, 0);
        for (int i = 1; i <= n; ++i)
        {
            match[0] = i;
            int j0 = 0;
            std::vector<double> minv(n + 1, inf);
            std::vector<char> used(n + 1, 0);
            do
            {
                used[j0] = 1;
                const int i0 = match[j0];
                double delta = inf;
                int j1 = 0;
                for (int j = 1; j <= n; ++j)
                {
                    if (used[j])
                        continue;
                    const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if (cur < minv[j])
                    {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta)
                    {
                        delta = minv[j];
                        j1 = j;
                    }
                }
                for (int j = 0; j <= n; ++j)
                {
                    if (used[j])
                    {
                        u[match[j]] += delta;
                        v[j] -= delta;
                    }
                    else
                        minv[j] -= delta;
                }
                j0 = j1;
            } while (match[j0] != 0);
            do
            {
                const int j1 = way[j0];
                match[j0] = match[j1];
                j0 = j1;
            } while (j0 != 0);
        }

        std::vector<int> col(n, -1);
        for (int j = 1; j <= n; ++j)
            col[match[j] - 1] = j - 1;
        return col;
    }

} // namespace coprime
