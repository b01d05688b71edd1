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

#include <algorithm>

#include <omp.h>

namespace coprime::kernels
{
    Eigen::MatrixXd gram_serial(const Eigen::MatrixXd &scaled_rows)
    {
        const Eigen::Index n = scaled_rows.cols();
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index r = 0; r < scaled_rows.rows(); ++r)
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const double gi = scaled_rows(r, i);
                if (gi == 0.0)
                    continue;
                for (Eigen::Index j = 0; j <= i; ++j)
                    H(i, j) += gi * scaled_rows(r, j);
            }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j)
                H(i, j) = H(j, i);
        return H;
    }

    Eigen::MatrixXd gram_parallel(const Eigen::MatrixXd &scaled_rows, Eigen::Index block_rows)
    {
        const Eigen::Index rows = scaled_rows.rows(), n = scaled_rows.cols();
        block_rows = std::max<Eigen::Index>(block_rows, 1);
        const Eigen::Index blocks = (rows + block_rows - 1) / block_rows;
        std::vector<Eigen::MatrixXd> partial(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(dynamic)
        for (Eigen::Index b = 0; b < blocks; ++b)
        {
            const Eigen::Index r0 = b * block_rows;
            const Eigen::Index len = std::min(block_rows, rows - r0);
            const auto block = scaled_rows.middleRows(r0, len);
            Eigen::MatrixXd Hb = Eigen::MatrixXd::Zero(n, n);
            Hb.selfadjointView<Eigen::Lower>().rankUpdate(block.transpose());
            partial[static_cast<std::size_t>(b)] = std::move(Hb);
        }

        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (const auto &Hb : partial)
            H += Hb;
        return H.selfadjointView<Eigen::Lower>();
    }

} // namespace coprime::kernels
