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

#ifndef COPRIME_ASSIGNMENT_HPP
#define COPRIME_ASSIGNMENT_HPP

#include <vector>

#include <Eigen/Dense>

namespace coprime
{
    // Minimum-cost perfect matching on a square cost matrix (Hungarian method, O(n^3)).
    // Returns col[r], the column assigned to row r. Throws ValidationError for a non-square
    // or non-finite matrix.
    std::vector<int> solve_assignment(const Eigen::MatrixXd &cost);

} // namespace coprime

#endif
