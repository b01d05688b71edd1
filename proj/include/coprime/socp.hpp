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

#ifndef COPRIME_SOCP_HPP
#define COPRIME_SOCP_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coprime::socp
{
    /*!
    Second-order cone program in standard form

        minimize    c^T x
        subject to  G x + s = h,   s in K
                    A x = b

    K is a product of second-order cones {(s0, s1) : s0 >= ||s1||}; cone k occupies
    cone_dims[k] consecutive rows of G and h. A cone of dimension 1 is the nonnegative ray.
    */
    struct Problem
    {
        Eigen::VectorXd c;
        Eigen::MatrixXd G;
        Eigen::VectorXd h;
        std::vector<int> cone_dims;
        Eigen::MatrixXd A; // may have zero rows
        Eigen::VectorXd b;

        // Throws ValidationError on inconsistent dimensions.
        void validate() const;
    };

    enum class Status
    {
        kOptimal,
        kIterationLimit,
        kNumericalError,
    };

    std::string to_string(Status s);

    struct Options
    {
        int max_iterations = 200;
        double feasibility_tolerance = 1e-9; // relative primal and dual residuals
        double absolute_gap = 1e-10;
        double relative_gap = 1e-9;
        // Accepted when progress stalls (vanishing step or singular normal equations) before
        // the tolerances above are met.
        double stalled_feasibility_tolerance = 1e-7;
        double stalled_relative_gap = 1e-6;
        bool parallel = true; // normal-equation assembly through the OpenMP Gram kernel
    };

    struct Result
    {
        Status status = Status::kNumericalError;
        Eigen::VectorXd x, s, z, y;
        double primal_objective = 0.0;
        double dual_objective = 0.0;
        double gap = 0.0;          // s^T z
        double relative_gap = 0.0; // gap / max(|primal|, |dual|, tiny); +inf if undefined
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        int iterations = 0;
    };

    // Primal-dual interior point with Nesterov-Todd scaling and Mehrotra predictor-corrector
    // steps. The problem must have G of full column rank on the null space of A.
    Result solve(const Problem &problem, const Options &options = {});

    // ---- cone arithmetic, exposed for testing -----------------------------------------

    // Nesterov-Todd scaling of one cone: W = beta (2 w w^T - J), J = diag(1, -1, ..., -1).
    struct Scaling
    {
        Eigen::VectorXd w;
        double beta = 1.0;

        // W x and W^{-1} x.
        Eigen::VectorXd apply(const Eigen::VectorXd &x) const;
        Eigen::VectorXd apply_inverse(const Eigen::VectorXd &x) const;
    };

    // Scaling with W z = W^{-1} s for interior s, z.
    Scaling nt_scaling(const Eigen::VectorXd &s, const Eigen::VectorXd &z);

    // Jordan product x o y = (x^T y, x0 y1 + y0 x1) and its inverse (solves lambda o u = r).
    Eigen::VectorXd jordan_product(const Eigen::VectorXd &x, const Eigen::VectorXd &y);
    Eigen::VectorXd jordan_divide(const Eigen::VectorXd &lambda, const Eigen::VectorXd &r);

    // Largest alpha such that x + alpha d stays in the cone (+inf if unbounded). x must be interior.
    double max_step(const Eigen::VectorXd &x, const Eigen::VectorXd &d);

} // namespace coprime::socp

#endif
