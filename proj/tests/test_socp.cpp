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

#include <cmath>

#include <catch_amalgamated.hpp>

#include "coprime/socp.hpp"
#include "coprime/types.hpp"

using namespace coprime::socp;
using Catch::Approx;

TEST_CASE("Nesterov-Todd scaling identities", "[socp]")
{
    Eigen::VectorXd s(4), z(4);
    s << 2.0, 0.5, -1.0, 0.7;
    z << 1.5, 0.3, 0.9, -0.2;
    const auto W = nt_scaling(s, z);
    // W z = W^{-1} s = lambda.
    CHECK((W.apply(z) - W.apply_inverse(s)).norm() < 1e-13);
    CHECK((W.apply(W.apply_inverse(s)) - s).norm() < 1e-13);
    CHECK(W.beta > 0.0);

    Eigen::VectorXd one(1), other(1);
    one << 4.0;
    other << 9.0;
    const auto w1 = nt_scaling(one, other);
    CHECK(w1.apply(other)(0) == Approx(6.0));
}

TEST_CASE("Jordan algebra helpers", "[socp]")
{
    Eigen::VectorXd l(3), r(3);
    l << 3.0, 1.0, -0.5;
    r << 0.2, -0.4, 1.1;
    const auto p = jordan_product(l, r);
    CHECK(p(0) == Approx(l.dot(r)));
    CHECK((jordan_divide(l, p) - r).norm() < 1e-13);

    Eigen::VectorXd x(3), d(3);
    x << 2.0, 0.0, 0.0;
    d << -1.0, 0.0, 0.0;
    CHECK(max_step(x, d) == Approx(2.0));
    d << 0.0, 1.0, 0.0;
    CHECK(max_step(x, d) == Approx(2.0));
    d << 1.0, 0.0, 0.0;
    CHECK(std::isinf(max_step(x, d)));
}

TEST_CASE("distance from a point to a line", "[socp]")
{
    // min t  s.t. ||x - (2, 3)|| <= t,  x0 + x1 = 1.  Optimum 4 / sqrt(2).
    Problem p;
    p.c = Eigen::Vector3d(1, 0, 0);
    p.G = -Eigen::Matrix3d::Identity();
    p.h = Eigen::Vector3d(0, -2, -3);
    p.cone_dims = {3};
    p.A = Eigen::RowVector3d(0, 1, 1);
    p.b = Eigen::VectorXd::Constant(1, 1.0);
    const auto r = solve(p);
    REQUIRE(r.status == Status::kOptimal);
    CHECK(r.primal_objective == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r.x(1) == Approx(0.0).margin(1e-8));
    CHECK(r.x(2) == Approx(1.0).epsilon(1e-8));
    CHECK(r.relative_gap <= 1e-6);
    CHECK(r.primal_residual <= 1e-7);
}

TEST_CASE("linear program through one-dimensional cones", "[socp]")
{
    // min x0 + x1  s.t. x >= 0,  x0 + 2 x1 >= 2.
    Problem p;
    p.c = Eigen::Vector2d(1, 1);
    p.G.resize(3, 2);
    p.G << -1, 0, 0, -1, -1, -2;
    p.h = Eigen::Vector3d(0, 0, -2);
    p.cone_dims = {1, 1, 1};
    const auto r = solve(p);
    REQUIRE(r.status == Status::kOptimal);
    CHECK(r.primal_objective == Approx(1.0).epsilon(1e-8));
    CHECK(r.dual_objective == Approx(1.0).epsilon(1e-8));
    CHECK(r.x(1) == Approx(1.0).epsilon(1e-7));
}

TEST_CASE("serial and parallel assembly agree", "[socp]")
{
    Problem p;
    p.c = Eigen::Vector3d(1, 0, 0);
    p.G = -Eigen::Matrix3d::Identity();
    p.h = Eigen::Vector3d(0, -2, -3);
    p.cone_dims = {3};
    p.A = Eigen::RowVector3d(0, 1, 1);
    p.b = Eigen::VectorXd::Constant(1, 1.0);
    Options serial;
    serial.parallel = false;
    const auto a = solve(p, serial), b = solve(p);
    CHECK(a.iterations == b.iterations);
    CHECK((a.x - b.x).norm() < 1e-9);
}

TEST_CASE("infeasible problem is not reported optimal", "[socp]")
{
    // x >= 1 and x <= 0.
    Problem p;
    p.c = Eigen::VectorXd::Constant(1, 1.0);
    p.G.resize(2, 1);
    p.G << -1, 1;
    p.h = Eigen::Vector2d(-1, 0);
    p.cone_dims = {1, 1};
    CHECK(solve(p).status != Status::kOptimal);
}

TEST_CASE("problem validation", "[socp]")
{
    Problem p;
    p.c = Eigen::Vector2d(1, 1);
    p.G = Eigen::MatrixXd::Identity(2, 2);
    p.h = Eigen::Vector2d(1, 1);
    p.cone_dims = {3};
    CHECK_THROWS_AS(p.validate(), coprime::ValidationError);
    p.cone_dims = {2};
    CHECK_NOTHROW(p.validate());
    p.h = Eigen::Vector3d(1, 1, 1);
    CHECK_THROWS_AS(p.validate(), coprime::ValidationError);
    CHECK(to_string(Status::kIterationLimit) == "iteration_limit");
}
