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

#include "coprime/signal.hpp"

using namespace coprime;
using Catch::Approx;

TEST_CASE("steering vectors have unit modulus entries", "[signal]")
{
    const auto a = rcpa(CoprimePair(2, 3));
    const auto s = steering_vector(a, {0.123, -0.377});
    REQUIRE(s.size() == 36);
    for (Eigen::Index k = 0; k < s.size(); ++k)
        CHECK(std::abs(s(k)) == Approx(1.0).epsilon(1e-14));
    CHECK(s(0) == Complex(1.0, 0.0));
    // Sensor (9, 9) is the last lexicographic position.
    const Complex expect = std::polar(1.0, kTwoPi * (0.123 * 9 - 0.377 * 9));
    CHECK(std::abs(s(35) - expect) < 1e-12);
}

TEST_CASE("angle conventions", "[signal]")
{
    const auto p = normalized_doa(30.0, 0.0, 0.5);
    CHECK(p.u == Approx(0.25));
    CHECK(std::abs(p.v) < 1e-15);
    const auto q = normalized_doa(30.0, 90.0, 0.5);
    CHECK(std::abs(q.u) < 1e-15);
    CHECK(q.v == Approx(0.25));
    // Polar azimuth: zero azimuth is broadside for every elevation.
    const auto b = normalized_doa(0.0, 70.0, 0.5);
    CHECK(b.u == 0.0);
    CHECK(b.v == 0.0);

    const auto ae = normalized_doa(0.0, 30.0, 0.5, AngleConvention::kAzimuthElevation);
    CHECK(ae.u == 0.0);
    CHECK(ae.v == Approx(0.25));

    for (auto conv : {AngleConvention::kPolarAzimuth, AngleConvention::kAzimuthElevation})
    {
        const auto n = normalized_doa(25.0, 40.0, 0.5, conv);
        const auto back = angles_from_normalized(n, 0.5, conv);
        CHECK(back.az_deg == Approx(25.0).epsilon(1e-12));
        CHECK(back.el_deg == Approx(40.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(angles_from_normalized({0.4, 0.4}, 0.5), ValidationError);
}

TEST_CASE("single snapshot covariance is rank one", "[signal]")
{
    const auto a = coprime_1d(CoprimePair(2, 3));
    const std::vector<NormalizedDoa> d{{0.1, 0.0}};
    const std::vector<double> p{1.0};
    auto rng = make_rng(7);
    const auto Y = simulate_snapshots(a, d, p, 0.1, 1, rng);
    const auto R = sample_covariance(Y, a.positions());
    CHECK(R.snapshots_used == 1);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(R.matrix);
    const auto ev = eig.eigenvalues();
    CHECK(ev.head(ev.size() - 1).cwiseAbs().maxCoeff() < 1e-12 * ev(ev.size() - 1));
    CHECK(ev(ev.size() - 1) == Approx(Y.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("sample covariance is Hermitian PSD", "[signal]")
{
    const auto a = rcpa(CoprimePair(2, 3));
    const std::vector<NormalizedDoa> d{{0.1, 0.2}, {-0.3, 0.05}};
    const std::vector<double> p{1.0, 2.0};
    auto rng = make_rng(11, {3});
    const auto R = sample_covariance(simulate_snapshots(a, d, p, 0.5, 40, rng), a.positions()).matrix;
    CHECK((R - R.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(R);
    CHECK(eig.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("sample covariance converges to the exact covariance", "[signal]")
{
    const auto a = coprime_1d(CoprimePair(2, 3));
    const std::vector<NormalizedDoa> d{{0.17, 0.0}, {-0.31, 0.0}};
    const std::vector<double> p{1.0, 0.5};
    auto rng = make_rng(2026);
    const auto R = sample_covariance(simulate_snapshots(a, d, p, 0.25, 100000, rng), a.positions());
    const auto E = exact_covariance(a, d, p, 0.25);
    // Entry standard deviation is about total power / sqrt(K).
    CHECK((R.matrix - E.matrix).cwiseAbs().maxCoeff() < 0.03);
    CHECK(E.matrix.trace().real() == Approx(6 * (1.0 + 0.5 + 0.25)));
    CHECK(E.snapshots_used == 0);
}

TEST_CASE("seeded streams are reproducible and distinct", "[signal]")
{
    auto a = make_rng(5, {1, 2}), b = make_rng(5, {1, 2}), c = make_rng(5, {2, 1}), d = make_rng(5);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
}

TEST_CASE("signal validation", "[signal]")
{
    const auto a = coprime_1d(CoprimePair(2, 3));
    auto rng = make_rng(0);
    const std::vector<NormalizedDoa> d{{0.1, 0.0}};
    const std::vector<double> p{1.0, 1.0};
    CHECK_THROWS_AS(simulate_snapshots(a, d, p, 0.1, 10, rng), ValidationError);
    CHECK_THROWS_AS(sample_covariance(CMatrix(6, 0), a.positions()), ValidationError);
    CHECK_THROWS_AS(sample_covariance(CMatrix::Zero(5, 3), a.positions()), ValidationError);
    SourceScene s;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s.sources = {{10.0, 0.0, -1.0}};
    CHECK_THROWS_AS(s.validate(), ValidationError);
    CHECK(noise_power_for_snr_db(10.0) == Approx(0.1));
}
