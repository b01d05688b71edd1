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

#include "coprime/signal.hpp"

#include <algorithm>
#include <cmath>

namespace coprime
{
    namespace
    {
        constexpr double kDeg = kPi / 180.0;
    }

    NormalizedDoa normalized_doa(double az_deg, double el_deg, double spacing_over_lambda, AngleConvention convention)
    {
        const double az = az_deg * kDeg, el = el_deg * kDeg;
        if (convention == AngleConvention::kPolarAzimuth)
            return {spacing_over_lambda * std::sin(az) * std::cos(el), spacing_over_lambda * std::sin(az) * std::sin(el)};
        return {spacing_over_lambda * std::cos(el) * std::sin(az), spacing_over_lambda * std::sin(el)};
    }

    AnglePair angles_from_normalized(NormalizedDoa doa, double spacing_over_lambda, AngleConvention convention)
    {
        const double cu = doa.u / spacing_over_lambda, cv = doa.v / spacing_over_lambda;
        const double r2 = cu * cu + cv * cv;
        if (r2 > 1.0 + 1e-12)
            throw ValidationError("normalized DOA lies outside the visible region", "doa");
        if (convention == AngleConvention::kPolarAzimuth)
        {
            const double r = std::min(std::sqrt(r2), 1.0);
            return {std::asin(r) / kDeg, r == 0.0 ? 0.0 : std::atan2(cv, cu) / kDeg};
        }
        const double el = std::asin(std::clamp(cv, -1.0, 1.0));
        const double ce = std::cos(el);
        const double az = ce <= 0.0 ? 0.0 : std::asin(std::clamp(cu / ce, -1.0, 1.0));
        return {az / kDeg, el / kDeg};
    }

    void SourceScene::validate() const
    {
        if (sources.empty())
            throw ValidationError("scene must contain at least one source", "sources");
        for (const auto &s : sources)
            if (!(s.power >= 0.0))
                throw ValidationError("source power must be non-negative", "power");
        if (!(noise_power >= 0.0))
            throw ValidationError("noise power must be non-negative", "noise_power");
        if (snapshots < 1)
            throw ValidationError("snapshots must be >= 1", "snapshots");
    }

    std::vector<NormalizedDoa> SourceScene::normalized(double spacing_over_lambda) const
    {
        std::vector<NormalizedDoa> out;
        out.reserve(sources.size());
        for (const auto &s : sources)
            out.push_back(normalized_doa(s.az_deg, s.el_deg, spacing_over_lambda, convention));
        return out;
    }

    std::vector<double> SourceScene::powers() const
    {
        std::vector<double> out;
        for (const auto &s : sources)
            out.push_back(s.power);
        return out;
    }

    double noise_power_for_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

    CVector steering_vector(const SensorArray &array, NormalizedDoa doa)
    {
        const auto &pos = array.positions();
        CVector a(static_cast<Eigen::Index>(pos.size()));
        for (std::size_t k = 0; k < pos.size(); ++k)
            a(static_cast<Eigen::Index>(k)) = std::polar(1.0, kTwoPi * (doa.u * pos[k].x + doa.v * pos[k].y));
        return a;
    }

    CMatrix steering_matrix(const SensorArray &array, std::span<const NormalizedDoa> doas)
    {
        CMatrix A(static_cast<Eigen::Index>(array.size()), static_cast<Eigen::Index>(doas.size()));
        for (std::size_t i = 0; i < doas.size(); ++i)
            A.col(static_cast<Eigen::Index>(i)) = steering_vector(array, doas[i]);
        return A;
    }

    Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream)
    {
        std::vector<std::uint32_t> words;
        auto push = [&](std::uint64_t v) {
            words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
            words.push_back(static_cast<std::uint32_t>(v >> 32));
        };
        push(seed);
        for (auto s : stream)
            push(s);
        std::seed_seq seq(words.begin(), words.end());
        return Rng(seq);
    }

    CMatrix simulate_snapshots(const SensorArray &array, std::span<const NormalizedDoa> doas,
                               std::span<const double> powers, double noise_power, int snapshots, Rng &rng)
    {
        if (doas.size() != powers.size())
            throw ValidationError("one power per source required", "powers");
        if (snapshots < 1)
            throw ValidationError("snapshots must be >= 1", "snapshots");

        const auto q = static_cast<Eigen::Index>(doas.size());
        const auto n = static_cast<Eigen::Index>(array.size());
        const CMatrix A = steering_matrix(array, doas);

        std::normal_distribution<double> gauss(0.0, 1.0);
        CMatrix S(q, snapshots);
        for (int t = 0; t < snapshots; ++t)
            for (Eigen::Index i = 0; i < q; ++i)
            {
                const double sd = std::sqrt(powers[static_cast<std::size_t>(i)] / 2.0);
                const double re = gauss(rng), im = gauss(rng);
                S(i, t) = Complex(sd * re, sd * im);
            }

        CMatrix Y = A * S;
        const double nsd = std::sqrt(noise_power / 2.0);
        for (int t = 0; t < snapshots; ++t)
            for (Eigen::Index k = 0; k < n; ++k)
            {
                const double re = gauss(rng), im = gauss(rng);
                Y(k, t) += Complex(nsd * re, nsd * im);
            }
        return Y;
    }

    CMatrix simulate_snapshots(const SensorArray &array, const SourceScene &scene)
    {
        scene.validate();
        auto rng = make_rng(scene.seed);
        const auto doas = scene.normalized(array.spacing_over_lambda());
        const auto powers = scene.powers();
        return simulate_snapshots(array, doas, powers, scene.noise_power, scene.snapshots, rng);
    }

    SampleCovariance sample_covariance(const CMatrix &snapshots, std::vector<Lattice> sensor_order)
    {
        if (snapshots.cols() < 1 || snapshots.rows() < 1)
            throw ValidationError("snapshot set is empty", "snapshots");
        if (static_cast<Eigen::Index>(sensor_order.size()) != snapshots.rows())
            throw ValidationError("sensor order does not match the snapshot rows", "sensor_order");

        SampleCovariance out;
        const double K = static_cast<double>(snapshots.cols());
        out.matrix = CMatrix::Zero(snapshots.rows(), snapshots.rows());
        out.matrix.selfadjointView<Eigen::Lower>().rankUpdate(snapshots, 1.0 / K);
        out.matrix = out.matrix.selfadjointView<Eigen::Lower>();
        out.sensor_order = std::move(sensor_order);
        out.snapshots_used = static_cast<int>(snapshots.cols());
        return out;
    }

    SampleCovariance exact_covariance(const SensorArray &array, std::span<const NormalizedDoa> doas,
                                      std::span<const double> powers, double noise_power)
    {
        if (doas.size() != powers.size())
            throw ValidationError("one power per source required", "powers");
        const auto n = static_cast<Eigen::Index>(array.size());
        SampleCovariance out;
        out.matrix = noise_power * CMatrix::Identity(n, n);
        for (std::size_t i = 0; i < doas.size(); ++i)
        {
            const CVector a = steering_vector(array, doas[i]);
            out.matrix += powers[i] * a * a.adjoint();
        }
        out.sensor_order = array.positions();
        out.snapshots_used = 0;
        return out;
    }

} // namespace coprime
