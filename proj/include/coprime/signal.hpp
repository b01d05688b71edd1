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

#ifndef COPRIME_SIGNAL_HPP
#define COPRIME_SIGNAL_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include "coprime/geometry.hpp"

namespace coprime
{
    /*!
    How an (azimuth, elevation) pair maps to normalized DOA (u, v) = (d/lambda) * (cu, cv).

    - kPolarAzimuth: azimuth is measured from the array normal and elevation rotates within
      the array plane, cu = sin(az) cos(el), cv = sin(az) sin(el). This is the data model used
      for DOA estimation; note that az = 0 maps every elevation to broadside.
    - kAzimuthElevation: antenna-pattern convention with broadside at (0, 0),
      cu = cos(el) sin(az), cv = sin(el). Used for beam-pattern synthesis.
    */
    enum class AngleConvention
    {
        kPolarAzimuth,
        kAzimuthElevation
    };

    struct AnglePair
    {
        double az_deg = 0.0;
        double el_deg = 0.0;
    };

    NormalizedDoa normalized_doa(double az_deg, double el_deg, double spacing_over_lambda,
                                 AngleConvention convention = AngleConvention::kPolarAzimuth);

    // Inverse of normalized_doa on the visible region. kPolarAzimuth returns az in [0, 90] and
    // el in (-180, 180]; kAzimuthElevation returns az in [-90, 90], el in [-90, 90].
    // Throws ValidationError outside the visible disc.
    AnglePair angles_from_normalized(NormalizedDoa doa, double spacing_over_lambda,
                                     AngleConvention convention = AngleConvention::kPolarAzimuth);

    struct Source
    {
        double az_deg = 0.0;
        double el_deg = 0.0;
        double power = 1.0;
    };

    struct SourceScene
    {
        std::vector<Source> sources;
        double noise_power = 0.0;
        int snapshots = 1;
        std::uint64_t seed = 0;
        AngleConvention convention = AngleConvention::kPolarAzimuth;

        // Throws ValidationError on an empty source list, negative powers, or snapshots < 1.
        void validate() const;

        std::vector<NormalizedDoa> normalized(double spacing_over_lambda) const;
        std::vector<double> powers() const;
    };

    // Unit-power sources: noise power 10^(-snr/10).
    double noise_power_for_snr_db(double snr_db);

    // Entry for sensor (x, y) is exp(2 pi j (u x + v y)).
    CVector steering_vector(const SensorArray &array, NormalizedDoa doa);

    // Columns are steering vectors.
    CMatrix steering_matrix(const SensorArray &array, std::span<const NormalizedDoa> doas);

    // Seeded generator; each (seed, stream...) tuple yields an independent sequence.
    using Rng = std::mt19937_64;
    inline constexpr const char *kGeneratorName = "mt19937_64";
    Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

    // Y = A S + N. Sources and noise are independent circular complex Gaussian with the
    // given variances; result is sensors x snapshots.
    CMatrix simulate_snapshots(const SensorArray &array, std::span<const NormalizedDoa> doas,
                               std::span<const double> powers, double noise_power, int snapshots, Rng &rng);

    // Scene-driven overload, seeded from scene.seed.
    CMatrix simulate_snapshots(const SensorArray &array, const SourceScene &scene);

    struct SampleCovariance
    {
        CMatrix matrix;
        std::vector<Lattice> sensor_order;
        int snapshots_used = 0; // 0 for an analytic covariance
    };

    // (1/K) Y Y^H. Throws ValidationError for an empty snapshot set or mismatched order.
    SampleCovariance sample_covariance(const CMatrix &snapshots, std::vector<Lattice> sensor_order);

    // sum_i p_i a_i a_i^H + noise_power I.
    SampleCovariance exact_covariance(const SensorArray &array, std::span<const NormalizedDoa> doas,
                                      std::span<const double> powers, double noise_power);

} // namespace coprime

#endif
