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

#ifndef COPRIME_DOA_HPP
#define COPRIME_DOA_HPP

#include <map>
#include <string>
#include <vector>

#include "coprime/coarray.hpp"
#include "coprime/kernels.hpp"
#include "coprime/signal.hpp"

namespace coprime
{
    using LagMap = std::map<Lattice, Complex>;

    // Average of all covariance entries R[p][q] with position(p) - position(q) = l, for every lag
    // of the coarray. The number of averaged entries per lag equals its coarray weight.
    LagMap lag_average(const SampleCovariance &cov, const Coarray &co);

    // Same, restricted to the square [-half_width, half_width]^2. Throws ValidationError naming
    // the first lag of that square missing from the coarray.
    LagMap lag_average(const SampleCovariance &cov, const Coarray &co, int half_width);

    /*!
    Hermitian block-Toeplitz covariance of the (h+1) x (h+1) virtual uniform rectangular array.

    Virtual sensor (i, j), 0 <= i, j <= h, has index i * (h + 1) + j and the entry for sensors
    (i, j), (k, l) is r(i - k, j - l), r being the lag-averaged autocorrelation.
    */
    struct VirtualCovariance
    {
        CMatrix matrix;
        LagMap lag_autocorrelation;
        int half_width = 0;

        int side() const noexcept { return (half_width + 1) * (half_width + 1); }
    };

    // Throws ValidationError naming the first missing lag of [-h, h]^2.
    VirtualCovariance build_virtual_covariance(const LagMap &lag_avg, int half_width);

    // Inclusive range start:stop:step.
    struct GridAxis
    {
        double start = 0.0;
        double stop = 0.0;
        double step = 1.0;

        int count() const;
        double value(int i) const { return start + step * i; }

        // Parses "start:stop:step"; throws ValidationError on malformed text or a non-positive step.
        static GridAxis parse(const std::string &text, const std::string &field = "grid");
    };

    enum class GridDomain
    {
        kAngles,     // (azimuth, elevation) in degrees through an AngleConvention
        kNormalized, // (u, v) on the periodic cell [-0.5, 0.5)^2
    };

    /*!
    Search grid for the MUSIC pseudo-spectrum. Points are ordered row-major with the first
    axis outermost. Normalized grids are periodic: u = -0.5 and u = 0.5 are the same
    steering vector at integer lattice positions, so neighbours wrap around.
    */
    struct GridSpec
    {
        GridDomain domain = GridDomain::kAngles;
        GridAxis first;
        GridAxis second;
        AngleConvention convention = AngleConvention::kPolarAzimuth;

        static GridSpec angles(GridAxis az, GridAxis el, AngleConvention convention = AngleConvention::kPolarAzimuth);

        // Throws ValidationError unless 1 / step is an integer.
        static GridSpec normalized(double step);

        bool periodic() const noexcept { return domain == GridDomain::kNormalized; }
        int rows() const { return first.count(); }
        int cols() const { return second.count(); }
        std::size_t size() const { return std::size_t(rows()) * std::size_t(cols()); }

        std::vector<NormalizedDoa> points(double spacing_over_lambda) const;
    };

    // Azimuth -50..50 and elevation -90..90 degrees in 0.5 degree steps.
    GridSpec default_angle_grid();

    struct Peak
    {
        double first = 0.0;  // azimuth (deg) or u
        double second = 0.0; // elevation (deg) or v
        double value = 0.0;
        std::size_t index = 0;
    };

    struct NoiseSubspace
    {
        CMatrix basis;
        Eigen::VectorXd eigenvalues; // all eigenvalues, descending
    };

    // Eigenvectors of the side - q smallest eigenvalues, each with its first non-negligible
    // component rotated to the positive real axis. Throws ValidationError when q is out of
    // [1, side) or the matrix is not Hermitian within 1e-10 (relative).
    NoiseSubspace noise_subspace(const CMatrix &hermitian, int q_sources);

    struct MusicResult
    {
        GridSpec grid;
        std::vector<double> spectrum; // row-major, grid.rows() x grid.cols()
        std::vector<Peak> peaks;      // descending value
        Eigen::VectorXd eigenvalues;
    };

    // Strict local maxima over the 8-neighbourhood. Equal neighbours are resolved in favour
    // of the lexicographically smallest (first, second). Returns at most `count` peaks sorted
    // by descending value, ties by ascending index.
    std::vector<Peak> find_peaks(const std::vector<double> &spectrum, const GridSpec &grid, std::size_t count);

    struct MusicOptions
    {
        // Normalized grids only: polish every grid local maximum with damped Newton steps on
        // the continuous pseudo-spectrum, then rank the polished peaks. Peaks are then no
        // longer restricted to grid points.
        bool refine_peaks = false;
    };

    // Damped Newton descent on q(u, v) = a^H P a from each candidate, steps capped at one cell
    // and total travel at two cells. Candidates that converge within half a cell of a stronger
    // one are dropped. Returns at most `count` peaks, descending value.
    std::vector<Peak> refine_peaks(const kernels::ProjectorPolynomial &poly, const std::vector<Peak> &candidates,
                                   double cell, std::size_t count);

    // 1 / (a^H E_n E_n^H a) on the grid and the q largest local maxima.
    MusicResult music_spectrum(const VirtualCovariance &vc, int q_sources, const GridSpec &grid,
                               double spacing_over_lambda = 0.5, const MusicOptions &options = {});

    // Covariance -> lag average -> virtual covariance -> MUSIC. Throws ValidationError when
    // q_sources exceeds the virtual DOF bound (h+1)^2 - 1 and NumericalError when fewer than
    // q_sources peaks are found.
    MusicResult estimate_from_covariance(const SampleCovariance &cov, const Coarray &co, int q_sources,
                                         const GridSpec &grid, double spacing_over_lambda = 0.5,
                                         const MusicOptions &options = {});

    // Full pipeline on simulated data for a scene.
    std::vector<Peak> estimate_doa(const SensorArray &array, const SourceScene &scene, int q_sources,
                                   const GridSpec &grid);

} // namespace coprime

#endif
