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

#ifndef COPRIME_BEAMFORM_HPP
#define COPRIME_BEAMFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "coprime/doa.hpp"
#include "coprime/geometry.hpp"
#include "coprime/signal.hpp"
#include "coprime/socp.hpp"

namespace coprime
{
    struct Interferer
    {
        double az_deg = 0.0;
        double el_deg = 0.0;
        double suppression_db = -30.0; // required level relative to the main lobe
    };

    enum class NoiseModel
    {
        kIsotropic, // sinc matrix: w^H Rn w is proportional to radiated power
        kIdentity,  // white noise: w^H w
    };

    /*!
    Pattern synthesis problem. Angles use the antenna convention (AngleConvention::kAzimuthElevation),
    broadside at (0, 0).

    Sidelobe constraints apply at every point of grid_az x grid_el outside the main-lobe box
    |az - look_az| <= mainlobe_az_deg and |el - look_el| <= mainlobe_el_deg.
    Set `sidelobe_db` to nullopt to drop them.
    */
    struct PatternSpec
    {
        double look_az_deg = 0.0;
        double look_el_deg = 0.0;
        std::vector<Interferer> interferers = {{30.0, 0.0, -30.0}, {-40.0, 0.0, -40.0}};
        std::optional<double> sidelobe_db = -17.0;
        double mainlobe_az_deg = 20.0;
        double mainlobe_el_deg = 20.0;
        GridAxis grid_az{-90.0, 90.0, 2.0};
        GridAxis grid_el{-90.0, 90.0, 2.0};
        NoiseModel noise_model = NoiseModel::kIsotropic;

        // Throws ValidationError for non-negative levels, interferers inside the main-lobe box
        // or a malformed grid.
        void validate() const;

        bool in_mainlobe(double az_deg, double el_deg) const;
    };

    enum class SolveStatus
    {
        kOptimal,
        kInfeasible,
        kIterationLimit,
        kNumericalError,
    };

    std::string to_string(SolveStatus s);

    struct ConstraintViolation
    {
        std::string kind; // "interferer" or "sidelobe"
        double az_deg = 0.0;
        double el_deg = 0.0;
        double limit_db = 0.0;
        double level_db = 0.0; // best achievable level at this point found by the feasibility search
    };

    struct BeamformerSolution
    {
        CVector weights; // ordered as array.positions()
        double directivity_dbi = 0.0;
        std::vector<double> interference_suppression_db;
        double sidelobe_over_requirement_pct = 0.0; // share of sidelobe points above the limit
        double max_sidelobe_db = 0.0;               // -inf without sidelobe points
        SolveStatus status = SolveStatus::kNumericalError;
        int iterations = 0;
        double duality_gap = 0.0;
        double relative_gap = 0.0;
        double solve_seconds = 0.0;
        std::optional<ConstraintViolation> most_violated; // set for kInfeasible
    };

    // Entry (m, n) = sinc(2 pi |p_m - p_n| d / lambda), sinc(0) = 1, plus loading * trace / side
    // on the diagonal.
    Eigen::MatrixXd isotropic_noise_matrix(const SensorArray &array, double loading = 1e-8);

    // Steering vector for the antenna convention.
    CVector pattern_steering(const SensorArray &array, double az_deg, double el_deg);

    // Minimizes w^H Rn w under the distortionless, interference and sidelobe constraints.
    // When the solver stops without a certificate a feasibility search runs; an infeasible
    // constraint set is reported as kInfeasible with `most_violated` filled in, otherwise the
    // solver status and its duality gap are returned. Metrics are filled for kOptimal only.
    BeamformerSolution synthesize(const SensorArray &array, const PatternSpec &spec,
                                  const socp::Options &options = {});

    // 10 log10(|w^H a(look)|^2 / (w^H B w)), B the unloaded isotropic matrix. Throws
    // ValidationError for w = 0.
    double directivity_dbi(const SensorArray &array, const CVector &weights, double look_az_deg = 0.0,
                           double look_el_deg = 0.0);

    // 20 log10(|w^H a(g)| / |w^H a(look)|), row-major over (az, el).
    Eigen::MatrixXd pattern_cut(const SensorArray &array, const CVector &weights, const GridAxis &az,
                                const GridAxis &el, double look_az_deg = 0.0, double look_el_deg = 0.0);

} // namespace coprime

#endif
