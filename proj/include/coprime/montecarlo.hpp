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

#ifndef COPRIME_MONTECARLO_HPP
#define COPRIME_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "coprime/doa.hpp"
#include "coprime/geometry.hpp"
#include "coprime/signal.hpp"

namespace coprime
{
    // Squared distance between two normalized DOAs; with period > 0 each coordinate
    // difference is wrapped to [-period/2, period/2].
    double squared_distance(NormalizedDoa a, NormalizedDoa b, double period = 0.0);

    // Permutation p with estimates[p[j]] matched to truth[j], minimizing the summed squared distance.
    std::vector<int> match_estimates(const std::vector<NormalizedDoa> &estimates, const std::vector<NormalizedDoa> &truth,
                                     double period = 0.0);

    /*!
    Root-mean-square error over L trials of Q estimates each,

        sqrt( 1/(L Q) * sum_i sum_j |est_i[p_i(j)] - truth[j]|^2 )

    with p_i the optimal assignment of trial i. Throws ValidationError when a trial does not
    hold exactly Q estimates or there are no trials.
    */
    double rmse(const std::vector<std::vector<NormalizedDoa>> &estimates, const std::vector<NormalizedDoa> &truth,
                double period = 0.0);

    enum class SweepVariable
    {
        kSnrDb,
        kSnapshots
    };

    std::string to_string(SweepVariable v);
    SweepVariable sweep_variable_from_string(const std::string &text);

    // Recipe for one of the array families.
    struct ArraySpec
    {
        std::string type = "rcpa"; // coprime1d, rcpa, cpa, gcpa, ura
        int m = 2, n = 3;          // coprime1d, rcpa, cpa; ura uses n x m
        int n1 = 0, m1 = 0, n2 = 0, m2 = 0;
        double spacing_over_lambda = 0.5;

        SensorArray build() const;
    };

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::kSnrDb;
        std::vector<double> values;
        int trials = 20;

        // Scene template; the swept field is overridden per value.
        int sources = 49;
        double snr_db = 0.0;
        int snapshots = 500;

        std::vector<ArraySpec> arrays;

        double grid_step = 0.005;             // normalized MUSIC grid
        double min_separation_steps = 2.0;    // source draws closer than this (torus distance) are redrawn
        bool refine_peaks = true;

        // Throws ValidationError naming the offending field.
        void validate() const;
    };

    struct RmseRow
    {
        std::string array_label;
        SweepVariable variable = SweepVariable::kSnrDb;
        double value = 0.0;
        double rmse_normalized = 0.0;
        double rmse_degrees = 0.0; // NaN when no matched pair is visible
        int trials_used = 0;
        int trials_excluded = 0;
        std::vector<std::string> exclusion_reasons; // one per excluded trial, trial order
    };

    struct RmseReport
    {
        std::vector<RmseRow> rows; // array-major, then swept value
        std::uint64_t seed = 0;
        std::string generator = kGeneratorName;
        double grid_step = 0.0;
        std::string scene_description;
        long source_redraws = 0;
    };

    /*!
    Draws `count` DOAs uniformly from [-0.5, 0.5)^2. A draw within `min_separation` (torus
    distance) of an accepted one is redrawn; the number of redraws is added to *redraws.
    Throws NumericalError if a source cannot be placed after 10000 redraws.
    */
    std::vector<NormalizedDoa> draw_sources(int count, double min_separation, Rng &rng, long *redraws = nullptr);

    /*!
    Runs spec.trials trials for every (array, value) pair. Trial i uses the same source draw for
    every array and value; noise streams depend on (trial, value, array). Trials run in
    parallel and are folded in trial order, so the report depends only on the spec and seed.
    Trials whose estimation throws are excluded and counted.
    */
    RmseReport run_sweep(const SweepSpec &spec, std::uint64_t seed);

} // namespace coprime

#endif
