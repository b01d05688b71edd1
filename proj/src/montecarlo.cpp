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

#include "coprime/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "coprime/assignment.hpp"
#include "coprime/coarray.hpp"

namespace coprime
{
    namespace
    {
        double wrap(double d, double period)
        {
            return period > 0.0 ? std::remainder(d, period) : d;
        }

        struct TrialOutcome
        {
            bool ok = false;
            std::string reason;
            double se_normalized = 0.0;
            double se_degrees = 0.0;
            int visible_pairs = 0;
        };

        bool visible(NormalizedDoa d, double s)
        {
            return d.u * d.u + d.v * d.v <= s * s;
        }

        // Squared (az, el) error of matched pairs that both lie in the visible region.
        void degree_error(const std::vector<NormalizedDoa> &est, const std::vector<NormalizedDoa> &truth,
                          const std::vector<int> &perm, double s, TrialOutcome &out)
        {
            for (std::size_t j = 0; j < truth.size(); ++j)
            {
                NormalizedDoa e = est[static_cast<std::size_t>(perm[j])];
                e.u = wrap(e.u, 1.0);
                e.v = wrap(e.v, 1.0);
                if (!visible(truth[j], s) || !visible(e, s))
                    continue;
                const AnglePair a = angles_from_normalized(truth[j], s);
                const AnglePair b = angles_from_normalized(e, s);
                const double daz = a.az_deg - b.az_deg;
                const double del = wrap(a.el_deg - b.el_deg, 360.0);
                out.se_degrees += daz * daz + del * del;
                ++out.visible_pairs;
            }
        }
    } // namespace

    double squared_distance(NormalizedDoa a, NormalizedDoa b, double period)
    {
        const double du = wrap(a.u - b.u, period);
        const double dv = wrap(a.v - b.v, period);
        return du * du + dv * dv;
    }

    std::vector<int> match_estimates(const std::vector<NormalizedDoa> &estimates, const std::vector<NormalizedDoa> &truth,
                                     double period)
    {
        if (estimates.size() != truth.size())
            throw ValidationError("trial holds " + std::to_string(estimates.size()) + " estimates, expected " +
                                      std::to_string(truth.size()),
                                  "estimates");
        const auto n = static_cast<Eigen::Index>(truth.size());
        Eigen::MatrixXd cost(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                cost(j, i) = squared_distance(estimates[static_cast<std::size_t>(i)], truth[static_cast<std::size_t>(j)], period);
        return solve_assignment(cost);
    }

    double rmse(const std::vector<std::vector<NormalizedDoa>> &estimates, const std::vector<NormalizedDoa> &truth,
                double period)
    {
        if (estimates.empty())
            throw ValidationError("rmse needs at least one trial", "estimates");
        if (truth.empty())
            throw ValidationError("rmse needs at least one true direction", "truth");
        double total = 0.0;
        for (const auto &trial : estimates)
        {
            const auto perm = match_estimates(trial, truth, period);
            for (std::size_t j = 0; j < truth.size(); ++j)
                total += squared_distance(trial[static_cast<std::size_t>(perm[j])], truth[j], period);
        }
        return std::sqrt(total / double(estimates.size() * truth.size()));
    }

    std::string to_string(SweepVariable v)
    {
        return v == SweepVariable::kSnrDb ? "snr_db" : "snapshots";
    }

    SweepVariable sweep_variable_from_string(const std::string &text)
    {
        if (text == "snr_db")
            return SweepVariable::kSnrDb;
        if (text == "snapshots")
            return SweepVariable::kSnapshots;
        throw ValidationError("unknown sweep variable '" + text + "', expected snr_db or snapshots", "variable");
    }

    SensorArray ArraySpec::build() const
    {
        if (type == "coprime1d")
            return coprime_1d(CoprimePair(m, n), spacing_over_lambda);
        if (type == "rcpa")
            return rcpa(CoprimePair(m, n), spacing_over_lambda);
        if (type == "cpa")
            return cpa(CoprimePair(m, n), {}, spacing_over_lambda);
        if (type == "gcpa")
            return gcpa(n1, m1, n2, m2, spacing_over_lambda);
        if (type == "ura")
            return uniform_rectangular(n, m, spacing_over_lambda);
        throw ValidationError("unknown array type '" + type + "'", "type");
    }

    void SweepSpec::validate() const
    {
        if (values.empty())
            throw ValidationError("sweep needs at least one value", "values");
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!(values[i] > values[i - 1]))
                throw ValidationError("sweep values must be strictly increasing", "values");
        for (double v : values)
        {
            if (!std::isfinite(v))
                throw ValidationError("sweep values must be finite", "values");
            if (variable == SweepVariable::kSnapshots && (v < 1.0 || v != std::floor(v)))
                throw ValidationError("snapshot counts must be positive integers", "values");
        }
        if (trials < 1)
            throw ValidationError("trials must be at least 1", "trials");
        if (sources < 1)
            throw ValidationError("sources must be at least 1", "sources");
        if (snapshots < 1)
            throw ValidationError("snapshots must be at least 1", "snapshots");
        if (!std::isfinite(snr_db))
            throw ValidationError("snr_db must be finite", "snr_db");
        if (arrays.empty())
            throw ValidationError("sweep needs at least one array", "arrays");
        if (!(min_separation_steps >= 0.0))
            throw ValidationError("min_separation_steps must be non-negative", "min_separation_steps");
        GridSpec::normalized(grid_step);
    }

    std::vector<NormalizedDoa> draw_sources(int count, double min_separation, Rng &rng, long *redraws)
    {
        std::uniform_real_distribution<double> uniform(-0.5, 0.5);
        const double min_sq = min_separation * min_separation;
        std::vector<NormalizedDoa> out;
        out.reserve(static_cast<std::size_t>(std::max(count, 0)));
        long attempts = 0;
        while (static_cast<int>(out.size()) < count)
        {
            const double u = uniform(rng);
            const NormalizedDoa d{u, uniform(rng)};
            bool ok = true;
            for (const auto &o : out)
                if (squared_distance(d, o, 1.0) < min_sq)
                {
                    ok = false;
                    break;
                }
            if (ok)
            {
                out.push_back(d);
                attempts = 0;
                continue;
            }
            if (redraws)
                ++*redraws;
            if (++attempts > 10000)
                throw NumericalError("cannot place " + std::to_string(count) + " sources with separation " +
                                         std::to_string(min_separation),
                                     "sources");
        }
        return out;
    }

    RmseReport run_sweep(const SweepSpec &spec, std::uint64_t seed)
    {
        spec.validate();

        std::vector<SensorArray> arrays;
        std::vector<Coarray> coarrays;
        for (const auto &a : spec.arrays)
        {
            arrays.push_back(a.build());
            coarrays.push_back(difference_coarray(arrays.back()));
        }
        const GridSpec grid = GridSpec::normalized(spec.grid_step);

        RmseReport report;
        report.seed = seed;
        report.grid_step = spec.grid_step;

        const int L = spec.trials;
        std::vector<std::vector<NormalizedDoa>> truth(static_cast<std::size_t>(L));
        for (int t = 0; t < L; ++t)
        {
            Rng rng = make_rng(seed, {1, static_cast<std::uint64_t>(t)});
            truth[static_cast<std::size_t>(t)] =
                draw_sources(spec.sources, spec.min_separation_steps * spec.grid_step, rng, &report.source_redraws);
        }

        const std::size_t n_values = spec.values.size();
        const std::size_t n_arrays = arrays.size();
        const long n_units = static_cast<long>(n_arrays * n_values * std::size_t(L));
        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(n_units));
        const std::vector<double> powers(static_cast<std::size_t>(spec.sources), 1.0);
        MusicOptions options;
        options.refine_peaks = spec.refine_peaks;

#pragma omp parallel for schedule(dynamic, 1)
        for (long k = 0; k < n_units; ++k)
        {
            const std::size_t ai = std::size_t(k) / (n_values * std::size_t(L));
            const std::size_t vi = (std::size_t(k) / std::size_t(L)) % n_values;
            const std::size_t t = std::size_t(k) % std::size_t(L);
            TrialOutcome &out = outcomes[std::size_t(k)];

            const double value = spec.values[vi];
            const double snr = spec.variable == SweepVariable::kSnrDb ? value : spec.snr_db;
            const int snapshots = spec.variable == SweepVariable::kSnapshots ? static_cast<int>(value) : spec.snapshots;
            const SensorArray &array = arrays[ai];
            try
            {
                Rng rng = make_rng(seed, {2, t, vi, ai});
                const CMatrix Y = simulate_snapshots(array, truth[t], powers, noise_power_for_snr_db(snr), snapshots, rng);
                const SampleCovariance cov = sample_covariance(Y, array.positions());
                const MusicResult r = estimate_from_covariance(cov, coarrays[ai], spec.sources, grid,
                                                               array.spacing_over_lambda(), options);
                std::vector<NormalizedDoa> est;
                est.reserve(r.peaks.size());
                for (const auto &p : r.peaks)
                    est.push_back({p.first, p.second});
                const auto perm = match_estimates(est, truth[t], 1.0);
                for (std::size_t j = 0; j < truth[t].size(); ++j)
                    out.se_normalized += squared_distance(est[static_cast<std::size_t>(perm[j])], truth[t][j], 1.0);
                degree_error(est, truth[t], perm, array.spacing_over_lambda(), out);
                out.ok = true;
            }
            catch (const std::exception &e)
            {
                out = TrialOutcome{};
                out.reason = "trial " + std::to_string(t) + ": " + e.what();
            }
        }

        for (std::size_t ai = 0; ai < n_arrays; ++ai)
            for (std::size_t vi = 0; vi < n_values; ++vi)
            {
                RmseRow row;
                row.array_label = arrays[ai].label();
                row.variable = spec.variable;
                row.value = spec.values[vi];
                double se = 0.0, se_deg = 0.0;
                long pairs_deg = 0;
                for (std::size_t t = 0; t < std::size_t(L); ++t)
                {
                    const TrialOutcome &o = outcomes[(ai * n_values + vi) * std::size_t(L) + t];
                    if (!o.ok)
                    {
                        ++row.trials_excluded;
                        row.exclusion_reasons.push_back(o.reason);
                        continue;
                    }
                    ++row.trials_used;
                    se += o.se_normalized;
                    se_deg += o.se_degrees;
                    pairs_deg += o.visible_pairs;
                }
                const double nan = std::numeric_limits<double>::quiet_NaN();
                row.rmse_normalized = row.trials_used > 0 ? std::sqrt(se / (double(row.trials_used) * spec.sources)) : nan;
                row.rmse_degrees = pairs_deg > 0 ? std::sqrt(se_deg / double(pairs_deg)) : nan;
                report.rows.push_back(std::move(row));
            }

        std::ostringstream desc;
        desc << spec.sources << " unit-power uncorrelated sources uniform in [-0.5,0.5)^2 (min separation "
             << spec.min_separation_steps << " grid steps); ";
        if (spec.variable == SweepVariable::kSnrDb)
            desc << "snapshots " << spec.snapshots << ", snr_db swept";
        else
            desc << "snr_db " << spec.snr_db << ", snapshots swept";
        desc << "; " << L << " trials; normalized grid step " << spec.grid_step
             << (spec.refine_peaks ? " with Newton peak refinement" : "");
        report.scene_description = desc.str();
        return report;
    }

} // namespace coprime
