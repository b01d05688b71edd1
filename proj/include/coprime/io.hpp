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

#ifndef COPRIME_IO_HPP
#define COPRIME_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "coprime/beamform.hpp"
#include "coprime/coarray.hpp"
#include "coprime/doa.hpp"
#include "coprime/geometry.hpp"
#include "coprime/montecarlo.hpp"
#include "coprime/signal.hpp"

namespace coprime::io
{
    using Json = nlohmann::ordered_json;

    // ---- files ------------------------------------------------------------------------

    // Throws ValidationError (field = path) when the file cannot be read or parsed.
    Json read_json(const std::filesystem::path &path);
    std::string read_text(const std::filesystem::path &path);

    // Throws ValidationError when the file cannot be written.
    void write_text(const std::filesystem::path &path, const std::string &text);
    void write_json(const std::filesystem::path &path, const Json &j);

    // %.17g; non-finite values as "nan", "inf", "-inf".
    std::string format_double(double v);

    // ---- arrays and coarrays ----------------------------------------------------------

    // {"label", "spacing_over_lambda", "positions": [[x, y], ...]}, positions sorted.
    Json to_json(const SensorArray &array);
    SensorArray array_from_json(const Json &j);

    // {"lags", "weights": [[lx, ly, count], ...], "contiguous_half_width", "holes", "hole_fraction"}
    Json coarray_report(const Coarray &co);

    // Columns lx, ly, weight over the bounding box, zero weights included.
    std::string weight_grid_csv(const Coarray &co);

    // ---- scenes and covariances -------------------------------------------------------

    // {"sources": [{"az_deg", "el_deg", "power"}], "noise_power", "snapshots", "seed"};
    // seed and power are optional (default_seed and 1).
    SourceScene scene_from_json(const Json &j, std::uint64_t default_seed);

    // {"sensor_order": [[x, y], ...], "snapshots", "matrix": [[re, im], ...] row-major}
    Json to_json(const SampleCovariance &cov);
    SampleCovariance covariance_from_json(const Json &j);

    // ---- MUSIC ------------------------------------------------------------------------

    // Columns az_deg, el_deg, spectrum (or u, v, spectrum on a normalized grid).
    std::string spectrum_csv(const MusicResult &result);

    // [{"az_deg", "el_deg", "value"}] (or u, v).
    Json peaks_json(const MusicResult &result);

    // ---- Monte Carlo ------------------------------------------------------------------

    // {"variable", "values", "trials", "sources", "snr_db", "snapshots", "arrays": [{"type", "m", "n", ...}],
    //  "grid_step", "min_separation_steps", "refine_peaks"}; all but variable, values and arrays optional.
    SweepSpec sweep_spec_from_json(const Json &j);
    Json to_json(const SweepSpec &spec);

    // Columns array_label, swept_variable, value, rmse_normalized, rmse_degrees, trials_used, trials_excluded.
    std::string report_csv(const RmseReport &report);

    // ---- beamforming ------------------------------------------------------------------

    // {"look": {"az_deg", "el_deg"}, "interferers": [{"az_deg", "el_deg", "suppression_db"}],
    //  "sidelobe_db": num or null, "mainlobe": {"az_deg", "el_deg"}, "grid": {"az": "a:b:s", "el": "a:b:s"},
    //  "noise_model": "isotropic" | "identity"}; every field optional.
    PatternSpec pattern_spec_from_json(const Json &j);
    Json to_json(const PatternSpec &spec);

    // [{"re", "im"}, ...]
    Json weights_json(const CVector &w);
    CVector weights_from_json(const Json &j);

    Json metrics_json(const BeamformerSolution &sol);

    // Columns az_deg, el_deg, gain_db.
    std::string pattern_csv(const Eigen::MatrixXd &gain_db, const GridAxis &az, const GridAxis &el);

} // namespace coprime::io

#endif
