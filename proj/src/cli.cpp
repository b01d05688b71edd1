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

#include "coprime/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <omp.h>

#include "coprime/beamform.hpp"
#include "coprime/coarray.hpp"
#include "coprime/doa.hpp"
#include "coprime/io.hpp"
#include "coprime/manifest.hpp"
#include "coprime/montecarlo.hpp"

namespace coprime::cli
{
    namespace
    {
        using io::Json;

        struct Run
        {
            std::ostream &diag;
            RunManifest manifest;

            Json input_json(const std::string &path)
            {
                const std::string text = io::read_text(path);
                manifest.inputs.push_back({path, sha256_hex(text)});
                try
                {
                    return Json::parse(text);
                }
                catch (const nlohmann::json::parse_error &e)
                {
                    throw ValidationError("cannot parse " + path + ": " + e.what(), path);
                }
            }

            void output(const std::string &path, const std::string &text)
            {
                io::write_text(path, text);
                manifest.outputs.push_back(path);
            }

            void output(const std::string &path, const Json &j)
            {
                output(path, j.dump(2) + "\n");
            }
        };

        void print_error(std::ostream &diag, const std::string &code, const std::string &message, const std::string &field)
        {
            diag << Json{{"error", code}, {"message", message}, {"field", field}}.dump() << "\n";
        }

        // ---- subcommand options ----------------------------------------------------------

        struct ArrayGenOptions
        {
            std::string type, out;
            int m = 2, n = 3, n1 = 0, m1 = 0, n2 = 0, m2 = 0;
            double spacing = 0.5;
        };

        struct CoarrayOptions
        {
            std::string in, out, csv;
        };

        struct SimulateOptions
        {
            std::string array, scene, out;
            std::optional<std::uint64_t> seed;
        };

        struct MusicCliOptions
        {
            std::string array, cov, out_spectrum, out_peaks;
            int sources = 0;
            std::string az = "-50:50:0.5", el = "-90:90:0.5";
            std::optional<double> normalized_step;
            bool refine = false;
        };

        struct RmseOptions
        {
            std::string spec, out;
            std::optional<std::uint64_t> seed;
        };

        struct BeamformOptions
        {
            std::string array, spec, out_weights, out_metrics, out_pattern;
        };

        struct ReplayOptions
        {
            std::string manifest;
        };

        // ---- handlers --------------------------------------------------------------------

        int run_array_gen(Run &run, const ArrayGenOptions &o)
        {
            ArraySpec spec;
            spec.type = o.type;
            spec.m = o.m;
            spec.n = o.n;
            spec.n1 = o.n1;
            spec.m1 = o.m1;
            spec.n2 = o.n2;
            spec.m2 = o.m2;
            spec.spacing_over_lambda = o.spacing;
            const SensorArray array = spec.build();
            run.manifest.parameters = Json{{"type", o.type}, {"m", o.m}, {"n", o.n}, {"n1", o.n1}, {"m1", o.m1},
                                           {"n2", o.n2}, {"m2", o.m2}, {"spacing_over_lambda", o.spacing}};
            run.output(o.out, io::to_json(array));
            run.diag << array.label() << ": " << array.size() << " sensors -> " << o.out << "\n";
            return kExitSuccess;
        }

        int run_coarray(Run &run, const CoarrayOptions &o)
        {
            const SensorArray array = io::array_from_json(run.input_json(o.in));
            const Coarray co = difference_coarray(array);
            run.output(o.out, io::coarray_report(co));
            if (!o.csv.empty())
                run.output(o.csv, io::weight_grid_csv(co));
            run.manifest.parameters = Json{{"array", array.label()}};
            run.diag << array.label() << ": " << co.lags().size() << " lags, contiguous half-width "
                     << co.contiguous_half_width() << ", " << co.holes().size() << " holes (fraction "
                     << io::format_double(hole_percentage(co)) << ")\n";
            return kExitSuccess;
        }

        int run_simulate(Run &run, const SimulateOptions &o)
        {
            const SensorArray array = io::array_from_json(run.input_json(o.array));
            SourceScene scene = io::scene_from_json(run.input_json(o.scene), default_seed());
            if (o.seed)
                scene.seed = *o.seed;
            const CMatrix Y = simulate_snapshots(array, scene);
            const SampleCovariance cov = sample_covariance(Y, array.positions());
            run.manifest.seed = scene.seed;
            run.manifest.generator = kGeneratorName;
            run.manifest.parameters = Json{{"array", array.label()},
                                           {"sources", scene.sources.size()},
                                           {"noise_power", scene.noise_power},
                                           {"snapshots", scene.snapshots}};
            run.output(o.out, io::to_json(cov));
            run.diag << scene.sources.size() << " sources, " << scene.snapshots << " snapshots on " << array.label()
                     << " (seed " << scene.seed << ") -> " << o.out << "\n";
            return kExitSuccess;
        }

        int run_music(Run &run, const MusicCliOptions &o)
        {
            const SensorArray array = io::array_from_json(run.input_json(o.array));
            const SampleCovariance cov = io::covariance_from_json(run.input_json(o.cov));
            if (cov.sensor_order != array.positions())
                throw ValidationError("covariance sensor_order does not match the array positions", "cov");
            const GridSpec grid = o.normalized_step
                                      ? GridSpec::normalized(*o.normalized_step)
                                      : GridSpec::angles(GridAxis::parse(o.az, "az"), GridAxis::parse(o.el, "el"));
            MusicOptions options;
            options.refine_peaks = o.refine;
            const Coarray co = difference_coarray(array);
            const MusicResult r =
                estimate_from_covariance(cov, co, o.sources, grid, array.spacing_over_lambda(), options);
            run.manifest.parameters = Json{{"sources", o.sources}, {"refine_peaks", o.refine}};
            if (o.normalized_step)
                run.manifest.parameters["normalized_step"] = *o.normalized_step;
            else
            {
                run.manifest.parameters["az"] = o.az;
                run.manifest.parameters["el"] = o.el;
            }
            run.output(o.out_spectrum, io::spectrum_csv(r));
            run.output(o.out_peaks, io::peaks_json(r));
            run.diag << r.peaks.size() << " peaks on a " << grid.rows() << " x " << grid.cols() << " grid -> "
                     << o.out_peaks << "\n";
            return kExitSuccess;
        }

        int run_rmse(Run &run, const RmseOptions &o)
        {
            const SweepSpec spec = io::sweep_spec_from_json(run.input_json(o.spec));
            const std::uint64_t seed = o.seed ? *o.seed : default_seed();
            const RmseReport report = run_sweep(spec, seed);
            run.manifest.seed = seed;
            run.manifest.generator = report.generator;
            run.manifest.parameters = io::to_json(spec);
            run.manifest.parameters["scene_description"] = report.scene_description;
            run.output(o.out, io::report_csv(report));

            run.diag << report.scene_description << "\n";
            run.diag << "source redraws: " << report.source_redraws << "\n";
            for (const auto &r : report.rows)
            {
                run.diag << r.array_label << " " << to_string(r.variable) << "=" << r.value
                         << ": rmse " << io::format_double(r.rmse_normalized) << " (normalized), "
                         << io::format_double(r.rmse_degrees) << " (deg), " << r.trials_used << " used, "
                         << r.trials_excluded << " excluded\n";
                for (std::size_t k = 0; k < std::min<std::size_t>(r.exclusion_reasons.size(), 3); ++k)
                    run.diag << "  excluded " << r.exclusion_reasons[k] << "\n";
            }
            return kExitSuccess;
        }

        int run_beamform(Run &run, const BeamformOptions &o)
        {
            const SensorArray array = io::array_from_json(run.input_json(o.array));
            const PatternSpec spec = io::pattern_spec_from_json(run.input_json(o.spec));
            run.manifest.parameters = io::to_json(spec);
            const BeamformerSolution sol = synthesize(array, spec);

            if (sol.status != SolveStatus::kOptimal)
            {
                run.output(o.out_metrics, io::metrics_json(sol));
                std::string message = "beamformer " + to_string(sol.status);
                if (sol.most_violated)
                {
                    const auto &v = *sol.most_violated;
                    message += ": most violated " + v.kind + " constraint at az " + io::format_double(v.az_deg) +
                               ", el " + io::format_double(v.el_deg) + " (limit " + io::format_double(v.limit_db) +
                               " dB, best achievable " + io::format_double(v.level_db) + " dB)";
                }
                else
                    message += ", duality gap " + io::format_double(sol.duality_gap);
                throw NumericalError(message, "spec");
            }

            run.output(o.out_weights, io::weights_json(sol.weights));
            run.output(o.out_metrics, io::metrics_json(sol));
            run.output(o.out_pattern, io::pattern_csv(pattern_cut(array, sol.weights, spec.grid_az, spec.grid_el,
                                                                  spec.look_az_deg, spec.look_el_deg),
                                                      spec.grid_az, spec.grid_el));
            run.diag << "directivity " << io::format_double(sol.directivity_dbi) << " dBi, max sidelobe "
                     << io::format_double(sol.max_sidelobe_db) << " dB, " << sol.iterations << " iterations\n";
            return kExitSuccess;
        }

        int run_replay(std::ostream &diag, const ReplayOptions &o)
        {
            const RunManifest m = manifest_from_json(io::read_json(o.manifest));
            for (const auto &in : m.inputs)
                if (sha256_file(in.path) != in.sha256)
                    throw ValidationError("input " + in.path + " changed since the manifest was written", in.path);
            if (!m.argv.empty() && m.argv.front() == "replay")
                throw ValidationError("manifest records a replay", "argv");
            return dispatch(m.argv, diag);
        }

        std::optional<std::uint64_t> parse_seed_option(const std::string &text)
        {
            if (text.empty())
                return std::nullopt;
            try
            {
                std::size_t used = 0;
                const unsigned long long v = std::stoull(text, &used);
                if (used == text.size() && text.front() != '-')
                    return v;
            }
            catch (const std::exception &)
            {
            }
            throw ValidationError("seed must be a non-negative integer, got '" + text + "'", "seed");
        }
    } // namespace

    std::uint64_t default_seed()
    {
        const char *env = std::getenv(kSeedEnvironmentVariable);
        if (!env || !*env)
            return 0;
        try
        {
            return *parse_seed_option(env);
        }
        catch (const ValidationError &)
        {
            throw ValidationError(std::string(kSeedEnvironmentVariable) + " must be a non-negative integer", kSeedEnvironmentVariable);
        }
    }

    int dispatch(const std::vector<std::string> &args, std::ostream &diag)
    {
        CLI::App app{"Sparse planar array design, coarray analysis, DOA estimation and beam-pattern synthesis",
                     "coprime"};
        app.require_subcommand(1);
        int threads = 0;
        app.add_option("--threads", threads, "Cap on OpenMP threads")->check(CLI::PositiveNumber);

        auto *array = app.add_subcommand("array", "Sensor array files");
        array->require_subcommand(1);
        ArrayGenOptions gen_o;
        auto *gen = array->add_subcommand("gen", "Generate an array geometry");
        gen->add_option("--type", gen_o.type, "coprime1d, rcpa, cpa, gcpa or ura")
            ->required()
            ->check(CLI::IsMember({"coprime1d", "rcpa", "cpa", "gcpa", "ura"}));
        gen->add_option("--m", gen_o.m, "Coprime M");
        gen->add_option("--n", gen_o.n, "Coprime N");
        gen->add_option("--n1", gen_o.n1, "gcpa x-axis N");
        gen->add_option("--m1", gen_o.m1, "gcpa x-axis M");
        gen->add_option("--n2", gen_o.n2, "gcpa y-axis N");
        gen->add_option("--m2", gen_o.m2, "gcpa y-axis M");
        gen->add_option("--spacing", gen_o.spacing, "Unit spacing over wavelength");
        gen->add_option("--out", gen_o.out, "Array JSON")->required();

        CoarrayOptions co_o;
        auto *coarray = app.add_subcommand("coarray", "Difference coarray report");
        coarray->add_option("--in", co_o.in, "Array JSON")->required();
        coarray->add_option("--out", co_o.out, "Report JSON")->required();
        coarray->add_option("--csv", co_o.csv, "Weight grid CSV (lx, ly, weight)");

        SimulateOptions sim_o;
        std::string sim_seed;
        auto *simulate = app.add_subcommand("simulate", "Simulate snapshots and write the sample covariance");
        simulate->add_option("--array", sim_o.array, "Array JSON")->required();
        simulate->add_option("--scene", sim_o.scene, "Scene JSON")->required();
        simulate->add_option("--out", sim_o.out, "Covariance JSON")->required();
        simulate->add_option("--seed", sim_seed, "Override the scene seed");

        MusicCliOptions mu_o;
        double normalized_step = 0.0;
        auto *music = app.add_subcommand("music", "Coarray 2-D MUSIC");
        music->add_option("--array", mu_o.array, "Array JSON")->required();
        music->add_option("--cov", mu_o.cov, "Covariance JSON")->required();
        music->add_option("--sources", mu_o.sources, "Number of sources")->required();
        music->add_option("--az", mu_o.az, "Azimuth grid start:stop:step (deg)");
        music->add_option("--el", mu_o.el, "Elevation grid start:stop:step (deg)");
        auto *norm_opt = music->add_option("--normalized", normalized_step, "Search the normalized (u, v) cell with this step");
        music->add_flag("--refine", mu_o.refine, "Newton refinement of the peaks (normalized grid)");
        music->add_option("--out-spectrum", mu_o.out_spectrum, "Spectrum CSV")->required();
        music->add_option("--out-peaks", mu_o.out_peaks, "Peaks JSON")->required();

        RmseOptions rm_o;
        std::string rm_seed;
        auto *rmse = app.add_subcommand("rmse", "Monte Carlo RMSE sweep");
        rmse->add_option("--spec", rm_o.spec, "Sweep JSON")->required();
        rmse->add_option("--out", rm_o.out, "Report CSV")->required();
        rmse->add_option("--seed", rm_seed, "Master seed");

        BeamformOptions bf_o;
        auto *beamform = app.add_subcommand("beamform", "SOCP beam-pattern synthesis");
        beamform->add_option("--array", bf_o.array, "Array JSON")->required();
        beamform->add_option("--spec", bf_o.spec, "Pattern spec JSON")->required();
        beamform->add_option("--out-weights", bf_o.out_weights, "Weights JSON")->required();
        beamform->add_option("--out-metrics", bf_o.out_metrics, "Metrics JSON")->required();
        beamform->add_option("--out-pattern", bf_o.out_pattern, "Pattern CSV")->required();

        ReplayOptions re_o;
        auto *replay = app.add_subcommand("replay", "Repeat the run recorded in a manifest");
        replay->add_option("--manifest", re_o.manifest, "Manifest JSON")->required();

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &)
        {
            diag << app.help();
            return kExitSuccess;
        }
        catch (const CLI::CallForAllHelp &)
        {
            diag << app.help("", CLI::AppFormatMode::All);
            return kExitSuccess;
        }
        catch (const CLI::ParseError &e)
        {
            print_error(diag, "validation", e.what(), "argv");
            diag << app.help();
            return kExitValidation;
        }

        if (threads > 0)
            omp_set_num_threads(threads);

        const auto t0 = std::chrono::steady_clock::now();
        Run run{diag, {}};
        run.manifest.argv = args;
        run.manifest.tool_version = tool_version();
        int code = kExitSuccess;
        try
        {
            if (replay->parsed())
                return run_replay(diag, re_o);
            if (gen->parsed())
            {
                run.manifest.command = "array gen";
                code = run_array_gen(run, gen_o);
            }
            else if (coarray->parsed())
            {
                run.manifest.command = "coarray";
                code = run_coarray(run, co_o);
            }
            else if (simulate->parsed())
            {
                run.manifest.command = "simulate";
                sim_o.seed = parse_seed_option(sim_seed);
                code = run_simulate(run, sim_o);
            }
            else if (music->parsed())
            {
                run.manifest.command = "music";
                if (norm_opt->count() > 0)
                    mu_o.normalized_step = normalized_step;
                code = run_music(run, mu_o);
            }
            else if (rmse->parsed())
            {
                run.manifest.command = "rmse";
                rm_o.seed = parse_seed_option(rm_seed);
                code = run_rmse(run, rm_o);
            }
            else if (beamform->parsed())
            {
                run.manifest.command = "beamform";
                code = run_beamform(run, bf_o);
            }
        }
        catch (const Error &e)
        {
            print_error(diag, e.code(), e.what(), e.field());
            code = e.code() == "validation" ? kExitValidation : kExitNumerical;
        }
        catch (const nlohmann::json::exception &e)
        {
            print_error(diag, "validation", e.what(), "json");
            code = kExitValidation;
        }
        catch (const std::exception &e)
        {
            print_error(diag, "numerical", e.what(), "");
            code = kExitNumerical;
        }

        if (!run.manifest.outputs.empty())
        {
            run.manifest.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            try
            {
                io::write_json(manifest_path(run.manifest.outputs.front()), to_json(run.manifest));
            }
            catch (const Error &e)
            {
                print_error(diag, e.code(), e.what(), e.field());
                return kExitValidation;
            }
        }
        return code;
    }

} // namespace coprime::cli
