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

#include "coprime/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coprime::io
{
    namespace
    {
        const Json &member(const Json &j, const std::string &key)
        {
            if (!j.is_object() || !j.contains(key))
                throw ValidationError("missing field '" + key + "'", key);
            return j.at(key);
        }

        double number(const Json &v, const std::string &key)
        {
            if (!v.is_number())
                throw ValidationError("field '" + key + "' must be a number", key);
            return v.get<double>();
        }

        long long integer(const Json &v, const std::string &key)
        {
            if (!v.is_number_integer())
                throw ValidationError("field '" + key + "' must be an integer", key);
            return v.get<long long>();
        }

        double number_or(const Json &j, const std::string &key, double fallback)
        {
            return j.contains(key) ? number(j.at(key), key) : fallback;
        }

        int int_or(const Json &j, const std::string &key, int fallback)
        {
            return j.contains(key) ? static_cast<int>(integer(j.at(key), key)) : fallback;
        }

        const Json &array_member(const Json &j, const std::string &key)
        {
            const Json &v = member(j, key);
            if (!v.is_array())
                throw ValidationError("field '" + key + "' must be an array", key);
            return v;
        }

        Lattice lattice(const Json &v, const std::string &key)
        {
            if (!v.is_array() || v.size() != 2)
                throw ValidationError("field '" + key + "' must hold [x, y] pairs", key);
            return {static_cast<int>(integer(v[0], key)), static_cast<int>(integer(v[1], key))};
        }

        Json lattice_json(Lattice p)
        {
            return Json::array({p.x, p.y});
        }

        std::string grid_text(const GridAxis &a)
        {
            return format_double(a.start) + ":" + format_double(a.stop) + ":" + format_double(a.step);
        }
    } // namespace

    Json read_json(const std::filesystem::path &path)
    {
        const std::string text = read_text(path);
        try
        {
            return Json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ValidationError("cannot parse " + path.string() + ": " + e.what(), path.string());
        }
    }

    std::string read_text(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ValidationError("cannot open " + path.string(), path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_text(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ValidationError("cannot write " + path.string(), path.string());
        out << text;
        if (!out)
            throw ValidationError("cannot write " + path.string(), path.string());
    }

    void write_json(const std::filesystem::path &path, const Json &j)
    {
        write_text(path, j.dump(2) + "\n");
    }

    std::string format_double(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    Json to_json(const SensorArray &array)
    {
        Json pos = Json::array();
        for (const auto &p : array.positions())
            pos.push_back(lattice_json(p));
        return Json{{"label", array.label()}, {"spacing_over_lambda", array.spacing_over_lambda()}, {"positions", pos}};
    }

    SensorArray array_from_json(const Json &j)
    {
        std::vector<Lattice> pos;
        for (const auto &p : array_member(j, "positions"))
            pos.push_back(lattice(p, "positions"));
        const double spacing = number_or(j, "spacing_over_lambda", 0.5);
        std::string label;
        if (j.contains("label"))
        {
            if (!j.at("label").is_string())
                throw ValidationError("field 'label' must be a string", "label");
            label = j.at("label").get<std::string>();
        }
        return SensorArray(std::move(pos), spacing, std::move(label));
    }

    Json coarray_report(const Coarray &co)
    {
        Json lags = Json::array(), weights = Json::array(), holes = Json::array();
        for (const auto &l : co.lags())
            lags.push_back(lattice_json(l));
        for (const auto &[l, w] : co.weights())
            weights.push_back(Json::array({l.x, l.y, w}));
        for (const auto &h : co.holes())
            holes.push_back(lattice_json(h));
        return Json{{"lags", lags},
                    {"weights", weights},
                    {"contiguous_half_width", co.contiguous_half_width()},
                    {"holes", holes},
                    {"hole_fraction", hole_percentage(co)}};
    }

    std::string weight_grid_csv(const Coarray &co)
    {
        const BoundingBox &b = co.bounding_box();
        std::string out = "lx,ly,weight\n";
        for (int x = b.min_x; x <= b.max_x; ++x)
            for (int y = b.min_y; y <= b.max_y; ++y)
                out += std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(co.weight({x, y})) + "\n";
        return out;
    }

    SourceScene scene_from_json(const Json &j, std::uint64_t default_seed)
    {
        SourceScene scene;
        for (const auto &s : array_member(j, "sources"))
        {
            Source src;
            src.az_deg = number(member(s, "az_deg"), "az_deg");
            src.el_deg = number(member(s, "el_deg"), "el_deg");
            src.power = number_or(s, "power", 1.0);
            scene.sources.push_back(src);
        }
        scene.noise_power = number(member(j, "noise_power"), "noise_power");
        scene.snapshots = static_cast<int>(integer(member(j, "snapshots"), "snapshots"));
        scene.seed = j.contains("seed") ? static_cast<std::uint64_t>(integer(j.at("seed"), "seed")) : default_seed;
        scene.validate();
        return scene;
    }

    Json to_json(const SampleCovariance &cov)
    {
        Json order = Json::array(), matrix = Json::array();
        for (const auto &p : cov.sensor_order)
            order.push_back(lattice_json(p));
        for (Eigen::Index r = 0; r < cov.matrix.rows(); ++r)
            for (Eigen::Index c = 0; c < cov.matrix.cols(); ++c)
                matrix.push_back(Json::array({cov.matrix(r, c).real(), cov.matrix(r, c).imag()}));
        return Json{{"sensor_order", order}, {"snapshots", cov.snapshots_used}, {"matrix", matrix}};
    }

    SampleCovariance covariance_from_json(const Json &j)
    {
        SampleCovariance cov;
        for (const auto &p : array_member(j, "sensor_order"))
            cov.sensor_order.push_back(lattice(p, "sensor_order"));
        cov.snapshots_used = int_or(j, "snapshots", 0);
        const auto n = static_cast<Eigen::Index>(cov.sensor_order.size());
        const Json &m = array_member(j, "matrix");
        if (static_cast<Eigen::Index>(m.size()) != n * n)
            throw ValidationError("covariance matrix must hold " + std::to_string(n * n) + " entries", "matrix");
        cov.matrix.resize(n, n);
        for (Eigen::Index k = 0; k < n * n; ++k)
        {
            const Json &e = m[static_cast<std::size_t>(k)];
            if (!e.is_array() || e.size() != 2)
                throw ValidationError("covariance entries must be [re, im] pairs", "matrix");
            cov.matrix(k / n, k % n) = Complex(number(e[0], "matrix"), number(e[1], "matrix"));
        }
        return cov;
    }

    std::string spectrum_csv(const MusicResult &result)
    {
        const GridSpec &g = result.grid;
        std::string out = g.domain == GridDomain::kNormalized ? "u,v,spectrum\n" : "az_deg,el_deg,spectrum\n";
        const int cols = g.cols();
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < cols; ++j)
                out += format_double(g.first.value(i)) + "," + format_double(g.second.value(j)) + "," +
                       format_double(result.spectrum[std::size_t(i) * std::size_t(cols) + std::size_t(j)]) + "\n";
        return out;
    }

    Json peaks_json(const MusicResult &result)
    {
        const bool norm = result.grid.domain == GridDomain::kNormalized;
        Json out = Json::array();
        for (const auto &p : result.peaks)
            out.push_back(Json{{norm ? "u" : "az_deg", p.first}, {norm ? "v" : "el_deg", p.second}, {"value", p.value}});
        return out;
    }

    SweepSpec sweep_spec_from_json(const Json &j)
    {
        SweepSpec spec;
        const Json &var = member(j, "variable");
        if (!var.is_string())
            throw ValidationError("field 'variable' must be a string", "variable");
        spec.variable = sweep_variable_from_string(var.get<std::string>());
        for (const auto &v : array_member(j, "values"))
            spec.values.push_back(number(v, "values"));
        spec.trials = int_or(j, "trials", spec.trials);
        spec.sources = int_or(j, "sources", spec.sources);
        spec.snr_db = number_or(j, "snr_db", spec.snr_db);
        spec.snapshots = int_or(j, "snapshots", spec.snapshots);
        for (const auto &a : array_member(j, "arrays"))
        {
            ArraySpec as;
            const Json &type = member(a, "type");
            if (!type.is_string())
                throw ValidationError("field 'type' must be a string", "type");
            as.type = type.get<std::string>();
            as.m = int_or(a, "m", as.m);
            as.n = int_or(a, "n", as.n);
            as.n1 = int_or(a, "n1", 0);
            as.m1 = int_or(a, "m1", 0);
            as.n2 = int_or(a, "n2", 0);
            as.m2 = int_or(a, "m2", 0);
            as.spacing_over_lambda = number_or(a, "spacing_over_lambda", 0.5);
            spec.arrays.push_back(as);
        }
        spec.grid_step = number_or(j, "grid_step", spec.grid_step);
        spec.min_separation_steps = number_or(j, "min_separation_steps", spec.min_separation_steps);
        if (j.contains("refine_peaks"))
        {
            if (!j.at("refine_peaks").is_boolean())
                throw ValidationError("field 'refine_peaks' must be a boolean", "refine_peaks");
            spec.refine_peaks = j.at("refine_peaks").get<bool>();
        }
        spec.validate();
        return spec;
    }

    Json to_json(const SweepSpec &spec)
    {
        Json arrays = Json::array();
        for (const auto &a : spec.arrays)
            arrays.push_back(Json{{"type", a.type}, {"m", a.m}, {"n", a.n}, {"n1", a.n1}, {"m1", a.m1}, {"n2", a.n2},
                                  {"m2", a.m2}, {"spacing_over_lambda", a.spacing_over_lambda}});
        return Json{{"variable", to_string(spec.variable)},
                    {"values", spec.values},
                    {"trials", spec.trials},
                    {"sources", spec.sources},
                    {"snr_db", spec.snr_db},
                    {"snapshots", spec.snapshots},
                    {"arrays", arrays},
                    {"grid_step", spec.grid_step},
                    {"min_separation_steps", spec.min_separation_steps},
                    {"refine_peaks", spec.refine_peaks}};
    }

    std::string report_csv(const RmseReport &report)
    {
        std::string out = "array_label,swept_variable,value,rmse_normalized,rmse_degrees,trials_used,trials_excluded\n";
        for (const auto &r : report.rows)
            out += r.array_label + "," + to_string(r.variable) + "," + format_double(r.value) + "," +
                   format_double(r.rmse_normalized) + "," + format_double(r.rmse_degrees) + "," +
                   std::to_string(r.trials_used) + "," + std::to_string(r.trials_excluded) + "\n";
        return out;
    }

    PatternSpec pattern_spec_from_json(const Json &j)
    {
        PatternSpec spec;
        if (!j.is_object())
            throw ValidationError("pattern spec must be a JSON object", "spec");
        if (j.contains("look"))
        {
            spec.look_az_deg = number_or(j.at("look"), "az_deg", 0.0);
            spec.look_el_deg = number_or(j.at("look"), "el_deg", 0.0);
        }
        if (j.contains("interferers"))
        {
            spec.interferers.clear();
            for (const auto &i : array_member(j, "interferers"))
                spec.interferers.push_back({number(member(i, "az_deg"), "az_deg"), number(member(i, "el_deg"), "el_deg"),
                                            number(member(i, "suppression_db"), "suppression_db")});
        }
        if (j.contains("sidelobe_db"))
        {
            if (j.at("sidelobe_db").is_null())
                spec.sidelobe_db.reset();
            else
                spec.sidelobe_db = number(j.at("sidelobe_db"), "sidelobe_db");
        }
        if (j.contains("mainlobe"))
        {
            spec.mainlobe_az_deg = number_or(j.at("mainlobe"), "az_deg", spec.mainlobe_az_deg);
            spec.mainlobe_el_deg = number_or(j.at("mainlobe"), "el_deg", spec.mainlobe_el_deg);
        }
        if (j.contains("grid"))
        {
            const Json &g = j.at("grid");
            if (g.contains("az"))
                spec.grid_az = GridAxis::parse(member(g, "az").get<std::string>(), "grid.az");
            if (g.contains("el"))
                spec.grid_el = GridAxis::parse(member(g, "el").get<std::string>(), "grid.el");
        }
        if (j.contains("noise_model"))
        {
            const std::string m = j.at("noise_model").is_string() ? j.at("noise_model").get<std::string>() : "";
            if (m == "isotropic")
                spec.noise_model = NoiseModel::kIsotropic;
            else if (m == "identity")
                spec.noise_model = NoiseModel::kIdentity;
            else
                throw ValidationError("noise_model must be \"isotropic\" or \"identity\"", "noise_model");
        }
        spec.validate();
        return spec;
    }

    Json to_json(const PatternSpec &spec)
    {
        Json interferers = Json::array();
        for (const auto &i : spec.interferers)
            interferers.push_back(Json{{"az_deg", i.az_deg}, {"el_deg", i.el_deg}, {"suppression_db", i.suppression_db}});
        return Json{{"look", {{"az_deg", spec.look_az_deg}, {"el_deg", spec.look_el_deg}}},
                    {"interferers", interferers},
                    {"sidelobe_db", spec.sidelobe_db ? Json(*spec.sidelobe_db) : Json(nullptr)},
                    {"mainlobe", {{"az_deg", spec.mainlobe_az_deg}, {"el_deg", spec.mainlobe_el_deg}}},
                    {"grid", {{"az", grid_text(spec.grid_az)}, {"el", grid_text(spec.grid_el)}}},
                    {"noise_model", spec.noise_model == NoiseModel::kIsotropic ? "isotropic" : "identity"}};
    }

    Json weights_json(const CVector &w)
    {
        Json out = Json::array();
        for (Eigen::Index i = 0; i < w.size(); ++i)
            out.push_back(Json{{"re", w(i).real()}, {"im", w(i).imag()}});
        return out;
    }

    CVector weights_from_json(const Json &j)
    {
        if (!j.is_array())
            throw ValidationError("weights must be an array of {re, im}", "weights");
        CVector w(static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i)
            w(static_cast<Eigen::Index>(i)) = Complex(number(member(j[i], "re"), "re"), number(member(j[i], "im"), "im"));
        return w;
    }

    Json metrics_json(const BeamformerSolution &sol)
    {
        Json j{{"status", to_string(sol.status)},
               {"directivity_dbi", sol.directivity_dbi},
               {"interference_suppression_db", sol.interference_suppression_db},
               {"sidelobe_over_requirement_pct", sol.sidelobe_over_requirement_pct},
               {"max_sidelobe_db", std::isfinite(sol.max_sidelobe_db) ? Json(sol.max_sidelobe_db) : Json(nullptr)},
               {"iterations", sol.iterations},
               {"duality_gap", sol.duality_gap},
               {"relative_gap", std::isfinite(sol.relative_gap) ? Json(sol.relative_gap) : Json(nullptr)},
               {"solve_seconds", sol.solve_seconds}};
        if (sol.most_violated)
        {
            const auto &v = *sol.most_violated;
            j["most_violated"] = Json{{"kind", v.kind}, {"az_deg", v.az_deg}, {"el_deg", v.el_deg},
                                      {"limit_db", v.limit_db}, {"level_db", v.level_db}};
        }
        return j;
    }

    std::string pattern_csv(const Eigen::MatrixXd &gain_db, const GridAxis &az, const GridAxis &el)
    {
        std::string out = "az_deg,el_deg,gain_db\n";
        for (int i = 0; i < az.count(); ++i)
            for (int j = 0; j < el.count(); ++j)
                out += format_double(az.value(i)) + "," + format_double(el.value(j)) + "," + format_double(gain_db(i, j)) + "\n";
        return out;
    }

} // namespace coprime::io
