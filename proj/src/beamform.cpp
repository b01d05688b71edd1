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

#include "coprime/beamform.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace coprime
{
    namespace
    {
        using Eigen::Index;

        struct ConstraintPoint
        {
            double az_deg, el_deg, limit_db;
            bool interferer;
        };

        std::vector<ConstraintPoint> constraint_points(const PatternSpec &spec)
        {
            std::vector<ConstraintPoint> out;
            for (const auto &i : spec.interferers)
                out.push_back({i.az_deg, i.el_deg, i.suppression_db, true});
            if (spec.sidelobe_db)
            {
                const int na = spec.grid_az.count(), ne = spec.grid_el.count();
                for (int i = 0; i < na; ++i)
                    for (int j = 0; j < ne; ++j)
                    {
                        const double az = spec.grid_az.value(i), el = spec.grid_el.value(j);
                        if (!spec.in_mainlobe(az, el))
                            out.push_back({az, el, *spec.sidelobe_db, false});
                    }
            }
            return out;
        }

        double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

        // Rows (Re, Im) of a^H w acting on x = [head; Re w; Im w].
        void modulus_rows(const CVector &a, Eigen::Ref<Eigen::MatrixXd> rows, Index head)
        {
            const Index n = a.size();
            rows.setZero();
            rows.row(0).segment(head, n) = a.real().transpose();
            rows.row(0).segment(head + n, n) = a.imag().transpose();
            rows.row(1).segment(head, n) = -a.imag().transpose();
            rows.row(1).segment(head + n, n) = a.real().transpose();
        }

        // Cones (limit + tau_coeff * x0, Re a^H w, Im a^H w) for every point, starting at row `row0`.
        void fill_modulus_cones(const SensorArray &array, const std::vector<ConstraintPoint> &pts, socp::Problem &prob,
                                Index row0, double head_coeff)
        {
            const long np = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static)
            for (long k = 0; k < np; ++k)
            {
                const auto &pt = pts[static_cast<std::size_t>(k)];
                const Index r = row0 + 3 * k;
                const CVector a = pattern_steering(array, pt.az_deg, pt.el_deg);
                prob.G.row(r).setZero();
                prob.G(r, 0) = -head_coeff;
                prob.h(r) = db_to_amplitude(pt.limit_db);
                modulus_rows(a, prob.G.middleRows(r + 1, 2), 1);
                prob.G.middleRows(r + 1, 2) *= -1.0;
                prob.h.segment(r + 1, 2).setZero();
            }
        }

        void fill_look_equality(const CVector &look, socp::Problem &prob)
        {
            const Index n = 1 + 2 * look.size();
            prob.A.setZero(2, n);
            modulus_rows(look, prob.A, 1);
            prob.b = Eigen::Vector2d(1.0, 0.0);
        }

        CVector weights_from(const Eigen::VectorXd &x, Index sensors)
        {
            CVector w(sensors);
            for (Index i = 0; i < sensors; ++i)
                w(i) = Complex(x(1 + i), x(1 + sensors + i));
            return w;
        }

        SolveStatus map_status(socp::Status s)
        {
            switch (s)
            {
            case socp::Status::kOptimal:
                return SolveStatus::kOptimal;
            case socp::Status::kIterationLimit:
                return SolveStatus::kIterationLimit;
            case socp::Status::kNumericalError:
                return SolveStatus::kNumericalError;
            }
            return SolveStatus::kNumericalError;
        }

        // min tau s.t. |a_k^H w| <= b_k + tau, a(look)^H w = 1, ||w|| <= bound.
        std::optional<ConstraintViolation> feasibility_search(const SensorArray &array, const PatternSpec &spec,
                                                              const std::vector<ConstraintPoint> &pts,
                                                              const socp::Options &options)
        {
            const Index N = static_cast<Index>(array.size());
            const Index n = 1 + 2 * N;
            const Index np = static_cast<Index>(pts.size());
            socp::Problem prob;
            prob.c = Eigen::VectorXd::Zero(n);
            prob.c(0) = 1.0;
            prob.G.resize(3 * np + n, n);
            prob.h.resize(3 * np + n);
            fill_modulus_cones(array, pts, prob, 0, 1.0);
            prob.cone_dims.assign(static_cast<std::size_t>(np), 3);

            // Norm bound on w keeps the normal equations definite; it is inactive at the optimum.
            const Index r = 3 * np;
            prob.G.middleRows(r, n).setZero();
            prob.h.segment(r, n).setZero();
            prob.h(r) = 1e3;
            for (Index i = 1; i < n; ++i)
                prob.G(r + i, i) = -1.0;
            prob.cone_dims.push_back(static_cast<int>(n));

            fill_look_equality(pattern_steering(array, spec.look_az_deg, spec.look_el_deg), prob);
            const socp::Result res = socp::solve(prob, options);
            const double tau = res.x(0);
            if (res.status != socp::Status::kOptimal || tau <= 1e-7)
                return std::nullopt;

            const CVector w = weights_from(res.x, N);
            ConstraintViolation worst;
            double worst_excess = -std::numeric_limits<double>::infinity();
            for (const auto &pt : pts)
            {
                const double level = std::abs(w.dot(pattern_steering(array, pt.az_deg, pt.el_deg)));
                const double excess = level - db_to_amplitude(pt.limit_db);
                if (excess > worst_excess)
                {
                    worst_excess = excess;
                    worst.kind = pt.interferer ? "interferer" : "sidelobe";
                    worst.az_deg = pt.az_deg;
                    worst.el_deg = pt.el_deg;
                    worst.limit_db = pt.limit_db;
                    worst.level_db = 20.0 * std::log10(level);
                }
            }
            return worst;
        }
    } // namespace

    void PatternSpec::validate() const
    {
        if (!std::isfinite(look_az_deg) || !std::isfinite(look_el_deg) || std::abs(look_az_deg) > 90.0 ||
            std::abs(look_el_deg) > 90.0)
            throw ValidationError("look direction must lie in [-90, 90] degrees", "look");
        for (const auto &i : interferers)
        {
            if (!(i.suppression_db < 0.0))
                throw ValidationError("interference suppression must be a negative dB value", "interferers");
            if (in_mainlobe(i.az_deg, i.el_deg))
                throw ValidationError("interferer at (" + std::to_string(i.az_deg) + ", " + std::to_string(i.el_deg) +
                                          ") lies inside the main-lobe box",
                                      "interferers");
        }
        if (sidelobe_db && !(*sidelobe_db < 0.0))
            throw ValidationError("sidelobe level must be a negative dB value", "sidelobe_db");
        if (!(mainlobe_az_deg >= 0.0) || !(mainlobe_el_deg >= 0.0))
            throw ValidationError("main-lobe half-widths must be non-negative", "mainlobe");
        if (grid_az.count() < 1 || grid_el.count() < 1)
            throw ValidationError("sidelobe grid is empty", "grid");
    }

    bool PatternSpec::in_mainlobe(double az_deg, double el_deg) const
    {
        return std::abs(az_deg - look_az_deg) <= mainlobe_az_deg && std::abs(el_deg - look_el_deg) <= mainlobe_el_deg;
    }

    std::string to_string(SolveStatus s)
    {
        switch (s)
        {
        case SolveStatus::kOptimal:
            return "optimal";
        case SolveStatus::kInfeasible:
            return "infeasible";
        case SolveStatus::kIterationLimit:
            return "iteration_limit";
        case SolveStatus::kNumericalError:
            return "numerical_error";
        }
        return "unknown";
    }

    Eigen::MatrixXd isotropic_noise_matrix(const SensorArray &array, double loading)
    {
        const auto &pos = array.positions();
        const Index n = static_cast<Index>(pos.size());
        if (n == 0)
            throw ValidationError("array is empty", "array");
        const double k = kTwoPi * array.spacing_over_lambda();
        Eigen::MatrixXd B(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
            {
                const Lattice d = pos[static_cast<std::size_t>(i)] - pos[static_cast<std::size_t>(j)];
                const double x = k * std::hypot(double(d.x), double(d.y));
                B(i, j) = x == 0.0 ? 1.0 : std::sin(x) / x;
            }
        B.diagonal().array() += loading * B.trace() / double(n);
        return B;
    }

    CVector pattern_steering(const SensorArray &array, double az_deg, double el_deg)
    {
        return steering_vector(array, normalized_doa(az_deg, el_deg, array.spacing_over_lambda(),
                                                     AngleConvention::kAzimuthElevation));
    }

    double directivity_dbi(const SensorArray &array, const CVector &weights, double look_az_deg, double look_el_deg)
    {
        if (weights.size() != static_cast<Index>(array.size()))
            throw ValidationError("weight count differs from sensor count", "weights");
        if (weights.squaredNorm() == 0.0)
            throw ValidationError("weights are all zero", "weights");
        const Eigen::MatrixXd B = isotropic_noise_matrix(array, 0.0);
        const double gain = std::norm(weights.dot(pattern_steering(array, look_az_deg, look_el_deg)));
        const double power = (weights.adjoint() * B.cast<Complex>() * weights)(0).real();
        return 10.0 * std::log10(gain / power);
    }

    Eigen::MatrixXd pattern_cut(const SensorArray &array, const CVector &weights, const GridAxis &az,
                                const GridAxis &el, double look_az_deg, double look_el_deg)
    {
        if (weights.size() != static_cast<Index>(array.size()))
            throw ValidationError("weight count differs from sensor count", "weights");
        const double ref = std::abs(weights.dot(pattern_steering(array, look_az_deg, look_el_deg)));
        const int na = az.count(), ne = el.count();
        Eigen::MatrixXd out(na, ne);
#pragma omp parallel for schedule(static)
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < ne; ++j)
                out(i, j) = 20.0 * std::log10(std::abs(weights.dot(pattern_steering(array, az.value(i), el.value(j)))) / ref);
        return out;
    }

    BeamformerSolution synthesize(const SensorArray &array, const PatternSpec &spec, const socp::Options &options)
    {
        spec.validate();
        const Index N = static_cast<Index>(array.size());
        const Index n = 1 + 2 * N;
        const std::vector<ConstraintPoint> pts = constraint_points(spec);
        const Index np = static_cast<Index>(pts.size());

        // Rn = L L^T, objective cone (t, [L^T 0; 0 L^T] x).
        Eigen::MatrixXd Lt = Eigen::MatrixXd::Identity(N, N);
        if (spec.noise_model == NoiseModel::kIsotropic)
        {
            const Eigen::LLT<Eigen::MatrixXd> llt(isotropic_noise_matrix(array));
            if (llt.info() != Eigen::Success)
                throw NumericalError("isotropic noise matrix is not positive definite", "array");
            Lt = llt.matrixU();
        }

        socp::Problem prob;
        prob.c = Eigen::VectorXd::Zero(n);
        prob.c(0) = 1.0;
        prob.G.resize(n + 3 * np, n);
        prob.h.resize(n + 3 * np);
        prob.G.topRows(n).setZero();
        prob.h.head(n).setZero();
        prob.G(0, 0) = -1.0;
        prob.G.block(1, 1, N, N) = -Lt;
        prob.G.block(1 + N, 1 + N, N, N) = -Lt;
        prob.cone_dims.push_back(static_cast<int>(n));
        fill_modulus_cones(array, pts, prob, n, 0.0);
        prob.cone_dims.insert(prob.cone_dims.end(), static_cast<std::size_t>(np), 3);
        const CVector look = pattern_steering(array, spec.look_az_deg, spec.look_el_deg);
        fill_look_equality(look, prob);

        const auto t0 = std::chrono::steady_clock::now();
        const socp::Result res = socp::solve(prob, options);

        BeamformerSolution sol;
        sol.status = map_status(res.status);
        sol.iterations = res.iterations;
        sol.duality_gap = res.gap;
        sol.relative_gap = res.relative_gap;
        sol.weights = weights_from(res.x, N);

        if (res.status != socp::Status::kOptimal)
        {
            if (auto worst = feasibility_search(array, spec, pts, options))
            {
                sol.status = SolveStatus::kInfeasible;
                sol.most_violated = *worst;
            }
        }
        sol.solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (sol.status != SolveStatus::kOptimal)
            return sol;

        // Post-hoc verification by direct pattern evaluation.
        const double ref = std::abs(sol.weights.dot(look));
        sol.directivity_dbi = directivity_dbi(array, sol.weights, spec.look_az_deg, spec.look_el_deg);
        long sidelobe_points = 0, over = 0;
        sol.max_sidelobe_db = -std::numeric_limits<double>::infinity();
        for (const auto &pt : pts)
        {
            const double level =
                20.0 * std::log10(std::abs(sol.weights.dot(pattern_steering(array, pt.az_deg, pt.el_deg))) / ref);
            if (pt.interferer)
            {
                sol.interference_suppression_db.push_back(level);
                continue;
            }
            ++sidelobe_points;
            sol.max_sidelobe_db = std::max(sol.max_sidelobe_db, level);
            if (level > pt.limit_db + 1e-6)
                ++over;
        }
        sol.sidelobe_over_requirement_pct = sidelobe_points > 0 ? 100.0 * double(over) / double(sidelobe_points) : 0.0;
        return sol;
    }

} // namespace coprime
