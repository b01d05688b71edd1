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

#include "coprime/doa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coprime/kernels.hpp"

namespace coprime
{
    namespace
    {
        std::string lag_text(Lattice l)
        {
            return "(" + std::to_string(l.x) + "," + std::to_string(l.y) + ")";
        }

        // Sum and count per lag over all ordered sensor pairs.
        std::map<Lattice, std::pair<Complex, long>> accumulate_lags(const SampleCovariance &cov)
        {
            const auto &order = cov.sensor_order;
            const auto n = static_cast<Eigen::Index>(order.size());
            if (cov.matrix.rows() != n || cov.matrix.cols() != n)
                throw ValidationError("covariance size does not match its sensor order", "sensor_order");

            std::map<Lattice, std::pair<Complex, long>> acc;
            for (Eigen::Index p = 0; p < n; ++p)
                for (Eigen::Index q = 0; q < n; ++q)
                {
                    auto &slot = acc[order[static_cast<std::size_t>(p)] - order[static_cast<std::size_t>(q)]];
                    slot.first += cov.matrix(p, q);
                    ++slot.second;
                }
            return acc;
        }

        void check_against_coarray(const std::map<Lattice, std::pair<Complex, long>> &acc, const Coarray &co)
        {
            if (acc.size() != co.weights().size())
                throw ValidationError("covariance sensor order is inconsistent with the coarray", "sensor_order");
            for (const auto &[lag, slot] : acc)
                if (co.weight(lag) != slot.second)
                    throw ValidationError("covariance sensor order is inconsistent with the coarray at lag " + lag_text(lag),
                                          "sensor_order");
        }
    } // namespace

    LagMap lag_average(const SampleCovariance &cov, const Coarray &co)
    {
        const auto acc = accumulate_lags(cov);
        check_against_coarray(acc, co);
        LagMap out;
        for (const auto &[lag, slot] : acc)
            out.emplace_hint(out.end(), lag, slot.first / static_cast<double>(slot.second));
        return out;
    }

    LagMap lag_average(const SampleCovariance &cov, const Coarray &co, int half_width)
    {
        if (half_width < 0)
            throw ValidationError("half width must be non-negative", "half_width");
        for (int x = -half_width; x <= half_width; ++x)
            for (int y = -half_width; y <= half_width; ++y)
                if (!co.contains({x, y}))
                    throw ValidationError("lag " + lag_text({x, y}) + " is outside the coarray", "half_width");

        const auto acc = accumulate_lags(cov);
        check_against_coarray(acc, co);
        LagMap out;
        for (const auto &[lag, slot] : acc)
            if (std::abs(lag.x) <= half_width && std::abs(lag.y) <= half_width)
                out.emplace_hint(out.end(), lag, slot.first / static_cast<double>(slot.second));
        return out;
    }

    VirtualCovariance build_virtual_covariance(const LagMap &lag_avg, int half_width)
    {
        if (half_width < 0)
            throw ValidationError("half width must be non-negative", "half_width");

        VirtualCovariance vc;
        vc.half_width = half_width;
        for (int x = -half_width; x <= half_width; ++x)
            for (int y = -half_width; y <= half_width; ++y)
            {
                auto it = lag_avg.find({x, y});
                if (it == lag_avg.end())
                    throw ValidationError("lag " + lag_text({x, y}) + " missing from the lag autocorrelation",
                                          "lag_autocorrelation");
                vc.lag_autocorrelation.emplace_hint(vc.lag_autocorrelation.end(), it->first, it->second);
            }

        const int side = half_width + 1;
        vc.matrix.resize(vc.side(), vc.side());
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j)
                for (int k = 0; k < side; ++k)
                    for (int l = 0; l < side; ++l)
                        vc.matrix(i * side + j, k * side + l) = vc.lag_autocorrelation.at({i - k, j - l});
        return vc;
    }

    int GridAxis::count() const
    {
        return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    }

    GridAxis GridAxis::parse(const std::string &text, const std::string &field)
    {
        GridAxis axis;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> axis.start >> c1 >> axis.stop >> c2 >> axis.step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
            throw ValidationError("expected start:stop:step, got '" + text + "'", field);
        if (!(axis.step > 0.0) || axis.stop < axis.start)
            throw ValidationError("grid range '" + text + "' needs step > 0 and stop >= start", field);
        return axis;
    }

    GridSpec GridSpec::angles(GridAxis az, GridAxis el, AngleConvention convention)
    {
        GridSpec g;
        g.domain = GridDomain::kAngles;
        g.first = az;
        g.second = el;
        g.convention = convention;
        return g;
    }

    GridSpec GridSpec::normalized(double step)
    {
        const double cells = 1.0 / step;
        const double rounded = std::round(cells);
        if (!(step > 0.0) || rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * rounded)
            throw ValidationError("normalized grid step must divide 1 exactly", "step");
        GridSpec g;
        g.domain = GridDomain::kNormalized;
        g.first = {-0.5, 0.5 - step, step};
        g.second = g.first;
        return g;
    }

    std::vector<NormalizedDoa> GridSpec::points(double spacing_over_lambda) const
    {
        std::vector<NormalizedDoa> out;
        out.reserve(size());
        for (int i = 0; i < rows(); ++i)
            for (int j = 0; j < cols(); ++j)
            {
                if (domain == GridDomain::kNormalized)
                    out.push_back({first.value(i), second.value(j)});
                else
                    out.push_back(normalized_doa(first.value(i), second.value(j), spacing_over_lambda, convention));
            }
        return out;
    }

    GridSpec default_angle_grid()
    {
        return GridSpec::angles({-50.0, 50.0, 0.5}, {-90.0, 90.0, 0.5});
    }

    NoiseSubspace noise_subspace(const CMatrix &hermitian, int q_sources)
    {
        const auto side = hermitian.rows();
        if (hermitian.cols() != side)
            throw ValidationError("covariance must be square", "matrix");
        if (q_sources < 1 || q_sources >= side)
            throw ValidationError("number of sources must lie in [1, " + std::to_string(side - 1) + "], got " +
                                      std::to_string(q_sources),
                                  "sources");
        const double scale = std::max(1.0, hermitian.cwiseAbs().maxCoeff());
        if ((hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw ValidationError("covariance is not Hermitian", "matrix");

        Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian);
        if (eig.info() != Eigen::Success)
            throw NumericalError("Hermitian eigendecomposition did not converge", "matrix");

        NoiseSubspace out;
        out.eigenvalues = eig.eigenvalues().reverse();
        const Eigen::Index noise_dim = side - q_sources;
        out.basis = eig.eigenvectors().leftCols(noise_dim);
        for (Eigen::Index c = 0; c < noise_dim; ++c)
        {
            for (Eigen::Index r = 0; r < side; ++r)
            {
                const Complex z = out.basis(r, c);
                if (std::abs(z) > 1e-12)
                {
                    out.basis.col(c) *= std::conj(z) / std::abs(z);
                    break;
                }
            }
        }
        return out;
    }

    std::vector<Peak> find_peaks(const std::vector<double> &spectrum, const GridSpec &grid, std::size_t count)
    {
        const long rows = grid.rows(), cols = grid.cols();
        if (static_cast<long>(spectrum.size()) != rows * cols)
            throw ValidationError("spectrum size does not match the grid", "spectrum");
        const bool wrap = grid.periodic();

        std::vector<Peak> peaks;
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
            {
                const long idx = i * cols + j;
                const double v = spectrum[static_cast<std::size_t>(idx)];
                bool is_peak = true;
                for (long di = -1; di <= 1 && is_peak; ++di)
                    for (long dj = -1; dj <= 1 && is_peak; ++dj)
                    {
                        if (di == 0 && dj == 0)
                            continue;
                        long ni = i + di, nj = j + dj;
                        if (wrap)
                        {
                            ni = (ni + rows) % rows;
                            nj = (nj + cols) % cols;
                        }
                        else if (ni < 0 || ni >= rows || nj < 0 || nj >= cols)
                            continue;
                        const long nidx = ni * cols + nj;
                        if (nidx == idx)
                            continue;
                        const double nv = spectrum[static_cast<std::size_t>(nidx)];
                        if (nv > v || (nv == v && nidx < idx))
                            is_peak = false;
                    }
                if (is_peak)
                    peaks.push_back({grid.first.value(static_cast<int>(i)), grid.second.value(static_cast<int>(j)), v,
                                     static_cast<std::size_t>(idx)});
            }

        std::sort(peaks.begin(), peaks.end(), [](const Peak &a, const Peak &b) {
            if (a.value != b.value)
                return a.value > b.value;
            return a.index < b.index;
        });
        if (peaks.size() > count)
            peaks.resize(count);
        return peaks;
    }

    std::vector<Peak> refine_peaks(const kernels::ProjectorPolynomial &poly, const std::vector<Peak> &candidates,
                                   double cell, std::size_t count)
    {
        const int h = poly.half_width;
        const double floor =
            kernels::spectrum_denominator_floor(poly.coefficients[static_cast<std::size_t>(h * (2 * h + 1) + h)].real());
        auto wrap = [](double x) { return x - std::floor(x + 0.5); };

        std::vector<Peak> polished;
        polished.reserve(candidates.size());
        for (const auto &c : candidates)
        {
            NormalizedDoa x{c.first, c.second};
            auto cur = kernels::evaluate_projector_polynomial(poly, x);
            double travelled_u = 0.0, travelled_v = 0.0;
            for (int it = 0; it < 30; ++it)
            {
                double su, sv;
                const double det = cur.duu * cur.dvv - cur.duv * cur.duv;
                if (cur.duu > 0.0 && det > 0.0)
                {
                    su = -(cur.dvv * cur.du - cur.duv * cur.dv) / det;
                    sv = -(cur.duu * cur.dv - cur.duv * cur.du) / det;
                }
                else
                {
                    const double gn = std::hypot(cur.du, cur.dv);
                    if (gn == 0.0)
                        break;
                    su = -0.5 * cell * cur.du / gn;
                    sv = -0.5 * cell * cur.dv / gn;
                }
                const double len = std::hypot(su, sv);
                if (len > cell)
                {
                    su *= cell / len;
                    sv *= cell / len;
                }

                bool accepted = false;
                for (int halving = 0; halving < 30; ++halving)
                {
                    const NormalizedDoa trial{wrap(x.u + su), wrap(x.v + sv)};
                    const auto next = kernels::evaluate_projector_polynomial(poly, trial);
                    if (next.value < cur.value && std::hypot(travelled_u + su, travelled_v + sv) <= 2.0 * cell)
                    {
                        x = trial;
                        cur = next;
                        travelled_u += su;
                        travelled_v += sv;
                        accepted = true;
                        break;
                    }
                    su *= 0.5;
                    sv *= 0.5;
                }
                if (!accepted || std::hypot(su, sv) < 1e-13)
                    break;
            }
            polished.push_back({x.u, x.v, 1.0 / std::max(cur.value, floor), c.index});
        }

        std::sort(polished.begin(), polished.end(), [](const Peak &a, const Peak &b) {
            if (a.value != b.value)
                return a.value > b.value;
            return a.index < b.index;
        });
        std::vector<Peak> out;
        for (const auto &p : polished)
        {
            bool duplicate = false;
            for (const auto &kept : out)
                if (std::hypot(wrap(p.first - kept.first), wrap(p.second - kept.second)) < 0.5 * cell)
                {
                    duplicate = true;
                    break;
                }
            if (!duplicate)
                out.push_back(p);
            if (out.size() == count)
                break;
        }
        return out;
    }

    MusicResult music_spectrum(const VirtualCovariance &vc, int q_sources, const GridSpec &grid,
                               double spacing_over_lambda, const MusicOptions &options)
    {
        if (options.refine_peaks && !grid.periodic())
            throw ValidationError("peak refinement requires a normalized grid", "grid");
        const NoiseSubspace ns = noise_subspace(vc.matrix, q_sources);
        const auto poly = kernels::projector_polynomial(ns.basis, vc.half_width);
        const auto points = grid.points(spacing_over_lambda);

        MusicResult out;
        out.grid = grid;
        out.spectrum = kernels::music_spectrum_parallel(poly, points);
        const auto count = static_cast<std::size_t>(q_sources);
        if (options.refine_peaks)
            out.peaks = refine_peaks(poly, find_peaks(out.spectrum, grid, out.spectrum.size()), grid.first.step, count);
        else
            out.peaks = find_peaks(out.spectrum, grid, count);
        out.eigenvalues = ns.eigenvalues;
        return out;
    }

    MusicResult estimate_from_covariance(const SampleCovariance &cov, const Coarray &co, int q_sources,
                                         const GridSpec &grid, double spacing_over_lambda,
                                         const MusicOptions &options)
    {
        const int h = co.contiguous_half_width();
        const int dof = (h + 1) * (h + 1) - 1;
        if (q_sources < 1 || q_sources > dof)
            throw ValidationError("number of sources " + std::to_string(q_sources) +
                                      " exceeds the coarray DOF bound " + std::to_string(dof),
                                  "sources");
        const auto vc = build_virtual_covariance(lag_average(cov, co, h), h);
        auto result = music_spectrum(vc, q_sources, grid, spacing_over_lambda, options);
        if (static_cast<int>(result.peaks.size()) < q_sources)
            throw NumericalError("found " + std::to_string(result.peaks.size()) + " spectrum peaks, expected " +
                                     std::to_string(q_sources),
                                 "sources");
        return result;
    }

    std::vector<Peak> estimate_doa(const SensorArray &array, const SourceScene &scene, int q_sources,
                                   const GridSpec &grid)
    {
        const auto co = difference_coarray(array);
        const auto Y = simulate_snapshots(array, scene);
        const auto cov = sample_covariance(Y, array.positions());
        return estimate_from_covariance(cov, co, q_sources, grid, array.spacing_over_lambda()).peaks;
    }

} // namespace coprime
