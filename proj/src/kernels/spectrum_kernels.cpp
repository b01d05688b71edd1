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

#include "coprime/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace coprime::kernels
{
    double spectrum_denominator_floor(double trace_of_projector)
    {
        return 1e-14 * std::max(trace_of_projector, 1.0);
    }

    ProjectorPolynomial projector_polynomial(const CMatrix &noise_basis, int half_width)
    {
        const int side = half_width + 1;
        const int width = 2 * half_width + 1;
        const CMatrix P = noise_basis * noise_basis.adjoint();

        ProjectorPolynomial poly;
        poly.half_width = half_width;
        poly.coefficients.assign(static_cast<std::size_t>(width * width), Complex(0.0, 0.0));

        // c[q - p] += P[p][q], virtual sensor index i * side + j.
        for (int pi = 0; pi < side; ++pi)
            for (int pj = 0; pj < side; ++pj)
                for (int qi = 0; qi < side; ++qi)
                    for (int qj = 0; qj < side; ++qj)
                    {
                        const int dx = qi - pi + half_width, dy = qj - pj + half_width;
                        poly.coefficients[static_cast<std::size_t>(dx * width + dy)] +=
                            P(pi * side + pj, qi * side + qj);
                    }
        return poly;
    }

    PolynomialValue evaluate_projector_polynomial(const ProjectorPolynomial &poly, NormalizedDoa at)
    {
        const int h = poly.half_width;
        const int width = 2 * h + 1;
        PolynomialValue out;
        for (int dx = -h; dx <= h; ++dx)
            for (int dy = -h; dy <= h; ++dy)
            {
                const Complex term = poly.coefficients[static_cast<std::size_t>((dx + h) * width + dy + h)] *
                                     std::polar(1.0, kTwoPi * (at.u * dx + at.v * dy));
                const double wx = kTwoPi * dx, wy = kTwoPi * dy;
                out.value += term.real();
                out.du -= wx * term.imag();
                out.dv -= wy * term.imag();
                out.duu -= wx * wx * term.real();
                out.duv -= wx * wy * term.real();
                out.dvv -= wy * wy * term.real();
            }
        return out;
    }

    std::vector<double> music_spectrum_serial(const CMatrix &noise_basis, int half_width,
                                              std::span<const NormalizedDoa> points)
    {
        const int side = half_width + 1;
        const double floor = spectrum_denominator_floor(static_cast<double>(noise_basis.cols()));
        std::vector<double> out(points.size());
        CVector a(side * side);
        for (std::size_t k = 0; k < points.size(); ++k)
        {
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j)
                    a(i * side + j) = std::polar(1.0, kTwoPi * (points[k].u * i + points[k].v * j));
            const double denom = (noise_basis.adjoint() * a).squaredNorm();
            out[k] = 1.0 / std::max(denom, floor);
        }
        return out;
    }

    std::vector<double> music_spectrum_parallel(const ProjectorPolynomial &poly, std::span<const NormalizedDoa> points)
    {
        const int h = poly.half_width;
        const int width = 2 * h + 1;
        const double floor = spectrum_denominator_floor(poly.coefficients[static_cast<std::size_t>(h * width + h)].real());
        const long n = static_cast<long>(points.size());
        std::vector<double> out(points.size());

#pragma omp parallel
        {
            std::vector<Complex> ex(static_cast<std::size_t>(width)), ey(static_cast<std::size_t>(width));
#pragma omp for schedule(static)
            for (long k = 0; k < n; ++k)
            {
                const NormalizedDoa d = points[static_cast<std::size_t>(k)];
                for (int t = 0; t < width; ++t)
                {
                    ex[static_cast<std::size_t>(t)] = std::polar(1.0, kTwoPi * d.u * (t - h));
                    ey[static_cast<std::size_t>(t)] = std::polar(1.0, kTwoPi * d.v * (t - h));
                }
                double q = 0.0;
                const Complex *c = poly.coefficients.data();
                for (int dx = 0; dx < width; ++dx)
                {
                    Complex inner(0.0, 0.0);
                    for (int dy = 0; dy < width; ++dy)
                        inner += c[dx * width + dy] * ey[static_cast<std::size_t>(dy)];
                    q += (ex[static_cast<std::size_t>(dx)] * inner).real();
                }
                out[static_cast<std::size_t>(k)] = 1.0 / std::max(q, floor);
            }
        }
        return out;
    }

} // namespace coprime::kernels
