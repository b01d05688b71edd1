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

#ifndef COPRIME_KERNELS_HPP
#define COPRIME_KERNELS_HPP

// Data-parallel inner loops. Every OpenMP kernel has a serial reference with the
// same contract; the reference is kept for tests and the benchmark target.
// OpenMP kernels produce bit-identical results for any thread count.

#include <span>
#include <vector>

#include "coprime/types.hpp"

namespace coprime::kernels
{
    // ---- difference coarray ------------------------------------------------------------

    // Dense lag histogram of size (2 ex + 1) x (2 ey + 1), x-major, lag (0,0) at the center.
    // Every |p.x - q.x| must be <= ex and |p.y - q.y| <= ey.
    std::vector<long> lag_histogram_serial(std::span<const Lattice> positions, int ex, int ey);
    std::vector<long> lag_histogram_parallel(std::span<const Lattice> positions, int ex, int ey);

    // ---- MUSIC pseudo-spectrum ---------------------------------------------------------

    // Coefficients of the trigonometric polynomial
    //   q(u, v) = a(u,v)^H P a(u,v) = sum_{dx,dy} c[dx,dy] exp(2 pi j (u dx + v dy)),
    // P = E E^H, for the (h+1) x (h+1) virtual URA. c is (2h+1) x (2h+1), x-major, (0,0) at the center.
    struct ProjectorPolynomial
    {
        int half_width = 0;
        std::vector<Complex> coefficients;
    };

    ProjectorPolynomial projector_polynomial(const CMatrix &noise_basis, int half_width);

    // Serial reference: 1 / ||E^H a(u,v)||^2 per point, with a built explicitly.
    std::vector<double> music_spectrum_serial(const CMatrix &noise_basis, int half_width,
                                              std::span<const NormalizedDoa> points);

    // OpenMP: 1 / q(u, v) evaluated from the projector polynomial.
    std::vector<double> music_spectrum_parallel(const ProjectorPolynomial &poly, std::span<const NormalizedDoa> points);

    // q(u, v) with its gradient and Hessian.
    struct PolynomialValue
    {
        double value = 0.0;
        double du = 0.0, dv = 0.0;
        double duu = 0.0, duv = 0.0, dvv = 0.0;
    };
    PolynomialValue evaluate_projector_polynomial(const ProjectorPolynomial &poly, NormalizedDoa at);

    // Floor applied to the denominator so the spectrum stays finite and non-negative.
    double spectrum_denominator_floor(double trace_of_projector);

    // ---- interior-point normal equations -----------------------------------------------

    // H = Ghat^T Ghat.
    Eigen::MatrixXd gram_serial(const Eigen::MatrixXd &scaled_rows);

    // Same product, accumulated over fixed row blocks (independent of thread count) and
    // summed in block order.
    Eigen::MatrixXd gram_parallel(const Eigen::MatrixXd &scaled_rows, Eigen::Index block_rows = 1024);

} // namespace coprime::kernels

#endif
