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

#ifndef COPRIME_TYPES_HPP
#define COPRIME_TYPES_HPP

#include <compare>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace coprime
{
    using Complex = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    // Integer point on the sensor lattice, in units of the element spacing d.
    // Used both for physical sensor positions and for coarray lags.
    struct Lattice
    {
        int x = 0;
        int y = 0;

        auto operator<=>(const Lattice &) const = default;

        Lattice operator-(const Lattice &o) const { return {x - o.x, y - o.y}; }
        Lattice operator+(const Lattice &o) const { return {x + o.x, y + o.y}; }
        Lattice operator-() const { return {-x, -y}; }
    };

    // Normalized direction of arrival (theta', phi') = (d/lambda) * direction cosines.
    // At half-wavelength spacing both components lie in [-0.5, 0.5].
    struct NormalizedDoa
    {
        double u = 0.0;
        double v = 0.0;
    };

    // Base of every error thrown by this library.
    class Error : public std::runtime_error
    {
    public:
        Error(const std::string &code, const std::string &message, std::string field = {})
            : std::runtime_error(message), code_(code), field_(std::move(field)) {}

        const std::string &code() const noexcept { return code_; }
        const std::string &field() const noexcept { return field_; }

    private:
        std::string code_;
        std::string field_;
    };

    // Bad input: violated precondition, malformed file, unsupported combination.
    class ValidationError : public Error
    {
    public:
        explicit ValidationError(const std::string &message, std::string field = {})
            : Error("validation", message, std::move(field)) {}
    };

    // Numerical or solver failure on otherwise valid input.
    class NumericalError : public Error
    {
    public:
        explicit NumericalError(const std::string &message, std::string field = {})
            : Error("numerical", message, std::move(field)) {}
    };

    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kTwoPi = 2.0 * kPi;

} // namespace coprime

#endif
