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

#ifndef COPRIME_CLI_HPP
#define COPRIME_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coprime::cli
{
    inline constexpr int kExitSuccess = 0;
    inline constexpr int kExitValidation = 1;
    inline constexpr int kExitNumerical = 2;

    inline constexpr const char *kSeedEnvironmentVariable = "COPRIME_SEED";

    /*!
    Runs one subcommand. `args` excludes the program name, e.g. {"array", "gen", "--type", "rcpa", ...}.

    Subcommands: array gen, coarray, simulate, music, rmse, beamform, replay. Data goes to the
    files named on the command line, each run also writing <first output>.manifest.json;
    summaries and error records go to `diag`. Errors are single-line JSON objects
    {"error": "validation" | "numerical", "message": ..., "field": ...}.

    Returns 0 on success, 1 on validation or usage errors, 2 on numerical or solver failures.
    */
    int dispatch(const std::vector<std::string> &args, std::ostream &diag);

    // COPRIME_SEED if set, else 0. Throws ValidationError for a malformed value.
    std::uint64_t default_seed();

} // namespace coprime::cli

#endif
