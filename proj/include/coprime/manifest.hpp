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

#ifndef COPRIME_MANIFEST_HPP
#define COPRIME_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coprime/io.hpp"

namespace coprime
{
    // Lower-case hex SHA-256.
    std::string sha256_hex(const std::string &bytes);
    std::string sha256_file(const std::filesystem::path &path);

    std::string tool_version();

    struct InputDigest
    {
        std::string path;
        std::string sha256;
    };

    /*!
    Provenance record written next to the outputs of every CLI run. `argv` holds the
    arguments after the program name, so replaying it through the CLI repeats the run.
    */
    struct RunManifest
    {
        std::string command;
        std::vector<std::string> argv;
        io::Json parameters = io::Json::object();
        std::vector<InputDigest> inputs;
        std::vector<std::string> outputs;
        std::optional<std::uint64_t> seed;
        std::string generator;
        std::string tool_version;
        double duration_seconds = 0.0;
    };

    io::Json to_json(const RunManifest &m);
    RunManifest manifest_from_json(const io::Json &j);

    // <output>.manifest.json
    std::filesystem::path manifest_path(const std::filesystem::path &primary_output);

} // namespace coprime

#endif
