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

#include "coprime/manifest.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

#ifndef COPRIME_VERSION
#define COPRIME_VERSION "0.0.0"
#endif

namespace coprime
{
    std::string sha256_hex(const std::string &bytes)
    {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
            throw NumericalError("SHA-256 digest failed", "digest");
        std::string out;
        out.reserve(2 * len);
        char buf[3];
        for (unsigned int i = 0; i < len; ++i)
        {
            std::snprintf(buf, sizeof buf, "%02x", md[i]);
            out += buf;
        }
        return out;
    }

    std::string sha256_file(const std::filesystem::path &path)
    {
        return sha256_hex(io::read_text(path));
    }

    std::string tool_version()
    {
        return COPRIME_VERSION;
    }

    io::Json to_json(const RunManifest &m)
    {
        io::Json inputs = io::Json::array();
        for (const auto &i : m.inputs)
            inputs.push_back(io::Json{{"path", i.path}, {"sha256", i.sha256}});
        return io::Json{{"command", m.command},
                        {"argv", m.argv},
                        {"parameters", m.parameters},
                        {"inputs", inputs},
                        {"outputs", m.outputs},
                        {"seed", m.seed ? io::Json(*m.seed) : io::Json(nullptr)},
                        {"generator", m.generator.empty() ? io::Json(nullptr) : io::Json(m.generator)},
                        {"tool_version", m.tool_version},
                        {"duration_seconds", m.duration_seconds}};
    }

    RunManifest manifest_from_json(const io::Json &j)
    {
        RunManifest m;
        try
        {
            m.command = j.at("command").get<std::string>();
            m.argv = j.at("argv").get<std::vector<std::string>>();
            m.parameters = j.value("parameters", io::Json::object());
            for (const auto &i : j.value("inputs", io::Json::array()))
                m.inputs.push_back({i.at("path").get<std::string>(), i.at("sha256").get<std::string>()});
            m.outputs = j.value("outputs", std::vector<std::string>{});
            if (j.contains("seed") && !j.at("seed").is_null())
                m.seed = j.at("seed").get<std::uint64_t>();
            if (j.contains("generator") && !j.at("generator").is_null())
                m.generator = j.at("generator").get<std::string>();
            m.tool_version = j.value("tool_version", std::string{});
            m.duration_seconds = j.value("duration_seconds", 0.0);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ValidationError(std::string("malformed manifest: ") + e.what(), "manifest");
        }
        return m;
    }

    std::filesystem::path manifest_path(const std::filesystem::path &primary_output)
    {
        return std::filesystem::path(primary_output.string() + ".manifest.json");
    }

} // namespace coprime
