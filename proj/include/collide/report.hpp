// Copyright 2026 The Collide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "collide/harness.hpp"

namespace collide {

/// Shortest round-trip-safe text: 17 significant digits.
std::string format_double(double x);

/// Long-format CSV: one row per (grid point, measure). Grid columns are the
/// keys that vary across the run (all five if none do), then
/// measure, mean, se, m, min, max.
std::string format_csv(const ExperimentConfig& config, const RunResult& result);

struct ManifestInfo {
    std::string started_utc;
    std::string finished_utc;
    std::size_t workers = 1;
    std::vector<std::string> outputs;
};

std::string format_manifest(const ExperimentConfig& config, const RunResult& result, const ManifestInfo& info);

/// Writes via a temporary sibling and rename, so readers never see a
/// partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string utc_timestamp();

extern const char* const kArtifactVersion;

}  // namespace collide
