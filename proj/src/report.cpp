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

#include "collide/report.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "collide/config.hpp"
#include "collide/error.hpp"
#include "json.hpp"

namespace collide {

const char* const kArtifactVersion = "0.1.0";

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string format_csv(const ExperimentConfig& /*config*/, const RunResult& result) {
    const auto& ag = result.aggregates;
    bool vary[5] = {false, false, false, false, false};
    for (const auto& a : ag) {
        const auto& p = a.point;
        const auto& q = ag.front().point;
        vary[0] |= p.dim_left != q.dim_left;
        vary[1] |= p.dim_right != q.dim_right;
        vary[2] |= p.tau != q.tau;
        vary[3] |= p.lambda != q.lambda;
        vary[4] |= p.rounds != q.rounds;
    }
    if (!(vary[0] || vary[1] || vary[2] || vary[3] || vary[4])) {
        for (bool& v : vary) v = true;
    }
    static const char* const names[5] = {"dim_EL", "dim_ER", "tau", "lambda", "rounds"};
    std::ostringstream o;
    for (int k = 0; k < 5; ++k) {
        if (vary[k]) o << names[k] << ",";
    }
    o << "measure,mean,se,m,min,max\n";
    for (const auto& a : ag) {
        const auto& p = a.point;
        if (vary[0]) o << p.dim_left << ",";
        if (vary[1]) o << p.dim_right << ",";
        if (vary[2]) o << format_double(p.tau) << ",";
        if (vary[3]) o << format_double(p.lambda) << ",";
        if (vary[4]) o << p.rounds << ",";
        o << to_string(a.measure) << "," << format_double(a.mean) << "," << format_double(a.se) << "," << a.m << ","
          << format_double(a.min) << "," << format_double(a.max) << "\n";
    }
    return o.str();
}

std::string format_manifest(const ExperimentConfig& config, const RunResult& result, const ManifestInfo& info) {
    nlohmann::json j;
    j["artifact_version"] = kArtifactVersion;
    j["config"] = format_config(config);
    j["name"] = config.name;
    j["seed"] = config.seed;
    j["samples"] = config.samples;
    j["workers"] = info.workers;
    j["started_utc"] = info.started_utc;
    j["finished_utc"] = info.finished_utc;
    j["wall_seconds"] = result.wall_seconds;
    j["failed_samples"] = result.failed_samples;
    j["multi_negative_pt_events"] = result.multi_negative_events;
    j["outputs"] = info.outputs;
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out) throw InvalidArgument("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace collide
