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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "collide/haar.hpp"

namespace collide::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericalAbort = 3,
    kStatisticalFailure = 4,
    kOracleBreach = 5,
};

struct RunArgs {
    std::optional<std::string> preset;
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::size_t workers = 1;
    std::optional<std::string> out_dir;  ///< default: $COLLIDE_OUT_DIR, else ./collide-out
};

struct HaarCheckArgs {
    std::vector<std::size_t> dims{2, 3, 4};
    std::size_t draws = 10000;
    std::uint64_t seed = 1;
    PhiRule rule = PhiRule::haar;
};

struct OracleCheckArgs {
    std::size_t draws = 200;
    std::uint64_t seed = 1;
    bool corrupt_dynamics = false;
};

struct HaarDumpArgs {
    std::size_t dim = 2;
    std::size_t count = 10;
    std::uint64_t seed = 1;
    bool angles = false;
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_haar_check(const HaarCheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const OracleCheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_haar_dump(const HaarDumpArgs& args, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] included).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace collide::cli
