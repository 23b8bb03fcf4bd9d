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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "collide/cli.hpp"
#include "doctest.h"

using namespace collide;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "collide");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("run writes CSV and manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "collide-cli-test";
    std::filesystem::remove_all(dir);
    const auto r = invoke({"run", "--preset", "fig2a", "--seed", "42", "--samples", "50", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto csv = slurp(dir / "fig2a.csv");
    CHECK(csv.rfind("dim_ER,measure,mean,se,m,min,max\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    const auto manifest = slurp(dir / "fig2a.manifest.json");
    CHECK(manifest.find("\"seed\": 42") != std::string::npos);
    CHECK(manifest.find("\"failed_samples\": 0") != std::string::npos);

    const auto again = invoke({"run", "--preset", "fig2a", "--seed", "42", "--samples", "50", "--workers", "3",
                               "--out", (dir / "b").string()});
    CHECK(again.code == 0);
    CHECK(slurp(dir / "b" / "fig2a.csv") == csv);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run with a config file") {
    const auto dir = std::filesystem::temp_directory_path() / "collide-cli-config";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "c.conf");
        f << "name = tiny\nsamples = 5\nmeasures = neg_tri\n[coupling]\nlambda = 0, 1\n";
    }
    const auto r = invoke({"run", "--config", (dir / "c.conf").string(), "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(slurp(dir / "tiny.csv").rfind("lambda,measure", 0) == 0);
    {
        std::ofstream f(dir / "bad.conf");
        f << "samples = -3\n";
    }
    const auto bad = invoke({"run", "--config", (dir / "bad.conf").string(), "--out", dir.string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("'samples'") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run argument errors exit 2") {
    const auto unknown = invoke({"run", "--preset", "fig9"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("fig2a") != std::string::npos);
    CHECK(invoke({"run"}).code == 2);
    CHECK(invoke({"run", "--preset", "fig2a", "--config", "x"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"run", "--preset", "fig2a", "--workers", "0"}).code == 2);
}

TEST_CASE("haar-check") {
    CHECK(invoke({"haar-check", "--dims", "2", "--draws", "2000"}).code == 0);
    const auto bad = invoke({"haar-check", "--dims", "2", "--phi-rule", "uniform"});
    CHECK(bad.code == 4);
    CHECK(bad.err.find("KS") != std::string::npos);
    CHECK(invoke({"haar-check", "--draws", "10"}).code == 2);
    CHECK(invoke({"haar-check", "--dims", "1"}).code == 2);
}

TEST_CASE("oracle-check") {
    const auto ok = invoke({"oracle-check", "--draws", "20"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("overall_max_deviation") != std::string::npos);
    CHECK(invoke({"oracle-check", "--draws", "1"}).code == 0);
    const auto bad = invoke({"oracle-check", "--corrupt-dynamics"});
    CHECK(bad.code == 5);
    CHECK(bad.err.find("biased_three_qubit_state") != std::string::npos);
    CHECK(invoke({"oracle-check", "--draws", "0"}).code == 2);
}

TEST_CASE("haar-dump") {
    const auto m = invoke({"haar-dump", "--dim", "2", "--count", "3"});
    CHECK(m.code == 0);
    CHECK(std::count(m.out.begin(), m.out.end(), '\n') == 4);
    CHECK(m.out.rfind("record,re_0_0,im_0_0,", 0) == 0);
    const auto a = invoke({"haar-dump", "--dim", "3", "--count", "2", "--angles"});
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 1 + 2 * 3);
}
