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

#include "collide/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "collide/config.hpp"
#include "collide/error.hpp"
#include "collide/harness.hpp"
#include "collide/report.hpp"
#include "collide/validation.hpp"

namespace collide::cli {

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("COLLIDE_OUT_DIR"); env && *env) return env;
    return "collide-out";
}

}  // namespace

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    try {
        if (args.preset.has_value() == args.config_path.has_value()) {
            throw InvalidArgument("run: give exactly one of --preset or --config");
        }
        config = args.preset ? preset(*args.preset) : load_config(*args.config_path);
        if (args.seed) config.seed = *args.seed;
        if (args.samples) config.samples = *args.samples;
        if (args.workers < 1) throw InvalidArgument("run: --workers must be >= 1");
        config.validate();
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    const std::filesystem::path dir(args.out_dir.value_or(default_out_dir()));
    const std::string csv_path = (dir / (config.name + ".csv")).string();
    const std::string manifest_path = (dir / (config.name + ".manifest.json")).string();
    ManifestInfo info;
    info.started_utc = utc_timestamp();
    info.workers = args.workers;
    RunResult result;
    try {
        result = run_monte_carlo(config, RunOptions{args.workers, false});
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "aborted: " << e.what() << "\n";
        return kNumericalAbort;
    }
    info.finished_utc = utc_timestamp();
    info.outputs = {csv_path};
    try {
        write_file_atomic(csv_path, format_csv(config, result));
        write_file_atomic(manifest_path, format_manifest(config, result, info));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    out << "wrote " << csv_path << " (" << result.aggregates.size() << " rows, " << result.failed_samples
        << " failed samples, " << format_double(result.wall_seconds) << " s)\n";
    out << "wrote " << manifest_path << "\n";
    return kOk;
}

int cmd_haar_check(const HaarCheckArgs& args, std::ostream& out, std::ostream& err) {
    if (args.draws < kHaarMinDraws) {
        err << "error: --draws must be >= " << kHaarMinDraws << "\n";
        return kConfigError;
    }
    if (args.dims.empty()) {
        err << "error: --dims is empty\n";
        return kConfigError;
    }
    for (std::size_t n : args.dims) {
        if (n < 2) {
            err << "error: every N must be >= 2\n";
            return kConfigError;
        }
    }
    bool ok = true;
    out << "N,draws,unitarity_max_error,mean_abs_u11_sq,expected,se,ks_u11,ks_unn,result\n";
    for (std::size_t n : args.dims) {
        const auto row = haar_check(n, args.draws, args.seed, args.rule);
        out << n << "," << row.draws << "," << format_double(row.max_unitarity_error) << ","
            << format_double(row.moment) << "," << format_double(1.0 / static_cast<double>(n)) << ","
            << format_double(row.moment_se) << "," << format_double(row.ks_first) << ","
            << format_double(row.ks_last) << "," << (row.passed() ? "pass" : "FAIL") << "\n";
        if (!row.passed()) {
            ok = false;
            if (!row.unitarity_ok) err << "N=" << n << ": unitarity error above " << kHaarUnitarityTolerance << "\n";
            if (!row.moment_ok) err << "N=" << n << ": E|U11|^2 off by more than 3 SE\n";
            if (!row.ks_ok) err << "N=" << n << ": KS statistic vs Ginibre oracle >= " << kHaarKsThreshold << "\n";
        }
    }
    return ok ? kOk : kStatisticalFailure;
}

int cmd_oracle_check(const OracleCheckArgs& args, std::ostream& out, std::ostream& err) {
    if (args.draws < 1) {
        err << "error: --draws must be >= 1\n";
        return kConfigError;
    }
    const auto devs = oracle_equivalence(args.draws, args.seed, args.corrupt_dynamics);
    bool ok = true;
    double worst = 0.0;
    for (const auto& d : devs) {
        const bool pass = d.max_deviation < kOracleTolerance;
        out << d.oracle << " max_deviation=" << format_double(d.max_deviation) << " " << (pass ? "pass" : "FAIL")
            << "\n";
        worst = std::max(worst, d.max_deviation);
        if (!pass) {
            ok = false;
            err << "oracle breach: " << d.oracle << " deviates by " << format_double(d.max_deviation) << "\n";
        }
    }
    out << "draws=" << args.draws << " overall_max_deviation=" << format_double(worst) << "\n";
    return ok ? kOk : kOracleBreach;
}

int cmd_haar_dump(const HaarDumpArgs& args, std::ostream& out, std::ostream& err) {
    if (args.dim < 2) {
        err << "error: --dim must be >= 2\n";
        return kConfigError;
    }
    if (args.angles) {
        out << "record,i,j,phi,psi,chi,alpha\n";
    } else {
        out << "record";
        for (std::size_t r = 0; r < args.dim; ++r)
            for (std::size_t c = 0; c < args.dim; ++c) out << ",re_" << r << "_" << c << ",im_" << r << "_" << c;
        out << "\n";
    }
    for (std::size_t k = 0; k < args.count; ++k) {
        const auto angles = sample_euler_angles(args.dim, RngStream{args.seed, k});
        if (args.angles) {
            for (const auto& rot : angles.rotations) {
                out << k << "," << rot.i << "," << rot.j << "," << format_double(rot.phi) << ","
                    << format_double(rot.psi) << "," << format_double(rot.chi) << ","
                    << format_double(angles.alpha) << "\n";
            }
            continue;
        }
        const Matrix u = compose_unitary(angles).matrix();
        out << k;
        for (std::size_t r = 0; r < args.dim; ++r)
            for (std::size_t c = 0; c < args.dim; ++c)
                out << "," << format_double(u(r, c).real()) << "," << format_double(u(r, c).imag());
        out << "\n";
    }
    return kOk;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"collide: collision-model simulator for typical entanglement"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "run a preset or config and write CSV + manifest");
    std::string preset_name, config_path, out_dir;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    auto* o_preset = run_cmd->add_option("--preset", preset_name, "preset name");
    auto* o_config = run_cmd->add_option("--config", config_path, "config file (key = value or JSON)");
    o_preset->excludes(o_config);
    auto* o_seed = run_cmd->add_option("--seed", seed, "override the seed");
    auto* o_samples = run_cmd->add_option("--samples", samples, "override M");
    run_cmd->add_option("--workers", run.workers, "worker threads")->capture_default_str();
    auto* o_out = run_cmd->add_option("--out", out_dir, "output directory (default $COLLIDE_OUT_DIR or ./collide-out)");

    HaarCheckArgs haar;
    auto* haar_cmd = app.add_subcommand("haar-check", "validate the Haar sampler against the Ginibre oracle");
    haar_cmd->add_option("--dims", haar.dims, "matrix sizes")->delimiter(',')->capture_default_str();
    haar_cmd->add_option("--draws", haar.draws, "draws per size")->capture_default_str();
    haar_cmd->add_option("--seed", haar.seed)->capture_default_str();
    std::string rule = "haar";
    haar_cmd->add_option("--phi-rule", rule)->group("")->check(CLI::IsMember({"haar", "arcsin", "uniform"}));

    OracleCheckArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the pipeline against closed-form oracles");
    oracle_cmd->add_option("--draws", oracle.draws)->capture_default_str();
    oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();
    oracle_cmd->add_flag("--corrupt-dynamics", oracle.corrupt_dynamics)->group("");

    HaarDumpArgs dump;
    auto* dump_cmd = app.add_subcommand("haar-dump", "write sampled unitaries (or angle sets) as CSV to stdout");
    dump_cmd->add_option("--dim", dump.dim)->capture_default_str();
    dump_cmd->add_option("--count", dump.count)->capture_default_str();
    dump_cmd->add_option("--seed", dump.seed)->capture_default_str();
    dump_cmd->add_flag("--angles", dump.angles, "dump Euler angle sets instead of matrices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
        return kConfigError;
    }

    try {
        if (run_cmd->parsed()) {
            if (*o_preset) run.preset = preset_name;
            if (*o_config) run.config_path = config_path;
            if (*o_seed) run.seed = seed;
            if (*o_samples) run.samples = samples;
            if (*o_out) run.out_dir = out_dir;
            return cmd_run(run, out, err);
        }
        if (haar_cmd->parsed()) {
            haar.rule = rule == "arcsin" ? PhiRule::arcsin_power : rule == "uniform" ? PhiRule::uniform_angle : PhiRule::haar;
            return cmd_haar_check(haar, out, err);
        }
        if (oracle_cmd->parsed()) return cmd_oracle_check(oracle, out, err);
        if (dump_cmd->parsed()) return cmd_haar_dump(dump, out, err);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "aborted: " << e.what() << "\n";
        return kNumericalAbort;
    }
    return kConfigError;
}

}  // namespace collide::cli
