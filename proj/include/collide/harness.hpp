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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "collide/dynamics.hpp"
#include "collide/error.hpp"
#include "collide/measures.hpp"

namespace collide {

/// Per-sample observables. The class_* entries are 0/1 indicators, so their
/// mean is the fraction of samples in that entangled-graph class.
enum class Measure {
    conc_eL_A,
    conc_eR_A,
    neg_eL_A,
    neg_eR_A,
    neg_eL_eR,
    neg_tri,
    witness,
    fact_eL_eR,
    class_a,
    class_b,
    class_c,
    class_d,
    class_unclassified,
};

std::string to_string(Measure m);
/// Accepts the names produced by to_string plus "graph-class", which expands
/// to all five class indicators.
std::vector<Measure> parse_measures(const std::string& name);

struct DimPair {
    std::size_t left = 0;
    std::size_t right = 0;
    bool operator==(const DimPair&) const = default;
};

struct ExperimentConfig {
    std::string name = "custom";
    std::vector<DimPair> dims{{1, 1}};
    AncillaPrep ancilla;
    EnvironmentPrep env_prep = EnvironmentPrep::haar;
    std::vector<double> taus{1.0};
    std::vector<double> lambdas{1.0};
    std::vector<std::size_t> rounds{1};
    CollisionOrder order = CollisionOrder::right_first;
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    std::vector<Measure> measures;
    std::size_t left_target = 0;   ///< 1-based; 0 = last qubit of E_L
    std::size_t right_target = 0;  ///< 1-based; 0 = last qubit of E_R
    /// Apply fresh Haar unitaries to both environments before every round
    /// after the first. Off by default: prepare once, collide repeatedly.
    bool rerandomize_per_round = false;
    std::size_t qubit_cap = 22;
    WitnessOptions witness;
    double eps_bond = kDefaultBondThreshold;
    double eps_tri = kDefaultTripartiteThreshold;

    EnvironmentLayout layout(const DimPair& d) const;
    /// Throws InvalidArgument naming the offending field.
    void validate() const;
};

struct GridPoint {
    std::size_t dim_left = 0;
    std::size_t dim_right = 0;
    double tau = 0.0;
    double lambda = 0.0;
    std::size_t rounds = 1;
    bool operator==(const GridPoint&) const = default;
};

struct SampleRecord {
    std::size_t sample = 0;
    GridPoint point;
    std::uint64_t left_digest = 0;
    std::uint64_t right_digest = 0;
    std::vector<double> values;  ///< aligned with ExperimentConfig::measures
    std::size_t multi_negative_events = 0;
    bool failed = false;
};

struct AggregateResult {
    GridPoint point;
    Measure measure = Measure::conc_eL_A;
    double mean = 0.0;
    double se = 0.0;
    std::size_t m = 0;
    double min = 0.0;
    double max = 0.0;
};

struct RunResult {
    std::vector<AggregateResult> aggregates;
    std::vector<SampleRecord> records;
    std::size_t failed_samples = 0;
    std::size_t multi_negative_events = 0;
    double wall_seconds = 0.0;

    const AggregateResult& find(const GridPoint& p, Measure m) const;
};

struct RunOptions {
    std::size_t workers = 1;
    bool keep_records = true;
};

/// Thrown when more than 0.1% of work units fail numerically.
class RunAborted : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

RunResult run_monte_carlo(const ExperimentConfig& config, const RunOptions& options = {});

/// Observables of one evolved state, in `measures` order.
std::vector<double> evaluate_measures(const PureState& state, const EnvironmentLayout& layout,
                                      std::span<const Measure> measures, const ExperimentConfig& config,
                                      std::size_t* multi_negative_events = nullptr);

struct CensusEntry {
    GridPoint point;
    std::size_t samples = 0;
    double fraction_positive = 0.0;
    double min_expectation = 0.0;
};

std::vector<CensusEntry> witness_census(const ExperimentConfig& config, const RunOptions& options = {});
/// Census over explicit three-qubit states (e.g. injected controls).
CensusEntry witness_census_states(std::span<const DensityMatrix> states, const WitnessOptions& options = {});

struct ExponentialFit {
    double a = 0.0;
    double b = 0.0;
    double sse = 0.0;               ///< residual sum of squares, original scale
    double r_squared = 0.0;         ///< of the fitted regression, i.e. in ln y
    double r_squared_linear = 0.0;  ///< same model, scored in the original scale
    std::size_t points = 0;
};

/// Least squares of ln y against (d - 1) for y ~ A exp(-B (d - 1)).
ExponentialFit fit_exponential(std::span<const std::pair<double, double>> points);

struct ThresholdResult {
    std::optional<std::size_t> dim;  ///< empty: not reached
    std::size_t max_scanned = 0;
};

ThresholdResult threshold_dimension(const std::map<std::size_t, double>& series, double threshold);

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

}  // namespace collide
