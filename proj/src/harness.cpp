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

#include "collide/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "collide/error.hpp"

namespace collide {

namespace {

struct MeasureName {
    Measure m;
    const char* name;
};

constexpr MeasureName kMeasureNames[] = {
    {Measure::conc_eL_A, "conc_eL_A"},
    {Measure::conc_eR_A, "conc_eR_A"},
    {Measure::neg_eL_A, "neg_eL_A"},
    {Measure::neg_eR_A, "neg_eR_A"},
    {Measure::neg_eL_eR, "neg_eL_eR"},
    {Measure::neg_tri, "neg_tri"},
    {Measure::witness, "witness"},
    {Measure::fact_eL_eR, "fact_eL_eR"},
    {Measure::class_a, "class_a"},
    {Measure::class_b, "class_b"},
    {Measure::class_c, "class_c"},
    {Measure::class_d, "class_d"},
    {Measure::class_unclassified, "class_unclassified"},
};

bool needs_left(Measure m) { return m != Measure::conc_eR_A && m != Measure::neg_eR_A; }
bool needs_right(Measure m) { return m != Measure::conc_eL_A && m != Measure::neg_eL_A; }
// Neumaier-compensated running sum.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            c_ += (sum_ - t) + x;
        } else {
            c_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

  private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

constexpr std::array<std::size_t, 1> kFirst{0};

DensityMatrix pair_of(const DensityMatrix& rho3, std::size_t a, std::size_t b) {
    const std::array<std::size_t, 2> keep{a, b};
    return partial_trace(rho3, keep);
}

double indicator(bool b) { return b ? 1.0 : 0.0; }

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return v;
}

std::vector<std::size_t> iota_from_one(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = k + 1;
    return v;
}

}  // namespace

std::string to_string(Measure m) {
    for (const auto& e : kMeasureNames) {
        if (e.m == m) return e.name;
    }
    return "unknown";
}

std::vector<Measure> parse_measures(const std::string& name) {
    if (name == "graph-class") {
        return {Measure::class_a, Measure::class_b, Measure::class_c, Measure::class_d, Measure::class_unclassified};
    }
    for (const auto& e : kMeasureNames) {
        if (name == e.name) return {e.m};
    }
    std::string valid;
    for (const auto& e : kMeasureNames) valid += std::string(" ") + e.name;
    throw InvalidArgument("unknown measure '" + name + "'; valid:" + valid + " graph-class");
}

// ---------------------------------------------------------------------------

EnvironmentLayout ExperimentConfig::layout(const DimPair& d) const {
    EnvironmentLayout lay;
    lay.dim_left = d.left;
    lay.dim_right = d.right;
    lay.purifier = ancilla.needs_purifier();
    lay.left_target = left_target;
    lay.right_target = right_target;
    return lay;
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& what) { throw InvalidArgument("config: " + what); };
    if (samples < 1) fail("samples must be >= 1");
    if (dims.empty()) fail("dims must list at least one (dim_EL, dim_ER) pair");
    if (taus.empty()) fail("tau grid is empty");
    if (lambdas.empty()) fail("lambda grid is empty");
    if (rounds.empty()) fail("rounds grid is empty");
    if (measures.empty()) fail("measures must name at least one observable");
    for (std::size_t r : rounds) {
        if (r < 1) fail("rounds entries must be >= 1");
    }
    for (double t : taus) {
        if (!std::isfinite(t)) fail("tau values must be finite");
    }
    for (double l : lambdas) {
        if (!std::isfinite(l)) fail("lambda values must be finite");
    }
    if (!(eps_bond > 0.0) || !(eps_tri > 0.0)) fail("eps_bond and eps_tri must be positive");
    if (witness.restarts < 1) fail("witness_restarts must be >= 1");
    if (rerandomize_per_round && env_prep != EnvironmentPrep::haar) {
        fail("rerandomize_per_round requires env_prep = haar");
    }
    try {
        ancilla.validate();
    } catch (const InvalidArgument& e) {
        fail(std::string("ancilla: ") + e.what());
    }
    for (const auto& d : dims) {
        const auto lay = layout(d);
        if (lay.num_qubits() > qubit_cap) {
            fail("dims " + std::to_string(d.left) + ":" + std::to_string(d.right) + " need " +
                 std::to_string(lay.num_qubits()) + " qubits, above qubit_cap = " + std::to_string(qubit_cap));
        }
        if (d.left == 0 && d.right == 0) fail("dims: at least one environment must be nonempty");
        if (left_target > d.left) fail("left_target beyond dim_EL");
        if (right_target > d.right) fail("right_target beyond dim_ER");
        for (Measure m : measures) {
            if ((needs_left(m) && d.left == 0) || (needs_right(m) && d.right == 0)) {
                fail("measures: '" + to_string(m) + "' needs an environment that dims " + std::to_string(d.left) +
                     ":" + std::to_string(d.right) + " lacks");
            }
        }
    }
}

const AggregateResult& RunResult::find(const GridPoint& p, Measure m) const {
    for (const auto& a : aggregates) {
        if (a.point == p && a.measure == m) return a;
    }
    throw InvalidArgument("RunResult: no aggregate for the requested point and measure");
}

// ---------------------------------------------------------------------------

std::vector<double> evaluate_measures(const PureState& state, const EnvironmentLayout& layout,
                                      std::span<const Measure> measures, const ExperimentConfig& config,
                                      std::size_t* multi_negative_events) {
    const bool has_left = layout.dim_left > 0;
    const bool has_right = layout.dim_right > 0;
    const std::size_t a = layout.ancilla_index();
    std::size_t multi = 0;

    // Work on the struck qubits only: (e_L, A, e_R), or the single pair.
    std::optional<DensityMatrix> rho3;
    if (has_left && has_right) {
        const std::array<std::size_t, 3> keep{layout.left_index(), a, layout.right_index()};
        rho3 = partial_trace(state, keep);
    }
    std::optional<DensityMatrix> la, ar, lr;
    auto left_a = [&]() -> const DensityMatrix& {
        if (!la) {
            if (rho3) {
                la = pair_of(*rho3, 0, 1);
            } else {
                const std::array<std::size_t, 2> keep{layout.left_index(), a};
                la = partial_trace(state, keep);
            }
        }
        return *la;
    };
    auto a_right = [&]() -> const DensityMatrix& {
        if (!ar) {
            if (rho3) {
                ar = pair_of(*rho3, 1, 2);
            } else {
                const std::array<std::size_t, 2> keep{a, layout.right_index()};
                ar = partial_trace(state, keep);
            }
        }
        return *ar;
    };
    auto left_right = [&]() -> const DensityMatrix& {
        if (!lr) lr = pair_of(*rho3, 0, 2);
        return *lr;
    };
    auto neg = [&](const DensityMatrix& rho) {
        const auto r = negativity(rho, kFirst);
        if (r.multiple_negative()) ++multi;
        return r.value;
    };
    std::optional<GraphClass> graph;
    auto graph_class = [&]() -> const GraphClass& {
        if (!graph) graph = classify_graph(*rho3, config.eps_bond, config.eps_tri);
        return *graph;
    };

    std::vector<double> out;
    out.reserve(measures.size());
    for (Measure m : measures) {
        switch (m) {
            case Measure::conc_eL_A:
                out.push_back(concurrence(left_a()).value);
                break;
            case Measure::conc_eR_A:
                out.push_back(concurrence(a_right()).value);
                break;
            case Measure::neg_eL_A:
                out.push_back(neg(left_a()));
                break;
            case Measure::neg_eR_A:
                out.push_back(neg(a_right()));
                break;
            case Measure::neg_eL_eR:
                out.push_back(neg(left_right()));
                break;
            case Measure::neg_tri: {
                const auto t = tripartite_negativity(*rho3);
                for (const auto& c : t.per_cut) {
                    if (c.multiple_negative()) ++multi;
                }
                out.push_back(t.value);
                break;
            }
            case Measure::witness:
                out.push_back(ghz_witness(*rho3, config.witness).expectation);
                break;
            case Measure::fact_eL_eR:
                out.push_back(factorization_distance(left_right()));
                break;
            case Measure::class_a:
                out.push_back(indicator(graph_class().kind == GraphClass::Kind::triangle));
                break;
            case Measure::class_b:
                out.push_back(indicator(graph_class().kind == GraphClass::Kind::no_bonds));
                break;
            case Measure::class_c:
                out.push_back(indicator(graph_class().kind == GraphClass::Kind::two_way));
                break;
            case Measure::class_d:
                out.push_back(indicator(graph_class().kind == GraphClass::Kind::single_bond));
                break;
            case Measure::class_unclassified:
                out.push_back(indicator(graph_class().kind == GraphClass::Kind::unclassified));
                break;
        }
    }
    if (multi_negative_events) *multi_negative_events += multi;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Unit {
    std::size_t dim_index;
    std::size_t sample;
};

// One (dim pair, sample) unit: prepare once, then re-use the preparation for
// every coupling point; rounds run incrementally.
void run_unit(const ExperimentConfig& cfg, const Unit& u, std::span<SampleRecord> out) {
    const DimPair& d = cfg.dims[u.dim_index];
    const auto lay = cfg.layout(d);
    RandomSource rng(RngStream{cfg.seed, u.sample});
    const auto prep = prepare_environments(lay, cfg.ancilla, rng, cfg.env_prep);
    const std::uint64_t ld = prep.left_angles ? prep.left_angles->digest() : 0;
    const std::uint64_t rd = prep.right_angles ? prep.right_angles->digest() : 0;

    const std::size_t max_rounds = *std::max_element(cfg.rounds.begin(), cfg.rounds.end());
    std::vector<std::pair<std::optional<UnitaryMatrix>, std::optional<UnitaryMatrix>>> fresh;
    if (cfg.rerandomize_per_round) {
        for (std::size_t r = 1; r < max_rounds; ++r) {
            std::optional<UnitaryMatrix> ul, ur;
            if (d.left > 0) ul = sample_haar_unitary(std::size_t{1} << d.left, rng);
            if (d.right > 0) ur = sample_haar_unitary(std::size_t{1} << d.right, rng);
            fresh.emplace_back(std::move(ul), std::move(ur));
        }
    }
    const auto left_idx = lay.left_indices();
    const auto right_idx = lay.right_indices();

    std::size_t slot = 0;
    for (double tau : cfg.taus) {
        for (double lambda : cfg.lambdas) {
            const CouplingSpec coupling{tau, lambda, std::nullopt};
            const auto one_round = standard_schedule(1, cfg.order, coupling, lay);
            PureState state = prep.state;
            std::size_t done = 0;
            for (std::size_t target : cfg.rounds) {
                // cfg.rounds need not be sorted; restart when it goes backwards.
                if (target < done) {
                    state = prep.state;
                    done = 0;
                }
                while (done < target) {
                    if (done > 0 && cfg.rerandomize_per_round) {
                        const auto& [ul, ur] = fresh[done - 1];
                        if (ul) state = apply_local_unitary(state, *ul, left_idx);
                        if (ur) state = apply_local_unitary(state, *ur, right_idx);
                    }
                    state = run_protocol(state, one_round);
                    ++done;
                }
                SampleRecord& rec = out[slot++];
                rec.sample = u.sample;
                rec.point = GridPoint{d.left, d.right, tau, lambda, target};
                rec.left_digest = ld;
                rec.right_digest = rd;
                rec.values = evaluate_measures(state, lay, cfg.measures, cfg, &rec.multi_negative_events);
            }
        }
    }
}

}  // namespace

RunResult run_monte_carlo(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t per_unit = config.taus.size() * config.lambdas.size() * config.rounds.size();
    const std::size_t m = config.samples;
    const std::size_t units = config.dims.size() * m;

    std::vector<SampleRecord> records(units * per_unit);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failed{0};
    std::exception_ptr fatal;
    std::mutex fatal_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= units) return;
            const Unit u{k / m, k % m};
            std::span<SampleRecord> slots(records.data() + k * per_unit, per_unit);
            try {
                run_unit(config, u, slots);
            } catch (const NumericalError&) {
                failed.fetch_add(1);
                for (auto& r : slots) {
                    r = SampleRecord{};
                    r.sample = u.sample;
                    r.failed = true;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(fatal_mutex);
                if (!fatal) fatal = std::current_exception();
                next.store(units);
                return;
            }
        }
    };
    const std::size_t nthreads = std::max<std::size_t>(1, std::min(options.workers, units));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (fatal) std::rethrow_exception(fatal);

    RunResult result;
    result.failed_samples = failed.load();
    if (static_cast<double>(result.failed_samples) > 1e-3 * static_cast<double>(units)) {
        throw RunAborted("run_monte_carlo: " + std::to_string(result.failed_samples) + " of " +
                         std::to_string(units) + " samples failed numerically (limit 0.1%)");
    }

    // Single-threaded reduction in ascending sample order.
    for (std::size_t di = 0; di < config.dims.size(); ++di) {
        for (std::size_t p = 0; p < per_unit; ++p) {
            GridPoint point;
            bool have_point = false;
            for (std::size_t mi = 0; mi < config.measures.size(); ++mi) {
                CompensatedSum sum;
                std::size_t n = 0;
                double lo = INFINITY, hi = -INFINITY;
                for (std::size_t k = 0; k < m; ++k) {
                    const auto& r = records[(di * m + k) * per_unit + p];
                    if (r.failed) continue;
                    if (!have_point) {
                        point = r.point;
                        have_point = true;
                    }
                    const double x = r.values[mi];
                    sum.add(x);
                    lo = std::min(lo, x);
                    hi = std::max(hi, x);
                    ++n;
                }
                if (n == 0) continue;
                const double mean = std::clamp(sum.value() / static_cast<double>(n), lo, hi);
                CompensatedSum sq;
                for (std::size_t k = 0; k < m; ++k) {
                    const auto& r = records[(di * m + k) * per_unit + p];
                    if (r.failed) continue;
                    const double dx = r.values[mi] - mean;
                    sq.add(dx * dx);
                }
                const double se =
                    n > 1 ? std::sqrt(sq.value() / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
                result.aggregates.push_back({point, config.measures[mi], mean, se, n, lo, hi});
            }
        }
    }
    for (const auto& r : records) result.multi_negative_events += r.multi_negative_events;
    if (options.keep_records) result.records = std::move(records);
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

// ---------------------------------------------------------------------------

std::vector<CensusEntry> witness_census(const ExperimentConfig& config, const RunOptions& options) {
    ExperimentConfig cfg = config;
    cfg.measures = {Measure::witness};
    RunOptions opts = options;
    opts.keep_records = true;
    const auto run = run_monte_carlo(cfg, opts);
    std::vector<CensusEntry> out;
    for (const auto& agg : run.aggregates) {
        CensusEntry e;
        e.point = agg.point;
        e.min_expectation = agg.min;
        std::size_t positive = 0;
        for (const auto& r : run.records) {
            if (!r.failed && r.point == agg.point) {
                ++e.samples;
                if (r.values[0] > 0.0) ++positive;
            }
        }
        e.fraction_positive = e.samples ? static_cast<double>(positive) / static_cast<double>(e.samples) : 0.0;
        out.push_back(e);
    }
    return out;
}

CensusEntry witness_census_states(std::span<const DensityMatrix> states, const WitnessOptions& options) {
    if (states.empty()) throw InvalidArgument("witness_census_states: no states");
    CensusEntry e;
    e.min_expectation = INFINITY;
    std::size_t positive = 0;
    for (const auto& s : states) {
        const double w = ghz_witness(s, options).expectation;
        e.min_expectation = std::min(e.min_expectation, w);
        if (w > 0.0) ++positive;
        ++e.samples;
    }
    e.fraction_positive = static_cast<double>(positive) / static_cast<double>(e.samples);
    return e;
}

// ---------------------------------------------------------------------------

ExponentialFit fit_exponential(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw InvalidArgument("fit_exponential: need at least 3 points");
    for (const auto& [d, y] : points) {
        if (!std::isfinite(d) || !std::isfinite(y)) throw InvalidArgument("fit_exponential: non-finite point");
        if (!(y > 0.0)) {
            throw InvalidArgument(
                "fit_exponential: values must be > 0; threshold the series first (drop points below the "
                "numerical floor) before fitting");
        }
    }
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& [d, y] : points) {
        sx += d - 1.0;
        sy += std::log(y);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [d, y] : points) {
        sxx += (d - 1.0 - mx) * (d - 1.0 - mx);
        sxy += (d - 1.0 - mx) * (std::log(y) - my);
    }
    if (sxx == 0.0) throw InvalidArgument("fit_exponential: need at least two distinct dimensions");
    const double slope = sxy / sxx;
    ExponentialFit f;
    f.b = -slope;
    f.a = std::exp(my - slope * mx);
    f.points = points.size();
    double ybar = 0;
    for (const auto& p : points) ybar += p.second;
    ybar /= n;
    double sst = 0, sse_log = 0, sst_log = 0;
    for (const auto& [d, y] : points) {
        const double r = y - f.a * std::exp(-f.b * (d - 1.0));
        f.sse += r * r;
        sst += (y - ybar) * (y - ybar);
        const double rl = std::log(y) - (std::log(f.a) - f.b * (d - 1.0));
        sse_log += rl * rl;
        sst_log += (std::log(y) - my) * (std::log(y) - my);
    }
    auto score = [](double sse, double sst) { return sst > 0.0 ? 1.0 - sse / sst : (sse <= 1e-30 ? 1.0 : 0.0); };
    f.r_squared = score(sse_log, sst_log);
    f.r_squared_linear = score(f.sse, sst);
    return f;
}

ThresholdResult threshold_dimension(const std::map<std::size_t, double>& series, double threshold) {
    if (series.empty()) throw InvalidArgument("threshold_dimension: empty series");
    std::size_t expect = 1;
    for (const auto& [d, v] : series) {
        if (d != expect++) throw InvalidArgument("threshold_dimension: series must cover consecutive dims from 1");
    }
    ThresholdResult r;
    r.max_scanned = series.rbegin()->first;
    for (const auto& [d, v] : series) {
        if (v < threshold) {
            r.dim = d;
            break;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

std::vector<std::string> preset_names() { return {"fig2a", "fig2b", "fig3", "fig5", "fig6", "fig7", "witness1000"}; }

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.name = name;
    if (name == "fig2a" || name == "fig2b") {
        c.dims = {{1, 1}, {1, 2}, {1, 3}, {1, 4}};
        c.order = name == "fig2a" ? CollisionOrder::right_first : CollisionOrder::left_first;
        c.samples = 2000;
        c.measures = {Measure::conc_eL_A, Measure::conc_eR_A};
    } else if (name == "fig3") {
        c.dims = {{1, 1}};
        c.env_prep = EnvironmentPrep::ground;
        c.samples = 1;
        c.lambdas = linspace(-2.0, 2.0, 161);
        c.order = CollisionOrder::left_first;
        c.measures = {Measure::neg_eL_A, Measure::neg_eR_A, Measure::neg_eL_eR, Measure::neg_tri};
    } else if (name == "fig5") {
        c.dims = {{1, 1}};
        c.lambdas = linspace(-5.0, 5.0, 101);
        c.rounds = iota_from_one(10);
        c.order = CollisionOrder::left_first;
        c.samples = 500;
        c.measures = {Measure::neg_tri, Measure::neg_eL_A, Measure::neg_eR_A, Measure::neg_eL_eR, Measure::fact_eL_eR};
        for (Measure m : parse_measures("graph-class")) c.measures.push_back(m);
    } else if (name == "fig6") {
        c.dims.clear();
        for (std::size_t d = 1; d <= 6; ++d) c.dims.push_back({d, 1});
        c.lambdas = {0.0};
        c.rounds = iota_from_one(6);
        c.order = CollisionOrder::left_first;
        c.samples = 500;
        c.measures = {Measure::neg_tri, Measure::neg_eL_A, Measure::neg_eR_A, Measure::neg_eL_eR};
    } else if (name == "fig7") {
        c.dims.clear();
        for (std::size_t d = 1; d <= 5; ++d) c.dims.push_back({d, d});
        c.lambdas = {0.0};
        c.rounds = {18};
        c.order = CollisionOrder::left_first;
        c.samples = 500;
        c.measures = {Measure::neg_tri, Measure::neg_eL_A, Measure::neg_eR_A, Measure::neg_eL_eR};
    } else if (name == "witness1000") {
        c.dims = {{1, 1}, {1, 2}, {1, 3}, {1, 4}};
        c.order = CollisionOrder::right_first;
        c.samples = 1000;
        c.measures = {Measure::witness, Measure::neg_tri, Measure::neg_eL_eR};
    } else {
        std::string valid;
        for (const auto& n : preset_names()) valid += " " + n;
        throw InvalidArgument("unknown preset '" + name + "'; valid presets:" + valid);
    }
    return c;
}

}  // namespace collide
