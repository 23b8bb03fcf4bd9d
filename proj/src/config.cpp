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

#include "collide/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "collide/error.hpp"
#include "json.hpp"

namespace collide {

namespace {

using Entries = std::map<std::string, std::pair<std::string, int>>;  // key -> (value, line)

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw InvalidArgument("config key '" + key + "': " + why);
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x)) bad(key, "'" + v + "' is not a finite number");
    return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    int base = 10;
    std::string s = v;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        base = 16;
        s = s.substr(2);
    }
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x, base);
    if (ec != std::errc() || p != s.data() + s.size()) bad(key, "'" + v + "' is not a nonnegative integer");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "off" || v == "0" || v == "no") return false;
    bad(key, "'" + v + "' is not a boolean");
}

// "a, b, c" or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> to_real_list(const std::string& key, const std::string& v) {
    const auto parts = split(v, ':');
    if (parts.size() == 3 && v.find(',') == std::string::npos) {
        const double a = to_double(key, parts[0]), b = to_double(key, parts[1]);
        const auto n = to_uint(key, parts[2]);
        if (n < 1) bad(key, "range count must be >= 1");
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split(v, ',')) out.push_back(to_double(key, p));
    if (out.empty()) bad(key, "empty list");
    return out;
}

// "1, 2, 5" or "first:last" (inclusive).
std::vector<std::size_t> to_int_list(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    for (const auto& p : split(v, ',')) {
        const auto r = split(p, ':');
        if (r.size() == 2) {
            const auto a = to_uint(key, r[0]), b = to_uint(key, r[1]);
            if (b < a) bad(key, "range '" + p + "' is decreasing");
            for (auto k = a; k <= b; ++k) out.push_back(k);
        } else if (r.size() == 1) {
            out.push_back(to_uint(key, r[0]));
        } else {
            bad(key, "malformed entry '" + p + "'");
        }
    }
    if (out.empty()) bad(key, "empty list");
    return out;
}

std::vector<DimPair> to_dims(const std::string& key, const std::string& v) {
    std::vector<DimPair> out;
    for (const auto& p : split(v, ',')) {
        const auto r = split(p, ':');
        if (r.size() != 2) bad(key, "expected dim_EL:dim_ER pairs, got '" + p + "'");
        out.push_back({static_cast<std::size_t>(to_uint(key, r[0])), static_cast<std::size_t>(to_uint(key, r[1]))});
    }
    if (out.empty()) bad(key, "empty list");
    return out;
}

Entries parse_flat(const std::string& text) {
    Entries e;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw InvalidArgument("config line " + std::to_string(lineno) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (!section.empty()) key = section + "." + key;
        if (e.count(key)) bad(key, "given twice");
        e[key] = {trim(line.substr(eq + 1)), lineno};
    }
    return e;
}

std::string json_scalar(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    return j.dump();
}

// Flattens JSON into the same key space; arrays become comma lists, inner
// two-element arrays become a:b pairs.
void flatten_json(const nlohmann::json& j, const std::string& prefix, Entries& e) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        const auto& v = it.value();
        if (v.is_object()) {
            flatten_json(v, key, e);
        } else if (v.is_array()) {
            std::string s;
            for (const auto& x : v) {
                if (!s.empty()) s += ", ";
                if (x.is_array()) {
                    std::string pair;
                    for (const auto& y : x) pair += (pair.empty() ? "" : ":") + json_scalar(y);
                    s += pair;
                } else {
                    s += json_scalar(x);
                }
            }
            e[key] = {s, 0};
        } else {
            e[key] = {json_scalar(v), 0};
        }
    }
}

}  // namespace

std::string to_string(CollisionOrder order) { return order == CollisionOrder::right_first ? "R-first" : "L-first"; }

ExperimentConfig parse_config(const std::string& text) {
    Entries e;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& err) {
            throw InvalidArgument(std::string("config: invalid JSON: ") + err.what());
        }
        if (!j.is_object()) throw InvalidArgument("config: JSON root must be an object");
        flatten_json(j, "", e);
    } else {
        e = parse_flat(text);
    }

    ExperimentConfig c;
    if (auto it = e.find("preset"); it != e.end()) {
        c = preset(it->second.first);
        e.erase(it);
    }
    for (const auto& [key, entry] : e) {
        const std::string& v = entry.first;
        if (key == "name") {
            c.name = v;
        } else if (key == "samples") {
            c.samples = to_uint(key, v);
        } else if (key == "seed") {
            c.seed = to_uint(key, v);
        } else if (key == "order") {
            if (v == "R-first") {
                c.order = CollisionOrder::right_first;
            } else if (v == "L-first") {
                c.order = CollisionOrder::left_first;
            } else {
                bad(key, "expected R-first or L-first");
            }
        } else if (key == "env_prep") {
            if (v == "haar") {
                c.env_prep = EnvironmentPrep::haar;
            } else if (v == "ground") {
                c.env_prep = EnvironmentPrep::ground;
            } else {
                bad(key, "expected haar or ground");
            }
        } else if (key == "ancilla") {
            if (v == "ground") {
                c.ancilla.kind = AncillaPrep::Kind::ground;
            } else if (v == "superposition") {
                c.ancilla.kind = AncillaPrep::Kind::superposition;
            } else if (v == "mixed") {
                c.ancilla.kind = AncillaPrep::Kind::mixed;
            } else {
                bad(key, "expected ground, superposition or mixed");
            }
        } else if (key == "ancilla_theta") {
            c.ancilla.theta = to_double(key, v);
        } else if (key == "ancilla_phase") {
            c.ancilla.phase = to_double(key, v);
        } else if (key == "rho0") {
            c.ancilla.rho0 = to_double(key, v);
            if (!(c.ancilla.rho0 >= 0.0 && c.ancilla.rho0 <= 1.0)) bad(key, "must lie in [0, 1]");
        } else if (key == "measures") {
            c.measures.clear();
            for (const auto& m : split(v, ',')) {
                try {
                    for (Measure x : parse_measures(m)) c.measures.push_back(x);
                } catch (const InvalidArgument& err) {
                    bad(key, err.what());
                }
            }
        } else if (key == "left_target") {
            c.left_target = to_uint(key, v);
        } else if (key == "right_target") {
            c.right_target = to_uint(key, v);
        } else if (key == "rerandomize_per_round") {
            c.rerandomize_per_round = to_bool(key, v);
        } else if (key == "qubit_cap") {
            c.qubit_cap = to_uint(key, v);
        } else if (key == "witness_restarts") {
            c.witness.restarts = to_uint(key, v);
        } else if (key == "witness_seed") {
            c.witness.seed = to_uint(key, v);
        } else if (key == "eps_bond") {
            c.eps_bond = to_double(key, v);
        } else if (key == "eps_tri") {
            c.eps_tri = to_double(key, v);
        } else if (key == "dims.pairs") {
            c.dims = to_dims(key, v);
        } else if (key == "coupling.tau") {
            c.taus = to_real_list(key, v);
        } else if (key == "coupling.lambda") {
            c.lambdas = to_real_list(key, v);
        } else if (key == "rounds.values") {
            c.rounds = to_int_list(key, v);
        } else {
            bad(key, "unknown key");
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("config: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string fmt(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

}  // namespace

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "name = " << c.name << "\n";
    o << "samples = " << c.samples << "\n";
    o << "seed = " << c.seed << "\n";
    o << "order = " << to_string(c.order) << "\n";
    o << "env_prep = " << (c.env_prep == EnvironmentPrep::haar ? "haar" : "ground") << "\n";
    switch (c.ancilla.kind) {
        case AncillaPrep::Kind::ground:
            o << "ancilla = ground\n";
            break;
        case AncillaPrep::Kind::superposition:
            o << "ancilla = superposition\nancilla_theta = " << fmt(c.ancilla.theta)
              << "\nancilla_phase = " << fmt(c.ancilla.phase) << "\n";
            break;
        case AncillaPrep::Kind::mixed:
            o << "ancilla = mixed\nrho0 = " << fmt(c.ancilla.rho0) << "\n";
            break;
    }
    o << "measures = ";
    for (std::size_t k = 0; k < c.measures.size(); ++k) o << (k ? ", " : "") << to_string(c.measures[k]);
    o << "\nleft_target = " << c.left_target << "\nright_target = " << c.right_target << "\n";
    o << "rerandomize_per_round = " << (c.rerandomize_per_round ? "true" : "false") << "\n";
    o << "qubit_cap = " << c.qubit_cap << "\n";
    o << "witness_restarts = " << c.witness.restarts << "\nwitness_seed = " << c.witness.seed << "\n";
    o << "eps_bond = " << fmt(c.eps_bond) << "\neps_tri = " << fmt(c.eps_tri) << "\n";
    o << "\n[dims]\npairs = ";
    for (std::size_t k = 0; k < c.dims.size(); ++k) o << (k ? ", " : "") << c.dims[k].left << ":" << c.dims[k].right;
    o << "\n\n[coupling]\ntau = ";
    for (std::size_t k = 0; k < c.taus.size(); ++k) o << (k ? ", " : "") << fmt(c.taus[k]);
    o << "\nlambda = ";
    for (std::size_t k = 0; k < c.lambdas.size(); ++k) o << (k ? ", " : "") << fmt(c.lambdas[k]);
    o << "\n\n[rounds]\nvalues = ";
    for (std::size_t k = 0; k < c.rounds.size(); ++k) o << (k ? ", " : "") << c.rounds[k];
    o << "\n";
    return o.str();
}

}  // namespace collide
