// Copyright 2026 The CompShadow Authors
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

#include "compshadow/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace compshadow {

namespace {

using nlohmann::json;

int line_at(const std::string& text, size_t pos) {
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

/// Line of the last segment of `path`, searching each key after its parent.
int line_of(const std::string& text, const std::vector<std::string>& path) {
    size_t pos = 0;
    for (const auto& key : path) {
        const size_t found = text.find("\"" + key + "\"", pos);
        if (found == std::string::npos) return 0;
        pos = found;
    }
    return text.empty() ? 0 : line_at(text, pos);
}

std::string dotted(const std::vector<std::string>& path) {
    std::string out;
    for (const auto& key : path) out += (out.empty() ? "" : ".") + key;
    return out;
}

class Block {
   public:
    Block(const json& object, std::vector<std::string> path, const std::string& text)
        : object_(object), path_(std::move(path)), text_(text) {
        if (!object_.is_object()) fail(path_, "expected an object");
    }

    /// Rejects every key not registered through a getter.
    void finish() const {
        for (const auto& [key, value] : object_.items()) {
            if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
                fail(sub(key), "unknown key");
            }
        }
    }

    template <typename T>
    void get(const std::string& key, std::optional<T>& out) {
        seen_.push_back(key);
        auto it = object_.find(key);
        if (it == object_.end()) return;
        out = convert<T>(*it, sub(key));
    }

    template <typename T>
    void get(const std::string& key, T& out) {
        std::optional<T> value;
        get(key, value);
        if (value) out = *value;
    }

    const json* child(const std::string& key) {
        seen_.push_back(key);
        auto it = object_.find(key);
        return it == object_.end() ? nullptr : &*it;
    }

    std::vector<std::string> sub(const std::string& key) const {
        auto p = path_;
        p.push_back(key);
        return p;
    }

    [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& msg) const {
        throw ConfigError(dotted(path), line_of(text_, path), msg);
    }

   private:
    template <typename T>
    T convert(const json& v, const std::vector<std::string>& path) const {
        if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) fail(path, "expected a string");
            return v.get<std::string>();
        } else if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) fail(path, "expected a number");
            return v.get<double>();
        } else if constexpr (std::is_same_v<T, uint64_t>) {
            if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
            return v.get<uint64_t>();
        } else {
            if (!v.is_number_integer()) fail(path, "expected an integer");
            const auto x = v.get<int64_t>();
            if (x < INT32_MIN || x > INT32_MAX) fail(path, "integer out of range");
            return static_cast<int>(x);
        }
    }

    const json& object_;
    std::vector<std::string> path_;
    const std::string& text_;
    std::vector<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& msg) {
    if (!ok) throw ConfigError(field, 0, msg);
}

template <typename T>
void put(json& j, const std::string& key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? "" : field + ": ") + message),
      field_(std::move(field)),
      line_(line) {}

std::pair<int, int> parse_n_range(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw ConfigError("n", 0, "expected an integer or a range a..b, got '" + text + "'");
        }
        return v;
    };
    const size_t dots = text.find("..");
    if (dots == std::string::npos) {
        const int n = to_int(text);
        return {n, n};
    }
    return {to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
}

void ExperimentConfig::validate() const {
    const auto& names = task_names();
    require(std::find(names.begin(), names.end(), task) != names.end(), "task",
            "unknown task '" + task + "'");
    if (n_min || n_max) {
        require(n_min && n_max, "n", "incomplete range");
        require(*n_min >= 1 && *n_max <= 14, "n", "qubit counts must lie in 1..14");
        require(*n_min <= *n_max, "n", "range lower bound exceeds upper bound");
    }
    if (repeats) require(*repeats >= 1, "repeats", "must be positive");
    if (jobs) require(*jobs >= 1, "jobs", "must be positive");
    require(format == "csv" || format == "jsonl", "format", "must be csv or jsonl");
    auto prob = [](const std::optional<double>& v, const std::string& field, double hi) {
        if (v) require(*v >= 0.0 && *v <= hi, field, "must lie in [0, " + std::to_string(hi) + "]");
    };
    prob(noise.e1, "noise.e1", 1.0);
    prob(noise.e2, "noise.e2", 1.0);
    prob(noise.readout_error, "noise.readout_error", 0.5);
    prob(noise.correlation, "noise.correlation", 1.0);
    if (noise.t_gate_ns) require(*noise.t_gate_ns >= 0.0, "noise.t_gate_ns", "must be >= 0");
    if (noise.t1_us) require(*noise.t1_us >= 0.0, "noise.t1_us", "must be >= 0");
    if (noise.confusion) {
        static const std::vector<std::string> kinds = {"identity", "tensor-product",
                                                       "synthetic-correlated", "two-local"};
        require(std::find(kinds.begin(), kinds.end(), *noise.confusion) != kinds.end(),
                "noise.confusion", "unknown confusion kind '" + *noise.confusion + "'");
    }
    if (xi) require(*xi > 0.0 && *xi < 1.0, "params.xi", "must lie in (0, 1)");
    if (eta) require(*eta > 0.0 && *eta < 1.0, "params.eta", "must lie in (0, 1)");
    if (rounds) require(*rounds >= 1, "params.rounds", "must be positive");
    if (epochs) require(*epochs >= 0, "params.epochs", "must be >= 0");
    if (trials) require(*trials >= 1, "params.trials", "must be positive");
    prob(loss, "params.loss", 0.999);
    if (target_err) require(*target_err > 0.0, "params.target_err", "must be positive");
    if (variant) {
        static const std::vector<std::string> v = {"first-qubit", "qubit-k", "ancilla", "depth-l"};
        require(std::find(v.begin(), v.end(), *variant) != v.end(), "params.variant",
                "unknown variant '" + *variant + "'");
    }
    if (path) require(*path == "sampled" || *path == "dense-sum", "params.path",
                      "must be sampled or dense-sum");
    if (backend) require(*backend == "trajectory" || *backend == "dense", "params.backend",
                         "must be trajectory or dense");
    if (state) {
        const bool ok = *state == "haar" || *state == "ghz" || *state == "neel" ||
                        state->rfind("basis:", 0) == 0;
        require(ok, "params.state", "must be haar, ghz, neel or basis:<index>");
    }
    if (pauli) {
        require(!pauli->empty() &&
                    pauli->find_first_not_of("IXYZ") == std::string::npos,
                "params.pauli", "must be a string over I, X, Y, Z");
    }
}

std::string ExperimentConfig::to_json() const {
    json j = json::object();
    j["task"] = task;
    put(j, "n_min", n_min);
    put(j, "n_max", n_max);
    put(j, "shots", shots);
    put(j, "instances", instances);
    put(j, "repeats", repeats);
    j["seed"] = seed;
    j["stream"] = stream;
    j["format"] = format;
    json nj = json::object();
    put(nj, "e1", noise.e1);
    put(nj, "e2", noise.e2);
    put(nj, "t_gate_ns", noise.t_gate_ns);
    put(nj, "t1_us", noise.t1_us);
    put(nj, "confusion", noise.confusion);
    put(nj, "readout_error", noise.readout_error);
    put(nj, "correlation", noise.correlation);
    j["noise"] = nj;
    json pj = json::object();
    put(pj, "xi", xi);
    put(pj, "eta", eta);
    put(pj, "rounds", rounds);
    put(pj, "epochs", epochs);
    put(pj, "loss", loss);
    put(pj, "target_err", target_err);
    put(pj, "trials", trials);
    put(pj, "variant", variant);
    put(pj, "variant_param", variant_param);
    put(pj, "state", state);
    put(pj, "pauli", pauli);
    put(pj, "index", index);
    put(pj, "path", path);
    put(pj, "backend", backend);
    j["params"] = pj;
    return j.dump();
}

std::string ExperimentConfig::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_config(const std::string& text, const std::string& task) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw ConfigError("", line_at(text, std::min(byte, text.size())),
                          std::string("malformed JSON: ") + e.what());
    }
    ExperimentConfig c;
    Block top(root, {}, text);
    top.get("task", c.task);
    if (const json* n = top.child("n")) {
        const auto path = top.sub("n");
        if (n->is_number_integer()) {
            c.n_min = c.n_max = n->get<int>();
        } else if (n->is_string()) {
            try {
                const auto [lo, hi] = parse_n_range(n->get<std::string>());
                c.n_min = lo;
                c.n_max = hi;
            } catch (const ConfigError& e) {
                top.fail(path, e.what() + std::string(" (use 6 or \"2..6\")"));
            }
        } else if (n->is_array() && n->size() == 2 && (*n)[0].is_number_integer() &&
                   (*n)[1].is_number_integer()) {
            c.n_min = (*n)[0].get<int>();
            c.n_max = (*n)[1].get<int>();
        } else {
            top.fail(path, "expected an integer, \"a..b\" or [a, b]");
        }
    }
    top.get("shots", c.shots);
    top.get("instances", c.instances);
    top.get("repeats", c.repeats);
    top.get("seed", c.seed);
    top.get("stream", c.stream);
    top.get("output", c.output);
    top.get("jobs", c.jobs);
    top.get("format", c.format);
    if (const json* nb = top.child("noise")) {
        Block b(*nb, top.sub("noise"), text);
        b.get("e1", c.noise.e1);
        b.get("e2", c.noise.e2);
        b.get("t_gate_ns", c.noise.t_gate_ns);
        b.get("t1_us", c.noise.t1_us);
        b.get("confusion", c.noise.confusion);
        b.get("readout_error", c.noise.readout_error);
        b.get("correlation", c.noise.correlation);
        b.finish();
    }
    if (const json* pb = top.child("params")) {
        Block b(*pb, top.sub("params"), text);
        b.get("xi", c.xi);
        b.get("eta", c.eta);
        b.get("rounds", c.rounds);
        b.get("epochs", c.epochs);
        b.get("loss", c.loss);
        b.get("target_err", c.target_err);
        b.get("trials", c.trials);
        b.get("variant", c.variant);
        b.get("variant_param", c.variant_param);
        b.get("state", c.state);
        b.get("pauli", c.pauli);
        b.get("index", c.index);
        b.get("path", c.path);
        b.get("backend", c.backend);
        b.finish();
    }
    top.finish();
    if (!task.empty()) {
        if (!c.task.empty() && c.task != task) {
            top.fail({"task"}, "config is for task '" + c.task + "', not '" + task + "'");
        }
        c.task = task;
    }
    try {
        c.validate();
    } catch (const ConfigError& e) {
        std::vector<std::string> path;
        std::stringstream ss(e.field());
        for (std::string seg; std::getline(ss, seg, '.');) path.push_back(seg);
        const std::string msg = e.what();
        throw ConfigError(e.field(), line_of(text, path), msg.substr(msg.find(": ") + 2));
    }
    return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& task) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), task);
}

}  // namespace compshadow
