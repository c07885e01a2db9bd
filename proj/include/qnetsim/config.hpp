// Copyright 2026 The qnetsim Authors
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

/// @file
/// Run configuration with dotted keys (section.key) and range validation.

#include <bit>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnetsim/hubbard.hpp"
#include "qnetsim/spectral.hpp"

namespace qnetsim {

/// Invalid or out-of-range configuration (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A request beyond a dense-size or numeric guard (exit code 3).
struct NumericGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File system or parse failure on input/output files (exit code 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    HubbardSpec lattice{};          // lattice.nx, lattice.ny, model.tx, model.ty, model.u
    double dt1 = 0.05;              // prep.dt1
    std::string prep_method = "trotter";
    double dt2 = 0.05;              // evolve.dt2
    int order = 2;
    std::size_t samples = 1024;
    std::size_t stride = 0;         // 0: chosen from the energy spread of the prepared state
    std::string engine = "pauli";
    std::string mode = "deterministic"; // measure.mode
    std::size_t shots = 1000;
    std::uint64_t seed = 12345;
    bool refine = true;              // fft.refine
    double peak_threshold = 0.02;
    std::string refine_method = "exact";
    std::string output = "out";      // output.directory
    std::string check_system = "appendix";
    int check_max_steps = 100;

    Engine engine_kind() const { return engine == "gates" ? Engine::Gates : Engine::Pauli; }
    Refinement refinement() const { return refine_method == "linearized" ? Refinement::Linearized : Refinement::ExactLog; }

    void validate() const {
        auto fail = [](const std::string &key, const std::string &why) { throw ConfigError(key + ": " + why); };
        if (lattice.nx < 1) fail("lattice.nx", "must be >= 1");
        if (lattice.ny < 1) fail("lattice.ny", "must be >= 1");
        if ((lattice.nx >= 3 && lattice.nx % 2) || (lattice.ny >= 3 && lattice.ny % 2)) {
            fail("lattice.nx/lattice.ny", "lengths above 2 must be even");
        }
        if (2 * lattice.nx * lattice.ny + 1 > kMaxStateQubits) {
            throw NumericGuardError("lattice: " + std::to_string(2 * lattice.nx * lattice.ny + 1) +
                                    " qubits exceed the state-vector limit of " + std::to_string(kMaxStateQubits));
        }
        if (!(lattice.u >= 0.0)) fail("model.u", "must be >= 0");
        if (!(dt1 > 0.0)) fail("prep.dt1", "must be > 0");
        if (prep_method != "trotter" && prep_method != "exact") fail("prep.method", "expected trotter|exact");
        if (!(dt2 > 0.0)) fail("evolve.dt2", "must be > 0");
        if (order != 1 && order != 2) fail("evolve.order", "expected 1|2");
        if (samples < 2 || !std::has_single_bit(samples)) fail("evolve.samples", "must be a power of two >= 2");
        if (engine != "pauli" && engine != "gates") fail("evolve.engine", "expected pauli|gates");
        if (mode != "deterministic" && mode != "sampled") fail("measure.mode", "expected deterministic|sampled");
        if (shots < 1) fail("measure.shots", "must be >= 1");
        if (!(peak_threshold > 0.0 && peak_threshold < 1.0)) fail("fft.peak_threshold", "must lie in (0, 1)");
        if (refine_method != "exact" && refine_method != "linearized") fail("fft.method", "expected exact|linearized");
        if (output.empty()) fail("output.directory", "must not be empty");
        if (check_system != "appendix" && check_system != "lattice") fail("check.system", "expected appendix|lattice");
        if (check_max_steps < 1) fail("check.max_steps", "must be >= 1");
    }
};

struct ConfigKey {
    std::string name;
    std::string help;
    std::function<void(const std::string &)> set;
    std::function<std::string()> get;
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T> T parse_number(const std::string &key, const std::string &text) {
    try {
        std::size_t used = 0;
        T v{};
        if constexpr (std::is_same_v<T, double>) {
            v = std::stod(text, &used);
        } else if constexpr (std::is_same_v<T, int>) {
            v = std::stoi(text, &used);
        } else {
            if (!text.empty() && text[0] == '-') {
                throw std::invalid_argument(text);
            }
            v = static_cast<T>(std::stoull(text, &used));
        }
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(key + ": cannot parse '" + text + "' as a number");
    }
}

} // namespace detail

/// Every configurable key, bound to `c`.
inline std::vector<ConfigKey> config_keys(RunConfig &c) {
    std::vector<ConfigKey> keys;
    auto num = [&keys](std::string name, std::string help, auto &field) {
        using T = std::decay_t<decltype(field)>;
        auto *f = &field;
        keys.push_back({name, std::move(help),
                        [f, name](const std::string &s) { *f = detail::parse_number<T>(name, s); },
                        [f]() {
                            if constexpr (std::is_same_v<T, double>) {
                                return detail::fmt17(*f);
                            } else {
                                return std::to_string(*f);
                            }
                        }});
    };
    auto str = [&keys](std::string name, std::string help, std::string &field) {
        auto *f = &field;
        keys.push_back({std::move(name), std::move(help), [f](const std::string &s) { *f = s; }, [f]() { return *f; }});
    };
    num("lattice.nx", "sites along x", c.lattice.nx);
    num("lattice.ny", "sites along y", c.lattice.ny);
    num("model.tx", "hopping along x", c.lattice.tx);
    num("model.ty", "hopping along y", c.lattice.ty);
    num("model.u", "on-site interaction", c.lattice.u);
    num("prep.dt1", "state-preparation Trotter step", c.dt1);
    str("prep.method", "trotter|exact", c.prep_method);
    num("evolve.dt2", "evolution Trotter step", c.dt2);
    num("evolve.order", "Trotter order 1|2", c.order);
    num("evolve.samples", "number of samples N (power of two)", c.samples);
    num("evolve.stride", "Trotter steps between samples (0 = automatic)", c.stride);
    str("evolve.engine", "pauli|gates", c.engine);
    str("measure.mode", "deterministic|sampled", c.mode);
    num("measure.shots", "shots per sample in sampled mode", c.shots);
    num("measure.seed", "random seed for sampled mode", c.seed);
    keys.push_back({"fft.refine", "refine peak locations (true|false)",
                    [&c](const std::string &s) {
                        if (s == "true" || s == "1" || s == "on") {
                            c.refine = true;
                        } else if (s == "false" || s == "0" || s == "off") {
                            c.refine = false;
                        } else {
                            throw ConfigError("fft.refine: expected true|false, got '" + s + "'");
                        }
                    },
                    [&c]() { return std::string(c.refine ? "true" : "false"); }});
    num("fft.peak_threshold", "peak threshold as a fraction of the maximum", c.peak_threshold);
    str("fft.method", "exact|linearized", c.refine_method);
    str("output.directory", "directory for output files", c.output);
    str("check.system", "appendix|lattice", c.check_system);
    num("check.max_steps", "largest step count in prepare-check", c.check_max_steps);
    return keys;
}

} // namespace qnetsim
