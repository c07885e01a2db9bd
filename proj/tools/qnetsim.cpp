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

// qnetsim: spectrum, prepare-check, oracle and fft subcommands.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "qnetsim/pipeline.hpp"

namespace {

using namespace qnetsim;

void apply_config_file(const std::string &path, std::vector<ConfigKey> &keys) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path);
    }
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_config(in);
    } catch (const CLI::Error &e) {
        throw ConfigError(path + ": " + e.what());
    }
    for (const auto &item : items) {
        if (item.name == "++" || item.name == "--") {
            continue; // section markers
        }
        const std::string name = item.fullname();
        auto it = std::find_if(keys.begin(), keys.end(), [&](const ConfigKey &k) { return k.name == name; });
        if (it == keys.end()) {
            throw ConfigError(path + ": unknown key " + name);
        }
        if (item.inputs.size() != 1) {
            throw ConfigError(path + ": key " + name + " needs exactly one value");
        }
        it->set(item.inputs.front());
    }
}

void print_peaks(const std::vector<Peak> &peaks) {
    std::printf("%-22s %-12s\n", "lambda", "weight");
    for (const auto &p : peaks) {
        std::printf("%-22.12f %-12.6f\n", p.lambda, p.weight);
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hubbard-model spectra from a simulated Hadamard-test circuit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_path;
    app.add_option("-c,--config", config_path, "INI configuration file ([section] key = value)");

    RunConfig cfg;
    auto keys = config_keys(cfg);
    std::map<std::string, std::string> overrides;
    for (const auto &k : keys) {
        app.add_option("--" + k.name, overrides[k.name], k.help)->default_str(k.get());
    }

    auto *spectrum = app.add_subcommand("spectrum", "prepare, evolve, measure, transform and refine");
    auto *prep = app.add_subcommand("prepare-check", "overlap of the Trotterized preparation versus step count");
    auto *oracle = app.add_subcommand("oracle", "exact sector eigenvalues and weights");
    auto *fft = app.add_subcommand("fft", "spectral analysis of an existing t,re,im file");
    std::string input;
    fft->add_option("-i,--input", input, "time-series CSV")->required();
    for (auto *sub : {spectrum, prep, oracle, fft}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            apply_config_file(config_path, keys);
        }
        for (const auto &k : keys) {
            if (app.count("--" + k.name) > 0) {
                k.set(overrides[k.name]);
            }
        }
        if (*spectrum) {
            auto r = cmd_spectrum(cfg);
            std::printf("qubits %d, prep overlap %.10f, stride %zu, grid %.5f, wall %.2f s\n",
                        cfg.lattice.num_modes() + 1, r.prep.overlap, r.stride, r.spectrum.spacing(), r.wall_seconds);
            print_peaks(r.peaks);
        } else if (*prep) {
            for (const auto &p : cmd_prepare_check(cfg)) {
                std::printf("%4d %.12f\n", p.steps, p.overlap);
            }
        } else if (*oracle) {
            auto r = cmd_oracle(cfg);
            for (Eigen::Index k = 0; k < r.eig.values.size(); ++k) {
                const double w = std::norm(r.gamma[k]);
                if (w >= cfg.peak_threshold) {
                    std::printf("%-22.12f %-12.6f\n", r.eig.values[k], w);
                }
            }
        } else if (*fft) {
            print_peaks(cmd_fft(input, cfg));
        }
        std::printf("output written to %s\n", cfg.output.c_str());
    } catch (const ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const NumericGuardError &e) {
        std::fprintf(stderr, "numeric guard: %s\n", e.what());
        return 3;
    } catch (const ConvergenceError &e) {
        std::fprintf(stderr, "numeric guard: %s\n", e.what());
        return 3;
    } catch (const std::length_error &e) {
        std::fprintf(stderr, "numeric guard: %s\n", e.what());
        return 3;
    } catch (const IoError &e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
