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
/// End-to-end runs behind the command-line subcommands: prepare the
/// mean-field state, evolve and measure, transform, refine, write files.

#include <chrono>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"

#include "qnetsim/config.hpp"
#include "qnetsim/csv.hpp"
#include "qnetsim/hubbard.hpp"
#include "qnetsim/measurement.hpp"
#include "qnetsim/oracle.hpp"
#include "qnetsim/spectral.hpp"
#include "qnetsim/state_prep.hpp"

namespace qnetsim {

inline constexpr const char *kVersion = "1.0.0";

struct PreparedState {
    StateVector phi{1};
    StateVector exact{1};
    MeanFieldResult mean_field;
    int steps = 0;
    double overlap = 1.0; // |<exact Slater|phi>|
};

/// Mean-field Slater determinant, prepared by Trotterized exp(i a^dag M a)
/// from the boot state or written directly (prep.method = exact).
inline PreparedState prepare_state(const RunConfig &c) {
    PreparedState p;
    p.mean_field = mean_field_solve(c.lattice);
    const int modes = c.lattice.num_modes();
    p.exact = exact_slater_state(p.mean_field.orbitals, p.mean_field.occupied_modes, modes);
    if (c.prep_method == "exact") {
        p.phi = p.exact;
        p.steps = 0;
    } else {
        p.steps = steps_for(c.dt1);
        const MatrixXc m = logm_unitary(p.mean_field.orbitals);
        p.phi = thouless_prepare(occupied_state(modes, p.mean_field.occupied_modes), m, p.steps, c.engine_kind());
    }
    p.overlap = std::abs(inner_product(p.exact, p.phi));
    return p;
}

inline std::filesystem::path ensure_output(const RunConfig &c) {
    std::error_code ec;
    std::filesystem::create_directories(c.output, ec);
    if (ec) {
        throw IoError("cannot create output directory " + c.output + ": " + ec.message());
    }
    return c.output;
}

inline nlohmann::json config_json(const RunConfig &c) {
    RunConfig copy = c;
    nlohmann::json j = nlohmann::json::object();
    for (const auto &k : config_keys(copy)) {
        j[k.name] = k.get();
    }
    return j;
}

inline void write_json(const std::filesystem::path &path, const nlohmann::json &j) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << j.dump(2) << '\n';
}

inline void write_spectrum_files(const std::filesystem::path &dir, const Spectrum &s, const std::vector<Peak> &peaks) {
    std::vector<std::size_t> order(s.size());
    for (std::size_t m = 0; m < s.size(); ++m) {
        order[m] = m;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.omega(a) < s.omega(b); });
    std::vector<std::vector<double>> rows;
    for (auto m : order) {
        rows.push_back({s.omega(m), s.bins[m].real(), s.bins[m].imag(), std::abs(s.bins[m])});
    }
    write_csv(dir / "spectrum.csv", {"omega", "re", "im", "abs"}, rows);
    rows.clear();
    for (const auto &p : peaks) {
        rows.push_back({p.lambda, p.weight, static_cast<double>(s.signed_bin(p.bin)), p.raw_magnitude, p.omega,
                        p.flagged ? 1.0 : 0.0});
    }
    write_csv(dir / "peaks.csv", {"lambda", "weight", "bin", "raw_magnitude", "omega", "flagged"}, rows);
}

/// Largest stride whose Nyquist window (-pi/tau, pi/tau] holds |<H>| + dH/sqrt(threshold).
/// Chebyshev's bound keeps the total weight outside that range below the
/// threshold, so nothing that aliases can pass as a peak.
inline std::size_t auto_stride(const StateVector &phi, const PauliSum &h, double dt2, double threshold,
                               std::size_t cap = 64) {
    const double mean = expectation(phi, h).real();
    const StateVector hphi = apply_sum(h, phi);
    double second = 0.0;
    for (const auto &a : hphi.amplitudes()) {
        second += std::norm(a);
    }
    const double sigma = std::sqrt(std::max(0.0, second - mean * mean));
    const double bound = std::abs(mean) + sigma / std::sqrt(threshold);
    const double s = std::floor(std::numbers::pi / (bound * dt2));
    return static_cast<std::size_t>(std::clamp(s, 1.0, static_cast<double>(cap)));
}

struct SpectrumRun {
    PreparedState prep;
    TimeSeries series;
    Spectrum spectrum;
    std::vector<Peak> peaks;
    std::size_t stride = 1;
    double wall_seconds = 0.0;
};

inline SpectrumRun run_spectrum(const RunConfig &c) {
    c.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SpectrumRun r;
    r.prep = prepare_state(c);
    Evolution evo{partition_bonds(c.lattice), c.dt2, c.order, c.engine_kind()};
    r.stride = c.stride > 0 ? c.stride
                            : auto_stride(r.prep.phi, build_hamiltonian(c.lattice), c.dt2, c.peak_threshold);
    r.series = spectrum_series(r.prep.phi, evo, c.samples, r.stride);
    if (c.mode == "sampled") {
        for (std::size_t j = 0; j < r.series.size(); ++j) {
            r.series.values[j] = sampled_expectation(r.series.values[j], c.shots, c.seed + j).value;
        }
    }
    r.spectrum = dfft(r.series);
    r.peaks = analyze(r.series, c.peak_threshold, c.refine, c.refinement());
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline SpectrumRun cmd_spectrum(const RunConfig &c) {
    SpectrumRun r = run_spectrum(c);
    const auto dir = ensure_output(c);
    write_timeseries(dir / "timeseries.csv", r.series);
    write_spectrum_files(dir, r.spectrum, r.peaks);
    nlohmann::json meta;
    meta["command"] = "spectrum";
    meta["version"] = kVersion;
    meta["config"] = config_json(c);
    meta["qubits"] = c.lattice.num_modes() + 1;
    meta["ancilla_qubit"] = c.lattice.num_modes() + 1;
    meta["stride"] = r.stride;
    meta["sample_spacing"] = r.series.dt;
    meta["frequency_resolution"] = r.spectrum.spacing();
    meta["prep_steps"] = r.prep.steps;
    meta["prep_overlap"] = r.prep.overlap;
    meta["mean_field"] = {{"energy", r.prep.mean_field.energy},
                          {"iterations", r.prep.mean_field.iterations},
                          {"residual", r.prep.mean_field.residual},
                          {"degenerate_shell", r.prep.mean_field.degenerate_shell}};
    meta["peaks"] = r.peaks.size();
    meta["wall_seconds"] = r.wall_seconds;
    meta["tolerances"] = {{"mean_field", 1e-10}, {"unitarity", 1e-10}, {"sector_leakage", 1e-10}};
    write_json(dir / "metadata.json", meta);
    return r;
}

struct OracleRun {
    SectorBasis basis;
    Eigensystem eig;
    Eigen::VectorXcd gamma;
};

/// Sector eigenvalues with weights |<Psi_n|phi>|^2 against the prepared state.
inline OracleRun cmd_oracle(const RunConfig &c, bool write = true) {
    c.validate();
    OracleRun r;
    const std::size_t dim = sector_dimension(c.lattice.num_sites(), c.lattice.n_up(), c.lattice.n_down());
    if (dim > kMaxSectorDim) {
        throw NumericGuardError("sector dimension " + std::to_string(dim) + " exceeds the dense limit " +
                                std::to_string(kMaxSectorDim));
    }
    r.basis = sector_basis(c.lattice, c.lattice.n_up(), c.lattice.n_down());
    r.eig = eigensystem(dense_hamiltonian(c.lattice, r.basis));
    PreparedState prep = prepare_state(c);
    r.gamma = overlaps(r.eig, sector_vector(prep.phi, r.basis));
    if (write) {
        const auto dir = ensure_output(c);
        std::vector<std::vector<double>> rows;
        for (Eigen::Index k = 0; k < r.eig.values.size(); ++k) {
            rows.push_back({static_cast<double>(k), r.eig.values[k], std::norm(r.gamma[k])});
        }
        write_csv(dir / "eigenvalues.csv", {"index", "lambda", "weight"}, rows);
        nlohmann::json meta;
        meta["command"] = "oracle";
        meta["version"] = kVersion;
        meta["config"] = config_json(c);
        meta["sector"] = {{"n_up", r.basis.n_up}, {"n_down", r.basis.n_down}, {"dimension", r.basis.size()}};
        write_json(dir / "metadata.json", meta);
    }
    return r;
}

struct OverlapPoint {
    int steps;
    double overlap;
};

/// Overlap of the Trotterized preparation with the exact Slater state for
/// step counts 1..check.max_steps.
inline std::vector<OverlapPoint> cmd_prepare_check(const RunConfig &c, bool write = true) {
    c.validate();
    MatrixXc b;
    std::vector<int> occupied;
    int modes = 0;
    if (c.check_system == "appendix") {
        b = plane_wave_basis4();
        occupied = {1, 2};
        modes = 4;
    } else {
        auto mf = mean_field_solve(c.lattice);
        b = mf.orbitals;
        occupied = mf.occupied_modes;
        modes = c.lattice.num_modes();
    }
    const StateVector exact = exact_slater_state(b, occupied, modes);
    std::vector<OverlapPoint> pts;
    if (c.prep_method == "exact") {
        pts.push_back({0, std::abs(inner_product(exact, exact))});
    } else {
        const MatrixXc m = logm_unitary(b);
        const StateVector boot = occupied_state(modes, occupied);
        for (int s = 1; s <= c.check_max_steps; ++s) {
            pts.push_back({s, std::abs(inner_product(exact, thouless_prepare(boot, m, s, c.engine_kind())))});
        }
    }
    if (write) {
        const auto dir = ensure_output(c);
        std::vector<std::vector<double>> rows;
        for (const auto &p : pts) {
            rows.push_back({static_cast<double>(p.steps), p.steps > 0 ? 1.0 / p.steps : 0.0, p.overlap});
        }
        write_csv(dir / "overlap.csv", {"steps", "dt1", "overlap"}, rows);
        nlohmann::json meta;
        meta["command"] = "prepare-check";
        meta["version"] = kVersion;
        meta["config"] = config_json(c);
        write_json(dir / "metadata.json", meta);
    }
    return pts;
}

/// Spectral analysis of an external (t, re, im) file.
inline std::vector<Peak> cmd_fft(const std::filesystem::path &input, const RunConfig &c) {
    if (!(c.peak_threshold > 0.0 && c.peak_threshold < 1.0)) {
        throw ConfigError("fft.peak_threshold: must lie in (0, 1)");
    }
    const TimeSeries s = read_timeseries(input);
    const auto peaks = analyze(s, c.peak_threshold, c.refine, c.refinement());
    const auto dir = ensure_output(c);
    write_spectrum_files(dir, dfft(s), peaks);
    nlohmann::json meta;
    meta["command"] = "fft";
    meta["version"] = kVersion;
    meta["input"] = input.string();
    meta["config"] = config_json(c);
    write_json(dir / "metadata.json", meta);
    return peaks;
}

} // namespace qnetsim
