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
/// Discrete Fourier analysis of sampled amplitudes F(t_j), t_j = j dt.
///
/// The transform is F~(Omega_m) = dt sum_j F(t_j) exp(+i Omega_m t_j) with
/// Omega_m = 2 pi m / (N dt), so a component exp(-i lambda t) peaks near
/// Omega = lambda. Frequencies are reported in (-pi/dt, pi/dt].

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qnetsim/pauli.hpp"

namespace qnetsim {

struct TimeSeries {
    double dt = 1.0;
    std::vector<cplx> values;

    std::size_t size() const { return values.size(); }
    double time(std::size_t j) const { return static_cast<double>(j) * dt; }

    void validate() const {
        if (!(dt > 0.0)) {
            throw std::domain_error("sample spacing must be positive");
        }
        if (values.size() < 2 || !std::has_single_bit(values.size())) {
            throw std::domain_error("sample count must be a power of two >= 2, got " +
                                    std::to_string(values.size()));
        }
    }
};

struct Spectrum {
    double dt = 1.0;
    std::vector<cplx> bins;

    std::size_t size() const { return bins.size(); }

    /// Signed bin number in (-N/2, N/2].
    long signed_bin(std::size_t m) const {
        const long n = static_cast<long>(bins.size());
        const long k = static_cast<long>(m % bins.size());
        return k > n / 2 ? k - n : k;
    }

    double omega(std::size_t m) const {
        return 2.0 * std::numbers::pi * static_cast<double>(signed_bin(m)) /
               (static_cast<double>(bins.size()) * dt);
    }

    double spacing() const { return 2.0 * std::numbers::pi / (static_cast<double>(bins.size()) * dt); }
};

namespace detail {

/// In-place radix-2 transform, out_m = sum_j in_j exp(sign i 2 pi m j / N).
inline void fft_inplace(std::vector<cplx> &a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx w = std::polar(1.0, ang * static_cast<double>(k));
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

} // namespace detail

inline Spectrum dfft(const TimeSeries &series) {
    series.validate();
    Spectrum s{series.dt, series.values};
    detail::fft_inplace(s.bins, +1);
    for (auto &b : s.bins) {
        b *= series.dt;
    }
    return s;
}

inline TimeSeries inverse_dfft(const Spectrum &spectrum) {
    TimeSeries t{spectrum.dt, spectrum.bins};
    t.validate();
    detail::fft_inplace(t.values, -1);
    const double scale = 1.0 / (static_cast<double>(t.values.size()) * spectrum.dt);
    for (auto &v : t.values) {
        v *= scale;
    }
    return t;
}

/// Row-major grid g[a][b] sampled at (a dt1, b dt2).
struct Grid2 {
    double dt1 = 1.0;
    double dt2 = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::vector<cplx> values;

    cplx &at(std::size_t a, std::size_t b) { return values[a * n2 + b]; }
    cplx at(std::size_t a, std::size_t b) const { return values[a * n2 + b]; }
};

/// dt1 dt2 sum g(t', t'') exp(+i Omega' t') exp(-i Omega'' t''): a term
/// exp(-i l t') exp(+i l' t'') peaks at (l, l').
inline Grid2 dfft2(const Grid2 &g) {
    if (g.n1 < 2 || g.n2 < 2 || !std::has_single_bit(g.n1) || !std::has_single_bit(g.n2) ||
        g.values.size() != g.n1 * g.n2) {
        throw std::domain_error("2D transform needs power-of-two grid sides");
    }
    Grid2 out = g;
    std::vector<cplx> line;
    for (std::size_t a = 0; a < g.n1; ++a) {
        line.assign(out.values.begin() + static_cast<long>(a * g.n2),
                    out.values.begin() + static_cast<long>((a + 1) * g.n2));
        detail::fft_inplace(line, -1);
        std::copy(line.begin(), line.end(), out.values.begin() + static_cast<long>(a * g.n2));
    }
    line.resize(g.n1);
    for (std::size_t b = 0; b < g.n2; ++b) {
        for (std::size_t a = 0; a < g.n1; ++a) {
            line[a] = out.at(a, b);
        }
        detail::fft_inplace(line, +1);
        for (std::size_t a = 0; a < g.n1; ++a) {
            out.at(a, b) = line[a] * g.dt1 * g.dt2;
        }
    }
    return out;
}

/// Strict local maxima of |F~| (cyclic neighbours) above threshold * max,
/// ordered by frequency.
inline std::vector<std::size_t> find_peaks(const Spectrum &s, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::domain_error("peak threshold must lie in (0, 1)");
    }
    const std::size_t n = s.size();
    std::vector<double> mag(n);
    double top = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        mag[m] = std::abs(s.bins[m]);
        top = std::max(top, mag[m]);
    }
    std::vector<std::size_t> out;
    if (top == 0.0) {
        return out;
    }
    for (std::size_t m = 0; m < n; ++m) {
        const double left = mag[(m + n - 1) % n];
        const double right = mag[(m + 1) % n];
        if (mag[m] > left && mag[m] >= right && mag[m] >= threshold * top) {
            out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return s.omega(a) < s.omega(b); });
    return out;
}

enum class Refinement : std::uint8_t { ExactLog, Linearized };

struct Peak {
    double lambda = 0.0;
    double weight = 0.0;
    std::size_t bin = 0;
    double omega = 0.0;
    double raw_magnitude = 0.0;
    bool refined = false;
    bool flagged = false; // neighbour not smaller than the peak: refinement skipped
};

/// |dt sum_j exp(i x j)| for N samples.
inline double single_mode_kernel(double x, std::size_t n, double dt) {
    const double den = std::sin(x / 2.0);
    if (std::abs(den) < 1e-12) {
        return static_cast<double>(n) * dt;
    }
    return std::abs(std::sin(x * static_cast<double>(n) / 2.0) / den) * dt;
}

/// Sub-grid eigenvalue from the ratio r = F~(Omega_n)/F~(Omega_m) with the
/// larger neighbour n = m +- 1. ExactLog inverts the single-mode sum,
/// exp(i x) = (1 - r) / (1 - r e^{i delta}); Linearized keeps first order,
/// d lambda = Re[i r (e^{i delta} - 1)] / dt.
inline Peak refine_eigenvalue(const Spectrum &s, std::size_t m, Refinement method = Refinement::ExactLog) {
    const std::size_t n = s.size();
    if (m >= n) {
        throw std::domain_error("peak bin outside the spectrum");
    }
    Peak p;
    p.bin = m;
    p.omega = s.omega(m);
    p.raw_magnitude = std::abs(s.bins[m]);
    p.lambda = p.omega;
    const std::size_t up = (m + 1) % n, down = (m + n - 1) % n;
    const bool use_up = std::abs(s.bins[up]) >= std::abs(s.bins[down]);
    const std::size_t nb = use_up ? up : down;
    const double delta = (use_up ? 1.0 : -1.0) * 2.0 * std::numbers::pi / static_cast<double>(n);
    if (p.raw_magnitude == 0.0 || std::abs(s.bins[nb]) >= p.raw_magnitude) {
        p.flagged = true;
        p.weight = p.raw_magnitude / (static_cast<double>(n) * s.dt);
        return p;
    }
    const cplx r = s.bins[nb] / s.bins[m];
    const cplx e = std::polar(1.0, delta);
    if (method == Refinement::ExactLog) {
        const cplx w = (1.0 - r) / (1.0 - r * e);
        p.lambda = p.omega - std::arg(w) / s.dt;
    } else {
        p.lambda = p.omega + (cplx{0.0, 1.0} * r * (e - 1.0)).real() / s.dt;
    }
    p.refined = true;
    p.weight = p.raw_magnitude / single_mode_kernel((p.omega - p.lambda) * s.dt, n, s.dt);
    return p;
}

/// Peaks of dfft(series), refined unless `refine` is false. A refined
/// location more than one bin away from its peak bin means the local maximum
/// is a side lobe of a stronger mode, and the peak is dropped.
inline std::vector<Peak> analyze(const TimeSeries &series, double threshold, bool refine = true,
                                 Refinement method = Refinement::ExactLog) {
    const Spectrum s = dfft(series);
    std::vector<Peak> out;
    for (auto m : find_peaks(s, threshold)) {
        if (refine) {
            Peak p = refine_eigenvalue(s, m, method);
            if (p.refined && std::abs(p.lambda - p.omega) > s.spacing()) {
                continue;
            }
            out.push_back(p);
        } else {
            Peak p;
            p.bin = m;
            p.omega = p.lambda = s.omega(m);
            p.raw_magnitude = std::abs(s.bins[m]);
            p.weight = p.raw_magnitude / (static_cast<double>(s.size()) * s.dt);
            out.push_back(p);
        }
    }
    return out;
}

/// (1/N) sum_j F(t_j) exp(i lambda t_j): the amplitude of exp(-i lambda t).
inline cplx component_at(const TimeSeries &series, double lambda) {
    cplx sum{};
    for (std::size_t j = 0; j < series.size(); ++j) {
        sum += series.values[j] * std::polar(1.0, lambda * series.time(j));
    }
    return sum / static_cast<double>(series.size());
}

/// Least-squares amplitudes c_k with F(t) ~ sum_k c_k exp(-i lambda_k t).
inline std::vector<cplx> fit_components(const TimeSeries &series, const std::vector<double> &lambdas) {
    const auto rows = static_cast<Eigen::Index>(series.size());
    const auto cols = static_cast<Eigen::Index>(lambdas.size());
    Eigen::MatrixXcd a(rows, cols);
    Eigen::VectorXcd f(rows);
    for (Eigen::Index j = 0; j < rows; ++j) {
        f[j] = series.values[static_cast<std::size_t>(j)];
        for (Eigen::Index k = 0; k < cols; ++k) {
            a(j, k) = std::polar(1.0, -lambdas[static_cast<std::size_t>(k)] * series.time(static_cast<std::size_t>(j)));
        }
    }
    Eigen::VectorXcd c = a.colPivHouseholderQr().solve(f);
    return {c.data(), c.data() + c.size()};
}

/// (1/(N1 N2)) sum g(t', t'') exp(i l t') exp(-i l' t'').
inline cplx component_at(const Grid2 &g, double lambda1, double lambda2) {
    cplx sum{};
    for (std::size_t a = 0; a < g.n1; ++a) {
        const cplx ea = std::polar(1.0, lambda1 * g.dt1 * static_cast<double>(a));
        for (std::size_t b = 0; b < g.n2; ++b) {
            sum += g.at(a, b) * ea * std::polar(1.0, -lambda2 * g.dt2 * static_cast<double>(b));
        }
    }
    return sum / static_cast<double>(g.n1 * g.n2);
}

} // namespace qnetsim
