// SPDX-License-Identifier: Apache-2.0
//
// cobeam -- simulation and optimization toolkit for distributed coherent
// group communications
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cobeam/rng.hpp"

namespace cobeam {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Wrap an angle into [0, 2*pi).
inline double normalize_phase(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0.0) y += two_pi;
    if (y >= two_pi) y = 0.0;
    return y;
}

enum class ChannelModel {
    InverseSquare,  // power gain d^-2
    FreeSpace,      // Friis free-space propagation
    TwoRay,         // free space below the crossover distance, d^-4 beyond
};

inline std::string_view to_string(ChannelModel m) {
    switch (m) {
        case ChannelModel::InverseSquare: return "inverse_square";
        case ChannelModel::FreeSpace: return "free_space";
        case ChannelModel::TwoRay: return "two_ray";
    }
    throw std::invalid_argument("unknown channel model");
}

inline ChannelModel channel_model_from_string(std::string_view s) {
    if (s == "inverse_square") return ChannelModel::InverseSquare;
    if (s == "free_space") return ChannelModel::FreeSpace;
    if (s == "two_ray") return ChannelModel::TwoRay;
    throw std::invalid_argument("unknown channel model '" + std::string(s) +
                                "' (expected inverse_square, free_space or two_ray)");
}

/// Geometry and propagation parameters of one transmitter-group /
/// receiver-group scenario.
struct ScenarioConfig {
    int n_transmitters = 1;              // N
    int n_receivers = 1;                 // M
    int n_streams = 1;                   // K
    double inter_group_distance = 1000;  // D, meters between the group anchors
    double group_radius = 10;            // r, meters
    double wavelength = 0.125;           // meters
    ChannelModel channel_model = ChannelModel::InverseSquare;
    double antenna_gain_tx = 1.0;
    double antenna_gain_rx = 1.0;
    double antenna_height_tx = 0.5;  // meters, two-ray model only
    double antenna_height_rx = 0.5;  // meters, two-ray model only
    std::uint64_t seed = 1;

    void validate() const {
        if (n_transmitters < 1) throw std::invalid_argument("n_transmitters must be >= 1");
        if (n_receivers < 1) throw std::invalid_argument("n_receivers must be >= 1");
        if (n_streams < 1) throw std::invalid_argument("n_streams must be >= 1");
        if (n_streams > std::min(n_transmitters, n_receivers))
            throw std::invalid_argument("n_streams must be <= min(n_transmitters, n_receivers)");
        if (!(inter_group_distance > 0)) throw std::invalid_argument("inter_group_distance must be > 0");
        if (!(group_radius > 0)) throw std::invalid_argument("group_radius must be > 0");
        if (!(wavelength > 0)) throw std::invalid_argument("wavelength must be > 0");
        if (!(antenna_gain_tx > 0) || !(antenna_gain_rx > 0))
            throw std::invalid_argument("antenna gains must be > 0");
        if (!(antenna_height_tx > 0) || !(antenna_height_rx > 0))
            throw std::invalid_argument("antenna heights must be > 0");
    }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Node positions for one scenario draw. Transmitter 0 anchors its group at
/// the origin; receiver 0 anchors its group at (D, 0).
struct NodeLayout {
    std::vector<Vec2> transmitters;
    std::vector<Vec2> receivers;
};

// Layout shape. Helper nodes trail their cluster head along the link axis
// (longitudinal extent kTrailFraction * r, away from the peer group) with
// lateral jitter of +-kLateralFraction * r, which keeps every node within r
// of its head. Multi-stream scenarios place one such cluster per stream,
// kClusterGapFactor * r apart laterally, so "closest head" is meaningful.
constexpr double kTrailFraction = 0.8;
constexpr double kLateralFraction = 0.3;
constexpr double kClusterGapFactor = 4.0;

/// Draw node positions. Stream k (k = 0..K-1) is anchored by transmitter k at
/// (0, k*gap) and receiver k at (D, k*gap); those anchors are the stream
/// sources and destinations. Remaining nodes are dealt round-robin to the
/// clusters and drawn uniformly over their cluster's trail strip: transmitter
/// offsets x in (-0.8r, 0], receiver offsets x in [0, 0.8r), both with y
/// jitter in (-0.3r, 0.3r). Draw order: transmitters K..N-1, then receivers
/// K..M-1, two uniforms each.
inline NodeLayout place_nodes(const ScenarioConfig& config, Rng& rng) {
    config.validate();
    const double trail = kTrailFraction * config.group_radius;
    const double lateral = kLateralFraction * config.group_radius;
    const double gap = kClusterGapFactor * config.group_radius;
    const int n_streams = config.n_streams;

    NodeLayout layout;
    layout.transmitters.reserve(config.n_transmitters);
    layout.receivers.reserve(config.n_receivers);

    for (int n = 0; n < config.n_transmitters; ++n) {
        if (n < n_streams) {
            layout.transmitters.push_back(Vec2{0.0, n * gap});
            continue;
        }
        const int home = (n - n_streams) % n_streams;
        const double x = -trail * rng.uniform();
        const double y = lateral * (2.0 * rng.uniform() - 1.0);
        layout.transmitters.push_back(Vec2{x, home * gap + y});
    }
    const double d = config.inter_group_distance;
    for (int m = 0; m < config.n_receivers; ++m) {
        if (m < n_streams) {
            layout.receivers.push_back(Vec2{d, m * gap});
            continue;
        }
        const int home = (m - n_streams) % n_streams;
        const double x = trail * rng.uniform();
        const double y = lateral * (2.0 * rng.uniform() - 1.0);
        layout.receivers.push_back(Vec2{d + x, home * gap + y});
    }
    return layout;
}

/// Crossover distance of the two-ray model.
inline double crossover_distance(const ScenarioConfig& config) {
    return 4.0 * std::numbers::pi * config.antenna_height_tx * config.antenna_height_rx /
           config.wavelength;
}

/// Power gain of a link of length d under the configured model.
inline double channel_gain(double d, const ScenarioConfig& config) {
    if (!(d > 0)) throw std::invalid_argument("channel_gain: distance must be > 0");
    switch (config.channel_model) {
        case ChannelModel::InverseSquare:
            return 1.0 / (d * d);
        case ChannelModel::FreeSpace: {
            const double q = config.wavelength / (4.0 * std::numbers::pi * d);
            return config.antenna_gain_tx * config.antenna_gain_rx * q * q;
        }
        case ChannelModel::TwoRay: {
            if (d < crossover_distance(config)) {
                const double q = config.wavelength / (4.0 * std::numbers::pi * d);
                return config.antenna_gain_tx * config.antenna_gain_rx * q * q;
            }
            const double hh = config.antenna_height_tx * config.antenna_height_rx;
            return config.antenna_gain_tx * config.antenna_gain_rx * (hh * hh) / (d * d * d * d);
        }
    }
    throw std::invalid_argument("unknown channel model");
}

/// Phase shift accumulated over a link of length d: 2*pi*frac(d/lambda).
inline double phase_shift(double d, double wavelength) {
    if (!(d > 0)) throw std::invalid_argument("phase_shift: distance must be > 0");
    if (!(wavelength > 0)) throw std::invalid_argument("phase_shift: wavelength must be > 0");
    const double cycles = d / wavelength;
    double p = two_pi * (cycles - std::floor(cycles));
    if (p >= two_pi) p = 0.0;  // frac can round up to 1
    return p;
}

/// Per-link amplitude gains and phase shifts between every transmitter and
/// every receiver. gains[n][m] is the amplitude (square root of the power
/// gain); the power gain is gains[n][m]^2.
struct ChannelMatrix {
    int n_transmitters = 0;
    int n_receivers = 0;
    std::vector<double> gains;   // row-major [n * n_receivers + m]
    std::vector<double> phases;  // radians in [0, 2*pi)

    ChannelMatrix() = default;
    ChannelMatrix(int n_tx, int n_rx)
        : n_transmitters(n_tx),
          n_receivers(n_rx),
          gains(static_cast<std::size_t>(n_tx) * n_rx, 0.0),
          phases(static_cast<std::size_t>(n_tx) * n_rx, 0.0) {
        if (n_tx < 1 || n_rx < 1) throw std::invalid_argument("ChannelMatrix: dimensions must be >= 1");
    }

    double gain(int n, int m) const { return gains[index(n, m)]; }
    double phase(int n, int m) const { return phases[index(n, m)]; }
    double& gain(int n, int m) { return gains[index(n, m)]; }
    double& phase(int n, int m) { return phases[index(n, m)]; }

    std::size_t index(int n, int m) const {
        if (n < 0 || n >= n_transmitters) throw std::out_of_range("transmitter index out of range");
        if (m < 0 || m >= n_receivers) throw std::out_of_range("receiver index out of range");
        return static_cast<std::size_t>(n) * n_receivers + m;
    }
};

/// Build the channel matrix for a layout: amplitude sqrt(channel_gain(d)) and
/// phase phase_shift(d) per link. Coincident transmitter/receiver pairs are
/// rejected (zero distance has no finite gain).
inline ChannelMatrix build_channels(const NodeLayout& layout, const ScenarioConfig& config) {
    if (layout.transmitters.empty() || layout.receivers.empty())
        throw std::invalid_argument("build_channels: layout must contain nodes");
    ChannelMatrix ch(static_cast<int>(layout.transmitters.size()),
                     static_cast<int>(layout.receivers.size()));
    for (int n = 0; n < ch.n_transmitters; ++n) {
        for (int m = 0; m < ch.n_receivers; ++m) {
            const double d = distance(layout.transmitters[n], layout.receivers[m]);
            if (!(d > 0))
                throw std::invalid_argument("build_channels: transmitter " + std::to_string(n + 1) +
                                            " and receiver " + std::to_string(m + 1) +
                                            " are coincident");
            ch.gain(n, m) = std::sqrt(channel_gain(d, config));
            ch.phase(n, m) = phase_shift(d, config.wavelength);
        }
    }
    return ch;
}

}  // namespace cobeam
