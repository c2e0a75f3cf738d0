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
//
// Coherent power gain, SIR gain, and the per-receiver coherent power factor
// beta. The point-to-point benchmark link is transmitter 0 -> receiver 0
// throughout (the source-destination link of stream 0).

#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "cobeam/scenario.hpp"

namespace cobeam {

using PhaseVector = std::vector<double>;      // one phase per transmitter, radians
using AmplitudeVector = std::vector<double>;  // one relative amplitude per transmitter

inline AmplitudeVector unit_amplitudes(int n) { return AmplitudeVector(static_cast<std::size_t>(n), 1.0); }

inline std::vector<int> all_indices(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

/// Received power of a single link with amplitude weight a and channel
/// amplitude h. Kept as one shared expression so ratios that should cancel
/// exactly do cancel exactly.
inline double link_power(double a, double h) { return (a * h) * (a * h); }

struct SignalParams {
    double amplitude = 1.0;  // common transmit amplitude, relative volts
    double period = 1.0;     // seconds
    void validate() const {
        if (!(amplitude > 0)) throw std::invalid_argument("signal amplitude must be > 0");
        if (!(period > 0)) throw std::invalid_argument("signal period must be > 0");
    }
};

namespace detail {

inline void check_dims(const ChannelMatrix& ch, const PhaseVector& phases, const AmplitudeVector& amps) {
    if (static_cast<int>(phases.size()) != ch.n_transmitters)
        throw std::invalid_argument("phase vector length must equal the transmitter count");
    if (static_cast<int>(amps.size()) != ch.n_transmitters)
        throw std::invalid_argument("amplitude vector length must equal the transmitter count");
    for (double a : amps)
        if (!(a > 0)) throw std::invalid_argument("amplitudes must be > 0");
}

}  // namespace detail

/// Per-receiver coherent power factor: the squared modulus of the complex sum
/// of the per-transmitter contributions a_n h_nm e^{i(theta_n + theta_nm)}
/// over the given transmitter subset. A single-transmitter subset reduces to
/// the plain link power (no trig involved).
inline double beta(const ChannelMatrix& ch, const PhaseVector& phases, const AmplitudeVector& amps,
                   int receiver, std::span<const int> transmitters) {
    detail::check_dims(ch, phases, amps);
    if (transmitters.empty()) throw std::invalid_argument("beta: transmitter subset is empty");
    if (transmitters.size() == 1) {
        const int n = transmitters[0];
        return link_power(amps[n], ch.gain(n, receiver));
    }
    std::complex<double> sum{0.0, 0.0};
    for (int n : transmitters) {
        const double amp = amps[n] * ch.gain(n, receiver);
        const double ph = phases[n] + ch.phase(n, receiver);
        sum += std::complex<double>(amp * std::cos(ph), amp * std::sin(ph));
    }
    return std::norm(sum);
}

inline double beta(const ChannelMatrix& ch, const PhaseVector& phases, const AmplitudeVector& amps,
                   int receiver) {
    std::vector<int> all(static_cast<std::size_t>(ch.n_transmitters));
    std::iota(all.begin(), all.end(), 0);
    return beta(ch, phases, amps, receiver, all);
}

/// Upper bound N^2 * M on the coherent power gain (equality needs equal link
/// powers and phase coherence at every receiver).
inline double upper_bound(int n_transmitters, int n_receivers) {
    if (n_transmitters < 1 || n_receivers < 1)
        throw std::invalid_argument("upper_bound: counts must be >= 1");
    return static_cast<double>(n_transmitters) * n_transmitters * n_receivers;
}

struct GainReport {
    double gain = 0.0;
    std::vector<double> per_receiver_beta;
    double upper_bound = 0.0;
};

/// Coherent power gain: total received power over all receivers divided by
/// the power of the benchmark point-to-point link (transmitter 0,
/// receiver 0).
inline GainReport coherent_gain(const ChannelMatrix& ch, const PhaseVector& phases,
                                const AmplitudeVector& amps) {
    detail::check_dims(ch, phases, amps);
    const double benchmark = link_power(amps[0], ch.gain(0, 0));
    if (!(benchmark > 0))
        throw std::invalid_argument("coherent_gain: benchmark link has zero power");
    GainReport report;
    report.per_receiver_beta.reserve(ch.n_receivers);
    double total = 0.0;
    for (int m = 0; m < ch.n_receivers; ++m) {
        const double b = beta(ch, phases, amps, m);
        report.per_receiver_beta.push_back(b);
        total += b;
    }
    report.gain = total / benchmark;
    report.upper_bound = upper_bound(ch.n_transmitters, ch.n_receivers);
    return report;
}

inline GainReport coherent_gain(const ChannelMatrix& ch, const PhaseVector& phases) {
    return coherent_gain(ch, phases, unit_amplitudes(ch.n_transmitters));
}

/// Numerically integrate the received power at one receiver over a full
/// signal period (composite Simpson). Validates the closed form
/// (A^2 T / 2) * beta_m independently of it. All transmitters use the common
/// amplitude from `signal`.
inline double period_energy_numeric(const ChannelMatrix& ch, const PhaseVector& phases,
                                    const SignalParams& signal, int receiver, int steps) {
    signal.validate();
    if (static_cast<int>(phases.size()) != ch.n_transmitters)
        throw std::invalid_argument("phase vector length must equal the transmitter count");
    if (steps < 1000) throw std::invalid_argument("period_energy_numeric: steps must be >= 1000");
    const int n_intervals = steps + (steps % 2);  // Simpson needs an even count

    const int n_tx = ch.n_transmitters;
    std::vector<double> amp(n_tx), ph(n_tx);
    for (int n = 0; n < n_tx; ++n) {
        amp[n] = signal.amplitude * ch.gain(n, receiver);
        ph[n] = phases[n] + ch.phase(n, receiver);
    }
    auto integrand = [&](double t) {
        const double wt = two_pi * t / signal.period;
        double s = 0.0;
        for (int n = 0; n < n_tx; ++n) s += amp[n] * std::sin(wt + ph[n]);
        return s * s;
    };

    const double h = signal.period / n_intervals;
    double acc = integrand(0.0) + integrand(signal.period);
    for (int i = 1; i < n_intervals; ++i) acc += integrand(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Disjoint transmitter/receiver groups for K concurrent data streams.
/// Stream k owns source s_k (a transmitter) and destination d_k (a receiver),
/// both members of their respective sets.
struct StreamAssignment {
    struct Stream {
        int source = 0;
        int destination = 0;
        std::vector<int> transmitters;  // includes source, ascending
        std::vector<int> receivers;     // includes destination, ascending
    };
    std::vector<Stream> streams;

    int stream_count() const { return static_cast<int>(streams.size()); }

    void validate(int n_transmitters, int n_receivers) const {
        if (streams.empty()) throw std::invalid_argument("assignment has no streams");
        std::vector<char> tx_seen(static_cast<std::size_t>(n_transmitters), 0);
        std::vector<char> rx_seen(static_cast<std::size_t>(n_receivers), 0);
        for (const Stream& s : streams) {
            if (s.transmitters.empty() || s.receivers.empty())
                throw std::invalid_argument("stream has an empty transmitter or receiver set");
            bool src = false, dst = false;
            for (int n : s.transmitters) {
                if (n < 0 || n >= n_transmitters) throw std::invalid_argument("transmitter index out of range");
                if (tx_seen[n]) throw std::invalid_argument("transmitter assigned to two streams");
                tx_seen[n] = 1;
                src = src || n == s.source;
            }
            for (int m : s.receivers) {
                if (m < 0 || m >= n_receivers) throw std::invalid_argument("receiver index out of range");
                if (rx_seen[m]) throw std::invalid_argument("receiver assigned to two streams");
                rx_seen[m] = 1;
                dst = dst || m == s.destination;
            }
            if (!src) throw std::invalid_argument("source is not a member of its transmitter set");
            if (!dst) throw std::invalid_argument("destination is not a member of its receiver set");
        }
    }
};

/// Coherent numerator of one stream: the beta sum over the stream's receivers
/// restricted to the stream's own transmitters.
inline double rho(const ChannelMatrix& ch, const PhaseVector& phases, const AmplitudeVector& amps,
                  const StreamAssignment& assignment, int stream) {
    if (stream < 0 || stream >= assignment.stream_count())
        throw std::invalid_argument("rho: stream index out of range");
    const auto& s = assignment.streams[stream];
    if (s.transmitters.empty() || s.receivers.empty())
        throw std::invalid_argument("rho: stream has an empty transmitter or receiver set");
    double total = 0.0;
    for (int m : s.receivers) total += beta(ch, phases, amps, m, s.transmitters);
    return total;
}

/// SIR gain of one stream: its coherent SIR divided by its SIR when every
/// stream collapses to the bare source->destination link. Needs at least two
/// streams; with one stream there is no interference and the power gain is
/// the right measure.
inline double sir_gain(const ChannelMatrix& ch, const PhaseVector& phases,
                       const AmplitudeVector& amps, const StreamAssignment& assignment,
                       int stream) {
    const int n_streams = assignment.stream_count();
    if (n_streams < 2)
        throw std::invalid_argument("sir_gain needs >= 2 streams; use coherent_gain for one stream");
    if (stream < 0 || stream >= n_streams) throw std::invalid_argument("sir_gain: stream index out of range");
    detail::check_dims(ch, phases, amps);

    const auto& sk = assignment.streams[stream];
    const int dest = sk.destination;

    // Interference at the destination in the point-to-point baseline.
    double baseline_interference = 0.0;
    for (int l = 0; l < n_streams; ++l) {
        if (l == stream) continue;
        const int src = assignment.streams[l].source;
        baseline_interference += link_power(amps[src], ch.gain(src, dest));
    }
    // Interference received by the stream's whole receiver group.
    double interference = 0.0;
    for (int m : sk.receivers) {
        for (int l = 0; l < n_streams; ++l) {
            if (l == stream) continue;
            for (int n : assignment.streams[l].transmitters)
                interference += link_power(amps[n], ch.gain(n, m));
        }
    }
    if (!(interference > 0))
        throw std::invalid_argument("sir_gain: zero interference, the SIR baseline is undefined");

    const double source_power = link_power(amps[sk.source], ch.gain(sk.source, dest));
    if (!(source_power > 0)) throw std::invalid_argument("sir_gain: source-destination link has zero power");

    return (baseline_interference * rho(ch, phases, amps, assignment, stream)) /
           (source_power * interference);
}

enum class Objective { Min, Average };

/// Scalarize per-stream gains. Min is the form used for all reported tables;
/// Average is available behind the selector.
inline double objective(const std::vector<double>& gains, Objective kind = Objective::Min) {
    if (gains.empty()) throw std::invalid_argument("objective: no gains");
    if (kind == Objective::Average)
        return std::accumulate(gains.begin(), gains.end(), 0.0) / static_cast<double>(gains.size());
    return *std::min_element(gains.begin(), gains.end());
}

struct SirReport {
    std::vector<double> stream_gains;  // G_k
    std::vector<double> stream_rhos;   // coherent numerators
    double objective = 0.0;
};

inline SirReport sir_report(const ChannelMatrix& ch, const PhaseVector& phases,
                            const AmplitudeVector& amps, const StreamAssignment& assignment,
                            Objective kind = Objective::Min) {
    SirReport report;
    const int n_streams = assignment.stream_count();
    report.stream_gains.reserve(n_streams);
    report.stream_rhos.reserve(n_streams);
    for (int k = 0; k < n_streams; ++k) {
        report.stream_gains.push_back(sir_gain(ch, phases, amps, assignment, k));
        report.stream_rhos.push_back(rho(ch, phases, amps, assignment, k));
    }
    report.objective = objective(report.stream_gains, kind);
    return report;
}

}  // namespace cobeam
