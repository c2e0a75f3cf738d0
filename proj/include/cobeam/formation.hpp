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
// Network formation: assignment of pooled transmitters/receivers to the K
// data streams, plus the joint formation x beamforming protocols. By
// convention sources are transmitters 0..K-1 and destinations are receivers
// 0..K-1.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cobeam/beamforming.hpp"
#include "cobeam/gain.hpp"
#include "cobeam/rng.hpp"
#include "cobeam/scenario.hpp"

namespace cobeam {

enum class FormationPolicy { Random, DistanceBased, Exhaustive };

/// One of the six joint protocols: {random, distance-based} formation times
/// {RB, RT, BT} in-group beamforming.
struct JointProtocol {
    FormationPolicy formation = FormationPolicy::Random;
    BeamProtocol beam = BeamProtocol::RB;

    void validate() const {
        if (formation == FormationPolicy::Exhaustive)
            throw std::invalid_argument("joint protocols use random or distance-based formation");
        if (beam != BeamProtocol::RB && beam != BeamProtocol::RT && beam != BeamProtocol::BT)
            throw std::invalid_argument("joint protocols restrict beamforming to RB, RT or BT");
    }
};

inline std::string_view to_string(const JointProtocol& p) {
    const bool dist = p.formation == FormationPolicy::DistanceBased;
    switch (p.beam) {
        case BeamProtocol::RB: return dist ? "DRB" : "RRB";
        case BeamProtocol::RT: return dist ? "DRT" : "RRT";
        case BeamProtocol::BT: return dist ? "DBT" : "RBT";
        default: break;
    }
    throw std::invalid_argument("unnamed joint protocol");
}

inline JointProtocol joint_protocol_from_string(std::string_view s) {
    if (s.size() == 3 && (s[0] == 'R' || s[0] == 'D')) {
        JointProtocol p;
        p.formation = s[0] == 'D' ? FormationPolicy::DistanceBased : FormationPolicy::Random;
        const std::string_view beam = s.substr(1);
        if (beam == "RB") p.beam = BeamProtocol::RB;
        else if (beam == "RT") p.beam = BeamProtocol::RT;
        else if (beam == "BT") p.beam = BeamProtocol::BT;
        else throw std::invalid_argument("unknown joint protocol '" + std::string(s) + "'");
        return p;
    }
    throw std::invalid_argument("unknown joint protocol '" + std::string(s) + "'");
}

inline const std::vector<std::string_view>& joint_protocol_names() {
    static const std::vector<std::string_view> names{"RRB", "RRT", "RBT", "DRB", "DRT", "DBT"};
    return names;
}

namespace detail {

inline void check_endpoints(int n_transmitters, int n_receivers, std::span<const int> sources,
                            std::span<const int> destinations) {
    const int k = static_cast<int>(sources.size());
    if (k < 1) throw std::invalid_argument("formation needs at least one stream");
    if (static_cast<int>(destinations.size()) != k)
        throw std::invalid_argument("sources and destinations must pair up");
    if (k > std::min(n_transmitters, n_receivers))
        throw std::invalid_argument("more streams than transmitters or receivers");
    auto check = [](std::span<const int> ids, int bound, const char* what) {
        std::vector<int> sorted(ids.begin(), ids.end());
        std::sort(sorted.begin(), sorted.end());
        if (sorted.front() < 0 || sorted.back() >= bound)
            throw std::invalid_argument(std::string(what) + " index out of range");
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument(std::string(what) + " indices must be distinct");
    };
    check(sources, n_transmitters, "source");
    check(destinations, n_receivers, "destination");
}

inline StreamAssignment assemble(std::span<const int> sources, std::span<const int> destinations,
                                 const std::vector<int>& tx_stream,
                                 const std::vector<int>& rx_stream) {
    const int k = static_cast<int>(sources.size());
    StreamAssignment assignment;
    assignment.streams.resize(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) {
        assignment.streams[s].source = sources[s];
        assignment.streams[s].destination = destinations[s];
    }
    for (int n = 0; n < static_cast<int>(tx_stream.size()); ++n)
        assignment.streams[tx_stream[n]].transmitters.push_back(n);
    for (int m = 0; m < static_cast<int>(rx_stream.size()); ++m)
        assignment.streams[rx_stream[m]].receivers.push_back(m);
    return assignment;
}

}  // namespace detail

/// Assign every free transmitter and receiver to a uniformly random stream.
inline StreamAssignment random_formation(int n_streams, int n_transmitters, int n_receivers,
                                         std::span<const int> sources,
                                         std::span<const int> destinations, Rng& rng) {
    if (n_streams != static_cast<int>(sources.size()))
        throw std::invalid_argument("n_streams must match the source count");
    detail::check_endpoints(n_transmitters, n_receivers, sources, destinations);

    std::vector<int> tx_stream(static_cast<std::size_t>(n_transmitters), -1);
    std::vector<int> rx_stream(static_cast<std::size_t>(n_receivers), -1);
    for (int k = 0; k < n_streams; ++k) {
        tx_stream[sources[k]] = k;
        rx_stream[destinations[k]] = k;
    }
    for (int n = 0; n < n_transmitters; ++n)
        if (tx_stream[n] < 0) tx_stream[n] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_streams)));
    for (int m = 0; m < n_receivers; ++m)
        if (rx_stream[m] < 0) rx_stream[m] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_streams)));
    return detail::assemble(sources, destinations, tx_stream, rx_stream);
}

/// Assign every free transmitter to the stream of its nearest source and
/// every free receiver to the stream of its nearest destination (Euclidean;
/// ties go to the lowest stream index).
inline StreamAssignment distance_formation(const NodeLayout& layout, std::span<const int> sources,
                                           std::span<const int> destinations) {
    const int n_transmitters = static_cast<int>(layout.transmitters.size());
    const int n_receivers = static_cast<int>(layout.receivers.size());
    detail::check_endpoints(n_transmitters, n_receivers, sources, destinations);
    const int n_streams = static_cast<int>(sources.size());

    auto nearest = [&](const Vec2& p, std::span<const int> heads, const std::vector<Vec2>& nodes) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n_streams; ++k) {
            const double d = distance(p, nodes[heads[k]]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        return best;
    };

    std::vector<int> tx_stream(static_cast<std::size_t>(n_transmitters), -1);
    std::vector<int> rx_stream(static_cast<std::size_t>(n_receivers), -1);
    for (int k = 0; k < n_streams; ++k) {
        tx_stream[sources[k]] = k;
        rx_stream[destinations[k]] = k;
    }
    for (int n = 0; n < n_transmitters; ++n)
        if (tx_stream[n] < 0) tx_stream[n] = nearest(layout.transmitters[n], sources, layout.transmitters);
    for (int m = 0; m < n_receivers; ++m)
        if (rx_stream[m] < 0) rx_stream[m] = nearest(layout.receivers[m], destinations, layout.receivers);
    return detail::assemble(sources, destinations, tx_stream, rx_stream);
}

inline std::vector<int> default_sources(int n_streams) { return all_indices(n_streams); }
inline std::vector<int> default_destinations(int n_streams) { return all_indices(n_streams); }

struct JointResult {
    StreamAssignment assignment;
    PhaseVector phases;
    SirReport report;
};

/// Run one joint protocol: form the groups, beamform each stream within its
/// own scope, and score with the per-stream SIR gains and the min objective.
/// Random draws come from named substreams of `seed` ("formation",
/// "joint_rb_phases", "joint_rt_target"), so two protocols sharing a policy
/// see identical draws for it.
inline JointResult run_joint(const JointProtocol& protocol, const ChannelMatrix& ch,
                             const NodeLayout& layout, int n_streams, const AmplitudeVector& amps,
                             std::uint64_t seed, Objective kind = Objective::Min) {
    protocol.validate();
    if (n_streams < 2) throw std::invalid_argument("run_joint needs >= 2 streams");
    if (static_cast<int>(layout.transmitters.size()) != ch.n_transmitters ||
        static_cast<int>(layout.receivers.size()) != ch.n_receivers)
        throw std::invalid_argument("run_joint: layout and channel matrix disagree");
    const auto sources = default_sources(n_streams);
    const auto destinations = default_destinations(n_streams);

    JointResult result;
    if (protocol.formation == FormationPolicy::Random) {
        Rng formation_rng(seed, "formation");
        result.assignment = random_formation(n_streams, ch.n_transmitters, ch.n_receivers, sources,
                                             destinations, formation_rng);
    } else {
        result.assignment = distance_formation(layout, sources, destinations);
    }
    result.assignment.validate(ch.n_transmitters, ch.n_receivers);

    Rng rb_rng(seed, "joint_rb_phases");
    Rng rt_rng(seed, "joint_rt_target");
    result.phases.assign(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    for (int k = 0; k < n_streams; ++k) {
        const auto& stream = result.assignment.streams[k];
        BeamOptions options;
        options.rng = protocol.beam == BeamProtocol::RB ? &rb_rng : &rt_rng;
        apply_beam_scoped(protocol.beam, ch, amps, stream.transmitters, stream.receivers,
                          result.phases, options);
    }
    result.report = sir_report(ch, result.phases, amps, result.assignment, kind);
    return result;
}

struct ExhaustiveFormationResult {
    StreamAssignment assignment;
    SirReport report;
    PhaseVector phases;
    std::uint64_t n_enumerated = 0;
};

/// Enumerate every valid disjoint assignment (free transmitters and receivers
/// each pick one of K streams), beamform per stream, and return the
/// assignment with the best objective. Enumeration is lexicographic and ties
/// keep the first maximizer, so the result is order-independent. Refuses
/// instances whose assignment count exceeds `cap`.
inline ExhaustiveFormationResult exhaustive_formation(const ChannelMatrix& ch,
                                                      const NodeLayout& layout, int n_streams,
                                                      const AmplitudeVector& amps,
                                                      BeamProtocol beam, std::uint64_t seed = 0,
                                                      std::uint64_t cap = 100000,
                                                      Objective kind = Objective::Min) {
    if (n_streams < 2) throw std::invalid_argument("exhaustive_formation needs >= 2 streams");
    if (static_cast<int>(layout.transmitters.size()) != ch.n_transmitters ||
        static_cast<int>(layout.receivers.size()) != ch.n_receivers)
        throw std::invalid_argument("exhaustive_formation: layout and channel matrix disagree");
    const auto sources = default_sources(n_streams);
    const auto destinations = default_destinations(n_streams);
    detail::check_endpoints(ch.n_transmitters, ch.n_receivers, sources, destinations);

    const int free_tx = ch.n_transmitters - n_streams;
    const int free_rx = ch.n_receivers - n_streams;
    double combinations = 1.0;
    for (int i = 0; i < free_tx + free_rx; ++i) combinations *= n_streams;
    if (combinations > static_cast<double>(cap)) {
        char count[32];
        std::snprintf(count, sizeof(count), "%.0f", combinations);
        throw std::invalid_argument("exhaustive_formation: " + std::string(count) +
                                    " assignments exceed the cap of " + std::to_string(cap));
    }

    // Digits: streams of free transmitters (ascending index), then free receivers.
    std::vector<int> free_tx_ids, free_rx_ids;
    for (int n = n_streams; n < ch.n_transmitters; ++n) free_tx_ids.push_back(n);
    for (int m = n_streams; m < ch.n_receivers; ++m) free_rx_ids.push_back(m);
    std::vector<int> digits(static_cast<std::size_t>(free_tx + free_rx), 0);

    ExhaustiveFormationResult best;
    double best_objective = -std::numeric_limits<double>::infinity();

    while (true) {
        std::vector<int> tx_stream(static_cast<std::size_t>(ch.n_transmitters), -1);
        std::vector<int> rx_stream(static_cast<std::size_t>(ch.n_receivers), -1);
        for (int k = 0; k < n_streams; ++k) {
            tx_stream[sources[k]] = k;
            rx_stream[destinations[k]] = k;
        }
        for (int i = 0; i < free_tx; ++i) tx_stream[free_tx_ids[i]] = digits[i];
        for (int i = 0; i < free_rx; ++i) rx_stream[free_rx_ids[i]] = digits[free_tx + i];
        StreamAssignment assignment = detail::assemble(sources, destinations, tx_stream, rx_stream);

        // Fresh substreams per assignment keep random beams comparable and
        // the enumeration order irrelevant.
        Rng rb_rng(seed, "exhaustive_rb_phases");
        Rng rt_rng(seed, "exhaustive_rt_target");
        PhaseVector phases(static_cast<std::size_t>(ch.n_transmitters), 0.0);
        for (int k = 0; k < n_streams; ++k) {
            const auto& stream = assignment.streams[k];
            BeamOptions options;
            options.rng = beam == BeamProtocol::RB ? &rb_rng : &rt_rng;
            apply_beam_scoped(beam, ch, amps, stream.transmitters, stream.receivers, phases, options);
        }
        const SirReport report = sir_report(ch, phases, amps, assignment, kind);
        ++best.n_enumerated;
        if (report.objective > best_objective) {
            best_objective = report.objective;
            best.assignment = std::move(assignment);
            best.report = report;
            best.phases = phases;
        }

        int pos = static_cast<int>(digits.size()) - 1;
        while (pos >= 0 && digits[pos] == n_streams - 1) digits[pos--] = 0;
        if (pos < 0) break;
        ++digits[pos];
    }
    return best;
}

}  // namespace cobeam
