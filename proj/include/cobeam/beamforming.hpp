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
// Phase-selection protocols. All of them maximize (or sample) the total
// received power of a transmitter subset at a receiver subset; dividing by
// the fixed benchmark link turns that into the coherent gain, so argmax
// comparisons are done on raw power. Every protocol has a scoped form used
// by the multi-stream machinery and a whole-matrix convenience wrapper.

#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cobeam/gain.hpp"
#include "cobeam/rng.hpp"
#include "cobeam/scenario.hpp"

namespace cobeam {

enum class BeamProtocol { RB, RT, BT, SF, IO, ES };

inline std::string_view to_string(BeamProtocol p) {
    switch (p) {
        case BeamProtocol::RB: return "RB";
        case BeamProtocol::RT: return "RT";
        case BeamProtocol::BT: return "BT";
        case BeamProtocol::SF: return "SF";
        case BeamProtocol::IO: return "IO";
        case BeamProtocol::ES: return "ES";
    }
    throw std::invalid_argument("unknown beam protocol");
}

inline BeamProtocol beam_protocol_from_string(std::string_view s) {
    if (s == "RB") return BeamProtocol::RB;
    if (s == "RT") return BeamProtocol::RT;
    if (s == "BT") return BeamProtocol::BT;
    if (s == "SF") return BeamProtocol::SF;
    if (s == "IO") return BeamProtocol::IO;
    if (s == "ES") return BeamProtocol::ES;
    throw std::invalid_argument("unknown beam protocol '" + std::string(s) + "'");
}

constexpr int kDefaultEsCap = 3;                     // exhaustive search is exponential in N
constexpr double kDefaultEsStep = two_pi / 360.0;    // 1 degree
constexpr int kDefaultIoMaxSweeps = 100;
constexpr double kDefaultIoTol = 1e-9;               // relative gain improvement per sweep

/// Total received power of the transmitter subset at the receiver subset.
inline double scoped_power(const ChannelMatrix& ch, const PhaseVector& phases,
                           const AmplitudeVector& amps, std::span<const int> tx,
                           std::span<const int> rx) {
    double total = 0.0;
    for (int m : rx) total += beta(ch, phases, amps, m, tx);
    return total;
}

/// Best single phase for transmitter n with every other phase fixed.
///
/// With c_m the fixed phasor sum of the other scoped transmitters at
/// receiver m and t_m = a_n h_nm e^{i theta_nm}, the scoped power is
///   sum_m |c_m + t_m e^{i x}|^2 = const + 2 Re(e^{i x} Z),  Z = sum_m t_m conj(c_m),
/// maximized at x = -arg(Z). When |Z| = 0 every phase is optimal and 0 is
/// returned. The candidate is accepted through the same evaluation path that
/// scores full phase vectors, so coordinate sweeps are monotone not just in
/// exact arithmetic but in the floating-point gains callers observe.
inline double optimize_single_phase(const ChannelMatrix& ch, const PhaseVector& phases,
                                    const AmplitudeVector& amps, int n, std::span<const int> tx,
                                    std::span<const int> rx) {
    detail::check_dims(ch, phases, amps);
    if (std::find(tx.begin(), tx.end(), n) == tx.end())
        throw std::invalid_argument("optimize_single_phase: transmitter is not in scope");
    if (rx.empty()) throw std::invalid_argument("optimize_single_phase: receiver scope is empty");

    std::complex<double> z{0.0, 0.0};
    for (int m : rx) {
        std::complex<double> c{0.0, 0.0};
        for (int i : tx) {
            if (i == n) continue;
            const double amp = amps[i] * ch.gain(i, m);
            const double ph = phases[i] + ch.phase(i, m);
            c += std::complex<double>(amp * std::cos(ph), amp * std::sin(ph));
        }
        const double amp_n = amps[n] * ch.gain(n, m);
        const double ph_n = ch.phase(n, m);
        z += std::complex<double>(amp_n * std::cos(ph_n), amp_n * std::sin(ph_n)) * std::conj(c);
    }
    if (z == std::complex<double>{0.0, 0.0}) return 0.0;

    const double candidate = normalize_phase(-std::arg(z));
    const double current = normalize_phase(phases[n]);
    PhaseVector trial = phases;
    trial[n] = candidate;
    const double power_candidate = scoped_power(ch, trial, amps, tx, rx);
    trial[n] = current;
    const double power_current = scoped_power(ch, trial, amps, tx, rx);
    return power_candidate >= power_current ? candidate : current;
}

/// Random phases for the scoped transmitters, uniform on [0, 2*pi).
inline void rb_phases_scoped(std::span<const int> tx, Rng& rng, PhaseVector& phases) {
    for (int n : tx) phases[n] = two_pi * rng.uniform();
}

/// Phase coherence of the scoped transmitters at one target receiver. The
/// lowest-index scoped transmitter is the reference with phase 0.
inline void rt_phases_scoped(const ChannelMatrix& ch, int target, std::span<const int> tx,
                             PhaseVector& phases) {
    if (tx.empty()) throw std::invalid_argument("rt_phases_scoped: empty transmitter scope");
    const int ref = tx[0];
    const double ref_phase = ch.phase(ref, target);
    phases[ref] = 0.0;
    for (int n : tx) {
        if (n == ref) continue;
        phases[n] = normalize_phase(ref_phase - ch.phase(n, target));
    }
}

/// Coherence at the receiver that maximizes the total scoped power, with
/// every scoped receiver still counted. Returns the chosen target (ties go to
/// the first candidate in scope order).
inline int bt_phases_scoped(const ChannelMatrix& ch, const AmplitudeVector& amps,
                            std::span<const int> tx, std::span<const int> rx, PhaseVector& phases) {
    if (rx.empty()) throw std::invalid_argument("bt_phases_scoped: empty receiver scope");
    int best_target = -1;
    double best_power = -1.0;
    PhaseVector candidate = phases;
    for (int j : rx) {
        rt_phases_scoped(ch, j, tx, candidate);
        const double power = scoped_power(ch, candidate, amps, tx, rx);
        if (power > best_power) {
            best_power = power;
            best_target = j;
        }
    }
    rt_phases_scoped(ch, best_target, tx, phases);
    return best_target;
}

namespace detail {

/// Scoped transmitters ordered by descending total received power over the
/// scoped receivers; ties keep ascending index order.
inline std::vector<int> sf_order(const ChannelMatrix& ch, const AmplitudeVector& amps,
                                 std::span<const int> tx, std::span<const int> rx) {
    std::vector<int> order(tx.begin(), tx.end());
    std::vector<double> key(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    for (int n : tx) {
        double total = 0.0;
        for (int m : rx) total += link_power(amps[n], ch.gain(n, m));
        key[n] = total;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (key[a] != key[b]) return key[a] > key[b];
        return a < b;
    });
    return order;
}

}  // namespace detail

/// Sequential fixing: strongest transmitter first at phase 0, then each next
/// one gets the single-phase optimum against the already-fixed prefix.
inline void sf_phases_scoped(const ChannelMatrix& ch, const AmplitudeVector& amps,
                             std::span<const int> tx, std::span<const int> rx,
                             PhaseVector& phases) {
    if (tx.empty()) throw std::invalid_argument("sf_phases_scoped: empty transmitter scope");
    const std::vector<int> order = detail::sf_order(ch, amps, tx, rx);
    phases[order[0]] = 0.0;
    std::vector<int> prefix{order[0]};
    for (std::size_t t = 1; t < order.size(); ++t) {
        prefix.push_back(order[t]);
        phases[order[t]] = 0.0;
        phases[order[t]] = optimize_single_phase(ch, phases, amps, order[t], prefix, rx);
    }
}

/// Iterative optimization: sequential fixing followed by coordinate-ascent
/// sweeps until a full sweep improves the power by at most `tol` (relative)
/// or `max_sweeps` is reached. Power is non-decreasing across every update.
inline void io_phases_scoped(const ChannelMatrix& ch, const AmplitudeVector& amps,
                             std::span<const int> tx, std::span<const int> rx, PhaseVector& phases,
                             int max_sweeps = kDefaultIoMaxSweeps, double tol = kDefaultIoTol) {
    if (max_sweeps < 1) throw std::invalid_argument("io_phases_scoped: max_sweeps must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("io_phases_scoped: tol must be > 0");
    sf_phases_scoped(ch, amps, tx, rx, phases);
    double power = scoped_power(ch, phases, amps, tx, rx);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int n : tx) phases[n] = optimize_single_phase(ch, phases, amps, n, tx, rx);
        const double updated = scoped_power(ch, phases, amps, tx, rx);
        const bool improved = power > 0 ? (updated - power) > tol * power : updated > power;
        power = updated;
        if (!improved) break;
    }
}

/// Exhaustive grid search over the scoped phases with the first scoped
/// transmitter pinned to 0 (the gain is invariant under a common phase
/// offset). Ties resolve to the lexicographically smallest grid point.
inline void es_phases_scoped(const ChannelMatrix& ch, const AmplitudeVector& amps,
                             std::span<const int> tx, std::span<const int> rx, PhaseVector& phases,
                             double grid_step = kDefaultEsStep, int max_transmitters = kDefaultEsCap) {
    if (tx.empty()) throw std::invalid_argument("es_phases_scoped: empty transmitter scope");
    if (!(grid_step > 0)) throw std::invalid_argument("es_phases_scoped: grid step must be > 0");
    if (static_cast<int>(tx.size()) > max_transmitters)
        throw std::invalid_argument(
            "es_phases_scoped: exhaustive search over " + std::to_string(tx.size()) +
            " transmitters exceeds the cap of " + std::to_string(max_transmitters) +
            " (the grid grows exponentially)");

    const int ref = tx[0];
    phases[ref] = 0.0;
    const int n_free = static_cast<int>(tx.size()) - 1;
    if (n_free == 0) return;

    int n_grid = static_cast<int>(std::ceil(two_pi / grid_step));
    while (n_grid > 1 && (n_grid - 1) * grid_step >= two_pi) --n_grid;

    // Per free transmitter and receiver: phasor at every grid angle.
    const int n_rx = static_cast<int>(rx.size());
    std::vector<std::vector<std::complex<double>>> table(
        static_cast<std::size_t>(n_free), std::vector<std::complex<double>>(static_cast<std::size_t>(n_rx) * n_grid));
    for (int t = 0; t < n_free; ++t) {
        const int n = tx[t + 1];
        for (int j = 0; j < n_rx; ++j) {
            const int m = rx[j];
            const double amp = amps[n] * ch.gain(n, m);
            const double base = ch.phase(n, m);
            for (int g = 0; g < n_grid; ++g) {
                const double ph = base + g * grid_step;
                table[t][static_cast<std::size_t>(j) * n_grid + g] =
                    std::complex<double>(amp * std::cos(ph), amp * std::sin(ph));
            }
        }
    }
    std::vector<std::complex<double>> base(n_rx);
    for (int j = 0; j < n_rx; ++j) {
        const int m = rx[j];
        const double amp = amps[ref] * ch.gain(ref, m);
        const double ph = ch.phase(ref, m);
        base[j] = std::complex<double>(amp * std::cos(ph), amp * std::sin(ph));
    }

    // Depth-first over grid indices, carrying partial phasor sums per level.
    std::vector<std::vector<std::complex<double>>> partial(
        static_cast<std::size_t>(n_free) + 1, std::vector<std::complex<double>>(n_rx));
    partial[0] = base;
    std::vector<int> index(static_cast<std::size_t>(n_free), 0);
    std::vector<int> best(index);
    double best_power = -1.0;

    int level = 0;
    while (level >= 0) {
        if (index[level] == n_grid) {
            index[level] = 0;
            --level;
            if (level >= 0) ++index[level];
            continue;
        }
        for (int j = 0; j < n_rx; ++j)
            partial[level + 1][j] =
                partial[level][j] + table[level][static_cast<std::size_t>(j) * n_grid + index[level]];
        if (level + 1 == n_free) {
            double power = 0.0;
            for (int j = 0; j < n_rx; ++j) power += std::norm(partial[level + 1][j]);
            if (power > best_power) {
                best_power = power;
                best = index;
            }
            ++index[level];
        } else {
            ++level;
        }
    }
    for (int t = 0; t < n_free; ++t) phases[tx[t + 1]] = normalize_phase(best[t] * grid_step);
}

// Whole-matrix wrappers.

inline PhaseVector run_rb(const ChannelMatrix& ch, Rng& rng) {
    PhaseVector phases(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    const auto tx = all_indices(ch.n_transmitters);
    rb_phases_scoped(tx, rng, phases);
    return phases;
}

inline PhaseVector run_rt(const ChannelMatrix& ch, int target) {
    if (target < 0 || target >= ch.n_receivers)
        throw std::invalid_argument("run_rt: target receiver out of range");
    PhaseVector phases(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    const auto tx = all_indices(ch.n_transmitters);
    rt_phases_scoped(ch, target, tx, phases);
    return phases;
}

inline PhaseVector run_bt(const ChannelMatrix& ch, const AmplitudeVector& amps) {
    PhaseVector phases(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    const auto tx = all_indices(ch.n_transmitters);
    const auto rx = all_indices(ch.n_receivers);
    bt_phases_scoped(ch, amps, tx, rx, phases);
    return phases;
}

inline PhaseVector run_sf(const ChannelMatrix& ch, const AmplitudeVector& amps) {
    PhaseVector phases(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    const auto tx = all_indices(ch.n_transmitters);
    const auto rx = all_indices(ch.n_receivers);
    sf_phases_scoped(ch, amps, tx, rx, phases);
    return phases;
}

inline PhaseVector run_io(const ChannelMatrix& ch, const AmplitudeVector& amps,
                          int max_sweeps = kDefaultIoMaxSweeps, double tol = kDefaultIoTol) {
    PhaseVector phases(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    const auto tx = all_indices(ch.n_transmitters);
    const auto rx = all_indices(ch.n_receivers);
    io_phases_scoped(ch, amps, tx, rx, phases, max_sweeps, tol);
    return phases;
}

inline PhaseVector run_es(const ChannelMatrix& ch, const AmplitudeVector& amps,
                          double grid_step = kDefaultEsStep, int max_transmitters = kDefaultEsCap) {
    PhaseVector phases(static_cast<std::size_t>(ch.n_transmitters), 0.0);
    const auto tx = all_indices(ch.n_transmitters);
    const auto rx = all_indices(ch.n_receivers);
    es_phases_scoped(ch, amps, tx, rx, phases, grid_step, max_transmitters);
    return phases;
}

/// Options for running one protocol through a single entry point.
struct BeamOptions {
    Rng* rng = nullptr;          // RB and the RT target draw
    int rt_target = -1;          // fixed RT target; -1 draws uniformly from scope
    double es_step = kDefaultEsStep;
    int es_cap = kDefaultEsCap;
    int io_max_sweeps = kDefaultIoMaxSweeps;
    double io_tol = kDefaultIoTol;
};

/// Dispatch one protocol over a scope, writing only the scoped phases.
inline void apply_beam_scoped(BeamProtocol protocol, const ChannelMatrix& ch,
                              const AmplitudeVector& amps, std::span<const int> tx,
                              std::span<const int> rx, PhaseVector& phases,
                              const BeamOptions& options = {}) {
    switch (protocol) {
        case BeamProtocol::RB:
            if (options.rng == nullptr) throw std::invalid_argument("RB needs a random generator");
            rb_phases_scoped(tx, *options.rng, phases);
            return;
        case BeamProtocol::RT: {
            int target = options.rt_target;
            if (target < 0) {
                if (options.rng == nullptr) throw std::invalid_argument("RT needs a random generator");
                target = rx[static_cast<std::size_t>(options.rng->below(rx.size()))];
            }
            rt_phases_scoped(ch, target, tx, phases);
            return;
        }
        case BeamProtocol::BT:
            bt_phases_scoped(ch, amps, tx, rx, phases);
            return;
        case BeamProtocol::SF:
            sf_phases_scoped(ch, amps, tx, rx, phases);
            return;
        case BeamProtocol::IO:
            io_phases_scoped(ch, amps, tx, rx, phases, options.io_max_sweeps, options.io_tol);
            return;
        case BeamProtocol::ES:
            es_phases_scoped(ch, amps, tx, rx, phases, options.es_step, options.es_cap);
            return;
    }
    throw std::invalid_argument("unknown beam protocol");
}

}  // namespace cobeam
