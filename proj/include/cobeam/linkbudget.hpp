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
// Link-budget chain: from transmit power to the Doppler spread the protocol
// overhead budget can tolerate, plus the training-overhead model and a
// coherent-vs-point-to-point rate comparison. Free-space path loss
// throughout. N_r and the SNR targets are dB quantities; P_t, P_r and N_0
// are dBm(-density).

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cobeam {

struct LinkBudgetParams {
    double transmit_power_dbm = 10.0;     // P_t
    double noise_figure_db = 3.0;         // N_r
    double noise_floor_dbm_hz = -174.0;   // N_0 density
    double bandwidth_hz = 1e6;            // W
    double center_frequency_hz = 2.4e9;   // f_c
    double light_speed = 3e8;             // c, m/s
    double train_snr_db = 20.0;           // SNR needed for channel estimation
    double feedback_snr_db = 10.0;        // SNR needed for feedback reception
    double bits_per_estimate = 16.0;      // B_c
    double header_bits = 10.0;            // B_h
    double overhead_fraction = 0.1;       // F_o, share of time spent on overhead
    int group_size = 10;                  // N, nodes per group

    void validate() const {
        if (!(bandwidth_hz > 0)) throw std::invalid_argument("bandwidth must be > 0");
        if (!(center_frequency_hz > 0)) throw std::invalid_argument("center frequency must be > 0");
        if (!(light_speed > 0)) throw std::invalid_argument("light speed must be > 0");
        if (!(overhead_fraction > 0) || overhead_fraction > 1)
            throw std::invalid_argument("overhead fraction must be in (0, 1]");
        if (group_size < 1) throw std::invalid_argument("group size must be >= 1");
        if (!(bits_per_estimate >= 0) || !(header_bits >= 0))
            throw std::invalid_argument("bit counts must be >= 0");
    }
};

/// Whether the training/feedback bit counts stay continuous (as the chain is
/// written) or get rounded up to whole bits.
enum class BitRounding { Continuous, CeilToInt };

struct DopplerReport {
    double wavelength = 0.0;        // m
    double received_power_dbm = 0.0;
    double snr_db = 0.0;
    double train_gain_db = 0.0;     // processing gain needed for estimation
    double feedback_gain_db = 0.0;  // processing gain needed for feedback
    double training_bits = 0.0;     // B_t
    double feedback_bits = 0.0;     // B_f
    double overhead_bits = 0.0;     // B_o = B_t + B_f
    double overhead_time_s = 0.0;   // T_o
    double coherence_time_s = 0.0;  // T_c = T_o / F_o
    double doppler_spread_hz = 0.0; // S = 1 / T_c
};

/// Evaluate the overhead chain at inter-group distance D and report the
/// tolerable Doppler spread.
inline DopplerReport doppler_tolerance(const LinkBudgetParams& params, double inter_group_distance,
                                       BitRounding rounding = BitRounding::Continuous) {
    params.validate();
    if (!(inter_group_distance > 0))
        throw std::invalid_argument("doppler_tolerance: distance must be > 0");

    DopplerReport r;
    r.wavelength = params.light_speed / params.center_frequency_hz;
    r.received_power_dbm =
        params.transmit_power_dbm +
        20.0 * std::log10(r.wavelength / (4.0 * std::numbers::pi * inter_group_distance));
    r.snr_db = r.received_power_dbm - 10.0 * std::log10(params.bandwidth_hz) -
               params.noise_figure_db - params.noise_floor_dbm_hz;
    r.train_gain_db = params.train_snr_db - r.snr_db;
    r.feedback_gain_db = params.feedback_snr_db - r.snr_db;

    const double n = static_cast<double>(params.group_size);
    r.training_bits = std::max(std::pow(10.0, r.train_gain_db / 10.0), n);
    r.feedback_bits = std::max(std::pow(10.0, r.feedback_gain_db / 10.0), 1.0) * n *
                          params.bits_per_estimate +
                      params.header_bits * n;
    if (rounding == BitRounding::CeilToInt) {
        r.training_bits = std::ceil(r.training_bits);
        r.feedback_bits = std::ceil(r.feedback_bits);
    }
    r.overhead_bits = r.training_bits + r.feedback_bits;
    // Three inter-group trips: pilots out, feedback back, data out.
    r.overhead_time_s =
        r.overhead_bits / params.bandwidth_hz + 3.0 * inter_group_distance / params.light_speed;
    r.coherence_time_s = r.overhead_time_s / params.overhead_fraction;
    r.doppler_spread_hz = 1.0 / r.coherence_time_s;
    return r;
}

/// Per-group time-multiplexed coordination slots: training plus guard per
/// node, N nodes.
struct OverheadParams {
    double training_time_s = 0.0;  // T_t per node
    double guard_time_s = 0.0;     // T_g between nodes

    void validate() const {
        if (training_time_s < 0 || guard_time_s < 0)
            throw std::invalid_argument("overhead times must be >= 0");
    }
};

inline double training_overhead(int group_size, const OverheadParams& overhead) {
    if (group_size < 1) throw std::invalid_argument("training_overhead: group size must be >= 1");
    overhead.validate();
    return static_cast<double>(group_size) * (overhead.training_time_s + overhead.guard_time_s);
}

struct RateReport {
    double coherent_rate = 0.0;  // bits/s after the overhead haircut
    double p2p_rate = 0.0;       // bits/s of the bare point-to-point link
    double overhead_share = 0.0; // overhead time / coherence time
    bool overhead_exceeded = false;  // overhead left no room for data
};

/// Shannon-rate comparison of a coherent N x N group against the bare link.
/// The coherent side gets an N^3 SNR multiplier and loses the share of the
/// coherence time spent on the estimation/feedback chain plus the per-node
/// coordination slots. This is a declared model for the shape of the
/// comparison, not a reproduction of measured data.
inline RateReport rate_comparison(const LinkBudgetParams& params, double inter_group_distance,
                                  int group_size, double coherence_time_s,
                                  const OverheadParams& overhead = {}) {
    if (group_size < 1) throw std::invalid_argument("rate_comparison: group size must be >= 1");
    if (!(coherence_time_s > 0)) throw std::invalid_argument("rate_comparison: coherence time must be > 0");
    LinkBudgetParams p = params;
    p.group_size = group_size;
    const DopplerReport chain = doppler_tolerance(p, inter_group_distance);

    const double snr = std::pow(10.0, chain.snr_db / 10.0);
    const double n = static_cast<double>(group_size);
    const double overhead_time = chain.overhead_time_s + training_overhead(group_size, overhead);

    RateReport r;
    r.overhead_share = overhead_time / coherence_time_s;
    r.p2p_rate = params.bandwidth_hz * std::log2(1.0 + snr);
    if (r.overhead_share >= 1.0) {
        r.coherent_rate = 0.0;
        r.overhead_exceeded = true;
    } else {
        r.coherent_rate =
            (1.0 - r.overhead_share) * params.bandwidth_hz * std::log2(1.0 + n * n * n * snr);
    }
    return r;
}

}  // namespace cobeam
