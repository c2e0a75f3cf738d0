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
// Experiment harness: JSON experiment specs, the seeded Monte-Carlo runner,
// result tables with CSV/markdown emission, and the named presets that
// reproduce the reported gain tables and curves.
//
// Randomness layout: every consumer draws from a named substream of the
// per-iteration seed (stream_key(seed, name)). Placement uses "placement",
// random phases "rb_phases", the random-target draw "rt_target", and the
// multi-stream machinery "formation" / "joint_rb_phases" / "joint_rt_target".
// Protocols therefore compare on identical geometry, and adding a protocol
// never perturbs any other draw.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cobeam/beamforming.hpp"
#include "cobeam/formation.hpp"
#include "cobeam/gain.hpp"
#include "cobeam/linkbudget.hpp"
#include "cobeam/rng.hpp"
#include "cobeam/scenario.hpp"

namespace cobeam {

constexpr int kSchemaVersion = 1;

/// A protocol column: either a single-stream beamforming protocol or one of
/// the six joint formation x beamforming protocols.
struct ProtocolSpec {
    std::variant<BeamProtocol, JointProtocol> value;

    bool is_joint() const { return std::holds_alternative<JointProtocol>(value); }
    std::string name() const {
        if (is_joint()) return std::string(to_string(std::get<JointProtocol>(value)));
        return std::string(to_string(std::get<BeamProtocol>(value)));
    }
    static ProtocolSpec parse(std::string_view s) {
        ProtocolSpec p;
        if (s.size() == 3) {
            p.value = joint_protocol_from_string(s);
        } else {
            p.value = beam_protocol_from_string(s);
        }
        return p;
    }
};

struct OutputSpec {
    std::string csv_path;    // empty writes nowhere (callers print instead)
    bool markdown = false;

    bool operator==(const OutputSpec&) const = default;
};

inline bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
    return a.n_transmitters == b.n_transmitters && a.n_receivers == b.n_receivers &&
           a.n_streams == b.n_streams && a.inter_group_distance == b.inter_group_distance &&
           a.group_radius == b.group_radius && a.wavelength == b.wavelength &&
           a.channel_model == b.channel_model && a.antenna_gain_tx == b.antenna_gain_tx &&
           a.antenna_gain_rx == b.antenna_gain_rx && a.antenna_height_tx == b.antenna_height_tx &&
           a.antenna_height_rx == b.antenna_height_rx && a.seed == b.seed;
}

inline bool operator==(const LinkBudgetParams& a, const LinkBudgetParams& b) {
    return a.transmit_power_dbm == b.transmit_power_dbm && a.noise_figure_db == b.noise_figure_db &&
           a.noise_floor_dbm_hz == b.noise_floor_dbm_hz && a.bandwidth_hz == b.bandwidth_hz &&
           a.center_frequency_hz == b.center_frequency_hz && a.light_speed == b.light_speed &&
           a.train_snr_db == b.train_snr_db && a.feedback_snr_db == b.feedback_snr_db &&
           a.bits_per_estimate == b.bits_per_estimate && a.header_bits == b.header_bits &&
           a.overhead_fraction == b.overhead_fraction && a.group_size == b.group_size;
}

inline bool operator==(const OverheadParams& a, const OverheadParams& b) {
    return a.training_time_s == b.training_time_s && a.guard_time_s == b.guard_time_s;
}

/// A full experiment: a base scenario, optional (N, M) row overrides, the
/// protocol columns, and the seed range.
struct ExperimentSpec {
    ScenarioConfig scenario;
    std::vector<std::pair<int, int>> rows;  // (N, M) per row; empty = scenario as-is
    std::vector<std::string> protocols;
    int n_seeds = 100;
    std::uint64_t base_seed = 1;
    OutputSpec output;
    LinkBudgetParams linkbudget;  // used by the doppler/rate tooling
    OverheadParams overhead;

    bool operator==(const ExperimentSpec&) const = default;

    std::vector<ScenarioConfig> row_scenarios() const {
        std::vector<ScenarioConfig> result;
        if (rows.empty()) {
            result.push_back(scenario);
            return result;
        }
        for (const auto& [n, m] : rows) {
            ScenarioConfig sc = scenario;
            sc.n_transmitters = n;
            sc.n_receivers = m;
            result.push_back(sc);
        }
        return result;
    }

    void validate() const {
        if (protocols.empty()) throw std::invalid_argument("protocol list is empty");
        if (n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");
        for (const ScenarioConfig& sc : row_scenarios()) sc.validate();
        for (const std::string& name : protocols) {
            const ProtocolSpec p = ProtocolSpec::parse(name);
            if (p.is_joint() && scenario.n_streams < 2)
                throw std::invalid_argument("protocol " + name + " needs n_streams >= 2");
            if (!p.is_joint() && scenario.n_streams != 1)
                throw std::invalid_argument("protocol " + name + " runs single-stream scenarios only");
        }
        linkbudget.validate();
        overhead.validate();
    }
};

// --- JSON (de)serialization -------------------------------------------------

namespace detail {

template <typename T>
T get_field(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("field '" + std::string(key) + "': " + e.what());
    }
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const ScenarioConfig& sc) {
    j = nlohmann::json{{"n_transmitters", sc.n_transmitters},
                       {"n_receivers", sc.n_receivers},
                       {"n_streams", sc.n_streams},
                       {"inter_group_distance", sc.inter_group_distance},
                       {"group_radius", sc.group_radius},
                       {"wavelength", sc.wavelength},
                       {"channel_model", std::string(to_string(sc.channel_model))},
                       {"antenna_gain_tx", sc.antenna_gain_tx},
                       {"antenna_gain_rx", sc.antenna_gain_rx},
                       {"antenna_height_tx", sc.antenna_height_tx},
                       {"antenna_height_rx", sc.antenna_height_rx},
                       {"seed", sc.seed}};
}

inline void from_json(const nlohmann::json& j, ScenarioConfig& sc) {
    const ScenarioConfig defaults;
    sc.n_transmitters = detail::get_field(j, "n_transmitters", defaults.n_transmitters);
    sc.n_receivers = detail::get_field(j, "n_receivers", defaults.n_receivers);
    sc.n_streams = detail::get_field(j, "n_streams", defaults.n_streams);
    sc.inter_group_distance = detail::get_field(j, "inter_group_distance", defaults.inter_group_distance);
    sc.group_radius = detail::get_field(j, "group_radius", defaults.group_radius);
    sc.wavelength = detail::get_field(j, "wavelength", defaults.wavelength);
    sc.channel_model = channel_model_from_string(
        detail::get_field(j, "channel_model", std::string(to_string(defaults.channel_model))));
    sc.antenna_gain_tx = detail::get_field(j, "antenna_gain_tx", defaults.antenna_gain_tx);
    sc.antenna_gain_rx = detail::get_field(j, "antenna_gain_rx", defaults.antenna_gain_rx);
    sc.antenna_height_tx = detail::get_field(j, "antenna_height_tx", defaults.antenna_height_tx);
    sc.antenna_height_rx = detail::get_field(j, "antenna_height_rx", defaults.antenna_height_rx);
    sc.seed = detail::get_field(j, "seed", defaults.seed);
}

inline void to_json(nlohmann::json& j, const LinkBudgetParams& p) {
    j = nlohmann::json{{"transmit_power_dbm", p.transmit_power_dbm},
                       {"noise_figure_db", p.noise_figure_db},
                       {"noise_floor_dbm_hz", p.noise_floor_dbm_hz},
                       {"bandwidth_hz", p.bandwidth_hz},
                       {"center_frequency_hz", p.center_frequency_hz},
                       {"light_speed", p.light_speed},
                       {"train_snr_db", p.train_snr_db},
                       {"feedback_snr_db", p.feedback_snr_db},
                       {"bits_per_estimate", p.bits_per_estimate},
                       {"header_bits", p.header_bits},
                       {"overhead_fraction", p.overhead_fraction},
                       {"group_size", p.group_size}};
}

inline void from_json(const nlohmann::json& j, LinkBudgetParams& p) {
    const LinkBudgetParams defaults;
    p.transmit_power_dbm = detail::get_field(j, "transmit_power_dbm", defaults.transmit_power_dbm);
    p.noise_figure_db = detail::get_field(j, "noise_figure_db", defaults.noise_figure_db);
    p.noise_floor_dbm_hz = detail::get_field(j, "noise_floor_dbm_hz", defaults.noise_floor_dbm_hz);
    p.bandwidth_hz = detail::get_field(j, "bandwidth_hz", defaults.bandwidth_hz);
    p.center_frequency_hz = detail::get_field(j, "center_frequency_hz", defaults.center_frequency_hz);
    p.light_speed = detail::get_field(j, "light_speed", defaults.light_speed);
    p.train_snr_db = detail::get_field(j, "train_snr_db", defaults.train_snr_db);
    p.feedback_snr_db = detail::get_field(j, "feedback_snr_db", defaults.feedback_snr_db);
    p.bits_per_estimate = detail::get_field(j, "bits_per_estimate", defaults.bits_per_estimate);
    p.header_bits = detail::get_field(j, "header_bits", defaults.header_bits);
    p.overhead_fraction = detail::get_field(j, "overhead_fraction", defaults.overhead_fraction);
    p.group_size = detail::get_field(j, "group_size", defaults.group_size);
}

inline void to_json(nlohmann::json& j, const OverheadParams& p) {
    j = nlohmann::json{{"training_time_s", p.training_time_s}, {"guard_time_s", p.guard_time_s}};
}

inline void from_json(const nlohmann::json& j, OverheadParams& p) {
    const OverheadParams defaults;
    p.training_time_s = detail::get_field(j, "training_time_s", defaults.training_time_s);
    p.guard_time_s = detail::get_field(j, "guard_time_s", defaults.guard_time_s);
}

inline nlohmann::json to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = spec.scenario;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [n, m] : spec.rows) rows.push_back({n, m});
    j["rows"] = rows;
    j["protocols"] = spec.protocols;
    j["n_seeds"] = spec.n_seeds;
    j["base_seed"] = spec.base_seed;
    j["output"] = {{"csv_path", spec.output.csv_path}, {"markdown", spec.output.markdown}};
    j["linkbudget"] = spec.linkbudget;
    j["overhead"] = spec.overhead;
    return j;
}

inline ExperimentSpec spec_from_json(const nlohmann::json& j) {
    const int version = detail::get_field(j, "schema_version", kSchemaVersion);
    if (version != kSchemaVersion)
        throw std::invalid_argument("unsupported schema_version " + std::to_string(version));
    ExperimentSpec spec;
    if (j.contains("scenario")) spec.scenario = j.at("scenario").get<ScenarioConfig>();
    if (j.contains("rows")) {
        for (const auto& row : j.at("rows")) {
            if (!row.is_array() || row.size() != 2)
                throw std::invalid_argument("rows entries must be [n_transmitters, n_receivers]");
            spec.rows.emplace_back(row[0].get<int>(), row[1].get<int>());
        }
    }
    spec.protocols = detail::get_field(j, "protocols", std::vector<std::string>{});
    spec.n_seeds = detail::get_field(j, "n_seeds", spec.n_seeds);
    spec.base_seed = detail::get_field(j, "base_seed", spec.base_seed);
    if (j.contains("output")) {
        const auto& o = j.at("output");
        spec.output.csv_path = detail::get_field(o, "csv_path", std::string{});
        spec.output.markdown = detail::get_field(o, "markdown", false);
    }
    if (j.contains("linkbudget")) spec.linkbudget = j.at("linkbudget").get<LinkBudgetParams>();
    if (j.contains("overhead")) spec.overhead = j.at("overhead").get<OverheadParams>();
    spec.validate();
    return spec;
}

inline ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("parse error in '" + path + "': " + e.what());
    }
    try {
        return spec_from_json(j);
    } catch (const std::exception& e) {
        throw std::invalid_argument("invalid config '" + path + "': " + e.what());
    }
}

inline std::string serialize_spec(const ExperimentSpec& spec) { return to_json(spec).dump(2) + "\n"; }

// --- Result tables ------------------------------------------------------------

struct CellStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    double min = 0.0;
    double max = 0.0;
    int n = 0;
};

struct ResultTable {
    std::vector<std::string> row_labels;
    std::vector<std::string> protocols;
    std::vector<std::vector<std::optional<CellStats>>> cells;  // [row][protocol]

    const std::optional<CellStats>& cell(std::string_view row, std::string_view protocol) const {
        const auto r = std::find(row_labels.begin(), row_labels.end(), row);
        const auto p = std::find(protocols.begin(), protocols.end(), protocol);
        if (r == row_labels.end() || p == protocols.end())
            throw std::invalid_argument("no such table cell");
        return cells[static_cast<std::size_t>(r - row_labels.begin())]
                    [static_cast<std::size_t>(p - protocols.begin())];
    }
};

inline std::string scenario_label(const ScenarioConfig& sc) {
    std::string label = std::to_string(sc.n_transmitters) + "x" + std::to_string(sc.n_receivers);
    if (sc.n_streams > 1) label += "x" + std::to_string(sc.n_streams);
    return label;
}

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline CellStats aggregate(const std::vector<double>& values) {
    CellStats s;
    s.n = static_cast<int>(values.size());
    if (s.n == 0) return s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / s.n;
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / (s.n - 1));
    }
    return s;
}

inline std::string to_csv(const ResultTable& table) {
    std::string out = "scenario,protocol,mean,std,min,max,n_seeds\n";
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        for (std::size_t p = 0; p < table.protocols.size(); ++p) {
            const auto& cell = table.cells[r][p];
            if (!cell) continue;  // protocol not applicable to this row
            out += table.row_labels[r] + "," + table.protocols[p] + "," + format_double(cell->mean) +
                   "," + format_double(cell->stddev) + "," + format_double(cell->min) + "," +
                   format_double(cell->max) + "," + std::to_string(cell->n) + "\n";
        }
    }
    return out;
}

inline std::string to_markdown(const ResultTable& table) {
    auto fixed2 = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{"scenario"};
    header.insert(header.end(), table.protocols.begin(), table.protocols.end());
    grid.push_back(header);
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        std::vector<std::string> line{table.row_labels[r]};
        for (std::size_t p = 0; p < table.protocols.size(); ++p)
            line.push_back(table.cells[r][p] ? fixed2(table.cells[r][p]->mean) : "-");
        grid.push_back(line);
    }
    std::vector<std::size_t> widths(grid[0].size(), 0);
    for (const auto& line : grid)
        for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
    std::string out;
    for (std::size_t l = 0; l < grid.size(); ++l) {
        out += "|";
        for (std::size_t c = 0; c < grid[l].size(); ++c) {
            out += " " + grid[l][c] + std::string(widths[c] - grid[l][c].size(), ' ') + " |";
        }
        out += "\n";
        if (l == 0) {
            out += "|";
            for (std::size_t c = 0; c < widths.size(); ++c) out += std::string(widths[c] + 2, '-') + "|";
            out += "\n";
        }
    }
    return out;
}

enum class TableFormat { Csv, Markdown };

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void emit(const ResultTable& table, TableFormat format, const std::string& path) {
    if (table.row_labels.empty()) throw std::invalid_argument("emit: table is empty");
    write_file(path, format == TableFormat::Csv ? to_csv(table) : to_markdown(table));
}

// --- Monte-Carlo runner ---------------------------------------------------------

/// Whether a protocol can run on a scenario (exhaustive search is capped at
/// small transmitter groups; a skipped cell stays empty in the table).
inline bool protocol_applicable(const ProtocolSpec& protocol, const ScenarioConfig& sc) {
    if (protocol.is_joint()) return sc.n_streams >= 2;
    if (sc.n_streams != 1) return false;
    if (std::get<BeamProtocol>(protocol.value) == BeamProtocol::ES)
        return sc.n_transmitters <= kDefaultEsCap;
    return true;
}

/// Phases chosen by one single-stream protocol. Random draws come from the
/// seed's named substreams.
inline PhaseVector protocol_phases(BeamProtocol protocol, const ChannelMatrix& ch,
                                   const AmplitudeVector& amps, std::uint64_t seed) {
    switch (protocol) {
        case BeamProtocol::RB: {
            Rng rng(seed, "rb_phases");
            return run_rb(ch, rng);
        }
        case BeamProtocol::RT: {
            Rng rng(seed, "rt_target");
            return run_rt(ch, static_cast<int>(rng.below(static_cast<std::uint64_t>(ch.n_receivers))));
        }
        case BeamProtocol::BT:
            return run_bt(ch, amps);
        case BeamProtocol::SF:
            return run_sf(ch, amps);
        case BeamProtocol::IO:
            return run_io(ch, amps);
        case BeamProtocol::ES:
            return run_es(ch, amps);
    }
    throw std::invalid_argument("unknown beam protocol");
}

/// One protocol on one scenario draw. Returns the coherent power gain for
/// single-stream protocols and the min-SIR-gain objective for joint ones.
inline double evaluate_protocol(const ProtocolSpec& protocol, const ScenarioConfig& sc,
                                const ChannelMatrix& ch, const NodeLayout& layout,
                                std::uint64_t seed) {
    const AmplitudeVector amps = unit_amplitudes(ch.n_transmitters);
    if (protocol.is_joint()) {
        return run_joint(std::get<JointProtocol>(protocol.value), ch, layout, sc.n_streams, amps, seed)
            .report.objective;
    }
    const PhaseVector phases = protocol_phases(std::get<BeamProtocol>(protocol.value), ch, amps, seed);
    return coherent_gain(ch, phases, amps).gain;
}

/// Run the experiment: for every row scenario and seed, place nodes once,
/// then score every protocol on that same draw. Seeds may be executed on
/// several threads; results land in per-seed slots and are reduced in seed
/// order, so the output is independent of `jobs`.
inline ResultTable run_experiment(const ExperimentSpec& spec, int jobs = 1) {
    spec.validate();
    if (jobs < 1) jobs = 1;

    std::vector<ProtocolSpec> protocols;
    for (const std::string& name : spec.protocols) protocols.push_back(ProtocolSpec::parse(name));

    ResultTable table;
    table.protocols = spec.protocols;

    for (const ScenarioConfig& sc : spec.row_scenarios()) {
        // values[p][i]: protocol p at seed base_seed + i
        std::vector<std::vector<double>> values(protocols.size(),
                                                std::vector<double>(static_cast<std::size_t>(spec.n_seeds)));
        std::vector<char> applicable(protocols.size());
        for (std::size_t p = 0; p < protocols.size(); ++p)
            applicable[p] = protocol_applicable(protocols[p], sc) ? 1 : 0;

        auto worker = [&](int first, int stride) {
            for (int i = first; i < spec.n_seeds; i += stride) {
                const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(i);
                Rng placement(seed, "placement");
                const NodeLayout layout = place_nodes(sc, placement);
                const ChannelMatrix ch = build_channels(layout, sc);
                for (std::size_t p = 0; p < protocols.size(); ++p)
                    if (applicable[p]) values[p][static_cast<std::size_t>(i)] =
                        evaluate_protocol(protocols[p], sc, ch, layout, seed);
            }
        };
        if (jobs == 1 || spec.n_seeds == 1) {
            worker(0, 1);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
            for (int t = 0; t < jobs; ++t)
                pool.emplace_back([&, t] {
                    try {
                        worker(t, jobs);
                    } catch (...) {
                        errors[static_cast<std::size_t>(t)] = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            for (const auto& e : errors)
                if (e) std::rethrow_exception(e);
        }

        table.row_labels.push_back(scenario_label(sc));
        std::vector<std::optional<CellStats>> row;
        for (std::size_t p = 0; p < protocols.size(); ++p) {
            if (applicable[p])
                row.emplace_back(aggregate(values[p]));
            else
                row.emplace_back(std::nullopt);
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

// --- Presets ---------------------------------------------------------------------

/// Named presets reproducing the reported tables: t1 is the inverse-square
/// close-group setting; t3..t6 are the free-space/two-ray single-stream
/// settings; t7..t10 are the two-stream joint-protocol settings.
inline ExperimentSpec preset_spec(std::string_view name) {
    ScenarioConfig base;
    base.wavelength = 0.125;
    base.antenna_gain_tx = base.antenna_gain_rx = 1.0;
    base.antenna_height_tx = base.antenna_height_rx = 0.5;

    ExperimentSpec spec;
    spec.scenario = base;
    spec.n_seeds = 100;
    spec.base_seed = 1;
    const std::vector<std::string> single{"RB", "RT", "BT", "SF", "IO", "ES"};
    const std::vector<std::string> joint{"RRB", "RRT", "RBT", "DRB", "DRT", "DBT"};

    auto single_stream = [&](ChannelModel model, double d, double r,
                             std::vector<std::pair<int, int>> rows) {
        spec.scenario.channel_model = model;
        spec.scenario.inter_group_distance = d;
        spec.scenario.group_radius = r;
        spec.scenario.n_streams = 1;
        spec.rows = std::move(rows);
        spec.protocols = single;
    };
    auto two_stream = [&](ChannelModel model, double d) {
        spec.scenario.channel_model = model;
        spec.scenario.inter_group_distance = d;
        spec.scenario.group_radius = 100;
        spec.scenario.n_streams = 2;
        spec.rows = {{3, 10}, {10, 10}};
        spec.protocols = joint;
        spec.n_seeds = 200;
    };

    if (name == "t1")
        single_stream(ChannelModel::InverseSquare, 1000, 10, {{1, 1}, {1, 10}, {3, 1}, {3, 10}, {10, 10}});
    else if (name == "t3")
        single_stream(ChannelModel::FreeSpace, 1000, 100, {{3, 10}, {10, 10}});
    else if (name == "t4")
        single_stream(ChannelModel::TwoRay, 1000, 100, {{3, 10}, {10, 10}});
    else if (name == "t5")
        single_stream(ChannelModel::FreeSpace, 10000, 100, {{3, 10}, {10, 10}});
    else if (name == "t6")
        single_stream(ChannelModel::TwoRay, 10000, 100, {{3, 10}, {10, 10}});
    else if (name == "t7")
        two_stream(ChannelModel::FreeSpace, 1000);
    else if (name == "t8")
        two_stream(ChannelModel::TwoRay, 1000);
    else if (name == "t9")
        two_stream(ChannelModel::FreeSpace, 10000);
    else if (name == "t10")
        two_stream(ChannelModel::TwoRay, 10000);
    else
        throw std::invalid_argument("unknown preset '" + std::string(name) +
                                    "' (expected t1, t3, t4, ..., t10)");
    return spec;
}

// --- Curve sweeps (doppler / rate CSV outputs) ------------------------------------

/// CSV for the Doppler-tolerance curve: columns D_m,S_Hz.
inline std::string doppler_curve_csv(const LinkBudgetParams& params, double d_min, double d_max,
                                     int steps, BitRounding rounding = BitRounding::Continuous) {
    if (!(d_min > 0) || !(d_max > d_min)) throw std::invalid_argument("need 0 < dmin < dmax");
    if (steps < 2) throw std::invalid_argument("steps must be >= 2");
    std::string out = "D_m,S_Hz\n";
    for (int i = 0; i < steps; ++i) {
        const double d = d_min + (d_max - d_min) * i / (steps - 1);
        const DopplerReport rep = doppler_tolerance(params, d, rounding);
        out += format_double(d) + "," + format_double(rep.doppler_spread_hz) + "\n";
    }
    return out;
}

/// CSV for the rate-comparison curve: columns D_m,rate_coherent,rate_p2p.
inline std::string rate_curve_csv(const LinkBudgetParams& params, const OverheadParams& overhead,
                                  int group_size, double coherence_time_s, double d_min,
                                  double d_max, int steps) {
    if (!(d_min > 0) || !(d_max > d_min)) throw std::invalid_argument("need 0 < dmin < dmax");
    if (steps < 2) throw std::invalid_argument("steps must be >= 2");
    std::string out = "D_m,rate_coherent,rate_p2p\n";
    for (int i = 0; i < steps; ++i) {
        const double d = d_min + (d_max - d_min) * i / (steps - 1);
        const RateReport rep = rate_comparison(params, d, group_size, coherence_time_s, overhead);
        out += format_double(d) + "," + format_double(rep.coherent_rate) + "," +
               format_double(rep.p2p_rate) + "\n";
    }
    return out;
}

}  // namespace cobeam
