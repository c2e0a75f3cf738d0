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
// Command-line front end: gain / table / formation / doppler / rate.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cobeam/harness.hpp"

using namespace cobeam;

namespace {

struct GlobalFlags {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
};

void write_or_print(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::fputs(content.c_str(), stdout);
    } else {
        write_file(path, content);
    }
}

void emit_table(const ResultTable& table, const GlobalFlags& flags) {
    const std::string content = flags.format == "md" ? to_markdown(table) : to_csv(table);
    write_or_print(content, flags.out);
}

/// Table output honoring a config's output section when no --out was given:
/// the csv_path receives the CSV and the markdown flag echoes the table.
void emit_table(const ResultTable& table, const GlobalFlags& flags, const OutputSpec& output) {
    if (!flags.out.empty() || output.csv_path.empty()) {
        emit_table(table, flags);
        return;
    }
    emit(table, TableFormat::Csv, output.csv_path);
    if (output.markdown) std::fputs(to_markdown(table).c_str(), stdout);
}

/// `gain`: run every configured protocol once on one scenario draw and print
/// the gain report.
int cmd_gain(const std::string& config_path, const GlobalFlags& flags) {
    const ExperimentSpec spec = load_spec(config_path);
    const std::uint64_t seed = flags.seed.value_or(spec.scenario.seed);
    const ScenarioConfig& sc = spec.scenario;

    Rng placement(seed, "placement");
    const NodeLayout layout = place_nodes(sc, placement);
    const ChannelMatrix ch = build_channels(layout, sc);
    const AmplitudeVector amps = unit_amplitudes(ch.n_transmitters);

    std::string csv = "protocol,gain,upper_bound";
    for (int m = 1; m <= ch.n_receivers; ++m) csv += ",beta_" + std::to_string(m);
    csv += "\n";
    std::string pretty = "scenario " + scenario_label(sc) + ", model " +
                         std::string(to_string(sc.channel_model)) + ", seed " +
                         std::to_string(seed) + "\n";
    for (const std::string& name : spec.protocols) {
        const ProtocolSpec protocol = ProtocolSpec::parse(name);
        if (protocol.is_joint())
            throw std::invalid_argument("`gain` runs single-stream protocols; use `formation`");
        if (!protocol_applicable(protocol, sc)) continue;
        const PhaseVector phases =
            protocol_phases(std::get<BeamProtocol>(protocol.value), ch, amps, seed);
        const GainReport report = coherent_gain(ch, phases, amps);
        csv += name + "," + format_double(report.gain) + "," + format_double(report.upper_bound);
        for (double b : report.per_receiver_beta) csv += "," + format_double(b);
        csv += "\n";
        char line[128];
        std::snprintf(line, sizeof(line), "%-4s gain %12.4f   (bound %g)\n", name.c_str(),
                      report.gain, report.upper_bound);
        pretty += line;
    }
    write_or_print(flags.format == "csv" ? csv : pretty, flags.out);
    return 0;
}

int cmd_table(const std::string& preset, std::optional<int> seeds, int jobs,
              const GlobalFlags& flags) {
    ExperimentSpec spec = preset_spec(preset);
    if (seeds) spec.n_seeds = *seeds;
    if (flags.seed) spec.base_seed = *flags.seed;
    const ResultTable table = run_experiment(spec, jobs);
    emit_table(table, flags);
    return 0;
}

int cmd_formation(const std::string& config_path, std::optional<int> seeds, int jobs,
                  const GlobalFlags& flags) {
    ExperimentSpec spec = load_spec(config_path);
    if (spec.scenario.n_streams < 2)
        throw std::invalid_argument("`formation` needs a scenario with n_streams >= 2");
    // The six joint protocols, regardless of what the config listed.
    spec.protocols.clear();
    for (const auto name : joint_protocol_names()) spec.protocols.emplace_back(name);
    if (seeds) spec.n_seeds = *seeds;
    if (flags.seed) spec.base_seed = *flags.seed;
    const ResultTable table = run_experiment(spec, jobs);
    emit_table(table, flags, spec.output);
    return 0;
}

int cmd_doppler(double fo, double dmin, double dmax, int steps, int group_size, bool round_bits,
                const GlobalFlags& flags) {
    LinkBudgetParams params;
    params.overhead_fraction = fo;
    params.group_size = group_size;
    const std::string csv = doppler_curve_csv(
        params, dmin, dmax, steps, round_bits ? BitRounding::CeilToInt : BitRounding::Continuous);
    write_or_print(csv, flags.out);
    return 0;
}

int cmd_rate(int group_size, double coherence_ms, double dmin, double dmax, int steps,
             double train_ms, double guard_ms, const GlobalFlags& flags) {
    const LinkBudgetParams params;
    const OverheadParams overhead{train_ms * 1e-3, guard_ms * 1e-3};
    const std::string csv =
        rate_curve_csv(params, overhead, group_size, coherence_ms * 1e-3, dmin, dmax, steps);
    write_or_print(csv, flags.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cobeam: coherent group communication gains, protocols and link budgets"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalFlags flags;
    app.add_option("--seed", flags.seed, "base seed override");
    app.add_option("--out", flags.out, "output file (default: stdout)");
    app.add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"csv", "md"}));

    std::string config_path;
    std::string preset;
    std::optional<int> seeds;
    int jobs = 1;

    auto* gain = app.add_subcommand("gain", "single-scenario gain report");
    gain->add_option("--config", config_path, "experiment config (JSON)")->required();

    auto* table = app.add_subcommand("table", "reproduce one of the reported tables");
    table->add_option("--preset", preset, "preset name")
        ->required()
        ->check(CLI::IsMember({"t1", "t3", "t4", "t5", "t6", "t7", "t8", "t9", "t10"}));
    table->add_option("--seeds", seeds, "number of seeds (default: preset)");
    table->add_option("--jobs", jobs, "worker threads for seed execution");

    auto* formation = app.add_subcommand("formation", "six-protocol joint table");
    formation->add_option("--config", config_path, "experiment config (JSON)")->required();
    formation->add_option("--seeds", seeds, "number of seeds (default: config)");
    formation->add_option("--jobs", jobs, "worker threads for seed execution");

    double fo = 0.1, dmin = 1000.0, dmax = 10000.0;
    int steps = 100, group_size = 10;
    bool round_bits = false;
    auto* doppler = app.add_subcommand("doppler", "tolerable Doppler spread vs distance (CSV)");
    doppler->add_option("--fo", fo, "overhead fraction");
    doppler->add_option("--dmin", dmin, "minimum distance, m");
    doppler->add_option("--dmax", dmax, "maximum distance, m");
    doppler->add_option("--steps", steps, "sample count");
    doppler->add_option("--group-size", group_size, "nodes per group");
    doppler->add_flag("--round-bits", round_bits, "round bit counts up to integers");

    double coherence_ms = 100.0, rate_dmin = 1000.0, rate_dmax = 30000.0;
    double train_ms = 5.0, guard_ms = 2.0;
    int rate_steps = 100, rate_n = 10;
    auto* rate = app.add_subcommand("rate", "coherent vs point-to-point rate curve (CSV)");
    rate->add_option("--n", rate_n, "group size");
    rate->add_option("--coherence-ms", coherence_ms, "channel coherence time, ms");
    rate->add_option("--dmin", rate_dmin, "minimum distance, m");
    rate->add_option("--dmax", rate_dmax, "maximum distance, m");
    rate->add_option("--steps", rate_steps, "sample count");
    rate->add_option("--train-ms", train_ms, "per-node coordination slot, ms");
    rate->add_option("--guard-ms", guard_ms, "per-node guard time, ms");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gain->parsed()) return cmd_gain(config_path, flags);
        if (table->parsed()) return cmd_table(preset, seeds, jobs, flags);
        if (formation->parsed()) return cmd_formation(config_path, seeds, jobs, flags);
        if (doppler->parsed())
            return cmd_doppler(fo, dmin, dmax, steps, group_size, round_bits, flags);
        if (rate->parsed())
            return cmd_rate(rate_n, coherence_ms, rate_dmin, rate_dmax, rate_steps, train_ms,
                            guard_ms, flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
