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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cobeam/harness.hpp"

using namespace cobeam;

namespace {

ExperimentSpec small_spec() {
    ExperimentSpec spec;
    spec.scenario.n_transmitters = 3;
    spec.scenario.n_receivers = 4;
    spec.scenario.channel_model = ChannelModel::InverseSquare;
    spec.scenario.inter_group_distance = 1000.0;
    spec.scenario.group_radius = 10.0;
    spec.protocols = {"RB", "RT", "BT", "SF", "IO"};
    spec.n_seeds = 5;
    spec.base_seed = 3;
    return spec;
}

struct CsvRow {
    std::string scenario;
    std::string protocol;
    std::string mean, stddev, min, max, n;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CsvRow row;
        std::istringstream fields(line);
        std::getline(fields, row.scenario, ',');
        std::getline(fields, row.protocol, ',');
        std::getline(fields, row.mean, ',');
        std::getline(fields, row.stddev, ',');
        std::getline(fields, row.min, ',');
        std::getline(fields, row.max, ',');
        std::getline(fields, row.n, ',');
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("config loading fills defaults and validates") {
    SECTION("missing optional overhead fraction defaults to 0.1") {
        const auto j = nlohmann::json::parse(R"({
            "scenario": {"n_transmitters": 2, "n_receivers": 2},
            "protocols": ["RB"],
            "linkbudget": {"transmit_power_dbm": 12.0}
        })");
        const ExperimentSpec spec = spec_from_json(j);
        CHECK(spec.linkbudget.overhead_fraction == 0.1);
        CHECK(spec.linkbudget.transmit_power_dbm == 12.0);
        CHECK(spec.n_seeds == 100);
    }
    SECTION("more streams than transmitters is rejected") {
        const auto j = nlohmann::json::parse(R"({
            "scenario": {"n_transmitters": 2, "n_receivers": 5, "n_streams": 3},
            "protocols": ["RRB"]
        })");
        CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
    }
    SECTION("joint protocols need multiple streams") {
        const auto j = nlohmann::json::parse(R"({
            "scenario": {"n_transmitters": 4, "n_receivers": 4, "n_streams": 1},
            "protocols": ["DBT"]
        })");
        CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
    }
    SECTION("unknown protocol names are rejected") {
        const auto j = nlohmann::json::parse(R"({
            "scenario": {"n_transmitters": 2, "n_receivers": 2},
            "protocols": ["QQ"]
        })");
        CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
    }
    SECTION("empty protocol list is rejected") {
        const auto j = nlohmann::json::parse(R"({
            "scenario": {"n_transmitters": 2, "n_receivers": 2},
            "protocols": []
        })");
        CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
    }
}

TEST_CASE("specs round-trip through serialization") {
    SECTION("constructed spec") {
        ExperimentSpec spec = small_spec();
        spec.rows = {{1, 1}, {3, 4}};
        spec.output.csv_path = "out.csv";
        spec.output.markdown = true;
        const std::string text = serialize_spec(spec);
        const ExperimentSpec reloaded = spec_from_json(nlohmann::json::parse(text));
        CHECK(spec == reloaded);
        CHECK(serialize_spec(reloaded) == text);
    }
    SECTION("shipped reference config") {
        const ExperimentSpec spec = load_spec(std::string(COBEAM_CONFIG_DIR) + "/reference.json");
        const std::string text = serialize_spec(spec);
        const ExperimentSpec reloaded = spec_from_json(nlohmann::json::parse(text));
        CHECK(spec == reloaded);
    }
}

TEST_CASE("experiments are deterministic for a fixed base seed") {
    const ExperimentSpec spec = small_spec();
    const std::string a = to_csv(run_experiment(spec));
    const std::string b = to_csv(run_experiment(spec));
    CHECK(a == b);
}

TEST_CASE("parallel seed execution is byte-identical to serial") {
    ExperimentSpec spec = small_spec();
    spec.n_seeds = 16;
    const std::string serial = to_csv(run_experiment(spec, 1));
    const std::string parallel = to_csv(run_experiment(spec, 4));
    CHECK(serial == parallel);
}

TEST_CASE("the degenerate point-to-point row reports unit gain everywhere") {
    ExperimentSpec spec = small_spec();
    spec.rows = {{1, 1}};
    spec.protocols = {"RB", "RT", "BT", "SF", "IO", "ES"};
    const ResultTable table = run_experiment(spec);
    for (const auto& cell : table.cells[0]) {
        REQUIRE(cell.has_value());
        CHECK(cell->mean == 1.0);
        CHECK(cell->min == 1.0);
        CHECK(cell->max == 1.0);
        CHECK(cell->stddev == 0.0);
        CHECK(cell->n == spec.n_seeds);
    }
}

TEST_CASE("exhaustive search cells are skipped for large groups") {
    ExperimentSpec spec = small_spec();
    spec.rows = {{3, 4}, {10, 4}};
    spec.protocols = {"IO", "ES"};
    spec.n_seeds = 2;
    const ResultTable table = run_experiment(spec);
    CHECK(table.cell("3x4", "ES").has_value());
    CHECK_FALSE(table.cell("10x4", "ES").has_value());
    CHECK(table.cell("10x4", "IO").has_value());
    const std::string md = to_markdown(table);
    CHECK(md.find("-") != std::string::npos);
}

TEST_CASE("csv output is well-formed and parses back to the same values") {
    ExperimentSpec spec = small_spec();
    spec.rows = {{2, 3}};
    spec.protocols = {"RT"};
    spec.n_seeds = 3;
    const ResultTable table = run_experiment(spec);
    const std::string csv = to_csv(table);

    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "scenario,protocol,mean,std,min,max,n_seeds");

    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 1);  // single-cell table -> two lines
    CHECK(rows[0].scenario == "2x3");
    CHECK(rows[0].protocol == "RT");
    const auto& cell = table.cell("2x3", "RT");
    CHECK(std::stod(rows[0].mean) == cell->mean);
    CHECK(std::stod(rows[0].stddev) == cell->stddev);
    CHECK(std::stod(rows[0].min) == cell->min);
    CHECK(std::stod(rows[0].max) == cell->max);
    CHECK(std::stoi(rows[0].n) == cell->n);
}

TEST_CASE("markdown tables have one column per protocol plus the label") {
    ExperimentSpec spec = small_spec();
    const ResultTable table = run_experiment(spec);
    const std::string md = to_markdown(table);
    std::istringstream in(md);
    std::string line;
    std::getline(in, line);
    const auto pipes = std::count(line.begin(), line.end(), '|');
    CHECK(pipes == static_cast<long>(spec.protocols.size()) + 2);
}

TEST_CASE("emit writes files and rejects unwritable paths") {
    ExperimentSpec spec = small_spec();
    spec.rows = {{2, 2}};
    spec.protocols = {"RT"};
    spec.n_seeds = 2;
    const ResultTable table = run_experiment(spec);
    const std::string path = "harness_emit_test.csv";
    emit(table, TableFormat::Csv, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == to_csv(table));
    in.close();
    std::remove(path.c_str());
    CHECK_THROWS_AS(emit(table, TableFormat::Csv, "no_such_dir/x/y.csv"), std::runtime_error);
}

TEST_CASE("presets cover the reported table settings") {
    const ExperimentSpec t1 = preset_spec("t1");
    CHECK(t1.scenario.channel_model == ChannelModel::InverseSquare);
    CHECK(t1.scenario.group_radius == 10.0);
    CHECK(t1.rows.size() == 5);
    CHECK(t1.n_seeds == 100);
    const ExperimentSpec t9 = preset_spec("t9");
    CHECK(t9.scenario.channel_model == ChannelModel::FreeSpace);
    CHECK(t9.scenario.inter_group_distance == 10000.0);
    CHECK(t9.scenario.n_streams == 2);
    CHECK(t9.n_seeds == 200);
    CHECK(t9.protocols.size() == 6);
    CHECK_THROWS_AS(preset_spec("t2"), std::invalid_argument);
}

TEST_CASE("preset runs keep the dominance orderings") {
    ExperimentSpec spec = preset_spec("t1");
    spec.rows = {{3, 10}};
    spec.n_seeds = 3;
    const ResultTable table = run_experiment(spec);
    const double rb = table.cell("3x10", "RB")->mean;
    const double rt = table.cell("3x10", "RT")->mean;
    const double bt = table.cell("3x10", "BT")->mean;
    const double sf = table.cell("3x10", "SF")->mean;
    const double io = table.cell("3x10", "IO")->mean;
    const double es = table.cell("3x10", "ES")->mean;
    CHECK(rb < rt);
    CHECK(bt >= rt);
    CHECK(io >= sf);
    CHECK(es >= io * (1.0 - 1e-4));
    CHECK(io <= upper_bound(3, 10));
}

TEST_CASE("doppler and rate curve CSVs are well-formed") {
    const LinkBudgetParams params;
    const std::string doppler = doppler_curve_csv(params, 1000.0, 10000.0, 5);
    std::istringstream in(doppler);
    std::string line;
    std::getline(in, line);
    CHECK(line == "D_m,S_Hz");
    int count = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++count;
    CHECK(count == 5);

    const std::string rate = rate_curve_csv(params, {5e-3, 2e-3}, 10, 0.1, 1000.0, 30000.0, 4);
    std::istringstream rin(rate);
    std::getline(rin, line);
    CHECK(line == "D_m,rate_coherent,rate_p2p");
    CHECK_THROWS_AS(doppler_curve_csv(params, -1.0, 10.0, 5), std::invalid_argument);
}
