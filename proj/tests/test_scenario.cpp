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

#include <cmath>

#include "cobeam/scenario.hpp"

using namespace cobeam;

namespace {

ScenarioConfig base_config() {
    ScenarioConfig c;
    c.inter_group_distance = 1000.0;
    c.group_radius = 10.0;
    c.wavelength = 0.125;
    return c;
}

}  // namespace

TEST_CASE("config validation rejects inconsistent settings") {
    ScenarioConfig c = base_config();
    CHECK_NOTHROW(c.validate());
    c.n_streams = 2;
    c.n_transmitters = 1;
    c.n_receivers = 5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // K > min(N, M)
    c = base_config();
    c.group_radius = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.wavelength = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("anchors are fixed and extra nodes stay within the group radius") {
    ScenarioConfig c = base_config();
    SECTION("single pair uses only the anchors") {
        Rng rng(1, "placement");
        const NodeLayout layout = place_nodes(c, rng);
        REQUIRE(layout.transmitters.size() == 1);
        REQUIRE(layout.receivers.size() == 1);
        CHECK(layout.transmitters[0].x == 0.0);
        CHECK(layout.transmitters[0].y == 0.0);
        CHECK(layout.receivers[0].x == 1000.0);
        CHECK(layout.receivers[0].y == 0.0);
    }
    SECTION("extra nodes are within r of their anchor") {
        c.n_transmitters = 3;
        c.n_receivers = 7;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Rng rng(seed, "placement");
            const NodeLayout layout = place_nodes(c, rng);
            for (const Vec2& p : layout.transmitters)
                CHECK(distance(p, layout.transmitters[0]) <= c.group_radius + 1e-12);
            for (const Vec2& p : layout.receivers)
                CHECK(distance(p, layout.receivers[0]) <= c.group_radius + 1e-12);
            CHECK(distance(layout.transmitters[0], layout.receivers[0]) == c.inter_group_distance);
        }
    }
    SECTION("helper nodes trail their anchor away from the peer group") {
        c.n_transmitters = 6;
        c.n_receivers = 6;
        Rng rng(3, "placement");
        const NodeLayout layout = place_nodes(c, rng);
        for (int n = 1; n < 6; ++n) CHECK(layout.transmitters[n].x <= 0.0);
        for (int m = 1; m < 6; ++m) CHECK(layout.receivers[m].x >= c.inter_group_distance);
    }
}

TEST_CASE("multi-stream layouts build one cluster per stream") {
    ScenarioConfig c = base_config();
    c.n_transmitters = 8;
    c.n_receivers = 8;
    c.n_streams = 2;
    Rng rng(11, "placement");
    const NodeLayout layout = place_nodes(c, rng);
    const double gap = kClusterGapFactor * c.group_radius;
    CHECK(layout.transmitters[1].x == 0.0);
    CHECK(layout.transmitters[1].y == gap);
    CHECK(layout.receivers[1].x == c.inter_group_distance);
    CHECK(layout.receivers[1].y == gap);
    // Free nodes alternate homes and stay within r of their own anchor.
    for (int n = 2; n < 8; ++n) {
        const int home = n % 2;
        CHECK(distance(layout.transmitters[n], layout.transmitters[home]) <= c.group_radius);
        CHECK(distance(layout.transmitters[n], layout.transmitters[1 - home]) > c.group_radius);
    }
}

TEST_CASE("placement with a fixed seed is bit-identical") {
    ScenarioConfig c = base_config();
    c.n_transmitters = 10;
    c.n_receivers = 10;
    Rng rng_a(42, "placement");
    Rng rng_b(42, "placement");
    const NodeLayout a = place_nodes(c, rng_a);
    const NodeLayout b = place_nodes(c, rng_b);
    for (std::size_t i = 0; i < a.transmitters.size(); ++i) {
        CHECK(a.transmitters[i].x == b.transmitters[i].x);
        CHECK(a.transmitters[i].y == b.transmitters[i].y);
    }
    for (std::size_t i = 0; i < a.receivers.size(); ++i) {
        CHECK(a.receivers[i].x == b.receivers[i].x);
        CHECK(a.receivers[i].y == b.receivers[i].y);
    }
}

TEST_CASE("channel gain formulas match hand-computed values") {
    ScenarioConfig c = base_config();
    SECTION("inverse square at unit distance") {
        c.channel_model = ChannelModel::InverseSquare;
        CHECK(channel_gain(1.0, c) == 1.0);
        CHECK(channel_gain(2.0, c) == 0.25);
    }
    SECTION("free space at 1 km") {
        c.channel_model = ChannelModel::FreeSpace;
        CHECK_THAT(channel_gain(1000.0, c), Catch::Matchers::WithinRel(9.8946e-11, 1e-4));
    }
    SECTION("two-ray beyond the crossover distance") {
        c.channel_model = ChannelModel::TwoRay;
        CHECK_THAT(crossover_distance(c), Catch::Matchers::WithinRel(8.0 * std::numbers::pi, 1e-12));
        CHECK_THAT(channel_gain(1000.0, c), Catch::Matchers::WithinRel(6.25e-14, 1e-12));
    }
    SECTION("two-ray below the crossover distance equals free space") {
        c.channel_model = ChannelModel::TwoRay;
        ScenarioConfig fs = c;
        fs.channel_model = ChannelModel::FreeSpace;
        CHECK(channel_gain(10.0, c) == channel_gain(10.0, fs));
    }
    SECTION("nonpositive distance is rejected") {
        CHECK_THROWS_AS(channel_gain(0.0, c), std::invalid_argument);
        CHECK_THROWS_AS(channel_gain(-5.0, c), std::invalid_argument);
    }
}

TEST_CASE("gains decrease strictly with distance under every model") {
    ScenarioConfig c = base_config();
    for (ChannelModel model :
         {ChannelModel::InverseSquare, ChannelModel::FreeSpace, ChannelModel::TwoRay}) {
        c.channel_model = model;
        double prev = channel_gain(1.0, c);
        for (double d = 2.0; d <= 4000.0; d *= 1.3) {
            const double g = channel_gain(d, c);
            CHECK(g < prev);
            prev = g;
        }
    }
}

TEST_CASE("two-ray model is continuous at the crossover distance") {
    ScenarioConfig c = base_config();
    c.channel_model = ChannelModel::TwoRay;
    const double dc = crossover_distance(c);
    ScenarioConfig fs = c;
    fs.channel_model = ChannelModel::FreeSpace;
    const double free_space_at_dc = channel_gain(dc, fs);
    const double two_ray_at_dc = channel_gain(dc, c);  // d == dc takes the far branch
    CHECK_THAT(two_ray_at_dc, Catch::Matchers::WithinRel(free_space_at_dc, 1e-12));
}

TEST_CASE("phase shift wraps the path length into [0, 2pi)") {
    const double lambda = 0.125;
    CHECK_THAT(phase_shift(lambda, lambda), Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(phase_shift(1.25 * lambda, lambda),
               Catch::Matchers::WithinRel(std::numbers::pi / 2.0, 1e-12));
    CHECK_THAT(phase_shift(1000.0, 0.125), Catch::Matchers::WithinAbs(0.0, 1e-12));  // 8000 cycles
    CHECK_THROWS_AS(phase_shift(0.0, lambda), std::invalid_argument);
    CHECK_THROWS_AS(phase_shift(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("phase shift is periodic in whole wavelengths and stays in range") {
    Rng rng(7, "phase_prop");
    for (int trial = 0; trial < 200; ++trial) {
        const double lambda = rng.uniform(0.01, 2.0);
        const double d = rng.uniform(0.1, 5000.0);
        const double p = phase_shift(d, lambda);
        REQUIRE(p >= 0.0);
        REQUIRE(p < two_pi);
        const int k = static_cast<int>(rng.below(20)) + 1;
        const double shifted = phase_shift(d + k * lambda, lambda);
        double diff = std::abs(shifted - p);
        diff = std::min(diff, two_pi - diff);  // wraparound-aware comparison
        CHECK(diff < 1e-6 * (d / lambda));     // frac() loses precision with many cycles
        CHECK(diff < 1e-3);
    }
}

TEST_CASE("channel matrix matches element-wise recomputation from positions") {
    ScenarioConfig c = base_config();
    c.n_transmitters = 3;
    c.n_receivers = 10;
    Rng rng(11, "placement");
    const NodeLayout layout = place_nodes(c, rng);
    const ChannelMatrix ch = build_channels(layout, c);
    REQUIRE(ch.n_transmitters == 3);
    REQUIRE(ch.n_receivers == 10);
    for (int n = 0; n < 3; ++n) {
        for (int m = 0; m < 10; ++m) {
            const double d = distance(layout.transmitters[n], layout.receivers[m]);
            CHECK(ch.gain(n, m) == std::sqrt(channel_gain(d, c)));
            CHECK(ch.phase(n, m) == phase_shift(d, c.wavelength));
            CHECK(ch.gain(n, m) > 0.0);
            CHECK(ch.phase(n, m) >= 0.0);
            CHECK(ch.phase(n, m) < two_pi);
        }
    }
}

TEST_CASE("single-pair channel is the anchor link") {
    ScenarioConfig c = base_config();
    Rng rng(1, "placement");
    const NodeLayout layout = place_nodes(c, rng);
    const ChannelMatrix ch = build_channels(layout, c);
    CHECK(ch.gain(0, 0) == std::sqrt(channel_gain(c.inter_group_distance, c)));
}

TEST_CASE("coincident transmitter and receiver are rejected") {
    ScenarioConfig c = base_config();
    NodeLayout layout;
    layout.transmitters = {{0.0, 0.0}};
    layout.receivers = {{0.0, 0.0}};
    CHECK_THROWS_AS(build_channels(layout, c), std::invalid_argument);
}

TEST_CASE("equal link distances give equal gains") {
    ScenarioConfig c = base_config();
    NodeLayout layout;
    // Two transmitters mirrored about the receiver axis: all pairwise
    // distances to the receivers on the axis are equal.
    layout.transmitters = {{0.0, 5.0}, {0.0, -5.0}};
    layout.receivers = {{1000.0, 0.0}, {2000.0, 0.0}};
    const ChannelMatrix ch = build_channels(layout, c);
    CHECK(ch.gain(0, 0) == ch.gain(1, 0));
    CHECK(ch.gain(0, 1) == ch.gain(1, 1));
}
