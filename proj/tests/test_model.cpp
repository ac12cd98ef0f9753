// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "phasefit/model.hpp"

using namespace phasefit;

TEST_CASE("default parameters validate") {
    OfdmParams params;
    PilotGeometry geometry;
    const auto result = validate(params, geometry);
    CHECK(result.ok);
    CHECK(result.message.empty());
}

TEST_CASE("cyclic prefix must be shorter than the symbol body") {
    OfdmParams params;
    params.n = 64;
    params.cp_len = 64;
    const auto result = validate(params, PilotGeometry{});
    CHECK_FALSE(result.ok);
    CHECK(result.message.find("cp_len < n violated") != std::string::npos);

    params.cp_len = 65;
    CHECK_FALSE(validate(params, PilotGeometry{}).ok);

    params.cp_len = 63;
    CHECK(validate(params, PilotGeometry{}).ok);
}

TEST_CASE("pilot observations must fit inside one symbol body") {
    OfdmParams params; // n = 64
    PilotGeometry geometry;
    geometry.delta_t = 8;
    geometry.n_p = 8; // last index 56 < 64
    CHECK(validate(params, geometry).ok);

    geometry.n_p = 9; // last index 64
    const auto result = validate(params, geometry);
    CHECK_FALSE(result.ok);
    CHECK(result.message.find("pilot indices exceed symbol") != std::string::npos);

    geometry.n_p = 16;
    geometry.delta_t = 4; // last index 60 < 64
    CHECK(validate(params, geometry).ok);
}

TEST_CASE("subcarrier count must be a power of two") {
    OfdmParams params;
    params.cp_len = 0;
    for (int bad : {0, 1, 3, 12, 100, -64}) {
        params.n = bad;
        CAPTURE(bad);
        CHECK_FALSE(validate(params, PilotGeometry{.delta_t = 1, .n_p = 1, .pattern = PatternKind::comb, .x1 = 1, .y2 = 1}).ok);
    }
    for (int good : {2, 4, 64, 1024}) {
        params.n = good;
        CAPTURE(good);
        CHECK(validate(params, PilotGeometry{.delta_t = 1, .n_p = 1, .pattern = PatternKind::comb, .x1 = 1, .y2 = 1}).ok);
    }
}

TEST_CASE("remaining scalar bounds") {
    OfdmParams params;
    PilotGeometry geometry;

    params.l_symbols = 0;
    CHECK_FALSE(validate(params, geometry).ok);
    params.l_symbols = 1;

    params.cp_len = -1;
    CHECK_FALSE(validate(params, geometry).ok);
    params.cp_len = 16;

    geometry.delta_t = 0;
    CHECK_FALSE(validate(params, geometry).ok);
    geometry.delta_t = 8;

    geometry.n_p = 0;
    CHECK_FALSE(validate(params, geometry).ok);
    geometry.n_p = 8;

    geometry.x1 = 0;
    CHECK_FALSE(validate(params, geometry).ok);
    geometry.x1 = 8;

    geometry.y2 = 0;
    CHECK_FALSE(validate(params, geometry).ok);
    geometry.y2 = 128; // larger than n
    CHECK_FALSE(validate(params, geometry).ok);
    geometry.y2 = 8;
    CHECK(validate(params, geometry).ok);
}

TEST_CASE("pilot time indices are multiples of delta_t starting at zero") {
    PilotGeometry geometry;
    geometry.delta_t = 8;
    geometry.n_p = 8;
    const auto idx = pilot_time_indices(geometry);
    REQUIRE(idx.size() == 8);
    for (int k = 0; k < 8; ++k)
        CHECK(idx[static_cast<size_t>(k)] == 8 * k);

    geometry.n_p = 1;
    CHECK(pilot_time_indices(geometry) == std::vector<int>{0});
}
