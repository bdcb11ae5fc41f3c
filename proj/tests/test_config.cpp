/*
 Copyright 2026 The niquad Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "niquad/config.hpp"
#include "niquad/error.hpp"

using namespace niquad;

namespace {

Error parse_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e;
    }
    FAIL("parse_config accepted: " << text);
    return Error(ErrorCode::kIo, "unreachable");
}

}  // namespace

TEST_CASE("empty object yields the reference scenario") {
    const RunConfig cfg = parse_config("{}");
    CHECK(cfg == RunConfig{});
    CHECK(cfg.quad.m == 0.5);
    CHECK(cfg.controller.kp == Eigen::Vector2d(5, 5));
    CHECK(cfg.controller.gamma_ir == 160.0);
    CHECK(cfg.controller.delta == 0.6);
    CHECK(cfg.controller.gamma_sector == 0.8);
    CHECK(cfg.sim.t_final == 30.0);
    CHECK(cfg.sim.dt == 1e-3);
    CHECK(cfg.sim.initial_horiz == HorizState{2, 0, -1.5, 0});
    CHECK(cfg.sim.mode == SimMode::kHorizontalPointmass);
    CHECK_FALSE(cfg.sim.disturbance.has_value());
}

TEST_CASE("validation errors name the field") {
    const Error e = parse_error(R"({"controller": {"delta": -1}})");
    CHECK(e.code() == ErrorCode::kValidationError);
    CHECK(std::string(e.what()).find("controller.delta") != std::string::npos);

    CHECK(parse_error(R"({"quad": {"m": 0}})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"controller": {"gamma_sector": 1.0}})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"controller": {"kp": [5, -1]}})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"sim": {"dt": 0.1, "t_final": 0.01}})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"sim": {"mode": "hover"}})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"sim": {"initial_horiz": [1, 2, 3]}})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"sim": {"log_decimation": 0}})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"output_format": "xml"})").code() == ErrorCode::kValidationError);
    CHECK(parse_error(R"({"quad": {"m": "heavy"}})").code() == ErrorCode::kValidationError);
}

TEST_CASE("unknown keys are rejected") {
    const Error e = parse_error(R"({"quad": {"mass": 0.5}})");
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).find("mass") != std::string::npos);
    CHECK(parse_error(R"({"extra": 1})").code() == ErrorCode::kParseError);
}

TEST_CASE("malformed JSON reports a position") {
    const Error e = parse_error("{\n  \"quad\": {\n    \"m\": 0.5,\n  }\n}");
    CHECK(e.code() == ErrorCode::kParseError);
    const std::string msg = e.what();
    CHECK(msg.find("line 4") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
    CHECK(parse_error("[1, 2]").code() == ErrorCode::kParseError);
}

TEST_CASE("accepted shorthands") {
    const RunConfig cfg = parse_config(R"({
        "controller": {"kp": 3.5},
        "sim": {"disturbance": null, "mode": "full_quadrotor", "reference": [1, -1]},
        "output_format": "json",
        "emit_plot": true
    })");
    CHECK(cfg.controller.kp == Eigen::Vector2d(3.5, 3.5));
    CHECK_FALSE(cfg.sim.disturbance.has_value());
    CHECK(cfg.sim.mode == SimMode::kFullQuadrotor);
    CHECK(cfg.sim.reference == Eigen::Vector2d(1, -1));
    CHECK(cfg.output_format == OutputFormat::kJson);
    CHECK(cfg.emit_plot);
    CHECK(parse_config(R"({"sim": {"disturbance": [0.1, 0.2]}})").sim.disturbance == Eigen::Vector2d(0.1, 0.2));
}

TEST_CASE("serialize then parse is the identity") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pos(0.01, 10.0), any(-5.0, 5.0), unit(0.05, 0.95);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < 300; ++i) {
        RunConfig cfg;
        cfg.quad.m = pos(rng);
        cfg.quad.g = pos(rng);
        cfg.quad.jx = pos(rng) * 1e-3;
        cfg.quad.jr = pos(rng) * 1e-5;
        cfg.controller.kp = Eigen::Vector2d(pos(rng), pos(rng));
        cfg.controller.gamma_ir = pos(rng) * 30;
        cfg.controller.delta = pos(rng);
        cfg.controller.gamma_sector = unit(rng);
        cfg.sim.dt = pos(rng) * 1e-3;
        cfg.sim.t_final = cfg.sim.dt * (1 + pos(rng) * 100);
        cfg.sim.initial_horiz = {any(rng), any(rng), any(rng), any(rng)};
        cfg.sim.initial_ctrl.z = Eigen::Vector2d(any(rng), any(rng));
        if (coin(rng)) cfg.sim.disturbance = Eigen::Vector2d(any(rng), any(rng));
        cfg.sim.reference = Eigen::Vector2d(any(rng), any(rng));
        cfg.sim.mode = coin(rng) ? SimMode::kFullQuadrotor : SimMode::kHorizontalPointmass;
        cfg.sim.log_decimation = 1 + static_cast<int>(pos(rng));
        cfg.sim.allow_invalid_params = coin(rng);
        cfg.sim.max_tilt = unit(rng);
        cfg.output_path = "out_" + std::to_string(i) + ".csv";
        cfg.output_format = coin(rng) ? OutputFormat::kJson : OutputFormat::kCsv;
        cfg.emit_plot = coin(rng);
        const RunConfig back = parse_config(serialize_config(cfg));
        CHECK(back == cfg);
    }
}
