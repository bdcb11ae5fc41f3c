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

#include "niquad/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "niquad/error.hpp"

namespace niquad {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& rule) {
    throw Error(ErrorCode::kValidationError, "invalid value for '" + path + "': " + rule);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            const std::string where = path.empty() ? key : path + "." + key;
            throw Error(ErrorCode::kParseError, "unknown key '" + where + "'");
        }
    }
}

const json* child_object(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return nullptr;
    if (!it->is_object()) invalid(path, "expected an object");
    return &*it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) invalid(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) invalid(path, "must be finite");
    return d;
}

void read_positive(const json& obj, const char* key, const std::string& path, double& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    const std::string p = path + "." + key;
    const double v = number(*it, p);
    if (!(v > 0.0)) invalid(p, "must be positive");
    out = v;
}

template <int N>
Eigen::Matrix<double, N, 1> vector_of(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != N) invalid(path, "expected an array of " + std::to_string(N) + " numbers");
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) out(i) = number(v[i], path + "[" + std::to_string(i) + "]");
    return out;
}

void parse_quad(const json& q, QuadParams& out) {
    reject_unknown(q, "quad", {"m", "g", "l", "b", "d", "jx", "jy", "jz", "jr"});
    read_positive(q, "m", "quad", out.m);
    read_positive(q, "g", "quad", out.g);
    read_positive(q, "l", "quad", out.l);
    read_positive(q, "b", "quad", out.b);
    read_positive(q, "d", "quad", out.d);
    read_positive(q, "jx", "quad", out.jx);
    read_positive(q, "jy", "quad", out.jy);
    read_positive(q, "jz", "quad", out.jz);
    read_positive(q, "jr", "quad", out.jr);
}

void parse_controller(const json& c, ControllerParams& out) {
    reject_unknown(c, "controller", {"kp", "gamma_ir", "delta", "gamma_sector"});
    if (auto it = c.find("kp"); it != c.end()) {
        if (it->is_number()) {
            const double k = number(*it, "controller.kp");
            out.kp = Eigen::Vector2d(k, k);
        } else {
            out.kp = vector_of<2>(*it, "controller.kp");
        }
        if (!(out.kp(0) > 0.0) || !(out.kp(1) > 0.0)) invalid("controller.kp", "must be positive");
    }
    read_positive(c, "gamma_ir", "controller", out.gamma_ir);
    read_positive(c, "delta", "controller", out.delta);
    if (auto it = c.find("gamma_sector"); it != c.end()) {
        const double g = number(*it, "controller.gamma_sector");
        if (!(g > 0.0 && g < 1.0)) invalid("controller.gamma_sector", "must lie in (0, 1)");
        out.gamma_sector = g;
    }
}

SimMode parse_mode(const json& v) {
    if (v == "horizontal_pointmass") return SimMode::kHorizontalPointmass;
    if (v == "full_quadrotor") return SimMode::kFullQuadrotor;
    invalid("sim.mode", "expected \"horizontal_pointmass\" or \"full_quadrotor\"");
}

void parse_sim(const json& s, SimConfig& out) {
    reject_unknown(s, "sim", {"t_final", "dt", "initial_horiz", "initial_ctrl", "disturbance",
                              "mode", "log_decimation", "reference", "allow_invalid_params",
                              "max_tilt"});
    read_positive(s, "t_final", "sim", out.t_final);
    read_positive(s, "dt", "sim", out.dt);
    if (auto it = s.find("initial_horiz"); it != s.end()) {
        out.initial_horiz = HorizState::from_vector(vector_of<4>(*it, "sim.initial_horiz"));
    }
    if (auto it = s.find("initial_ctrl"); it != s.end()) {
        out.initial_ctrl.z = vector_of<2>(*it, "sim.initial_ctrl");
    }
    if (auto it = s.find("disturbance"); it != s.end()) {
        if (it->is_null()) {
            out.disturbance.reset();
        } else {
            out.disturbance = vector_of<2>(*it, "sim.disturbance");
        }
    }
    if (auto it = s.find("mode"); it != s.end()) out.mode = parse_mode(*it);
    if (auto it = s.find("log_decimation"); it != s.end()) {
        if (!it->is_number_integer() || it->get<long long>() < 1 ||
            it->get<long long>() > std::numeric_limits<int>::max()) {
            invalid("sim.log_decimation", "expected an integer >= 1");
        }
        out.log_decimation = it->get<int>();
    }
    if (auto it = s.find("reference"); it != s.end()) out.reference = vector_of<2>(*it, "sim.reference");
    if (auto it = s.find("allow_invalid_params"); it != s.end()) {
        if (!it->is_boolean()) invalid("sim.allow_invalid_params", "expected a boolean");
        out.allow_invalid_params = it->get<bool>();
    }
    if (auto it = s.find("max_tilt"); it != s.end()) {
        const double v = number(*it, "sim.max_tilt");
        if (!(v > 0.0 && v < std::numbers::pi / 2.0)) invalid("sim.max_tilt", "must lie in (0, pi/2)");
        out.max_tilt = v;
    }
    if (!(out.t_final >= out.dt)) invalid("sim.t_final", "must be >= sim.dt");
}

std::string position_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    // nlohmann reports the byte just past the offending token.
    if (col > 1) --col;
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string_view to_string(SimMode mode) {
    return mode == SimMode::kFullQuadrotor ? "full_quadrotor" : "horizontal_pointmass";
}

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::kJson ? "json" : "csv";
}

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kParseError,
                    "malformed JSON at " + position_of(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::kParseError, "configuration must be a JSON object");
    reject_unknown(doc, "", {"quad", "controller", "sim", "output_path", "output_format", "emit_plot"});

    RunConfig cfg;
    if (const json* q = child_object(doc, "quad", "quad")) parse_quad(*q, cfg.quad);
    if (const json* c = child_object(doc, "controller", "controller")) parse_controller(*c, cfg.controller);
    if (const json* s = child_object(doc, "sim", "sim")) parse_sim(*s, cfg.sim);
    if (auto it = doc.find("output_path"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>().empty()) invalid("output_path", "expected a non-empty string");
        cfg.output_path = it->get<std::string>();
    }
    if (auto it = doc.find("output_format"); it != doc.end()) {
        if (*it == "csv") {
            cfg.output_format = OutputFormat::kCsv;
        } else if (*it == "json") {
            cfg.output_format = OutputFormat::kJson;
        } else {
            invalid("output_format", "expected \"csv\" or \"json\"");
        }
    }
    if (auto it = doc.find("emit_plot"); it != doc.end()) {
        if (!it->is_boolean()) invalid("emit_plot", "expected a boolean");
        cfg.emit_plot = it->get<bool>();
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    const QuadParams& q = cfg.quad;
    const ControllerParams& c = cfg.controller;
    const SimConfig& s = cfg.sim;
    json doc;
    doc["quad"] = {{"m", q.m},   {"g", q.g},   {"l", q.l},   {"b", q.b},  {"d", q.d},
                   {"jx", q.jx}, {"jy", q.jy}, {"jz", q.jz}, {"jr", q.jr}};
    doc["controller"] = {{"kp", {c.kp(0), c.kp(1)}},
                         {"gamma_ir", c.gamma_ir},
                         {"delta", c.delta},
                         {"gamma_sector", c.gamma_sector}};
    const HorizState& h = s.initial_horiz;
    doc["sim"] = {{"t_final", s.t_final},
                  {"dt", s.dt},
                  {"initial_horiz", {h.x, h.xdot, h.y, h.ydot}},
                  {"initial_ctrl", {s.initial_ctrl.z(0), s.initial_ctrl.z(1)}},
                  {"disturbance", s.disturbance ? json{(*s.disturbance)(0), (*s.disturbance)(1)} : json(nullptr)},
                  {"mode", std::string(to_string(s.mode))},
                  {"log_decimation", s.log_decimation},
                  {"reference", {s.reference(0), s.reference(1)}},
                  {"allow_invalid_params", s.allow_invalid_params},
                  {"max_tilt", s.max_tilt}};
    doc["output_path"] = cfg.output_path;
    doc["output_format"] = std::string(to_string(cfg.output_format));
    doc["emit_plot"] = cfg.emit_plot;
    return doc.dump(2);
}

}  // namespace niquad
