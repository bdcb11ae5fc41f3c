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

#include "niquad/simulator.hpp"

#include <cmath>
#include <sstream>

namespace niquad {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec14 = Eigen::Matrix<double, 14, 1>;

void gate_params(const QuadParams& qp, const ControllerParams& cp, const SimConfig& sc) {
    try {
        qp.validate();
        cp.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::kConfigInvalid, e.what());
    }
    sc.validate();
    const ParamCheck check = validate_params(qp, cp);
    if (!check.passed && !sc.allow_invalid_params) {
        std::ostringstream msg;
        msg << "controller violates delta >= 1/(gamma m min kp): delta = " << cp.delta
            << " < delta_min = " << check.delta_min;
        throw Error(ErrorCode::kConfigInvalid, msg.str());
    }
}

Eigen::Vector2d applied_force(const Eigen::Vector2d& z, const SimConfig& sc) {
    return sc.disturbance ? Eigen::Vector2d(z + *sc.disturbance) : z;
}

HorizState relative(const HorizState& h, const Eigen::Vector2d& ref) {
    return {h.x - ref(0), h.xdot, h.y - ref(1), h.ydot};
}

void append_sample(TrajectoryLog& log, double t, const HorizState& error, const Eigen::Vector2d& z,
                   const Eigen::Vector2d& force, const QuadParams& qp, const ControllerParams& cp) {
    log.times.push_back(t);
    log.horiz_states.push_back(
        {error.x + log.reference(0), error.xdot, error.y + log.reference(1), error.ydot});
    log.ctrl_states.push_back(ControllerState{z});
    log.forces.push_back(force);
    log.storage.push_back(storage_value(error, cp.kp, qp));
}

void reserve(TrajectoryLog& log, long steps, int decimation) {
    const auto n = static_cast<std::size_t>(steps / decimation + 1);
    log.times.reserve(n);
    log.horiz_states.reserve(n);
    log.ctrl_states.reserve(n);
    log.forces.reserve(n);
    log.storage.reserve(n);
}

}  // namespace

void SimConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfigInvalid, what); };
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
    if (!(t_final >= dt) || !std::isfinite(t_final)) fail("t_final must be >= dt");
    if (log_decimation < 1) fail("log_decimation must be >= 1");
    if (!initial_horiz.as_vector().allFinite() || !initial_ctrl.z.allFinite()) {
        fail("initial state must be finite");
    }
    if (disturbance && !disturbance->allFinite()) fail("disturbance must be finite");
    if (!reference.allFinite()) fail("reference must be finite");
    if (!(max_tilt > 0.0 && max_tilt < std::numbers::pi / 2.0)) fail("max_tilt must lie in (0, pi/2)");
}

long SimConfig::steps() const { return std::lround(t_final / dt); }

TrajectoryLog simulate_closed_loop(const QuadParams& qp, const ControllerParams& cp,
                                   const SimConfig& sc) {
    gate_params(qp, cp, sc);
    if (sc.mode != SimMode::kHorizontalPointmass) {
        throw Error(ErrorCode::kConfigInvalid, "simulate_closed_loop needs horizontal_pointmass mode");
    }

    // State: position/velocity error in both axes, then the controller state.
    auto field = [&](double, const Vec6& s) -> Vec6 {
        const HorizState e = HorizState::from_vector(s.head<4>());
        const Eigen::Vector2d z = s.tail<2>();
        Vec6 ds;
        ds.head<4>() = reshaped_horizontal_dynamics(e, applied_force(z, sc), cp.kp, qp);
        ds.tail<2>() = sni_controller_derivative(ControllerState{z}, e.position(), cp);
        return ds;
    };

    const HorizState& h0 = sc.initial_horiz;
    Vec6 s;
    s << h0.x - sc.reference(0), h0.xdot, h0.y - sc.reference(1), h0.ydot, sc.initial_ctrl.z;

    const long steps = sc.steps();
    TrajectoryLog log;
    log.reference = sc.reference;
    reserve(log, steps, sc.log_decimation);
    for (long k = 0;; ++k) {
        if (k % sc.log_decimation == 0) {
            const Eigen::Vector2d z = s.tail<2>();
            append_sample(log, static_cast<double>(k) * sc.dt, HorizState::from_vector(s.head<4>()),
                          z, applied_force(z, sc), qp, cp);
        }
        if (k == steps) break;
        s = rk4_step(field, s, static_cast<double>(k) * sc.dt, sc.dt);
    }
    return log;
}

AttitudeCommand thrust_attitude_inversion(const Eigen::Vector2d& force, const QuadParams& qp,
                                          double max_tilt) {
    if (!force.allFinite()) throw Error(ErrorCode::kAttitudeBound, "requested force is not finite");
    // -u1 cos(phi) sin(theta) = Fx, u1 sin(phi) = Fy, u1 cos(phi) cos(theta) = m g.
    const double weight = qp.m * qp.g;
    const double tilt_xz = std::hypot(force(0), weight);  // u1 cos(phi)
    const double u1 = std::hypot(tilt_xz, force(1));
    const AttitudeCommand cmd{u1, std::asin(force(1) / u1), std::atan2(-force(0), weight)};
    if (!(std::abs(cmd.phi) < max_tilt) || !(std::abs(cmd.theta) < max_tilt)) {
        std::ostringstream msg;
        msg << "attitude command out of bounds: phi = " << cmd.phi << ", theta = " << cmd.theta
            << " (limit " << max_tilt << ")";
        throw Error(ErrorCode::kAttitudeBound, msg.str());
    }
    return cmd;
}

TrajectoryLog simulate_full_quadrotor(const QuadParams& qp, const ControllerParams& cp,
                                      const SimConfig& sc) {
    gate_params(qp, cp, sc);
    if (sc.mode != SimMode::kFullQuadrotor) {
        throw Error(ErrorCode::kConfigInvalid, "simulate_full_quadrotor needs full_quadrotor mode");
    }

    auto command = [&](const Vec14& s) {
        const Eigen::Vector2d pos(s(idx::kX), s(idx::kY));
        const Eigen::Vector2d z = s.tail<2>();
        const Eigen::Vector2d force =
            applied_force(z, sc) + qp.m * inner_loop_command(pos, sc.reference, cp.kp);
        return thrust_attitude_inversion(force, qp, sc.max_tilt);
    };

    auto field = [&](double, const Vec14& s) -> Vec14 {
        const AttitudeCommand cmd = command(s);
        State12 x = s.head<12>();
        x(idx::kPhi) = cmd.phi;
        x(idx::kTheta) = cmd.theta;
        x(idx::kPsi) = 0.0;
        x(idx::kPhiDot) = x(idx::kThetaDot) = x(idx::kPsiDot) = 0.0;
        const State12 f = full_dynamics(x, ControlInput4{cmd.u1, 0.0, 0.0, 0.0}, qp);

        Vec14 ds = Vec14::Zero();
        ds.head<6>() = f.head<6>();
        const Eigen::Vector2d error(s(idx::kX) - sc.reference(0), s(idx::kY) - sc.reference(1));
        ds.tail<2>() = sni_controller_derivative(ControllerState{s.tail<2>()}, error, cp);
        return ds;
    };

    const HorizState& h0 = sc.initial_horiz;
    Vec14 s = Vec14::Zero();
    s(idx::kX) = h0.x;
    s(idx::kXDot) = h0.xdot;
    s(idx::kY) = h0.y;
    s(idx::kYDot) = h0.ydot;
    s.tail<2>() = sc.initial_ctrl.z;

    const long steps = sc.steps();
    TrajectoryLog log;
    log.reference = sc.reference;
    reserve(log, steps, sc.log_decimation);
    for (long k = 0;; ++k) {
        const AttitudeCommand cmd = command(s);
        s(idx::kPhi) = cmd.phi;
        s(idx::kTheta) = cmd.theta;
        if (k % sc.log_decimation == 0) {
            const HorizState error = relative(
                {s(idx::kX), s(idx::kXDot), s(idx::kY), s(idx::kYDot)}, sc.reference);
            const Eigen::Vector2d z = s.tail<2>();
            append_sample(log, static_cast<double>(k) * sc.dt, error, z, applied_force(z, sc), qp, cp);
            log.attitude.push_back(cmd);
            log.altitude.push_back(s(idx::kZ));
        }
        if (k == steps) break;
        s = rk4_step(field, s, static_cast<double>(k) * sc.dt, sc.dt);
    }
    return log;
}

TrajectoryLog simulate(const QuadParams& qp, const ControllerParams& cp, const SimConfig& sc) {
    return sc.mode == SimMode::kFullQuadrotor ? simulate_full_quadrotor(qp, cp, sc)
                                              : simulate_closed_loop(qp, cp, sc);
}

DissipationReport audit_log(TrajectoryLog& log, const QuadParams& qp, const ControllerParams& cp,
                            double tol) {
    const std::size_t n = log.size();
    std::vector<Eigen::VectorXd> states(n), inputs(n), outputs(n);
    for (std::size_t k = 0; k < n; ++k) {
        const HorizState e = relative(log.horiz_states[k], log.reference);
        states[k] = e.as_vector();
        inputs[k] = log.forces[k];
        outputs[k] = e.position();
    }
    const Eigen::Vector2d kp = cp.kp;
    auto storage = [&qp, kp](const Eigen::VectorXd& s) {
        return storage_value(HorizState::from_vector(s), kp, qp);
    };
    DissipationReport rep = nni_trajectory_audit(log.times, states, inputs, outputs, storage, tol);
    log.residuals = rep.residual_series;
    return rep;
}

std::optional<double> settling_time(const TrajectoryLog& log, double fraction) {
    if (log.size() == 0) return std::nullopt;
    auto dist = [&](std::size_t k) { return (log.horiz_states[k].position() - log.reference).norm(); };
    const double band = fraction * dist(0);
    std::size_t k = log.size();
    while (k > 0 && dist(k - 1) < band) --k;
    if (k == log.size()) return std::nullopt;
    return log.times[k];
}

}  // namespace niquad
