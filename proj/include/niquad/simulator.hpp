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

#ifndef NIQUAD_SIMULATOR_HPP
#define NIQUAD_SIMULATOR_HPP

#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "niquad/control.hpp"
#include "niquad/error.hpp"
#include "niquad/quadmodel.hpp"

namespace niquad {

/// Classical fourth-order Runge-Kutta step of x' = f(t, x).
/// Throws Error(kNonFinite) if a stage or the result is not finite.
template <class F, class Vec>
Vec rk4_step(F&& f, const Vec& x, double t, double dt) {
    if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "rk4 step must be positive");
    auto checked = [](const Vec& v) -> const Vec& {
        if (!v.allFinite()) throw Error(ErrorCode::kNonFinite, "non-finite state derivative");
        return v;
    };
    const Vec k1 = checked(f(t, x));
    const Vec k2 = checked(f(t + 0.5 * dt, Vec(x + 0.5 * dt * k1)));
    const Vec k3 = checked(f(t + 0.5 * dt, Vec(x + 0.5 * dt * k2)));
    const Vec k4 = checked(f(t + dt, Vec(x + dt * k3)));
    Vec next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return checked(next);
}

enum class SimMode { kHorizontalPointmass, kFullQuadrotor };

inline constexpr double kDefaultMaxTilt = std::numbers::pi / 2.0 - 0.01;

struct SimConfig {
    double t_final = 30.0;
    double dt = 1e-3;
    HorizState initial_horiz{2.0, 0.0, -1.5, 0.0};
    ControllerState initial_ctrl{};
    std::optional<Eigen::Vector2d> disturbance;  // added to F_h
    SimMode mode = SimMode::kHorizontalPointmass;
    int log_decimation = 1;
    /// Constant position reference; regulation uses the origin.
    Eigen::Vector2d reference = Eigen::Vector2d::Zero();
    /// Run even when the delta constraint fails (instability studies).
    bool allow_invalid_params = false;
    /// Full-mode roll/pitch limit.
    double max_tilt = kDefaultMaxTilt;

    /// Throws Error(kConfigInvalid).
    void validate() const;

    /// Number of integration steps, round(t_final / dt).
    long steps() const;

    bool operator==(const SimConfig&) const = default;
};

struct AttitudeCommand {
    double u1;
    double phi;
    double theta;
};

struct TrajectoryLog {
    Eigen::Vector2d reference = Eigen::Vector2d::Zero();
    std::vector<double> times;
    std::vector<HorizState> horiz_states;  // absolute positions
    std::vector<ControllerState> ctrl_states;
    std::vector<Eigen::Vector2d> forces;  // applied F_h = z + disturbance
    std::vector<double> storage;  // of the state relative to `reference`
    std::vector<double> residuals;  // filled by audit_log
    std::vector<AttitudeCommand> attitude;  // full mode only
    std::vector<double> altitude;           // full mode only

    std::size_t size() const { return times.size(); }
};

TrajectoryLog simulate_closed_loop(const QuadParams& qp, const ControllerParams& cp,
                                   const SimConfig& sc);

/**
 * Drives the 12-state model with the same controller. Each evaluation turns
 * the total horizontal force (F_h plus m times the inner-loop acceleration)
 * into thrust and an instantaneously achieved roll/pitch, with yaw held at
 * zero and thrust balancing gravity.
 */
TrajectoryLog simulate_full_quadrotor(const QuadParams& qp, const ControllerParams& cp,
                                      const SimConfig& sc);

/// Dispatches on sc.mode.
TrajectoryLog simulate(const QuadParams& qp, const ControllerParams& cp, const SimConfig& sc);

/// Thrust and attitude producing horizontal force `force` with vertical
/// balance u1 cos(phi) cos(theta) = m g and yaw zero. Throws
/// Error(kAttitudeBound) when |phi| or |theta| >= max_tilt.
AttitudeCommand thrust_attitude_inversion(const Eigen::Vector2d& force, const QuadParams& qp,
                                          double max_tilt = kDefaultMaxTilt);

/// Fills log.residuals with the staggered dissipation residual of the plant
/// (input F_h, output position) and returns the report.
DissipationReport audit_log(TrajectoryLog& log, const QuadParams& qp, const ControllerParams& cp,
                            double tol);

/// First logged time after which |xi_h - ref| stays below `fraction` of its
/// initial value; empty if it never settles within the log.
std::optional<double> settling_time(const TrajectoryLog& log, double fraction = 0.02);

}  // namespace niquad

#endif  // NIQUAD_SIMULATOR_HPP
