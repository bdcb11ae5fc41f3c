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

#ifndef NIQUAD_QUADMODEL_HPP
#define NIQUAD_QUADMODEL_HPP

#include <Eigen/Dense>

namespace niquad {

/**
 * Physical constants of the airframe.
 *
 * Defaults reproduce the simulation platform: m = 0.5 kg, Jx = Jy = 4.85e-3,
 * Jz = 8.81e-3 kg m^2, b = 2.92e-6, d = 1.12e-7. Arm length and rotor inertia
 * are not part of that parameter set; the defaults here are typical values for
 * a frame of that size.
 */
struct QuadParams {
    double m = 0.5;
    double g = 9.81;
    double l = 0.25;
    double b = 2.92e-6;
    double d = 1.12e-7;
    double jx = 4.85e-3;
    double jy = 4.85e-3;
    double jz = 8.81e-3;
    double jr = 3.357e-5;

    /// Throws Error(kInvalidArgument) naming the first non-positive field.
    void validate() const;

    bool operator==(const QuadParams&) const = default;
};

/// Lumped inertia ratios and torque scalings used by the 12-state model.
struct InertiaCoefficients {
    double a1, a2, a3, a4, a5;
    double b1, b2, b3;
};

InertiaCoefficients inertia_coefficients(const QuadParams& p);

/// Roll, pitch, yaw with |phi|, |theta| < pi/2 and psi in (-pi, pi].
class EulerAngles {
public:
    EulerAngles() = default;
    /// Throws Error(kInvalidArgument) when a bound is violated.
    EulerAngles(double phi, double theta, double psi);

    double phi() const { return phi_; }
    double theta() const { return theta_; }
    double psi() const { return psi_; }

private:
    double phi_ = 0.0;
    double theta_ = 0.0;
    double psi_ = 0.0;
};

Eigen::Matrix3d rotation_body_to_inertial(const EulerAngles& eta);

struct EulerRateMap {
    Eigen::Matrix3d w;
    double determinant;
    bool near_singular;  // |cos theta| < 1e-6
};

/// Body angular velocity from Euler rates, omega = W(eta) * eta_dot.
EulerRateMap euler_rate_map(const EulerAngles& eta);

/// (x, xdot, y, ydot, z, zdot, phi, phidot, theta, thetadot, psi, psidot).
using State12 = Eigen::Matrix<double, 12, 1>;

namespace idx {
inline constexpr int kX = 0, kXDot = 1, kY = 2, kYDot = 3, kZ = 4, kZDot = 5;
inline constexpr int kPhi = 6, kPhiDot = 7, kTheta = 8, kThetaDot = 9;
inline constexpr int kPsi = 10, kPsiDot = 11;
}  // namespace idx

struct ControlInput4 {
    double u1 = 0.0;  // total thrust, N
    double u2 = 0.0;
    double u3 = 0.0;
    double u4 = 0.0;
};

/**
 * Twelve-row nonlinear vector field of the quadrotor.
 *
 * `omega_bar` is the aggregate rotor speed entering the gyroscopic terms; the
 * model does not derive it from the inputs, so callers supply it (0 disables
 * gyroscopic coupling). Note the vertical row is g - (u1/m) cos(phi) cos(theta).
 * Throws Error(kInvalidArgument) if u1 < 0 or the roll/pitch of `x` leave
 * (-pi/2, pi/2).
 */
State12 full_dynamics(const State12& x, const ControlInput4& u,
                      const QuadParams& p, double omega_bar = 0.0);

/// Horizontal position subsystem state (x, xdot, y, ydot).
struct HorizState {
    double x = 0.0;
    double xdot = 0.0;
    double y = 0.0;
    double ydot = 0.0;

    Eigen::Vector4d as_vector() const { return {x, xdot, y, ydot}; }
    static HorizState from_vector(const Eigen::Ref<const Eigen::Vector4d>& v) {
        return {v(0), v(1), v(2), v(3)};
    }
    Eigen::Vector2d position() const { return {x, y}; }
    Eigen::Vector2d velocity() const { return {xdot, ydot}; }

    bool operator==(const HorizState&) const = default;
};

/// m xi_ddot + m Kp xi = F_h, written as four first-order rows.
Eigen::Vector4d reshaped_horizontal_dynamics(const HorizState& s,
                                             const Eigen::Vector2d& force,
                                             const Eigen::Vector2d& kp,
                                             const QuadParams& p);

enum class StorageForm {
    /// 1/2 m |v|^2 + 1/2 m xi^T Kp xi; dissipation equality holds exactly.
    kMassWeighted,
    /// 1/2 m |v|^2 + 1/2 xi^T Kp xi, kept for comparison.
    kPaperLiteral,
};

double storage_value(const HorizState& s, const Eigen::Vector2d& kp,
                     const QuadParams& p,
                     StorageForm form = StorageForm::kMassWeighted);

/// Single-axis linear model (position, velocity) with input F and output position.
struct AxisModel {
    Eigen::Matrix2d a;
    Eigen::Vector2d b;
    Eigen::RowVector2d c;
};

AxisModel reshaped_axis_model(double kp_axis, const QuadParams& p);

/// Quadratic-form matrix P (V = 1/2 s^T P s) of the per-axis storage.
Eigen::Matrix2d axis_storage_matrix(double kp_axis, const QuadParams& p,
                                    StorageForm form = StorageForm::kMassWeighted);

}  // namespace niquad

#endif  // NIQUAD_QUADMODEL_HPP
