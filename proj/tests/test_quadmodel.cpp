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

#include <cmath>
#include <numbers>
#include <random>

#include "niquad/error.hpp"
#include "niquad/ni_analysis.hpp"
#include "niquad/quadmodel.hpp"
#include "niquad/simulator.hpp"

using namespace niquad;

namespace {

constexpr double kPi = std::numbers::pi;

// Elementary rotations composed as Rz(psi) Ry(theta) Rx(phi).
Eigen::Matrix3d composed_rotation(double phi, double theta, double psi) {
    Eigen::Matrix3d rx, ry, rz;
    rx << 1, 0, 0, 0, std::cos(phi), -std::sin(phi), 0, std::sin(phi), std::cos(phi);
    ry << std::cos(theta), 0, std::sin(theta), 0, 1, 0, -std::sin(theta), 0, std::cos(theta);
    rz << std::cos(psi), -std::sin(psi), 0, std::sin(psi), std::cos(psi), 0, 0, 0, 1;
    return rz * ry * rx;
}

EulerAngles random_angles(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> tilt(-kPi / 2 + 1e-3, kPi / 2 - 1e-3);
    std::uniform_real_distribution<double> yaw(-kPi + 1e-9, kPi);
    return EulerAngles(tilt(rng), tilt(rng), yaw(rng));
}

}  // namespace

TEST_CASE("euler angle bounds are enforced at construction") {
    CHECK_NOTHROW(EulerAngles(0.1, -0.2, kPi));
    CHECK_THROWS_AS(EulerAngles(kPi / 2, 0.0, 0.0), Error);
    CHECK_THROWS_AS(EulerAngles(0.0, -kPi / 2, 0.0), Error);
    CHECK_THROWS_AS(EulerAngles(0.0, 0.0, -kPi), Error);
    CHECK_THROWS_AS(EulerAngles(0.0, 0.0, 3.2), Error);
}

TEST_CASE("rotation matrix") {
    SUBCASE("identity at zero") {
        CHECK(rotation_body_to_inertial(EulerAngles(0, 0, 0)).isApprox(Eigen::Matrix3d::Identity(), 0.0));
    }
    SUBCASE("quarter turn in yaw") {
        Eigen::Matrix3d expected;
        expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
        const Eigen::Matrix3d r = rotation_body_to_inertial(EulerAngles(0, 0, kPi / 2));
        CHECK((r - expected).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((r - composed_rotation(0, 0, kPi / 2)).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("matches composed elementary rotations and lies in SO(3)") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 500; ++i) {
            const EulerAngles eta = random_angles(rng);
            const Eigen::Matrix3d r = rotation_body_to_inertial(eta);
            CHECK((r - composed_rotation(eta.phi(), eta.theta(), eta.psi())).cwiseAbs().maxCoeff() < 1e-14);
            CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("euler rate map") {
    const EulerRateMap at_zero = euler_rate_map(EulerAngles(0, 0, 0));
    CHECK(at_zero.w.isApprox(Eigen::Matrix3d::Identity(), 0.0));
    CHECK_FALSE(at_zero.near_singular);

    // Cofactor expansion along the first column:
    // det W = 1 * (cphi * cphi ctheta + sphi * sphi ctheta) = ctheta.
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const EulerAngles eta = random_angles(rng);
        const EulerRateMap w = euler_rate_map(eta);
        CHECK(std::abs(w.determinant - std::cos(eta.theta())) < 1e-12);
    }

    const EulerRateMap near = euler_rate_map(EulerAngles(0.2, kPi / 2 - 1e-9, 0.0));
    CHECK(near.near_singular);
    CHECK(std::abs(near.determinant) < 1e-6);
}

TEST_CASE("inertia coefficients") {
    const QuadParams p;
    const auto k = inertia_coefficients(p);
    CHECK(k.a1 == doctest::Approx((p.jy - p.jz) / p.jx));
    CHECK(k.a5 == 0.0);  // Jx == Jy
    CHECK(k.b1 == doctest::Approx(p.l / p.jx));
    CHECK(k.b3 == doctest::Approx(1.0 / p.jz));
}

TEST_CASE("full dynamics") {
    const QuadParams p;
    SUBCASE("hover equilibrium") {
        const State12 f = full_dynamics(State12::Zero(), {p.m * p.g, 0, 0, 0}, p);
        CHECK(f.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("free fall") {
        const State12 f = full_dynamics(State12::Zero(), {}, p);
        for (int i = 0; i < 12; ++i) CHECK(f(i) == (i == idx::kZDot ? 9.81 : 0.0));
    }
    SUBCASE("yaw coupling vanishes for symmetric roll/pitch inertia") {
        State12 x = State12::Zero();
        x(idx::kPhiDot) = 1.0;
        x(idx::kThetaDot) = 1.0;
        const State12 f = full_dynamics(x, {}, p);
        CHECK(f(idx::kPsiDot) == 0.0);
        CHECK(f(idx::kPhi) == 1.0);
        CHECK(f(idx::kTheta) == 1.0);
    }
    SUBCASE("gyroscopic rotor term") {
        State12 x = State12::Zero();
        x(idx::kPhiDot) = 0.5;
        x(idx::kThetaDot) = -2.0;
        const double omega_bar = 300.0;
        const State12 f = full_dynamics(x, {}, p, omega_bar);
        CHECK(f(idx::kPhiDot) == doctest::Approx(2.0 * p.jr / p.jx * omega_bar));
        CHECK(f(idx::kThetaDot) == doctest::Approx(0.5 * p.jr / p.jy * omega_bar));
    }
    SUBCASE("horizontal thrust rows with yaw") {
        State12 x = State12::Zero();
        x(idx::kPhi) = 0.1;
        x(idx::kTheta) = -0.2;
        x(idx::kPsi) = 0.3;
        const double u1 = 6.0;
        const State12 f = full_dynamics(x, {u1, 0, 0, 0}, p);
        // Third column of the body-to-inertial rotation is the thrust axis.
        const Eigen::Matrix3d r = rotation_body_to_inertial(EulerAngles(0.1, -0.2, 0.3));
        CHECK(f(idx::kXDot) == doctest::Approx(-u1 / p.m * r(0, 2)).epsilon(1e-13));
        CHECK(f(idx::kYDot) == doctest::Approx(-u1 / p.m * r(1, 2)).epsilon(1e-13));
        CHECK(f(idx::kZDot) == doctest::Approx(p.g - u1 / p.m * r(2, 2)).epsilon(1e-13));
    }
    SUBCASE("exactly linear in the torque inputs") {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> n(0.0, 1.0);
        const auto k = inertia_coefficients(p);
        for (int i = 0; i < 200; ++i) {
            State12 x;
            for (int j = 0; j < 12; ++j) x(j) = 0.3 * n(rng);
            const ControlInput4 u{std::abs(n(rng)) * 5, n(rng), n(rng), n(rng)};
            const ControlInput4 du{0.0, n(rng), n(rng), n(rng)};
            const ControlInput4 shifted{u.u1, u.u2 + du.u2, u.u3 + du.u3, u.u4 + du.u4};
            const State12 diff = full_dynamics(x, shifted, p, 10.0) - full_dynamics(x, u, p, 10.0);
            State12 expected = State12::Zero();
            expected(idx::kPhiDot) = k.b1 * du.u2;
            expected(idx::kThetaDot) = k.b2 * du.u3;
            expected(idx::kPsiDot) = k.b3 * du.u4;
            CHECK((diff - expected).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
    SUBCASE("rejects negative thrust and out-of-range tilt") {
        CHECK_THROWS_AS(full_dynamics(State12::Zero(), {-1.0, 0, 0, 0}, p), Error);
        State12 x = State12::Zero();
        x(idx::kTheta) = 2.0;
        CHECK_THROWS_AS(full_dynamics(x, {}, p), Error);
    }
}

TEST_CASE("reshaped horizontal dynamics") {
    QuadParams p;
    const Eigen::Vector2d kp(5, 5);
    CHECK(reshaped_horizontal_dynamics({1, 0, 0, 0}, Eigen::Vector2d::Zero(), kp, p)
              .isApprox(Eigen::Vector4d(0, -5, 0, 0)));
    CHECK(reshaped_horizontal_dynamics({}, Eigen::Vector2d(1, 0), kp, p).isApprox(Eigen::Vector4d(0, 2, 0, 0)));

    const Eigen::Vector2d xbar(0.7, -1.3);
    const Eigen::Vector2d f = p.m * kp.cwiseProduct(xbar);
    CHECK(reshaped_horizontal_dynamics({xbar(0), 0, xbar(1), 0}, f, kp, p).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(reshaped_horizontal_dynamics({}, Eigen::Vector2d::Zero(), Eigen::Vector2d(0, 5), p), Error);
}

TEST_CASE("storage function") {
    QuadParams p;
    const Eigen::Vector2d kp(5, 5);
    CHECK(storage_value({}, kp, p) == 0.0);
    CHECK(storage_value({1, 0, 0, 0}, kp, p) == doctest::Approx(1.25));
    CHECK(storage_value({1, 0, 0, 0}, kp, p, StorageForm::kPaperLiteral) == doctest::Approx(2.5));
    CHECK(storage_value({0, 2, 0, -1}, kp, p) == doctest::Approx(0.5 * 0.5 * 5));

    SUBCASE("positive away from the origin") {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> n(0.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            const HorizState s{n(rng), n(rng), n(rng), n(rng)};
            CHECK(storage_value(s, kp, p) > 0.0);
        }
    }

    SUBCASE("dV/dt = xi_dot^T F along the vector field") {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> n(0.0, 1.0);
        const Eigen::Vector2d kq(3.0, 7.5);
        for (int i = 0; i < 200; ++i) {
            const HorizState s{n(rng), n(rng), n(rng), n(rng)};
            const Eigen::Vector2d f(n(rng), n(rng));
            // Gradient of the m-weighted storage.
            const Eigen::Vector4d grad(p.m * kq(0) * s.x, p.m * s.xdot, p.m * kq(1) * s.y, p.m * s.ydot);
            const double vdot = grad.dot(reshaped_horizontal_dynamics(s, f, kq, p));
            CHECK(std::abs(vdot - s.velocity().dot(f)) < 1e-12);
        }
    }

    SUBCASE("conserved on the unforced oscillator") {
        // Closed form: x(t) = x0 cos(w t) + v0 / w sin(w t), w = sqrt(kp).
        const double w = std::sqrt(5.0);
        const HorizState s0{1.2, -0.4, -0.3, 0.9};
        const double v0 = storage_value(s0, kp, p);
        auto exact = [&](double t) {
            const double c = std::cos(w * t), s = std::sin(w * t);
            return HorizState{s0.x * c + s0.xdot / w * s, -s0.x * w * s + s0.xdot * c,
                              s0.y * c + s0.ydot / w * s, -s0.y * w * s + s0.ydot * c};
        };
        for (double t = 0.0; t < 10.0; t += 0.37) CHECK(std::abs(storage_value(exact(t), kp, p) - v0) < 1e-12);

        Eigen::Vector4d x = s0.as_vector();
        auto field = [&](double, const Eigen::Vector4d& v) {
            return reshaped_horizontal_dynamics(HorizState::from_vector(v), Eigen::Vector2d::Zero(), kp, p);
        };
        const double dt = 1e-3;
        double drift = 0.0;
        for (int k = 0; k < 10000; ++k) {
            x = rk4_step(field, x, k * dt, dt);
            drift = std::max(drift, std::abs(storage_value(HorizState::from_vector(x), kp, p) - v0));
        }
        CHECK(drift < 1e-10);
        CHECK((x - exact(10.0).as_vector()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("per-axis model is zero-state observable") {
    QuadParams p;
    for (double kp : {0.1, 1.0, 5.0, 40.0}) {
        const AxisModel ax = reshaped_axis_model(kp, p);
        CHECK(observability_rank(ax.a, ax.c) == 2);
    }
    const Eigen::Matrix2d pm = axis_storage_matrix(5.0, p);
    CHECK(pm(0, 0) == doctest::Approx(2.5));
    CHECK(pm(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("quad parameter validation") {
    QuadParams p;
    CHECK_NOTHROW(p.validate());
    p.jz = 0.0;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("jz"), Error);
}
