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

#include "niquad/ni_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "niquad/error.hpp"

namespace niquad {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd transfer_at(const StateSpace& ss, cd s) {
    const Eigen::Index n = ss.states();
    Eigen::MatrixXcd resolvent = -ss.a().cast<cd>();
    resolvent.diagonal().array() += s;
    const Eigen::MatrixXcd x = resolvent.partialPivLu().solve(ss.b().cast<cd>());
    Eigen::MatrixXcd g = ss.d().cast<cd>();
    if (n > 0) g += ss.c().cast<cd>() * x;
    return g;
}

double min_pole_distance(const Eigen::VectorXcd& poles, cd s) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < poles.size(); ++i) best = std::min(best, std::abs(poles(i) - s));
    return best;
}

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double min_symmetric_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_symmetric_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

}  // namespace

StateSpace::StateSpace(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    const auto n = a_.rows();
    const auto m = b_.cols();
    if (a_.cols() != n || b_.rows() != n || c_.cols() != n || c_.rows() != m ||
        d_.rows() != m || d_.cols() != m) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "state-space matrices must be A: n x n, B: n x m, C: m x n, D: m x m");
    }
}

StateSpace StateSpace::similarity(const Eigen::MatrixXd& t) const {
    if (t.rows() != states() || t.cols() != states()) {
        throw Error(ErrorCode::kDimensionMismatch, "similarity transform must be n x n");
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(t);
    const Eigen::MatrixXd t_inv = lu.inverse();
    return StateSpace(t * a_ * t_inv, t * b_, c_ * t_inv, d_);
}

Eigen::VectorXcd StateSpace::poles() const {
    if (states() == 0) return {};
    Eigen::EigenSolver<Eigen::MatrixXd> es(a_, false);
    return es.eigenvalues();
}

FrequencyGrid::FrequencyGrid(std::vector<double> omegas, double tol)
    : omegas_(std::move(omegas)), tol_(tol) {
    if (omegas_.empty()) throw Error(ErrorCode::kInvalidArgument, "frequency grid is empty");
    if (!(tol_ >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid tolerance must be >= 0");
    for (std::size_t i = 0; i < omegas_.size(); ++i) {
        if (!(omegas_[i] > 0.0) || !std::isfinite(omegas_[i])) {
            throw Error(ErrorCode::kInvalidArgument, "grid frequencies must be positive");
        }
        if (i > 0 && !(omegas_[i] > omegas_[i - 1])) {
            throw Error(ErrorCode::kInvalidArgument, "grid frequencies must strictly increase");
        }
    }
}

FrequencyGrid FrequencyGrid::logspace(double lo, double hi, int n, double tol) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw Error(ErrorCode::kInvalidArgument, "logspace needs 0 < lo < hi and n >= 2");
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    const double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < n; ++i) w[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
    return FrequencyGrid(std::move(w), tol);
}

FrequencyGrid FrequencyGrid::standard() { return logspace(1e-3, 1e3, 1000); }

Eigen::MatrixXcd transfer_eval(const StateSpace& ss, double omega) {
    const cd s(0.0, omega);
    if (min_pole_distance(ss.poles(), s) < kPoleProximity) {
        throw Error(ErrorCode::kSingular,
                    "j*omega coincides with a pole at omega = " + std::to_string(omega));
    }
    return transfer_at(ss, s);
}

Eigen::MatrixXd dc_gain(const StateSpace& ss) {
    if (min_pole_distance(ss.poles(), cd(0.0, 0.0)) < kPoleProximity) {
        throw Error(ErrorCode::kSingular, "system has a pole at the origin");
    }
    return ss.d() - ss.c() * ss.a().partialPivLu().solve(ss.b());
}

Eigen::MatrixXcd ni_hermitian_part(const StateSpace& ss, double omega) {
    const Eigen::MatrixXcd g = transfer_eval(ss, omega);
    return cd(0.0, 1.0) * (g - g.adjoint());
}

std::string_view to_string(NiClass c) {
    switch (c) {
        case NiClass::kSni: return "SNI";
        case NiClass::kNi: return "NI";
        case NiClass::kNotNi: return "NOT_NI";
        case NiClass::kPoleAtOrigin: return "POLE_AT_ORIGIN";
        case NiClass::kUnstable: return "UNSTABLE";
    }
    return "UNKNOWN";
}

NiVerdict ni_frequency_test(const StateSpace& ss, const FrequencyGrid& grid) {
    NiVerdict v{};
    v.grid = grid.omegas();
    v.tolerance = grid.tolerance();
    v.min_eigenvalue = std::numeric_limits<double>::infinity();
    v.min_eigenvalue_omega = 0.0;

    const Eigen::VectorXcd poles = ss.poles();
    bool hurwitz = true;
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
        if (std::abs(poles(i)) < kPoleProximity) {
            v.classification = NiClass::kPoleAtOrigin;
            return v;
        }
    }
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
        if (poles(i).real() > kPoleProximity) {
            v.classification = NiClass::kUnstable;
            return v;
        }
        if (poles(i).real() >= -kPoleProximity) hurwitz = false;
    }

    const cd j(0.0, 1.0);
    for (double w : grid.omegas()) {
        if (min_pole_distance(poles, cd(0.0, w)) < kPoleProximity) {
            v.skipped_omegas.push_back(w);
            continue;
        }
        const Eigen::MatrixXcd g = transfer_at(ss, cd(0.0, w));
        const double lam = min_hermitian_eigenvalue(j * (g - g.adjoint()));
        if (lam < v.min_eigenvalue) {
            v.min_eigenvalue = lam;
            v.min_eigenvalue_omega = w;
        }
    }

    const double tol = grid.tolerance();
    if (hurwitz && v.min_eigenvalue > tol) {
        v.classification = NiClass::kSni;
    } else if (v.min_eigenvalue >= -tol) {
        v.classification = NiClass::kNi;
    } else {
        v.classification = NiClass::kNotNi;
        v.witness = NiWitness{v.min_eigenvalue_omega, v.min_eigenvalue};
    }
    return v;
}

ResidueResult residue_check(const StateSpace& ss, double omega0, double tol) {
    if (!(omega0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "omega0 must be positive");
    const cd pole(0.0, omega0);
    const Eigen::VectorXcd poles = ss.poles();
    const double radius = 1e-6 * std::max(1.0, omega0);
    int multiplicity = 0;
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
        if (std::abs(poles(i) - pole) < radius) ++multiplicity;
    }
    if (multiplicity != 1) {
        throw Error(ErrorCode::kNotSimplePole,
                    "j*omega0 is not a simple eigenvalue of A (multiplicity " +
                        std::to_string(multiplicity) + ")");
    }

    // Richardson table over eps_k = eps0 / 2^k; f(eps) = eps * s * G(s) is
    // analytic in eps at a simple pole.
    constexpr int kLevels = 6;
    const double eps0 = 1e-3 * std::max(1.0, omega0);
    std::vector<std::vector<Eigen::MatrixXcd>> table(kLevels);
    for (int k = 0; k < kLevels; ++k) {
        const double eps = eps0 / std::pow(2.0, k);
        const cd s = pole + eps;
        table[k].push_back(eps * s * transfer_at(ss, s));
        for (int i = 1; i <= k; ++i) {
            const double f = std::pow(2.0, i);
            table[k].push_back((f * table[k][i - 1] - table[k - 1][i - 1]) / (f - 1.0));
        }
    }

    ResidueResult r;
    r.k0 = table.back().back();
    r.hermitian_defect = (r.k0 - r.k0.adjoint()).norm();
    r.min_eigenvalue = min_hermitian_eigenvalue(r.k0);
    r.psd = r.hermitian_defect <= std::max(tol, 1e-8 * r.k0.norm()) && r.min_eigenvalue >= -tol;
    return r;
}

CertificateReport lemma1_certificate_check(const StateSpace& ss, const Eigen::MatrixXd& p,
                                           CertificateMode mode, double tol) {
    if (p.rows() != ss.states() || p.cols() != ss.states()) {
        throw Error(ErrorCode::kDimensionMismatch, "certificate matrix must be n x n");
    }
    if (ss.d().norm() != 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "certificate check requires D = 0");
    }
    CertificateReport r{};
    r.symmetry_residual = (p - p.transpose()).norm();
    r.min_eigenvalue_p = min_symmetric_eigenvalue(p);
    r.max_eigenvalue_lyapunov = max_symmetric_eigenvalue(p * ss.a() + ss.a().transpose() * p);
    const Eigen::MatrixXd target = mode == CertificateMode::kCorrected
                                       ? Eigen::MatrixXd(ss.a().transpose() * ss.c().transpose())
                                       : Eigen::MatrixXd(ss.c().transpose());
    r.coupling_residual = (p * ss.b() - target).norm();

    r.symmetric = r.symmetry_residual <= tol;
    r.positive_definite = r.min_eigenvalue_p > tol;
    r.lyapunov_ok = r.max_eigenvalue_lyapunov <= tol;
    r.coupling_ok = r.coupling_residual <= tol;
    r.passed = r.symmetric && r.positive_definite && r.lyapunov_ok && r.coupling_ok;
    return r;
}

Eigen::Index observability_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
    const auto n = a.rows();
    if (a.cols() != n || c.cols() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "observability needs A: n x n, C: p x n");
    }
    Eigen::MatrixXd obs(c.rows() * n, n);
    Eigen::MatrixXd block = c;
    for (Eigen::Index k = 0; k < n; ++k) {
        obs.middleRows(k * c.rows(), c.rows()) = block;
        block = block * a;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(obs);
    return lu.rank();
}

DissipationReport nni_trajectory_audit(const std::vector<double>& times,
                                       const std::vector<Eigen::VectorXd>& states,
                                       const std::vector<Eigen::VectorXd>& inputs,
                                       const std::vector<Eigen::VectorXd>& outputs,
                                       const StorageFunction& storage, double tol,
                                       DerivativeScheme scheme) {
    const std::size_t n = times.size();
    if (states.size() != n || inputs.size() != n || outputs.size() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "trajectory sequences differ in length");
    }
    if (n < 3) throw Error(ErrorCode::kInvalidArgument, "audit needs at least 3 samples");
    const double h = times[1] - times[0];
    if (!(h > 0.0)) throw Error(ErrorCode::kNonuniformSampling, "times must increase");
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((times[k] - times[k - 1]) - h) > 1e-6 * h) {
            throw Error(ErrorCode::kNonuniformSampling,
                        "sample spacing deviates at index " + std::to_string(k));
        }
    }

    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = storage(states[k]);

    DissipationReport rep{};
    if (scheme == DerivativeScheme::kStaggered) {
        rep.residual_series.reserve(n - 1);
        rep.residual_times.reserve(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double vdot = (v[k + 1] - v[k]) / h;
            const Eigen::VectorXd ydot = (outputs[k + 1] - outputs[k]) / h;
            const Eigen::VectorXd u_mid = 0.5 * (inputs[k] + inputs[k + 1]);
            rep.residual_series.push_back(vdot - ydot.dot(u_mid));
            rep.residual_times.push_back(times[k] + 0.5 * h);
        }
    } else {
        auto ddt = [&](auto&& at, std::size_t k) {
            using T = std::decay_t<decltype(at(std::size_t{0}))>;
            if (k == 0) return T((-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h));
            if (k == n - 1) return T((3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h));
            return T((at(k + 1) - at(k - 1)) / (2.0 * h));
        };
        rep.residual_series.reserve(n);
        rep.residual_times = times;
        for (std::size_t k = 0; k < n; ++k) {
            const double vdot = ddt([&](std::size_t i) { return v[i]; }, k);
            const Eigen::VectorXd ydot =
                ddt([&](std::size_t i) -> Eigen::VectorXd { return outputs[i]; }, k);
            rep.residual_series.push_back(vdot - ydot.dot(inputs[k]));
        }
    }

    rep.integral_residual_series.resize(n);
    rep.integral_residual_series[0] = 0.0;
    double supplied = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        supplied += (outputs[k + 1] - outputs[k]).dot(0.5 * (inputs[k] + inputs[k + 1]));
        rep.integral_residual_series[k + 1] = v[k + 1] - v[0] - supplied;
    }

    rep.max_residual = *std::max_element(rep.residual_series.begin(), rep.residual_series.end());
    rep.max_abs_residual = 0.0;
    for (double r : rep.residual_series) rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(r));
    rep.max_integral_residual =
        *std::max_element(rep.integral_residual_series.begin(), rep.integral_residual_series.end());
    rep.violated = rep.max_residual > tol;
    return rep;
}

SectorReport sector_bound_check(double gamma, const std::vector<Eigen::VectorXd>& u1_samples,
                                const SteadyStateMap& plant_map, const SteadyStateMap& ctrl_map) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "sector gamma must lie in (0, 1)");
    }
    SectorReport r{};
    r.sector_ok = true;
    r.positivity_ok = true;
    r.worst_ratio = 0.0;
    r.min_inner_product = std::numeric_limits<double>::infinity();
    for (const auto& u1 : u1_samples) {
        const Eigen::VectorXd y1 = plant_map(u1);
        const Eigen::VectorXd y2 = ctrl_map(y1);
        const double inner = y1.dot(y2);
        r.min_inner_product = std::min(r.min_inner_product, inner);
        if (inner < 0.0) r.positivity_ok = false;
        const double u_norm = u1.norm();
        if (u_norm > 0.0) {
            r.worst_ratio = std::max(r.worst_ratio, y2.norm() / u_norm);
        } else if (y2.squaredNorm() > 0.0) {
            r.sector_ok = false;
            r.worst_ratio = std::numeric_limits<double>::infinity();
        }
    }
    if (r.worst_ratio > gamma) r.sector_ok = false;
    r.passed = r.sector_ok && r.positivity_ok;
    return r;
}

namespace {

nlohmann::json complex_matrix_json(const Eigen::MatrixXcd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

nlohmann::json to_json(const NiVerdict& v) {
    nlohmann::json j;
    j["classification"] = std::string(to_string(v.classification));
    if (v.witness) {
        j["witness"] = {{"omega", v.witness->omega}, {"eigenvalue", v.witness->eigenvalue}};
    } else {
        j["witness"] = nullptr;
    }
    if (std::isfinite(v.min_eigenvalue)) {
        j["min_eigenvalue"] = v.min_eigenvalue;
        j["min_eigenvalue_omega"] = v.min_eigenvalue_omega;
    }
    j["skipped_omegas"] = v.skipped_omegas;
    j["tolerance"] = v.tolerance;
    if (!v.grid.empty()) {
        j["grid"] = {{"lo", v.grid.front()}, {"hi", v.grid.back()}, {"points", v.grid.size()}};
    }
    return j;
}

nlohmann::json to_json(const ResidueResult& r) {
    return {{"k0", complex_matrix_json(r.k0)},
            {"hermitian_defect", r.hermitian_defect},
            {"min_eigenvalue", r.min_eigenvalue},
            {"psd", r.psd}};
}

nlohmann::json to_json(const CertificateReport& r) {
    return {{"passed", r.passed},
            {"symmetry_residual", r.symmetry_residual},
            {"min_eigenvalue_p", r.min_eigenvalue_p},
            {"max_eigenvalue_lyapunov", r.max_eigenvalue_lyapunov},
            {"coupling_residual", r.coupling_residual},
            {"symmetric", r.symmetric},
            {"positive_definite", r.positive_definite},
            {"lyapunov_ok", r.lyapunov_ok},
            {"coupling_ok", r.coupling_ok}};
}

nlohmann::json to_json(const DissipationReport& r) {
    return {{"max_residual", r.max_residual},
            {"max_abs_residual", r.max_abs_residual},
            {"max_integral_residual", r.max_integral_residual},
            {"violated", r.violated},
            {"residual_times", r.residual_times},
            {"residual_series", r.residual_series},
            {"integral_residual_series", r.integral_residual_series}};
}

nlohmann::json to_json(const SectorReport& r) {
    return {{"passed", r.passed},
            {"sector_ok", r.sector_ok},
            {"positivity_ok", r.positivity_ok},
            {"worst_ratio", r.worst_ratio},
            {"min_inner_product", r.min_inner_product}};
}

}  // namespace niquad
