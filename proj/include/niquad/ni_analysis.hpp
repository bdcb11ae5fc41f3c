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

#ifndef NIQUAD_NI_ANALYSIS_HPP
#define NIQUAD_NI_ANALYSIS_HPP

#include <complex>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace niquad {

/// Real LTI system x' = Ax + Bu, y = Cx + Du with a square transfer matrix.
class StateSpace {
public:
    /// Throws Error(kDimensionMismatch) on inconsistent shapes.
    StateSpace(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d);

    const Eigen::MatrixXd& a() const { return a_; }
    const Eigen::MatrixXd& b() const { return b_; }
    const Eigen::MatrixXd& c() const { return c_; }
    const Eigen::MatrixXd& d() const { return d_; }
    Eigen::Index states() const { return a_.rows(); }
    Eigen::Index channels() const { return b_.cols(); }

    /// (T A T^-1, T B, C T^-1, D).
    StateSpace similarity(const Eigen::MatrixXd& t) const;

    Eigen::VectorXcd poles() const;

private:
    Eigen::MatrixXd a_, b_, c_, d_;
};

/// Sampled frequency axis standing in for "all omega > 0".
class FrequencyGrid {
public:
    static constexpr double kDefaultTolerance = 1e-9;

    /// Throws Error(kInvalidArgument) unless strictly increasing and positive.
    FrequencyGrid(std::vector<double> omegas, double tol = kDefaultTolerance);

    /// n log-spaced points over [lo, hi].
    static FrequencyGrid logspace(double lo, double hi, int n, double tol = kDefaultTolerance);
    /// 1000 points over [1e-3, 1e3] rad/s, tolerance 1e-9.
    static FrequencyGrid standard();

    const std::vector<double>& omegas() const { return omegas_; }
    double tolerance() const { return tol_; }

private:
    std::vector<double> omegas_;
    double tol_;
};

inline constexpr double kPoleProximity = 1e-10;

/// G(j omega) by a linear solve. Throws Error(kSingular) if j omega is
/// within 1e-10 of an eigenvalue of A.
Eigen::MatrixXcd transfer_eval(const StateSpace& ss, double omega);

/// D - C A^-1 B. Throws Error(kSingular) for a pole at the origin.
Eigen::MatrixXd dc_gain(const StateSpace& ss);

/// j (G(j omega) - G(j omega)^*), Hermitian by construction.
Eigen::MatrixXcd ni_hermitian_part(const StateSpace& ss, double omega);

enum class NiClass { kSni, kNi, kNotNi, kPoleAtOrigin, kUnstable };

std::string_view to_string(NiClass c);

struct NiWitness {
    double omega;
    double eigenvalue;
};

struct NiVerdict {
    NiClass classification;
    std::optional<NiWitness> witness;  // set iff classification == kNotNi
    double min_eigenvalue;             // over all evaluated grid points
    double min_eigenvalue_omega;
    std::vector<double> skipped_omegas;  // grid points on imaginary-axis poles
    std::vector<double> grid;
    double tolerance;
};

NiVerdict ni_frequency_test(const StateSpace& ss, const FrequencyGrid& grid);

struct ResidueResult {
    Eigen::MatrixXcd k0;
    double hermitian_defect;  // ||K0 - K0^*||_F
    double min_eigenvalue;    // of the Hermitian part of K0
    bool psd;
};

/**
 * Residue K0 = lim_{s -> j w0} (s - j w0) s G(s) at an imaginary-axis pole.
 *
 * The limit is taken numerically along s = j w0 + eps with eps -> 0+ and
 * Richardson extrapolation over a halving eps sequence. Throws
 * Error(kNotSimplePole) unless exactly one eigenvalue of A sits at j w0.
 */
ResidueResult residue_check(const StateSpace& ss, double omega0, double tol = 1e-9);

enum class CertificateMode {
    /// P B = A^T C^T
    kCorrected,
    /// P B = C^T
    kPaperLiteral,
};

struct CertificateReport {
    bool passed;
    double symmetry_residual;   // ||P - P^T||_F
    double min_eigenvalue_p;
    double max_eigenvalue_lyapunov;  // of P A + A^T P
    double coupling_residual;        // ||P B - target||_F
    bool symmetric;
    bool positive_definite;
    bool lyapunov_ok;
    bool coupling_ok;
};

/// Verifies a storage matrix P for a D = 0 system. Throws
/// Error(kDimensionMismatch) for a wrongly sized P and Error(kInvalidArgument)
/// when D is nonzero.
CertificateReport lemma1_certificate_check(const StateSpace& ss, const Eigen::MatrixXd& p,
                                           CertificateMode mode = CertificateMode::kCorrected,
                                           double tol = 1e-12);

/// Rank of [C; CA; ...; CA^{n-1}].
Eigen::Index observability_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c);

enum class DerivativeScheme {
    /// Differences over each sample interval, evaluated at interval midpoints.
    kStaggered,
    /// Central differences at interior nodes, second-order one-sided at the ends.
    kNodeCentered,
};

struct DissipationReport {
    double max_residual;       // signed maximum of V' - y'^T u
    double max_abs_residual;
    std::vector<double> residual_times;
    std::vector<double> residual_series;
    /// V(t_k) - V(t_0) - int_0^{t_k} y'^T u ds (trapezoidal).
    std::vector<double> integral_residual_series;
    double max_integral_residual;
    bool violated;  // max_residual > tol
};

using StorageFunction = std::function<double(const Eigen::VectorXd&)>;

DissipationReport nni_trajectory_audit(const std::vector<double>& times,
                                       const std::vector<Eigen::VectorXd>& states,
                                       const std::vector<Eigen::VectorXd>& inputs,
                                       const std::vector<Eigen::VectorXd>& outputs,
                                       const StorageFunction& storage, double tol,
                                       DerivativeScheme scheme = DerivativeScheme::kStaggered);

using SteadyStateMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SectorReport {
    bool passed;
    bool sector_ok;
    bool positivity_ok;
    double worst_ratio;          // max ||y2|| / ||u1|| over nonzero samples
    double min_inner_product;    // min y1^T y2
};

/**
 * Steady-state sector-bound and positivity audit of the open-loop chain
 * u1 -> y1 = plant(u1) -> y2 = ctrl(y1).
 */
SectorReport sector_bound_check(double gamma, const std::vector<Eigen::VectorXd>& u1_samples,
                                const SteadyStateMap& plant_map, const SteadyStateMap& ctrl_map);

nlohmann::json to_json(const NiVerdict& v);
nlohmann::json to_json(const ResidueResult& r);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const DissipationReport& r);
nlohmann::json to_json(const SectorReport& r);

}  // namespace niquad

#endif  // NIQUAD_NI_ANALYSIS_HPP
