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

#include "niquad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "niquad/config.hpp"
#include "niquad/error.hpp"
#include "niquad/ni_analysis.hpp"
#include "niquad/simulator.hpp"
#include "niquad/trajectory_io.hpp"

namespace niquad {

namespace {

namespace fs = std::filesystem;

/// Thrown internally to unwind with a specific exit status.
struct Exit {
    int status;
};

std::string read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read '" << path << "'\n";
        throw Exit{kExitIo};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        err << "error: failed reading '" << path << "'\n";
        throw Exit{kExitIo};
    }
    return ss.str();
}

RunConfig load_config(const std::string& path, std::ostream& err) {
    const std::string text = read_file(path, err);
    try {
        return parse_config(text);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        throw Exit{kExitUsage};
    }
}

fs::path resolve_output(const std::string& path) {
    fs::path p(path);
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir && p.is_relative()) {
        p = fs::path(dir) / p;
    }
    return p;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer, std::ostream& err) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        err << "error: cannot write '" << path.string() << "'\n";
        throw Exit{kExitIo};
    }
    writer(out);
    out.flush();
    if (!out) {
        err << "error: failed writing '" << path.string() << "'\n";
        throw Exit{kExitIo};
    }
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(6) << v;
    return ss.str();
}

double final_distance(const TrajectoryLog& log) {
    return (log.horiz_states.back().position() - log.reference).norm();
}

double peak_distance(const TrajectoryLog& log) {
    double peak = 0.0;
    for (const auto& h : log.horiz_states) peak = std::max(peak, (h.position() - log.reference).norm());
    return peak;
}

int cmd_simulate(const std::string& config_path, bool allow_unstable, const std::string& output_override,
                 const std::string& format_override, bool plot, std::ostream& out, std::ostream& err) {
    RunConfig cfg = load_config(config_path, err);
    if (!output_override.empty()) cfg.output_path = output_override;
    if (format_override == "csv") cfg.output_format = OutputFormat::kCsv;
    if (format_override == "json") cfg.output_format = OutputFormat::kJson;
    if (plot) cfg.emit_plot = true;
    if (allow_unstable) cfg.sim.allow_invalid_params = true;

    const ParamCheck check = validate_params(cfg.quad, cfg.controller);
    if (!check.passed && !cfg.sim.allow_invalid_params) {
        err << "refusing to simulate: delta = " << fmt(cfg.controller.delta)
            << " violates delta >= 1/(gamma m min kp) = " << fmt(check.delta_min)
            << " (pass --allow-unstable to override)\n";
        return kExitFailed;
    }

    TrajectoryLog log;
    try {
        log = simulate(cfg.quad, cfg.controller, cfg.sim);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return e.code() == ErrorCode::kConfigInvalid ? kExitUsage : kExitFailed;
    }

    const fs::path path = resolve_output(cfg.output_path);
    if (cfg.output_format == OutputFormat::kCsv) {
        write_file(path, [&](std::ostream& os) { write_csv(log, os); }, err);
    } else {
        write_file(path, [&](std::ostream& os) { os << to_json(log).dump() << '\n'; }, err);
    }
    out << "wrote " << log.size() << " samples to " << path.string() << '\n';
    if (cfg.emit_plot) {
        fs::path svg = path;
        svg.replace_extension(".svg");
        write_file(svg, [&](std::ostream& os) { write_svg_plot(log, os); }, err);
        out << "wrote plot to " << svg.string() << '\n';
    }
    const auto settle = settling_time(log);
    out << "final |xi_h| = " << fmt(final_distance(log)) << " m\n";
    out << "settling time (2%) = " << (settle ? fmt(*settle) + " s" : std::string("not settled")) << '\n';
    return kExitOk;
}

int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load_config(config_path, err);
    const ParamCheck check = validate_params(cfg.quad, cfg.controller);
    out << "delta_min = " << fmt(check.delta_min) << '\n';
    out << "delta = " << fmt(cfg.controller.delta) << '\n';
    out << "margin = " << fmt(check.margin) << '\n';
    out << (check.passed ? "PASS" : "FAIL") << '\n';
    return check.passed ? kExitOk : kExitFailed;
}

int cmd_check_ni(const std::string& config_path, bool as_json, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load_config(config_path, err);
    const FrequencyGrid grid = FrequencyGrid::standard();
    const NiVerdict ctrl = ni_frequency_test(controller_state_space(cfg.controller), grid);

    nlohmann::json report;
    report["controller"] = to_json(ctrl);
    bool plant_ok = true;
    const std::array<const char*, 2> names{"x", "y"};
    for (int axis = 0; axis < 2; ++axis) {
        const double kp = cfg.controller.kp(axis);
        const StateSpace plant = plant_axis_state_space(cfg.quad, kp);
        const CertificateReport cert =
            lemma1_certificate_check(plant, axis_storage_matrix(kp, cfg.quad), CertificateMode::kCorrected);
        const CertificateReport literal = lemma1_certificate_check(
            plant, axis_storage_matrix(kp, cfg.quad), CertificateMode::kPaperLiteral);
        const NiVerdict freq = ni_frequency_test(plant, grid);
        const ResidueResult residue = residue_check(plant, std::sqrt(kp));
        const auto rank = observability_rank(plant.a(), plant.c());
        plant_ok = plant_ok && cert.passed;

        nlohmann::json& ax = report["plant"][names[axis]];
        ax["certificate"] = to_json(cert);
        ax["certificate_pb_eq_ct"] = to_json(literal);
        ax["frequency"] = to_json(freq);
        ax["residue"] = to_json(residue);
        ax["observability_rank"] = rank;
        ax["zero_state_observable"] = rank == plant.states();

        if (!as_json) {
            out << "plant[" << names[axis] << "] certificate (PB = A^T C^T): "
                << (cert.passed ? "PASS" : "FAIL") << " (coupling residual "
                << fmt(cert.coupling_residual) << ", max eig(PA+A^TP) "
                << fmt(cert.max_eigenvalue_lyapunov) << ")\n";
            out << "plant[" << names[axis] << "] certificate (PB = C^T): "
                << (literal.passed ? "PASS" : "FAIL") << " (coupling residual "
                << fmt(literal.coupling_residual) << ")\n";
            out << "plant[" << names[axis] << "] frequency verdict: " << to_string(freq.classification)
                << ", residue at sqrt(kp): " << fmt(residue.k0(0, 0).real())
                << (residue.psd ? " (PSD)" : " (not PSD)") << '\n';
            out << "plant[" << names[axis] << "] observability rank: " << rank << "/" << plant.states()
                << '\n';
        }
    }
    const bool ok = ctrl.classification == NiClass::kSni && plant_ok;
    report["passed"] = ok;
    if (as_json) {
        out << report.dump(2) << '\n';
    } else {
        out << "controller verdict: " << to_string(ctrl.classification) << " (min eig "
            << fmt(ctrl.min_eigenvalue) << " at omega = " << fmt(ctrl.min_eigenvalue_omega) << ")\n";
        out << (ok ? "PASS" : "FAIL") << '\n';
    }
    return ok ? kExitOk : kExitFailed;
}

struct SweepRow {
    double value;
    bool constraint_ok;
    std::optional<double> settling;
    double final_norm;
    double peak_norm;
    std::string status;
};

SweepRow sweep_one(RunConfig cfg, const std::string& param, double value) {
    if (param == "delta") cfg.controller.delta = value;
    if (param == "gamma_ir") cfg.controller.gamma_ir = value;
    if (param == "gamma_sector") cfg.controller.gamma_sector = value;
    if (param == "kp") cfg.controller.kp = Eigen::Vector2d(value, value);
    cfg.sim.allow_invalid_params = true;

    SweepRow row{value, false, std::nullopt, NAN, NAN, "ok"};
    try {
        row.constraint_ok = validate_params(cfg.quad, cfg.controller).passed;
        const TrajectoryLog log = simulate(cfg.quad, cfg.controller, cfg.sim);
        row.settling = settling_time(log);
        row.final_norm = final_distance(log);
        row.peak_norm = peak_distance(log);
    } catch (const Error& e) {
        row.status = std::string(to_string(e.code()));
    }
    return row;
}

int cmd_sweep(const std::string& config_path, const std::string& param, double from, double to, int steps,
              int jobs, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load_config(config_path, err);
    std::vector<double> values(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) values[i] = steps == 1 ? from : from + (to - from) * i / (steps - 1);

    if (jobs < 1) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<SweepRow> rows(values.size());
    for (std::size_t start = 0; start < values.size(); start += static_cast<std::size_t>(jobs)) {
        const std::size_t stop = std::min(values.size(), start + static_cast<std::size_t>(jobs));
        std::vector<std::future<SweepRow>> batch;
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, sweep_one, cfg, param, values[i]));
        }
        for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
    }

    out << std::left << std::setw(14) << param << std::setw(12) << "constraint" << std::setw(14)
        << "settle_2%[s]" << std::setw(16) << "final|xi|[m]" << std::setw(16) << "peak|xi|[m]"
        << "status\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(14) << fmt(r.value) << std::setw(12) << (r.constraint_ok ? "ok" : "violated")
            << std::setw(14) << (r.settling ? fmt(*r.settling) : std::string("-")) << std::setw(16)
            << fmt(r.final_norm) << std::setw(16) << fmt(r.peak_norm) << r.status << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Velocity-free quadrotor position control toolkit", "niquad"};
    app.require_subcommand(1);

    std::string config_path;
    bool allow_unstable = false, plot = false, as_json = false;
    std::string output_override, format_override;
    std::string param = "delta";
    double from = 0.0, to = 0.0;
    int steps = 0, jobs = 0;

    auto* sim = app.add_subcommand("simulate", "Run the closed-loop simulation and write the trajectory");
    sim->add_option("config", config_path, "JSON run configuration")->required();
    sim->add_flag("--allow-unstable", allow_unstable, "Simulate even if the delta constraint fails");
    sim->add_option("-o,--output", output_override, "Output path (overrides the config)");
    sim->add_option("--format", format_override, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sim->add_flag("--plot", plot, "Also write an SVG plot next to the output");

    auto* val = app.add_subcommand("validate-params", "Check delta against the sector-bound minimum");
    val->add_option("config", config_path, "JSON run configuration")->required();

    auto* ni = app.add_subcommand("check-ni", "Classify the controller and certify the plant");
    ni->add_option("config", config_path, "JSON run configuration")->required();
    ni->add_flag("--json", as_json, "Emit the full report as JSON");

    auto* sw = app.add_subcommand("sweep", "Simulate over a parameter grid");
    sw->add_option("config", config_path, "JSON run configuration")->required();
    sw->add_option("--param", param, "Swept parameter")
        ->check(CLI::IsMember({"delta", "gamma_ir", "gamma_sector", "kp"}));
    sw->add_option("--from", from, "First value")->required();
    sw->add_option("--to", to, "Last value")->required();
    sw->add_option("--steps", steps, "Number of grid points")->required()->check(CLI::PositiveNumber);
    sw->add_option("--jobs", jobs, "Concurrent runs (default: hardware threads)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sim) return cmd_simulate(config_path, allow_unstable, output_override, format_override, plot, out, err);
        if (*val) return cmd_validate(config_path, out, err);
        if (*ni) return cmd_check_ni(config_path, as_json, out, err);
        if (*sw) return cmd_sweep(config_path, param, from, to, steps, jobs, out, err);
    } catch (const Exit& e) {
        return e.status;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}

}  // namespace niquad
