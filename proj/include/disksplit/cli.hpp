// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: spectrum listing, single-point asymptotics and
// multipole runs, eps/center sweeps, and the validation suite.
// Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 validation
// failure.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "disksplit/sweep.hpp"
#include "disksplit/validation.hpp"

namespace disksplit::cli {

namespace detail {

struct OutputTarget {
    std::string path;  // empty = stdout

    int write(const std::string& payload) const {
        if (path.empty()) {
            std::cout << payload;
            return 0;
        }
        std::ofstream f(path, std::ios::binary);
        f << payload;
        f.flush();
        if (!f) {
            std::cerr << "error: cannot write " << path << "\n";
            return 2;
        }
        return 0;
    }
};

inline std::string render_records(const std::vector<SweepRecord>& records,
                                  const std::string& format) {
    std::ostringstream out;
    if (format == "json")
        export_json(records, out);
    else
        export_csv(records, out);
    return out.str();
}

// The inclusion center is reduced to the positive x-axis by a rotation; the
// disk problem is rotation invariant.
inline double center_distance(const std::optional<std::pair<double, double>>& z,
                              const std::optional<double>& d) {
    if (z && d) throw std::invalid_argument("--z and --d are mutually exclusive");
    if (z) return std::hypot(z->first, z->second);
    if (d) {
        if (*d < 0.0) throw std::invalid_argument("--d must be non-negative");
        return *d;
    }
    return 0.5;
}

}  // namespace detail

inline int run(std::vector<std::string> args) {
    CLI::App app{"Neumann-disk eigenvalue splitting from a small grounded inclusion"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    int level = 1;
    double eps = 1e-2;
    double truncation = 60.0;
    int order = 16;
    int jobs = 1;
    bool no_multipole = false;
    std::optional<std::pair<double, double>> z_opt;
    std::optional<double> d_opt;

    const auto add_common = [&](CLI::App* cmd, bool wants_center) {
        cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "write output to this path instead of stdout");
        cmd->add_option("--level", level, "level index theta in the sorted spectrum");
        cmd->add_option("--truncation", truncation, "frequency cutoff of the spectral sum");
        cmd->add_option("--order", order, "multipole truncation order");
        if (wants_center) {
            cmd->add_option_function<std::string>(
                "--z",
                [&](const std::string& s) {
                    double x, y;
                    char comma;
                    std::istringstream is(s);
                    if (!(is >> x >> comma >> y) || comma != ',')
                        throw CLI::ValidationError("--z expects X,Y");
                    z_opt = {x, y};
                },
                "inclusion center as X,Y");
            cmd->add_option("--d", [&](const std::vector<std::string>& vals) {
                d_opt = std::stod(vals.front());
                return true;
            }, "inclusion center distance on the x-axis");
        }
    };

    auto* spectrum = app.add_subcommand("spectrum", "list eigenlevels as CSV");
    double omega_max = 20.0;
    spectrum->add_option("--omega-max", omega_max);
    spectrum->add_option("--out", out_path);

    auto* asym = app.add_subcommand("asym", "asymptotic prediction at one point");
    add_common(asym, true);
    asym->add_option("--eps", eps);

    auto* multipole_cmd = app.add_subcommand("multipole", "reference solve at one point");
    add_common(multipole_cmd, true);
    multipole_cmd->add_option("--eps", eps);

    auto* sweep_eps = app.add_subcommand("sweep-eps", "sweep the inclusion size");
    add_common(sweep_eps, true);
    double eps_min = 1e-4, eps_max = 1e-2;
    int points = 8;
    sweep_eps->add_option("--eps-min", eps_min);
    sweep_eps->add_option("--eps-max", eps_max);
    sweep_eps->add_option("--points", points);
    sweep_eps->add_flag("--no-multipole", no_multipole, "asymptotics-only fast path");
    sweep_eps->add_option("--jobs", jobs);

    auto* sweep_z = app.add_subcommand("sweep-z", "sweep the inclusion center");
    add_common(sweep_z, false);
    double d_min = 0.0, d_max = 0.8;
    sweep_z->add_option("--eps", eps);
    sweep_z->add_option("--d-min", d_min);
    sweep_z->add_option("--d-max", d_max);
    sweep_z->add_option("--points", points);
    sweep_z->add_flag("--no-multipole", no_multipole);
    sweep_z->add_option("--jobs", jobs);

    auto* validate_cmd = app.add_subcommand("validate", "run the validation suite");
    bool fast = false;
    validate_cmd->add_flag("--fast", fast, "skip the slow convergence-order sweeps");
    validate_cmd->add_option("--out", out_path);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("disksplit");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (spectrum->parsed()) {
            const auto levels = enumerate_levels(omega_max);
            std::ostringstream os;
            os << "index,omega,n,k,multiplicity\n";
            for (const auto& l : levels) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%d,%d\n", l.index, l.omega,
                              l.modes[0].n, l.modes[0].k, l.multiplicity);
                os << buf;
            }
            return detail::OutputTarget{out_path}.write(os.str());
        }

        if (asym->parsed() || multipole_cmd->parsed()) {
            SweepSpec spec;
            spec.kind = SweepKind::eps;
            spec.level_index = level;
            spec.d = detail::center_distance(z_opt, d_opt);
            spec.eps_min = spec.eps_max = eps;
            spec.points = 1;
            spec.truncation = truncation;
            spec.multipole.enabled = multipole_cmd->parsed();
            spec.multipole.order = order;
            auto records = run_sweep(spec);
            const int rc = detail::OutputTarget{out_path}.write(
                detail::render_records(records, format));
            if (rc != 0) return rc;
            return failed_fraction(records) > 0.0 ? 2 : 0;
        }

        if (sweep_eps->parsed() || sweep_z->parsed()) {
            SweepSpec spec;
            spec.level_index = level;
            spec.truncation = truncation;
            spec.points = points;
            spec.jobs = jobs;
            spec.multipole.enabled = !no_multipole;
            spec.multipole.order = order;
            if (sweep_eps->parsed()) {
                spec.kind = SweepKind::eps;
                spec.d = detail::center_distance(z_opt, d_opt);
                spec.eps_min = eps_min;
                spec.eps_max = eps_max;
            } else {
                spec.kind = SweepKind::center;
                spec.eps = eps;
                spec.d_min = d_min;
                spec.d_max = d_max;
            }
            auto records = run_sweep(spec);
            const int rc = detail::OutputTarget{out_path}.write(
                detail::render_records(records, format));
            if (rc != 0) return rc;
            if (!no_multipole && failed_fraction(records) > 0.10) return 2;
            return 0;
        }

        if (validate_cmd->parsed()) {
            const auto checks = run_validation(!fast);
            std::ostringstream os;
            os << "check,measured,threshold,pass\n";
            bool all = true;
            for (const auto& c : checks) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%d\n", c.name.c_str(), c.measured,
                              c.threshold, c.pass ? 1 : 0);
                os << buf;
                all = all && c.pass;
            }
            const int rc = detail::OutputTarget{out_path}.write(os.str());
            if (rc != 0) return rc;
            return all ? 0 : 3;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace disksplit::cli
