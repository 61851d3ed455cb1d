// SPDX-License-Identifier: Apache-2.0
//
// Sweep execution over inclusion size or position, pairing the asymptotic
// prediction with the multipole reference per grid point, and CSV/JSON
// export.  Shifts are reported relative to the unperturbed frequency.
// Output is deterministic: fixed grids, fixed formatting, records ordered by
// grid index regardless of worker scheduling.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "disksplit/multipole.hpp"
#include "disksplit/splitting.hpp"

#include "json.hpp"

namespace disksplit {

struct MultipoleSettings {
    bool enabled = true;
    int order = 16;
    int scan_points = 600;
    double tol = 5e-16;
};

enum class SweepKind { eps, center };

struct SweepSpec {
    SweepKind kind = SweepKind::eps;
    int level_index = 1;                  // theta in the sorted spectrum
    double d = 0.5;                       // center distance for eps sweeps
    double eps = 1e-2;                    // inclusion size for center sweeps
    double eps_min = 1e-4, eps_max = 1e-2;  // log-spaced grid for eps sweeps
    double d_min = 0.0, d_max = 0.8;      // linear grid for center sweeps
    int points = 8;
    double truncation = 60.0;             // frequency cutoff of the spectral sum
    int quad_nodes = 256;
    int jobs = 1;
    MultipoleSettings multipole;
};

struct SweepRecord {
    double eps = 0.0;
    double d = 0.0;
    double omega_theta = 0.0;
    std::optional<double> asym_lo, asym_hi;      // predicted shifts per branch
    std::optional<double> mp_lo, mp_hi;          // multipole shifts per branch
    std::optional<double> err_lo, err_hi;        // |asym - mp| where both exist
    std::optional<double> legacy_hi;             // classical 1/log(eps) law
    std::string status = "ok";
};

// Scan windows sized from the asymptotic prediction: the even branch moves by
// ~shift, the odd branch by O(eps^2); both windows are clipped to stay away
// from the neighboring levels.
inline MultipoleConfig window_config(const std::vector<EigenLevel>& levels, int theta, double eps,
                                     double predicted_shift, const MultipoleSettings& mp) {
    const double w0 = levels.at(theta).omega;
    MultipoleConfig c;
    c.order = mp.order;
    c.scan_points = mp.scan_points;
    c.tol = mp.tol;
    c.expected_roots = levels[theta].multiplicity;
    c.scan_lo = w0 - std::max(10.0 * eps * eps, 1e-12);
    const double tight_hi = w0 + std::max(100.0 * eps * eps, 1e-11);
    c.scan_hi = (predicted_shift > 1e-12)
                    ? w0 + 1.6 * predicted_shift + 100.0 * eps * eps + 1e-4
                    : tight_hi;
    c.odd_scan_lo = c.scan_lo;
    c.odd_scan_hi = tight_hi;
    if (theta + 1 < static_cast<int>(levels.size()))
        c.scan_hi = std::min(c.scan_hi, 0.5 * (w0 + levels[theta + 1].omega));
    if (theta >= 1) c.scan_lo = std::max(c.scan_lo, 0.5 * (levels[theta - 1].omega + w0));
    c.odd_scan_lo = std::max(c.odd_scan_lo, c.scan_lo);
    c.odd_scan_hi = std::min(c.odd_scan_hi, c.scan_hi);
    return c;
}

namespace detail {

inline void fill_asymptotics(SweepRecord& rec, const std::vector<EigenLevel>& levels, int theta,
                             Point z, double eps, const LevelResponse& resp, int nodes) {
    const SplitPrediction pred =
        predict_splitting(levels, theta, z, eps, resp, ShiftModel::characteristic, nodes);
    rec.asym_lo = pred.shifts.front();
    rec.asym_hi = pred.shifts.back();
    rec.legacy_hi = legacy_log_shift(levels[theta], z, eps);
}

inline void fill_multipole(SweepRecord& rec, const std::vector<EigenLevel>& levels, int theta,
                           double d, double eps, const MultipoleSettings& mp) {
    const double shift_hat = rec.asym_hi.value_or(0.0);
    const MultipoleConfig config = window_config(levels, theta, eps, shift_hat, mp);
    const RootSearchResult found = find_roots(d, eps, config);
    if (!found.count_ok) {
        rec.status = "mp_failed";
        return;
    }
    const double w0 = levels[theta].omega;
    rec.mp_lo = found.roots.front() - w0;
    rec.mp_hi = found.roots.back() - w0;
    if (rec.asym_lo) rec.err_lo = std::abs(*rec.asym_lo - *rec.mp_lo);
    if (rec.asym_hi) rec.err_hi = std::abs(*rec.asym_hi - *rec.mp_hi);
}

}  // namespace detail

inline void validate_spec(const SweepSpec& spec) {
    if (spec.points < 1) throw std::invalid_argument("sweep: empty grid");
    if (spec.level_index < 1) throw std::invalid_argument("sweep: level index must be >= 1");
    if (spec.truncation > 200.0)
        throw std::invalid_argument("sweep: truncation above the enumerable spectrum (200)");
    if (spec.kind == SweepKind::eps) {
        if (!(spec.eps_min > 0.0) || !(spec.eps_min <= spec.eps_max) || spec.eps_max > 0.2)
            throw std::invalid_argument("sweep: eps range must satisfy 0 < eps_min <= eps_max <= 0.2");
        if (spec.d < 0.0 || spec.d > 0.9)
            throw std::invalid_argument("sweep: center distance must lie in [0, 0.9]");
    } else {
        if (!(spec.eps > 0.0) || spec.eps > 0.2)
            throw std::invalid_argument("sweep: eps must lie in (0, 0.2]");
        if (spec.d_min < 0.0 || spec.d_min > spec.d_max || spec.d_max > 0.9)
            throw std::invalid_argument("sweep: center range must satisfy 0 <= d_min <= d_max <= 0.9");
    }
}

inline std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    validate_spec(spec);
    const double enum_cap = std::min(200.0, std::max(spec.truncation, 20.0));
    const std::vector<EigenLevel> levels = enumerate_levels(enum_cap);
    if (spec.level_index >= static_cast<int>(levels.size()))
        throw std::invalid_argument("sweep: level index beyond the enumerated spectrum");
    const int theta = spec.level_index;
    const double w0 = levels[theta].omega;
    if (spec.truncation < 4.0 * w0)
        throw std::invalid_argument("sweep: truncation must be >= 4 * omega_theta");
    QuadratureOptions qopts;
    qopts.nodes = spec.quad_nodes;
    qopts.check = false;  // node doubling is already part of the background sum

    std::vector<SweepRecord> records(spec.points);

    std::optional<LevelResponse> shared_response;
    if (spec.kind == SweepKind::eps)
        shared_response = spectral_background(levels, theta, {spec.d, 0.0}, spec.truncation, qopts);

    const auto run_one = [&](int i) {
        SweepRecord& rec = records[i];
        rec.omega_theta = w0;
        if (spec.kind == SweepKind::eps) {
            rec.d = spec.d;
            if (i == 0)
                rec.eps = spec.eps_min;
            else if (i == spec.points - 1)
                rec.eps = spec.eps_max;
            else
                rec.eps = std::exp(std::log(spec.eps_min) +
                                   (std::log(spec.eps_max) - std::log(spec.eps_min)) * i /
                                       (spec.points - 1));
        } else {
            rec.eps = spec.eps;
            if (i == 0)
                rec.d = spec.d_min;
            else if (i == spec.points - 1)
                rec.d = spec.d_max;
            else
                rec.d = spec.d_min + (spec.d_max - spec.d_min) * i / (spec.points - 1);
        }
        const Point z{rec.d, 0.0};
        try {
            const LevelResponse resp =
                shared_response ? *shared_response
                                : spectral_background(levels, theta, z, spec.truncation, qopts);
            detail::fill_asymptotics(rec, levels, theta, z, rec.eps, resp, spec.quad_nodes);
        } catch (const std::exception&) {
            rec.status = "asym_failed";
            return;
        }
        if (!spec.multipole.enabled) {
            rec.status = "mp_skipped";
            return;
        }
        try {
            detail::fill_multipole(rec, levels, theta, rec.d, rec.eps, spec.multipole);
        } catch (const std::exception&) {
            rec.status = "mp_failed";
        }
    };

    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        for (int i = 0; i < spec.points; ++i) run_one(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(jobs, spec.points); ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < spec.points; i = next.fetch_add(1)) run_one(i);
            });
        for (auto& th : pool) th.join();
    }
    return records;
}

inline double failed_fraction(const std::vector<SweepRecord>& records) {
    if (records.empty()) return 0.0;
    int bad = 0;
    for (const auto& r : records)
        if (r.status == "mp_failed" || r.status == "asym_failed") ++bad;
    return static_cast<double>(bad) / records.size();
}

// ---------------------------------------------------------------------------
// Export.  CSV header is part of the external contract.

inline constexpr const char* csv_header =
    "eps,d,omega_theta,asym_lo,asym_hi,mp_lo,mp_hi,err_lo,err_hi,legacy_hi,status";

namespace detail {

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_value(const std::optional<double>& v) {
    return v ? format_value(*v) : std::string{};
}

}  // namespace detail

inline void export_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
    if (records.empty()) throw std::invalid_argument("export: no records");
    out << csv_header << '\n';
    for (const auto& r : records) {
        out << detail::format_value(r.eps) << ',' << detail::format_value(r.d) << ','
            << detail::format_value(r.omega_theta) << ',' << detail::format_value(r.asym_lo) << ','
            << detail::format_value(r.asym_hi) << ',' << detail::format_value(r.mp_lo) << ','
            << detail::format_value(r.mp_hi) << ',' << detail::format_value(r.err_lo) << ','
            << detail::format_value(r.err_hi) << ',' << detail::format_value(r.legacy_hi) << ','
            << r.status << '\n';
    }
}

inline void export_json(const std::vector<SweepRecord>& records, std::ostream& out) {
    if (records.empty()) throw std::invalid_argument("export: no records");
    nlohmann::json arr = nlohmann::json::array();
    const auto put = [](nlohmann::json& obj, const char* key, const std::optional<double>& v) {
        if (v)
            obj[key] = *v;
        else
            obj[key] = nullptr;
    };
    for (const auto& r : records) {
        nlohmann::json obj;
        obj["eps"] = r.eps;
        obj["d"] = r.d;
        obj["omega_theta"] = r.omega_theta;
        put(obj, "asym_lo", r.asym_lo);
        put(obj, "asym_hi", r.asym_hi);
        put(obj, "mp_lo", r.mp_lo);
        put(obj, "mp_hi", r.mp_hi);
        put(obj, "err_lo", r.err_lo);
        put(obj, "err_hi", r.err_hi);
        put(obj, "legacy_hi", r.legacy_hi);
        obj["status"] = r.status;
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace disksplit
