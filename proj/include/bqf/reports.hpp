#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bqf/lfunc.hpp"
#include "bqf/moments.hpp"

namespace bqf {

using ordered_json = nlohmann::ordered_json;

inline ordered_json rational_json(const Rational& r) {
    return ordered_json{{"num", r.num()}, {"den", r.den()}};
}

// floats enter JSON through the fixed 12-digit formatter so reports diff
// cleanly across platforms
inline double report_float(double v) { return std::stod(format_float(v)); }

inline ordered_json bundle_json(const ConstantsBundle& b) {
    ordered_json j;
    j["N"] = b.N;
    j["C"] = rational_json(b.C);
    j["alpha"] = report_float(b.alpha);
    j["L1"] = report_float(b.L1);
    j["L1_prime"] = report_float(b.L1_prime);
    j["gamma"] = report_float(b.gamma);
    j["zeta_prime_2"] = report_float(b.zeta_prime_2);
    j["A_Q"] = rational_json(b.A_Q);
    j["solvable"] = b.solvable;
    j["idoneal"] = b.idoneal;
    // the -4N series is imprimitive for N = 3 mod 4; the primitive
    // normalization is reported alongside (identical otherwise)
    j["primitive"] = ordered_json{{"discriminant", b.fundamental},
                                  {"L1", report_float(b.L1_primitive)},
                                  {"L1_prime", report_float(b.L1_prime_primitive)},
                                  {"alpha", report_float(b.alpha_primitive)}};
    return j;
}

inline std::string moment_csv(const FitSummary& fit) {
    std::ostringstream os;
    os << "x,S,C_xlogx_model,full_model,ratio_main,ratio_full,slope_est\n";
    std::string slope = format_float(double(fit.slope));
    for (const auto& p : fit.points) {
        long double lx = std::log((long double)p.x);
        long double main_model = fit.C * p.x * lx;
        long double full_model = fit.alpha ? fit.C * (p.x * lx + *fit.alpha * p.x) : 0.0L;
        os << p.x << ',' << to_string(i128(p.S)) << ',' << format_float(double(main_model)) << ','
           << (fit.alpha ? format_float(double(full_model)) : std::string()) << ','
           << format_float(double(p.ratio_main)) << ','
           << (fit.alpha ? format_float(double(p.ratio_full)) : std::string()) << ',' << slope << '\n';
    }
    return os.str();
}

inline ordered_json moment_json(const MomentReport& rep, const FitSummary& fit,
                                const ConstantsBundle& bundle) {
    ordered_json j;
    j["N"] = rep.N;
    j["x_max"] = rep.x_max;
    j["constants"] = bundle_json(bundle);
    j["slope_est"] = report_float(double(fit.slope));
    j["ratio_gap_monotone"] = fit.ratio_gap_monotone;
    ordered_json pts = ordered_json::array();
    for (const auto& p : fit.points) {
        long double lx = std::log((long double)p.x);
        ordered_json e;
        e["x"] = p.x;
        e["S"] = to_string(i128(p.S));
        e["C_xlogx_model"] = report_float(double(fit.C * p.x * lx));
        e["ratio_main"] = report_float(double(p.ratio_main));
        if (fit.alpha) {
            e["full_model"] = report_float(double(fit.C * (p.x * lx + *fit.alpha * p.x)));
            e["ratio_full"] = report_float(double(p.ratio_full));
        }
        pts.push_back(e);
    }
    j["points"] = pts;
    return j;
}

inline std::string probe_csv(const PoleProbeReport& rep) {
    std::ostringstream os;
    os << "character,order,genus,slope,slope_ratio,classification\n";
    for (const auto& row : rep.rows) {
        os << row.index << ',' << row.order << ',' << (row.genus ? 1 : 0) << ','
           << format_float(double(row.slope)) << ',' << format_float(double(row.slope_ratio)) << ','
           << row.classification << '\n';
    }
    return os.str();
}

inline ordered_json probe_json(const PoleProbeReport& rep) {
    ordered_json j;
    j["D"] = rep.D;
    j["x_max"] = rep.x_max;
    j["threshold"] = report_float(double(rep.threshold));
    j["all_match"] = rep.all_match;
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.rows) {
        ordered_json e;
        e["character"] = row.index;
        e["order"] = row.order;
        e["genus"] = row.genus;
        e["slope"] = report_float(double(row.slope));
        e["slope_ratio"] = report_float(double(row.slope_ratio));
        e["classification"] = row.classification;
        ordered_json ms = ordered_json::array();
        for (std::size_t i = 0; i < rep.checkpoints.size(); ++i)
            ms.push_back(ordered_json{{"x", rep.checkpoints[i]},
                                      {"M", report_float(double(row.moments[i]))}});
        e["moments"] = ms;
        rows.push_back(e);
    }
    j["characters"] = rows;
    return j;
}

// per-character Hecke coefficient stream: n, re, im
inline std::string coefficient_csv(const FormClassGroup& G, const ClassCharacter& chi, i64 n_max) {
    std::ostringstream os;
    os << "n,re,im\n";
    for (i64 n = 1; n <= n_max; ++n) {
        auto z = hecke_coefficient(G, chi, n, 2).to_complex();
        os << n << ',' << format_float(z.real()) << ',' << format_float(z.imag()) << '\n';
    }
    return os.str();
}

} // namespace bqf
