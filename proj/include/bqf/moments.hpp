#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bqf/characters.hpp"
#include "bqf/common.hpp"
#include "bqf/forms.hpp"
#include "bqf/ideals.hpp"
#include "bqf/lfunc.hpp"

namespace bqf {

inline std::vector<i64> default_checkpoints(i64 x_max) {
    std::vector<i64> cps;
    for (i64 x = 1000; x < x_max; x *= 10) cps.push_back(x);
    if (x_max >= 1) cps.push_back(x_max);
    return cps;
}

// ---------------------------------------------------------------------------
// sum of r_{2,N}(n)^2
// ---------------------------------------------------------------------------

struct MomentCheckpoint {
    i64 x = 0;
    i128 S = 0;
};

struct MomentReport {
    i64 N = 0;
    i64 x_max = 0;
    std::vector<MomentCheckpoint> points;
};

// Streams the counting sieve and accumulates S(x) = sum_{n<=x} r^2 exactly.
// Deterministic for fixed inputs regardless of chunking and thread count.
inline MomentReport accumulate_r_squared(i64 N, i64 x_max, std::vector<i64> checkpoints = {},
                                         i64 chunk_size = 1 << 22, int threads = 0) {
    if (threads <= 0) threads = default_thread_count();
    if (checkpoints.empty()) checkpoints = default_checkpoints(x_max);
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > x_max) throw std::invalid_argument("checkpoint beyond x_max");
        if (i && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    }
    MomentReport rep;
    rep.N = N;
    rep.x_max = x_max;
    if (x_max < 1) {
        for (i64 c : checkpoints) rep.points.push_back({c, 0});
        return rep;
    }
    i128 S = 0;
    std::size_t next_cp = 0;
    stream_diagonal_counts(N, x_max, chunk_size, threads,
                           [&](i64 lo, i64 hi, const std::vector<std::uint16_t>& cells) {
                               for (i64 n = lo; n < hi; ++n) {
                                   i64 r = cells[std::size_t(n - lo)];
                                   S += i128(r) * r;
                                   while (next_cp < checkpoints.size() && checkpoints[next_cp] == n) {
                                       rep.points.push_back({n, S});
                                       ++next_cp;
                                   }
                               }
                           });
    while (next_cp < checkpoints.size()) {
        // checkpoints below 1 (x = 0) report S = 0 at the front
        rep.points.push_back({checkpoints[next_cp], checkpoints[next_cp] < 1 ? i128(0) : S});
        ++next_cp;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// per-class ideal-count moments (Hecke coefficient second moments)
// ---------------------------------------------------------------------------

// Exact pairwise sums P[i][j] = sum_{odd n <= x} J_i(n) J_j(n) at each
// checkpoint; every character moment and cross term derives from P.
struct ClassMomentSeries {
    i64 D = 0;
    FormClassGroup group;
    std::vector<ClassCharacter> table;
    std::vector<i64> checkpoints;
    std::vector<std::vector<i128>> pair_sums; // [checkpoint][i * h + j]

    // M_chi(x) = sum |b_chi(n)|^2 = sum_{i,j} chi(i) conj(chi(j)) P[i][j]
    long double character_moment(std::size_t cp, const ClassCharacter& chi) const {
        const int h = group.order();
        long double total = 0;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                int e = ((chi.exps[i] - chi.exps[j]) % chi.m + chi.m) % chi.m;
                long double c = std::cos(2.0L * kPi * e / chi.m);
                total += c * (long double)pair_sums[cp][std::size_t(i) * h + j];
            }
        return total;
    }

    // exact value for real characters (values +-1)
    i128 character_moment_exact(std::size_t cp, const ClassCharacter& chi) const {
        const int h = group.order();
        i128 total = 0;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                total += i128(chi.sign(i)) * chi.sign(j) * pair_sums[cp][std::size_t(i) * h + j];
        return total;
    }

    // sum_{odd n <= x} a_n b_chi(n) as an exact cyclotomic integer
    CycInt cross_term(std::size_t cp, const ClassCharacter& chi) const {
        const int h = group.order();
        CycInt total(chi.m);
        for (int j = 0; j < h; ++j) {
            i128 w = 0;
            for (int i = 0; i < h; ++i) w += pair_sums[cp][std::size_t(i) * h + j];
            total += CycInt::root_of_unity(chi.m, chi.exps[j]) * i64(w);
        }
        return total;
    }

    // sum over all classes of J(c, n)^2, summed over odd n <= x (exact)
    i128 diagonal_total(std::size_t cp) const {
        const int h = group.order();
        i128 total = 0;
        for (int i = 0; i < h; ++i) total += pair_sums[cp][std::size_t(i) * h + i];
        return total;
    }
};

// Sweeps every class form of disc D and accumulates the exact pairwise
// products of prime-to-2 ideal counts, emitting at each checkpoint. Ranges
// between checkpoints are cut at the chunk grid and swept in parallel; the
// reduction is an ordered prefix over exact integers, so the result is
// identical for any thread count.
inline ClassMomentSeries accumulate_class_moments(i64 D, i64 x_max, std::vector<i64> checkpoints = {},
                                                  i64 chunk_size = 1 << 21, int threads = 0) {
    require_discriminant(D);
    if (threads <= 0) threads = default_thread_count();
    if (checkpoints.empty()) checkpoints = default_checkpoints(x_max);
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > x_max) throw std::invalid_argument("checkpoint beyond x_max");
        if (i && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    }
    ClassMomentSeries series;
    series.D = D;
    series.group = FormClassGroup::enumerate(D);
    series.table = character_table(series.group);
    series.checkpoints = checkpoints;
    const int h = series.group.order();
    const int w = unit_weight(D);
    series.pair_sums.assign(checkpoints.size(), std::vector<i128>(std::size_t(h) * h, 0));
    if (x_max < 1) return series;
    if (chunk_size < 1) chunk_size = x_max;

    // ranges no wider than a chunk, cut so every checkpoint is a range end
    std::vector<std::pair<i64, i64>> ranges;
    {
        i64 lo = 1;
        std::size_t cp = 0;
        while (lo <= x_max) {
            while (cp < checkpoints.size() && checkpoints[cp] < lo) ++cp;
            i64 hi = std::min(x_max, lo + chunk_size - 1);
            if (cp < checkpoints.size() && checkpoints[cp] <= hi) hi = checkpoints[cp];
            ranges.emplace_back(lo, hi + 1);
            lo = hi + 1;
        }
    }

    std::vector<std::vector<i128>> range_sums(ranges.size());
    parallel_jobs(ranges.size(), threads, [&](std::size_t job) {
        auto [lo, hi] = ranges[job];
        auto counts = std::vector<std::vector<std::uint16_t>>(std::size_t(h));
        for (int c = 0; c < h; ++c) {
            sweep_form_range(series.group.classes[std::size_t(c)], lo, hi, counts[std::size_t(c)]);
            for (i64 n = lo; n < hi; ++n) {
                std::uint16_t& cell = counts[std::size_t(c)][std::size_t(n - lo)];
                if (n % 2 == 0) {
                    cell = 0; // prime-to-2 restriction
                    continue;
                }
                if (cell % w)
                    throw std::logic_error("form representation count not divisible by unit weight");
                cell = std::uint16_t(cell / w);
            }
        }
        std::vector<i128> sums(std::size_t(h) * h, 0);
        for (i64 n = lo; n < hi; ++n) {
            if (n % 2 == 0) continue;
            for (int i = 0; i < h; ++i) {
                i64 ji = counts[std::size_t(i)][std::size_t(n - lo)];
                if (!ji) continue;
                for (int j = 0; j < h; ++j) {
                    i64 jj = counts[std::size_t(j)][std::size_t(n - lo)];
                    if (jj) sums[std::size_t(i) * h + j] += i128(ji) * jj;
                }
            }
        }
        range_sums[job] = std::move(sums);
    });

    std::vector<i128> running(std::size_t(h) * h, 0);
    std::size_t cp = 0;
    for (std::size_t job = 0; job < ranges.size(); ++job) {
        for (std::size_t k = 0; k < running.size(); ++k) running[k] += range_sums[job][k];
        while (cp < checkpoints.size() && checkpoints[cp] == ranges[job].second - 1) {
            series.pair_sums[cp] = running;
            ++cp;
        }
    }
    while (cp < checkpoints.size()) series.pair_sums[cp++] = running;
    return series;
}

// Second moment of one character's Hecke coefficients. Values are exact
// 128-bit integers when the character is real; the long double column is
// derived from the exact pairwise sums either way.
struct CharacterMomentReport {
    i64 D = 0;
    int character_index = 0;
    bool real_valued = false;
    std::vector<i64> checkpoints;
    std::vector<long double> M;
    std::vector<i128> M_exact; // filled when real_valued
};

inline CharacterMomentReport accumulate_character_moment(i64 D, int character_index, i64 x_max,
                                                         std::vector<i64> checkpoints = {},
                                                         int threads = 0) {
    ClassMomentSeries series = accumulate_class_moments(D, x_max, std::move(checkpoints), 1 << 21, threads);
    if (character_index < 0 || character_index >= int(series.table.size()))
        throw std::invalid_argument("character index out of range");
    const ClassCharacter& chi = series.table[std::size_t(character_index)];
    CharacterMomentReport rep;
    rep.D = D;
    rep.character_index = character_index;
    rep.real_valued = chi.is_real();
    rep.checkpoints = series.checkpoints;
    for (std::size_t cp = 0; cp < series.checkpoints.size(); ++cp) {
        rep.M.push_back(series.character_moment(cp, chi));
        if (rep.real_valued) rep.M_exact.push_back(series.character_moment_exact(cp, chi));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// asymptotic fits
// ---------------------------------------------------------------------------

struct FitPoint {
    i64 x = 0;
    long double S = 0;
    long double ratio_main = 0; // S / (C x log x)
    long double ratio_full = 0; // S / (C (x log x + alpha x)), 0 when no alpha
};

struct FitSummary {
    long double C = 0;
    std::optional<long double> alpha;
    std::vector<FitPoint> points;
    long double slope = 0;            // least-squares slope of S/x against log x
    bool ratio_gap_monotone = false;  // |ratio - 1| nonincreasing over checkpoints
};

inline FitSummary fit_asymptotic(const std::vector<MomentCheckpoint>& pts, long double C,
                                 std::optional<long double> alpha = std::nullopt) {
    FitSummary fit;
    fit.C = C;
    fit.alpha = alpha;
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& p : pts) {
        if (p.x < 2) continue;
        FitPoint fp;
        fp.x = p.x;
        fp.S = (long double)p.S;
        long double lx = std::log((long double)p.x);
        fp.ratio_main = fp.S / (C * p.x * lx);
        if (alpha) fp.ratio_full = fp.S / (C * ((long double)p.x * lx + *alpha * p.x));
        fit.points.push_back(fp);
        long double y = fp.S / p.x;
        sx += lx; sy += y; sxx += lx * lx; sxy += lx * y;
        ++n;
    }
    if (n >= 2) {
        long double det = n * sxx - sx * sx;
        if (det != 0) fit.slope = (n * sxy - sx * sy) / det;
    }
    fit.ratio_gap_monotone = true;
    for (std::size_t i = 1; i < fit.points.size(); ++i) {
        long double prev = alpha ? fit.points[i - 1].ratio_full : fit.points[i - 1].ratio_main;
        long double cur = alpha ? fit.points[i].ratio_full : fit.points[i].ratio_main;
        if (std::fabs(cur - 1) > std::fabs(prev - 1)) fit.ratio_gap_monotone = false;
    }
    return fit;
}

// ---------------------------------------------------------------------------
// Nowak-style second moment of prime-to-2 ideal counts
// ---------------------------------------------------------------------------

struct NowakReport {
    i64 N = 0;
    int branch = 0;        // 1 or 9 (numerator of the c/(2 pi^2) factor)
    long double A = 0;     // branch/(2 pi^2) L(1,chi_{-N})^2 prod_{p|N} p/(p+1)
    FitSummary fit;
};

// Fits sum_{n<=x} a_n^2 (a_n = prime-to-2 ideal count of norm n in
// Q(sqrt(-N))) against the branch constant for -N mod 8.
inline NowakReport nowak_check(i64 N, i64 x_max, std::vector<i64> checkpoints = {}, int threads = 0) {
    require_squarefree(N);
    if (((N % 4) + 4) % 4 != 3)
        throw std::invalid_argument("nowak_check needs N = 3 mod 4");
    if (checkpoints.empty()) checkpoints = default_checkpoints(x_max);
    NowakReport rep;
    rep.N = N;
    i64 negN_mod8 = ((-N) % 8 + 8) % 8;
    rep.branch = negN_mod8 == 1 ? 1 : 9;
    long double L = l_one(-N);
    long double A = rep.branch / (2 * kPi * kPi) * L * L;
    for (i64 p : distinct_prime_factors(N)) A *= (long double)p / (p + 1);
    rep.A = A;

    ClassMomentSeries series = accumulate_class_moments(-N, x_max, checkpoints, 1 << 21, threads);
    // a_n = sum over classes of J(c, n); sum a_n^2 = sum over all pairs
    std::vector<MomentCheckpoint> pts;
    for (std::size_t cp = 0; cp < checkpoints.size(); ++cp) {
        i128 total = 0;
        for (const i128 v : series.pair_sums[cp]) total += v;
        pts.push_back({checkpoints[cp], total});
    }
    rep.fit = fit_asymptotic(pts, A);
    return rep;
}

// ---------------------------------------------------------------------------
// growth classification of character second moments
// ---------------------------------------------------------------------------

struct CharacterGrowth {
    int index = 0;
    int order = 1;
    bool genus = false;       // algebraic: order <= 2
    long double slope = 0;    // slope of M/x vs log x
    long double slope_ratio = 0;
    std::string classification; // "xlogx-like" or "x-like"
    std::vector<long double> moments;
};

struct PoleProbeReport {
    i64 D = 0;
    i64 x_max = 0;
    long double threshold = 0;
    std::vector<i64> checkpoints;
    std::vector<CharacterGrowth> rows;
    bool all_match = false; // empirical class == algebraic genus prediction
};

// For each character, regresses M_chi(x)/x against log x and classifies the
// growth as x log x (double pole) or x (simple pole) by comparing the slope
// with the trivial character's. Threshold is relative (default 25%).
inline PoleProbeReport genus_pole_probe(i64 D, i64 x_max, std::vector<i64> checkpoints = {},
                                        long double threshold = 0.25L, int threads = 0) {
    if (checkpoints.empty()) {
        for (i64 x = std::max<i64>(1, x_max / 100); x < x_max; x *= 3) checkpoints.push_back(x);
        if (checkpoints.empty() || checkpoints.back() != x_max) checkpoints.push_back(x_max);
    }
    PoleProbeReport rep;
    rep.D = D;
    rep.x_max = x_max;
    rep.threshold = threshold;
    rep.checkpoints = checkpoints;
    ClassMomentSeries series = accumulate_class_moments(D, x_max, checkpoints, 1 << 21, threads);

    auto slope_of = [&](const std::vector<long double>& M) {
        long double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            long double lx = std::log((long double)checkpoints[i]);
            long double y = M[i] / checkpoints[i];
            sx += lx; sy += y; sxx += lx * lx; sxy += lx * y;
            ++n;
        }
        long double det = n * sxx - sx * sx;
        return det == 0 ? 0.0L : (n * sxy - sx * sy) / det;
    };

    long double trivial_slope = 0;
    for (std::size_t k = 0; k < series.table.size(); ++k) {
        CharacterGrowth row;
        row.index = int(k);
        row.order = series.table[k].order();
        row.genus = is_genus_character(series.table[k]);
        row.moments.resize(checkpoints.size());
        for (std::size_t cp = 0; cp < checkpoints.size(); ++cp)
            row.moments[cp] = series.character_moment(cp, series.table[k]);
        row.slope = slope_of(row.moments);
        if (k == 0) trivial_slope = row.slope;
        rep.rows.push_back(std::move(row));
    }
    rep.all_match = true;
    for (auto& row : rep.rows) {
        row.slope_ratio = trivial_slope != 0 ? row.slope / trivial_slope : 0;
        row.classification = row.slope_ratio > threshold ? "xlogx-like" : "x-like";
        bool empirical_double_pole = row.classification == "xlogx-like";
        if (empirical_double_pole != row.genus) rep.all_match = false;
    }
    return rep;
}

} // namespace bqf
