#pragma once

#include <cmath>
#include <cstring>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "bqf/forms.hpp"

namespace bqf {

// Number of (x,y) in Z^2 with x^2 + N y^2 = n, by direct search.
inline i64 r_direct(i64 N, i64 n) {
    if (n < 1) return 0;
    i64 count = 0;
    for (i64 y = 0; N * y * y <= n; ++y) {
        i64 rem = n - N * y * y;
        i64 x = isqrt(rem);
        if (x * x != rem) continue;
        count += (x > 0 ? 2 : 1) * (y > 0 ? 2 : 1);
    }
    return count;
}

// ---------------------------------------------------------------------------
// bulk representation counting (the sieve kernel)
// ---------------------------------------------------------------------------

// Counts of a x^2 + b x y + c y^2 = n over (x,y) != (0,0) for n in [lo, hi),
// added into cells[n - lo] (cells is zero-initialized when not pre-sized).
// 16-bit cells with an overflow trap.
//
// Per row y the set {x : Q(x,y) in [lo, hi)} is an interval minus an inner
// interval (the Q < lo hole). Float sqrt only seeds the bounds; membership is
// decided by exact evaluation, and the hole is skipped with one guarded jump.
inline void sweep_form_range(const QuadForm& f, i64 lo, i64 hi, std::vector<std::uint16_t>& cells) {
    const i64 a = f.a, b = f.b, c = f.c;
    const i64 absD = -f.disc();
    if (lo < 1) lo = 1;
    if (hi <= lo) return;
    if (cells.size() != std::size_t(hi - lo)) cells.assign(std::size_t(hi - lo), 0);
    // completing the square: 4a*Q(x,y) = (2ax + by)^2 + |D| y^2, so
    // |y| <= sqrt(4a(hi-1)/|D|)
    const i64 ymax = isqrt(i64(4 * a * (hi - 1) / absD)) + 1;
    for (i64 y = -ymax; y <= ymax; ++y) {
        const double yd = double(y);
        const double bb = double(b) * yd;
        const double disc_hi = bb * bb - 4.0 * a * (double(c) * yd * yd - double(hi - 1));
        if (disc_hi < 0) continue;
        const double sq = std::sqrt(disc_hi);
        const i64 xlo = i64(std::floor((-bb - sq) / (2.0 * a))) - 2;
        const i64 xhi = i64(std::ceil((-bb + sq) / (2.0 * a))) + 2;
        const double disc_lo = bb * bb - 4.0 * a * (double(c) * yd * yd - double(lo - 1));
        const i64 hole_end = disc_lo >= 0
                                 ? i64(std::floor((-bb + std::sqrt(disc_lo)) / (2.0 * a))) - 2
                                 : xlo;
        for (i64 x = xlo; x <= xhi; ++x) {
            i64 n = f.eval(x, y);
            if (n >= hi) continue;
            if (n < lo) {
                if (x < hole_end) x = hole_end; // resume just before the hole's right edge
                continue;
            }
            std::uint16_t& cell = cells[std::size_t(n - lo)];
            if (cell == std::numeric_limits<std::uint16_t>::max())
                throw std::overflow_error("representation count cell overflow at n=" + std::to_string(n));
            ++cell;
        }
    }
}

// Same for the diagonal form x^2 + N y^2, restricted to x >= 0, y >= 0 with
// sign multiplicities, which is ~4x faster than the generic sweep.
inline void sweep_diagonal_range(i64 N, i64 lo, i64 hi, std::vector<std::uint16_t>& cells) {
    if (lo < 1) lo = 1;
    if (hi <= lo) return;
    if (cells.size() != std::size_t(hi - lo)) cells.assign(std::size_t(hi - lo), 0);
    for (i64 y = 0; N * y * y < hi; ++y) {
        i64 base = N * y * y;
        i64 rem_hi = hi - 1 - base;
        i64 xstart = 0;
        if (base < lo) {
            i64 need = lo - base;
            xstart = isqrt(need);
            if (xstart * xstart < need) ++xstart;
        }
        i64 xend = isqrt(rem_hi);
        std::uint16_t wy = y > 0 ? 2 : 1;
        for (i64 x = xstart; x <= xend; ++x) {
            i64 n = base + x * x;
            if (n < 1) continue;
            std::uint16_t w = wy * (x > 0 ? 2 : 1);
            std::uint16_t& cell = cells[std::size_t(n - lo)];
            if (cell > std::numeric_limits<std::uint16_t>::max() - w)
                throw std::overflow_error("representation count cell overflow at n=" + std::to_string(n));
            cell = std::uint16_t(cell + w);
        }
    }
}

// Dense per-n representation counts r_{2,N}(n) for 1 <= n <= x_max.
struct RepCountLedger {
    i64 N = 0;
    i64 x_max = 0;
    std::vector<std::uint16_t> counts; // counts[n-1] = r_{2,N}(n)

    i64 count(i64 n) const {
        if (n < 1 || n > x_max) return 0;
        return counts[std::size_t(n - 1)];
    }
};

// Streams chunks [lo, hi) of the n-range in ascending order through consume.
// Chunks are swept in parallel; consumption happens in chunk order.
inline void stream_diagonal_counts(i64 N, i64 x_max, i64 chunk_size, int threads,
                                   const std::function<void(i64 lo, i64 hi, const std::vector<std::uint16_t>&)>& consume) {
    if (x_max < 1) return;
    if (chunk_size < 1) chunk_size = x_max;
    std::size_t n_chunks = std::size_t((x_max + chunk_size - 1) / chunk_size);
    std::vector<std::optional<std::vector<std::uint16_t>>> done(n_chunks);
    std::mutex mu;
    std::exception_ptr err;
    std::size_t emitted = 0;
    parallel_jobs(n_chunks, threads, [&](std::size_t j) {
        i64 lo = 1 + i64(j) * chunk_size;
        i64 hi = std::min<i64>(x_max + 1, lo + chunk_size);
        std::vector<std::uint16_t> cells;
        try {
            sweep_diagonal_range(N, lo, hi, cells);
        } catch (...) {
            std::lock_guard<std::mutex> g(mu);
            if (!err) err = std::current_exception();
            return;
        }
        std::lock_guard<std::mutex> g(mu);
        done[j] = std::move(cells);
        while (emitted < n_chunks && done[emitted]) {
            i64 elo = 1 + i64(emitted) * chunk_size;
            i64 ehi = std::min<i64>(x_max + 1, elo + chunk_size);
            consume(elo, ehi, *done[emitted]);
            done[emitted].reset();
            ++emitted;
        }
    });
    if (err) std::rethrow_exception(err);
}

inline RepCountLedger bulk_counts(i64 N, i64 x_max, i64 chunk_size = 1 << 22,
                                  int threads = 0) {
    if (threads <= 0) threads = default_thread_count();
    RepCountLedger ledger;
    ledger.N = N;
    ledger.x_max = std::max<i64>(x_max, 0);
    ledger.counts.resize(std::size_t(ledger.x_max));
    stream_diagonal_counts(N, ledger.x_max, chunk_size, threads,
                           [&](i64 lo, i64, const std::vector<std::uint16_t>& cells) {
                               std::copy(cells.begin(), cells.end(), ledger.counts.begin() + (lo - 1));
                           });
    return ledger;
}

// ---------------------------------------------------------------------------
// ideal enumeration
// ---------------------------------------------------------------------------

// Integral ideal of the order of discriminant D, as content g times the
// primitive ideal [m, (-b + sqrt(D))/2]; norm = g^2 m. class_index = -1 when
// the associated form is imprimitive (non-invertible ideal, conductor case).
struct IdealRecord {
    i64 g = 1;
    i64 m = 1;
    i64 b = 0;
    int class_index = -1;

    i64 norm() const { return g * g * m; }
};

inline std::vector<IdealRecord> enumerate_ideals(i64 D, i64 n, const FormClassGroup& G) {
    require_discriminant(D);
    std::vector<IdealRecord> out;
    if (n < 1) return out;
    for (i64 g = 1; g * g <= n; ++g) {
        if (n % (g * g)) continue;
        i64 m = n / (g * g);
        i64 b0 = (D & 1) ? 1 : 0; // b must match the parity of D
        for (i64 b = b0; b < 2 * m; b += 2) {
            if ((b * b - D) % (4 * m)) continue;
            IdealRecord rec{g, m, b, -1};
            QuadForm f{m, b, (b * b - D) / (4 * m)};
            if (f.is_primitive()) rec.class_index = G.index_of(reduced(f));
            out.push_back(rec);
        }
    }
    return out;
}

// J(c, n): ideals of norm n in the class with the given index, optionally
// restricted to ideals coprime to 2. n <= 0 (the n/4 convention) counts 0.
inline i64 ideal_count(i64 D, const FormClassGroup& G, int class_index, i64 n, int coprime_to = 1) {
    if (n < 1) return 0;
    if (coprime_to == 2 && n % 2 == 0) return 0;
    i64 count = 0;
    for (const auto& rec : enumerate_ideals(D, n, G))
        if (rec.class_index == class_index) ++count;
    return count;
}

// Total ideals of norm n regardless of class (includes non-invertible ones).
inline i64 ideal_count_total(i64 D, i64 n, const FormClassGroup& G, int coprime_to = 1) {
    if (n < 1) return 0;
    if (coprime_to == 2 && n % 2 == 0) return 0;
    return i64(enumerate_ideals(D, n, G).size());
}

// Image of a class of disc -4N under CL(-4N) -> CL(-N), for squarefree
// N = 3 mod 4. Found through an odd-norm representative ideal.
inline int project_class(i64 N, const FormClassGroup& G4N, const FormClassGroup& GN, int class_index) {
    require_squarefree(N);
    if (((N % 4) + 4) % 4 != 3)
        throw std::invalid_argument("project_class needs N = 3 mod 4");
    i64 D = -4 * N;
    for (i64 m = 1; m <= 64 * (N + 4); m += 2) {
        for (i64 b = 0; b < 2 * m; b += 2) {
            if ((b * b - D) % (4 * m)) continue;
            QuadForm f{m, b, (b * b - D) / (4 * m)};
            if (!f.is_primitive()) continue;
            if (G4N.index_of(reduced(f)) != class_index) continue;
            // lift: the O_K-ideal containing [m, (-b + sqrt(-4N))/2] is
            // [m, (-b' + sqrt(-N))/2] with b' = b/2 mod m, b' odd
            i64 bp = ((b / 2) % m + m) % m;
            if (bp % 2 == 0) bp += m;
            QuadForm fp{m, bp, (bp * bp + N) / (4 * m)};
            return GN.index_of(reduced(fp));
        }
    }
    throw std::runtime_error("project_class: no odd-norm representative below scan bound");
}

// ---------------------------------------------------------------------------
// the kappa = 2 decomposition identity
// ---------------------------------------------------------------------------

// Checks r_{2,N}(n) = 2 J(c, n) + w(-N) J(c2, n/4) for n <= n_max,
// with both sides produced by independent enumerations.
struct DecompositionReport {
    i64 N = 0;
    i64 n_max = 0;
    std::vector<i64> failures;

    bool ok() const { return failures.empty(); }
};

inline DecompositionReport verify_decomposition(i64 N, i64 n_max) {
    require_squarefree(N);
    if (((N % 4) + 4) % 4 != 3)
        throw std::invalid_argument("verify_decomposition needs N = 3 mod 4");
    DecompositionReport rep{N, n_max, {}};
    FormClassGroup G4N = FormClassGroup::enumerate(-4 * N);
    FormClassGroup GN = FormClassGroup::enumerate(-N);
    int principal4N = G4N.index_of(principal_form(-4 * N));
    int projected = project_class(N, G4N, GN, principal4N);
    int w = unit_weight(-N);
    for (i64 n = 1; n <= n_max; ++n) {
        i64 lhs = r_direct(N, n);
        i64 rhs = 2 * ideal_count(-4 * N, G4N, principal4N, n, 2);
        if (n % 4 == 0) rhs += w * ideal_count(-N, GN, projected, n / 4, 1);
        if (lhs != rhs) rep.failures.push_back(n);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// ledger export
// ---------------------------------------------------------------------------

inline void write_ledger_csv(const RepCountLedger& ledger, std::ostream& os) {
    os << "n,count\n";
    for (i64 n = 1; n <= ledger.x_max; ++n)
        os << n << ',' << ledger.count(n) << '\n';
}

// Binary layout: "BQF1", 4 reserved zero bytes, u64 N, u64 x_max, then one
// little-endian u16 per n = 1..x_max.
inline void write_ledger_binary(const RepCountLedger& ledger, std::ostream& os) {
    char header[24] = {'B', 'Q', 'F', '1'};
    u64 nn = u64(ledger.N), xx = u64(ledger.x_max);
    for (int i = 0; i < 8; ++i) header[8 + i] = char((nn >> (8 * i)) & 0xff);
    for (int i = 0; i < 8; ++i) header[16 + i] = char((xx >> (8 * i)) & 0xff);
    os.write(header, sizeof(header));
    for (std::uint16_t v : ledger.counts) {
        char cell[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
        os.write(cell, 2);
    }
}

inline RepCountLedger read_ledger_binary(std::istream& is) {
    char header[24];
    is.read(header, sizeof(header));
    if (!is || std::memcmp(header, "BQF1", 4) != 0)
        throw std::runtime_error("not a BQF1 ledger file");
    u64 nn = 0, xx = 0;
    for (int i = 7; i >= 0; --i) nn = (nn << 8) | u64(std::uint8_t(header[8 + i]));
    for (int i = 7; i >= 0; --i) xx = (xx << 8) | u64(std::uint8_t(header[16 + i]));
    RepCountLedger ledger;
    ledger.N = i64(nn);
    ledger.x_max = i64(xx);
    ledger.counts.resize(std::size_t(xx));
    for (auto& v : ledger.counts) {
        char cell[2];
        is.read(cell, 2);
        v = std::uint16_t(std::uint8_t(cell[0])) | std::uint16_t(std::uint16_t(std::uint8_t(cell[1])) << 8);
    }
    if (!is) throw std::runtime_error("truncated BQF1 ledger file");
    return ledger;
}

} // namespace bqf
