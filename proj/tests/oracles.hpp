#pragma once

// Test-side oracles, kept independent of the library paths they check.

#include <cmath>
#include <vector>

#include "bqf/arith.hpp"
#include "bqf/common.hpp"
#include "bqf/forms.hpp"

namespace oracle {

using bqf::i64;
using bqf::i128;

// Class count by blind scan of all (a, b, c) with |b| <= a <= c <= |D|,
// no divisibility shortcuts. Slow on purpose.
inline i64 class_count_blind(i64 D) {
    i64 count = 0;
    for (i64 a = 1; a <= -D; ++a)
        for (i64 c = a; c <= -D; ++c)
            for (i64 b = -a; b <= a; ++b) {
                if (b * b - 4 * a * c != D) continue;
                if (b < 0 && (b == -a || a == c)) continue;
                if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
                ++count;
            }
    return count;
}

// Proper equivalence by brute force: search M = [[p,q],[r,s]], det 1,
// entries bounded, with f(M(x,y)) = g.
inline bool properly_equivalent_witness(const bqf::QuadForm& f, const bqf::QuadForm& g, i64 bound) {
    for (i64 p = -bound; p <= bound; ++p)
        for (i64 q = -bound; q <= bound; ++q)
            for (i64 r = -bound; r <= bound; ++r) {
                // det condition fixes s when p != 0 ... iterate s too, cheap enough
                for (i64 s = -bound; s <= bound; ++s) {
                    if (p * s - q * r != 1) continue;
                    // f(p x + q y, r x + s y) has coefficients:
                    i64 a2 = f.eval(p, r);
                    i64 c2 = f.eval(q, s);
                    i64 b2 = 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s;
                    if (a2 == g.a && b2 == g.b && c2 == g.c) return true;
                }
            }
    return false;
}

// total ideals of norm n for fundamental D: sum_{e|n} kronecker(D, e)
inline i64 divisor_sum_total(i64 D, i64 n) {
    i64 total = 0;
    for (i64 e = 1; e <= n; ++e)
        if (n % e == 0) total += bqf::kronecker(D, e);
    return total;
}

// sum_{n<=x} r_{2,N}(n)^2 by the naive double loop over lattice points,
// squaring per-n tallies collected in a plain array
inline i128 naive_second_moment(i64 N, i64 x) {
    std::vector<i64> counts(std::size_t(x) + 1, 0);
    for (i64 yy = 0; N * yy * yy <= x; ++yy)
        for (i64 xx = 0; xx * xx + N * yy * yy <= x; ++xx) {
            i64 n = xx * xx + N * yy * yy;
            if (n < 1) continue;
            counts[std::size_t(n)] += (xx > 0 ? 2 : 1) * (yy > 0 ? 2 : 1);
        }
    i128 S = 0;
    for (i64 n = 1; n <= x; ++n) S += i128(counts[std::size_t(n)]) * counts[std::size_t(n)];
    return S;
}

// ---------------------------------------------------------------------------
// slow high-precision constants, recomputed from scratch
// ---------------------------------------------------------------------------

// Euler-Mascheroni via Euler-Maclaurin on H_M - log M
inline long double euler_gamma_series() {
    const int M = 200;
    long double H = 0;
    for (int k = 1; k <= M; ++k) H += 1.0L / k;
    long double g = H - std::log((long double)M) - 1.0L / (2 * M);
    const long double B[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66};
    long double Mpow = (long double)M * M;
    for (int j = 0; j < 5; ++j) {
        g += B[j] / ((2 * j + 2) * Mpow);
        Mpow *= (long double)M * M;
    }
    return g;
}

// zeta'(2) = -sum log n / n^2, Euler-Maclaurin tail
inline long double zeta_prime_2_series() {
    const int M = 400;
    long double s = 0;
    for (int n = 2; n <= M; ++n) s -= std::log((long double)n) / ((long double)n * n);
    // tail of -sum_{n>M} log n / n^2 : integral -(log M + 1)/M, half term,
    // and the first Euler-Maclaurin corrections with f(x) = -log x / x^2
    long double lm = std::log((long double)M);
    long double m = (long double)M;
    s += -(lm + 1) / m;                       // integral_M^inf
    s += 0.5L * lm / (m * m);                 // + f(M)/2 with sign folded in
    // f'(x) = (2 log x - 1)/x^3 ; -B_2/2! f'(M)
    s += -(2 * lm - 1) / (12 * m * m * m);
    // f'''(x) = (24 log x - 26)/x^5 ; -B_4/4! f'''(M) with B_4/4! = -1/720
    s += (24 * lm - 26) / (720 * m * m * m * m * m);
    return s;
}

// L'(1, chi_D) by term-wise analytic differentiation of the Euler-Maclaurin
// expansion at s = 1 exactly; the 1/(s-1) poles cancel against sum chi = 0.
inline long double l_prime_analytic(i64 D) {
    const i64 q = -D;
    const int M = 256;
    const long double B[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730};
    long double total = 0;
    for (i64 a = 1; a <= q; ++a) {
        int ch = bqf::kronecker(D, a);
        if (!ch) continue;
        long double piece = 0;
        for (i64 k = 0; k < M; ++k) {
            long double n = (long double)(a + k * q);
            piece -= std::log(n) / n;
        }
        long double P = (long double)(a + i64(M) * q);
        long double lp = std::log(P);
        piece += lp * lp / (2 * q);   // d/ds of P^(1-s)/((s-1) q), pole dropped
        piece -= lp / (2 * P);        // d/ds of P^-s / 2
        // d/ds of B_2j/(2j)! (s)_{2j-1} q^{2j-1} P^{-s-2j+1} at s=1:
        // (B_2j / 2j) (H_{2j-1} - log P) q^{2j-1} P^{-2j}
        long double H = 0;
        int hn = 0;
        long double qpow = (long double)q;
        long double Ppow = 1.0L / (P * P);
        for (int j = 1; j <= 6; ++j) {
            while (hn < 2 * j - 1) { ++hn; H += 1.0L / hn; }
            piece += B[j - 1] / (2 * j) * (H - lp) * qpow * Ppow;
            qpow *= (long double)q * q;
            Ppow /= P * P;
        }
        total += ch * piece;
    }
    return total;
}

} // namespace oracle
