#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bqf/arith.hpp"
#include "bqf/forms.hpp"
#include "bqf/rational.hpp"

namespace bqf {

// Universal constants, frozen from slow high-precision series evaluations
// (re-derived by the test suite to 1e-12).
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082L;
inline constexpr long double kZetaPrime2 = -0.937548254315843753702574094568L;
inline constexpr long double kPi = 3.141592653589793238462643383280L;

// C(N) = (3/N) prod_{p | 2N} 2p/(p+1), exact.
inline Rational leading_constant(i64 N) {
    require_squarefree(N);
    Rational c(3, N);
    for (i64 p : distinct_prime_factors(2 * N)) c = c * Rational(2 * p, p + 1);
    return c;
}

// Multiplicative A(q): A(p^e) = 2 + (1 - 1/p)(e - 1) for odd p;
// A(2^e) = 1, 2, e-1 for e <= 1, e = 2, e >= 3. A(1) = 1.
inline Rational mueller_A(i64 q) {
    if (q < 1) throw std::invalid_argument("mueller_A needs q >= 1");
    Rational a(1);
    for (auto [p, e] : factorize(q)) {
        if (p == 2) {
            if (e == 2) a = a * Rational(2);
            else if (e >= 3) a = a * Rational(e - 1);
            // e == 1: factor 1
        } else {
            a = a * (Rational(2) + Rational(p - 1, p) * Rational(e - 1));
        }
    }
    return a;
}

// A_Q = 12 A(q)/q prod_{p|q} (1 + 1/p)^{-1} for Q = [[a, b], [b, d]],
// q = det Q; diagonal entries must be even, det positive.
inline Rational mueller_constant(i64 q00, i64 q01, i64 q11) {
    if (q00 % 2 || q11 % 2)
        throw std::invalid_argument("mueller_constant needs even diagonal entries");
    i64 q = q00 * q11 - q01 * q01;
    if (q <= 0) throw std::invalid_argument("mueller_constant needs det Q > 0");
    Rational a = mueller_A(q) * Rational(12, q);
    for (i64 p : distinct_prime_factors(q)) a = a * Rational(p, p + 1);
    return a;
}

// ---------------------------------------------------------------------------
// Dirichlet L-series of the quadratic character kronecker(D, .)
// ---------------------------------------------------------------------------

// Direct summation of sum_n kronecker(D,n)/n with two rounds of
// period-length block averaging of the partial sums.
inline long double l_one_series(i64 D, i64 terms = 0) {
    require_discriminant(D);
    const i64 q = -D; // kronecker(D, .) has period |D| for a discriminant
    if (terms <= 0) terms = std::max<i64>(200000, 64 * q);
    auto chi = std::vector<int>(std::size_t(q));
    for (i64 r = 0; r < q; ++r) chi[std::size_t(r)] = kronecker(D, r);
    const i64 M = terms;
    long double partial = 0;
    // one pass, maintaining two nested running window sums over q entries
    std::vector<long double> win1(std::size_t(q), 0), win2(std::size_t(q), 0);
    long double sum1 = 0, sum2 = 0;
    long double result = 0;
    for (i64 n = 1; n <= M + 2 * q; ++n) {
        partial += (long double)chi[std::size_t(n % q)] / (long double)n;
        std::size_t slot = std::size_t(n % q);
        sum1 += partial - win1[slot];
        win1[slot] = partial;
        if (n >= q) {
            long double avg1 = sum1 / q;
            sum2 += avg1 - win2[slot];
            win2[slot] = avg1;
            if (n >= 2 * q) result = sum2 / q;
        }
    }
    return result;
}

// L(1, chi_D) by the class number formula 2 pi h / (w sqrt|D|) (valid for
// every discriminant with the bounded-scan h and the w(D) rule), asserted
// against the direct series to 1e-8.
inline long double l_one(i64 D) {
    require_discriminant(D);
    long double value = 2.0L * kPi * (long double)class_number(D) /
                        ((long double)unit_weight(D) * std::sqrt((long double)(-D)));
    long double series = l_one_series(D);
    if (std::fabs(value - series) > 1e-8L)
        throw std::runtime_error("L(1) evaluations disagree for D=" + std::to_string(D));
    return value;
}

namespace detail {

// B_2, B_4, ..., B_12
inline constexpr std::array<long double, 6> kBernoulli = {
    1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730};

} // namespace detail

// L(s, chi_D) for s near 1 (s != 1), by Euler-Maclaurin applied to the
// Hurwitz-zeta pieces of the character sum.
inline long double l_series_at(i64 D, long double s, int truncate = 64) {
    require_discriminant(D);
    const i64 q = -D;
    long double total = 0;
    for (i64 a = 1; a <= q; ++a) {
        int ch = kronecker(D, a);
        if (!ch) continue;
        long double piece = 0;
        // leading terms n = a, a+q, ..., a+(M-1)q
        for (i64 k = 0; k < truncate; ++k)
            piece += std::pow((long double)(a + k * q), -s);
        const long double P = (long double)(a + i64(truncate) * q);
        // tail: integral, half-term and Bernoulli corrections
        piece += std::pow(P, 1 - s) / ((s - 1) * q);
        piece += std::pow(P, -s) / 2;
        long double pochhammer = s;
        long double qpow = (long double)q;
        long double Ppow = std::pow(P, -s - 1);
        long double factorial = 2; // (2j)! running value
        for (std::size_t j = 0; j < detail::kBernoulli.size(); ++j) {
            piece += detail::kBernoulli[j] / factorial * pochhammer * qpow * Ppow;
            // advance from j to j+1: two more pochhammer factors, q^2, P^-2
            pochhammer *= (s + 2 * j + 1) * (s + 2 * j + 2);
            qpow *= (long double)(q * q);
            Ppow /= (long double)P * P;
            factorial *= (long double)(2 * j + 3) * (2 * j + 4);
        }
        total += ch * piece;
    }
    return total;
}

struct DerivativeResult {
    long double value = 0;
    long double error_bound = 0;
    bool bound_met = true; // bound <= 1e-6
};

// L'(1, chi_D) by Richardson-extrapolated central differences of
// s -> L(s, chi_D) at s in {1 +- h, 1 +- 2h}, h = 1e-3, verified at h/2.
inline DerivativeResult l_one_prime(i64 D) {
    auto richardson = [&](long double h) {
        long double c1 = (l_series_at(D, 1 + h) - l_series_at(D, 1 - h)) / (2 * h);
        long double c2 = (l_series_at(D, 1 + 2 * h) - l_series_at(D, 1 - 2 * h)) / (4 * h);
        return (4 * c1 - c2) / 3;
    };
    const long double h = 1e-3L;
    long double at_h = richardson(h);
    long double at_half = richardson(h / 2);
    DerivativeResult r;
    r.value = at_half;
    r.error_bound = 2 * std::fabs(at_half - at_h) + 1e-10L;
    r.bound_met = r.error_bound <= 1e-6L;
    return r;
}

// ---------------------------------------------------------------------------
// the secondary constant alpha(N) and the constants bundle
// ---------------------------------------------------------------------------

inline long double alpha_from(long double L1, long double L1_prime, i64 N) {
    long double s = -1 + 2 * kEulerGamma - (12 / (kPi * kPi)) * kZetaPrime2 + 2 * L1_prime / L1;
    for (i64 p : distinct_prime_factors(2 * N))
        s += std::log((long double)p) / (long double)(p + 1);
    return s;
}

// Every scalar of the x log x + alpha x expansion for one N, with the exact
// A_Q = C(N) identity asserted at construction. For N = 3 mod 4 the series
// attached to disc -4N is imprimitive; both normalizations are carried.
struct ConstantsBundle {
    i64 N = 0;
    Rational C;              // (3/N) prod 2p/(p+1)
    Rational A_Q;            // mueller_constant(diag(2, 2N))
    double L1 = 0;           // L(1) of the kronecker(-4N, .) series
    double L1_prime = 0;
    double alpha = 0;
    i64 fundamental = 0;     // fundamental discriminant under -4N
    double L1_primitive = 0; // same quantities for the primitive character
    double L1_prime_primitive = 0;
    double alpha_primitive = 0;
    double gamma = 0;
    double zeta_prime_2 = 0;
    bool solvable = false;   // h(-4N) == 2^omega(N)
    bool idoneal = false;    // one class per genus
};

inline ConstantsBundle constants_bundle(i64 N) {
    require_squarefree(N);
    ConstantsBundle b;
    b.N = N;
    b.C = leading_constant(N);
    b.A_Q = mueller_constant(2, 0, 2 * N);
    if (b.A_Q != b.C) throw std::logic_error("A_Q != C(N), exact identity violated");
    const i64 D = -4 * N;
    long double L1 = l_one(D);
    DerivativeResult L1p = l_one_prime(D);
    b.L1 = double(L1);
    b.L1_prime = double(L1p.value);
    b.alpha = double(alpha_from(L1, L1p.value, N));
    b.fundamental = conductor_split(D).fundamental;
    if (b.fundamental != D) {
        long double L1f = l_one(b.fundamental);
        DerivativeResult L1pf = l_one_prime(b.fundamental);
        b.L1_primitive = double(L1f);
        b.L1_prime_primitive = double(L1pf.value);
        b.alpha_primitive = double(alpha_from(L1f, L1pf.value, N));
    } else {
        b.L1_primitive = b.L1;
        b.L1_prime_primitive = b.L1_prime;
        b.alpha_primitive = b.alpha;
    }
    b.gamma = double(kEulerGamma);
    b.zeta_prime_2 = double(kZetaPrime2);
    b.solvable = is_solvable(N);
    b.idoneal = is_idoneal(N);
    return b;
}

} // namespace bqf
