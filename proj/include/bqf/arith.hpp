#pragma once

#include <utility>
#include <vector>

#include "bqf/common.hpp"

namespace bqf {

// Extended Kronecker symbol (a|b), defined for all integers.
inline int kronecker(i64 a, i64 b) {
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0) return 0;
    int k = 1;
    int v = 0;
    while ((b & 1) == 0) { b >>= 1; ++v; }
    if (v & 1) {
        int am8 = int(((a % 8) + 8) % 8);
        if (am8 == 3 || am8 == 5) k = -k;
    }
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    // b odd positive from here on
    a %= b;
    if (a < 0) a += b;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) {
            int bm8 = int(b % 8);
            if (bm8 == 3 || bm8 == 5) k = -k;
        }
        if ((a % 4 == 3) && (b % 4 == 3)) k = -k;
        i64 t = b % a;
        b = a;
        a = t;
    }
    return b == 1 ? k : 0;
}

// g = gcd(a,b) = u*a + v*b
inline i64 gcdext(i64 a, i64 b, i64& u, i64& v) {
    i64 old_r = a, r = b;
    i64 old_u = 1, uu = 0;
    i64 old_v = 0, vv = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r; std::swap(old_r, r);
        old_u -= q * uu; std::swap(old_u, uu);
        old_v -= q * vv; std::swap(old_v, vv);
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    u = old_u;
    v = old_v;
    return old_r;
}

struct PrimePower {
    i64 p;
    int e;
};

inline std::vector<PrimePower> factorize(i64 n) {
    std::vector<PrimePower> out;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::vector<i64> distinct_prime_factors(i64 n) {
    std::vector<i64> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

inline bool is_squarefree(i64 n) {
    if (n <= 0) return false;
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

} // namespace bqf
