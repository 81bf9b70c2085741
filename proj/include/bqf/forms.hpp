#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqf/arith.hpp"
#include "bqf/common.hpp"

namespace bqf {

// Integral binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
    i64 a = 0, b = 0, c = 0;

    i64 disc() const { return b * b - 4 * a * c; }
    bool is_positive_definite() const { return a > 0 && disc() < 0; }
    bool is_primitive() const { return std::gcd(std::gcd(a, b < 0 ? -b : b), c) == 1; }
    bool is_reduced() const {
        i64 ab = b < 0 ? -b : b;
        if (!(ab <= a && a <= c)) return false;
        if ((ab == a || a == c) && b < 0) return false;
        return true;
    }

    i64 eval(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }

    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (c != o.c) return c < o.c;
        return b < o.b;
    }
};

inline std::string to_string(const QuadForm& f) {
    return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

inline bool is_valid_discriminant(i64 D) {
    return D < 0 && (((D % 4) + 4) % 4 <= 1);
}

inline void require_discriminant(i64 D) {
    if (!is_valid_discriminant(D))
        throw std::invalid_argument("not a negative discriminant: " + std::to_string(D));
}

// w(D): order of the unit/automorph group attached to discriminant D.
inline int unit_weight(i64 D) {
    require_discriminant(D);
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

namespace detail {

// put b into (-a, a], keeping the discriminant fixed
inline void normalize(QuadForm& f) {
    i64 twoa = 2 * f.a;
    i64 r = f.b % twoa;
    if (r <= -f.a) r += twoa;
    else if (r > f.a) r -= twoa;
    if (r != f.b) {
        i64 D = f.disc();
        f.b = r;
        f.c = (r * r - D) / (4 * f.a);
    }
}

} // namespace detail

// Unique reduced representative of the proper equivalence class of f
// (Gauss reduction; boundary convention b >= 0 when |b| = a or a = c).
inline QuadForm reduced(QuadForm f) {
    if (!f.is_positive_definite())
        throw std::invalid_argument("reduce: form is not positive definite: " + to_string(f));
    detail::normalize(f);
    while (f.a > f.c) {
        f = {f.c, -f.b, f.a};
        detail::normalize(f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

// Principal (identity) form of discriminant D.
inline QuadForm principal_form(i64 D) {
    require_discriminant(D);
    i64 b = (D & 1) ? 1 : 0;
    return {1, b, (b * b - D) / 4};
}

// Dirichlet composition of two primitive forms of equal discriminant,
// followed by reduction.
inline QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    i64 D = f1.disc();
    if (D != f2.disc())
        throw std::invalid_argument("compose: discriminants differ");
    i64 s = (f1.b + f2.b) / 2;
    i64 u0, v0, v1, w;
    i64 g = gcdext(f1.a, f2.a, u0, v0);
    i64 d = gcdext(g, s, v1, w);
    i64 v = v0 * v1;
    i64 a2d = f2.a / d;
    i64 a3 = (f1.a / d) * a2d;
    i128 t = (i128(s - f2.b) * v - i128(w) * f2.c) * a2d * 2;
    i128 b3w = f2.b + t;
    i64 m = 2 * a3;
    i64 b3 = i64(((b3w % m) + m) % m);
    i64 c3 = i64((i128(b3) * b3 - D) / (4 * a3));
    return reduced({a3, b3, c3});
}

inline QuadForm form_pow(QuadForm f, i64 e) {
    QuadForm r = principal_form(f.disc());
    while (e > 0) {
        if (e & 1) r = compose(r, f);
        f = compose(f, f);
        e >>= 1;
    }
    return r;
}

// D = conductor^2 * fundamental with the conductor maximal.
struct ConductorSplit {
    i64 conductor;
    i64 fundamental;
};

inline ConductorSplit conductor_split(i64 D) {
    require_discriminant(D);
    i64 best = 1;
    for (i64 k = 1; k * k <= -D; ++k) {
        if (D % (k * k) == 0 && is_valid_discriminant(D / (k * k))) best = k;
    }
    return {best, D / (best * best)};
}

// All reduced primitive forms of discriminant D, with the Cayley table of
// Dirichlet composition. classes[0] is the principal form.
struct FormClassGroup {
    i64 disc = 0;
    std::vector<QuadForm> classes;
    std::vector<std::vector<int>> cayley;
    std::vector<int> inverse;

    int order() const { return int(classes.size()); }
    int compose(int i, int j) const { return cayley[i][j]; }

    int index_of(const QuadForm& f) const {
        auto it = std::lower_bound(classes.begin(), classes.end(), f);
        if (it == classes.end() || !(*it == f)) return -1;
        return int(it - classes.begin());
    }

    // order of the class at index i under composition
    int element_order(int i) const {
        int e = 1, j = i;
        while (j != 0) { j = compose(j, i); ++e; }
        return e;
    }

    static FormClassGroup enumerate(i64 D);
};

inline FormClassGroup FormClassGroup::enumerate(i64 D) {
    require_discriminant(D);
    FormClassGroup G;
    G.disc = D;
    for (i64 a = 1; 3 * a * a <= -D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0) continue; // b and D must share parity
            i64 t = b * b - D;
            if (t % (4 * a)) continue;
            i64 c = t / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            QuadForm f{a, b, c};
            if (!f.is_primitive()) continue;
            G.classes.push_back(f);
        }
    }
    std::sort(G.classes.begin(), G.classes.end());
    if (G.classes.empty() || !(G.classes[0] == principal_form(D)))
        throw std::logic_error("class group enumeration lost the principal form");

    int h = G.order();
    G.cayley.assign(h, std::vector<int>(h));
    G.inverse.assign(h, -1);
    for (int i = 0; i < h; ++i) {
        QuadForm inv = reduced({G.classes[i].a, -G.classes[i].b, G.classes[i].c});
        G.inverse[i] = G.index_of(inv);
        for (int j = i; j < h; ++j) {
            int k = G.index_of(bqf::compose(G.classes[i], G.classes[j]));
            if (k < 0) throw std::logic_error("composition left the class list");
            G.cayley[i][j] = G.cayley[j][i] = k;
        }
    }
    return G;
}

// h(D) by the same bounded scan, without building the Cayley table.
inline i64 class_number(i64 D) {
    require_discriminant(D);
    i64 h = 0;
    for (i64 a = 1; 3 * a * a <= -D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0) continue;
            i64 t = b * b - D;
            if (t % (4 * a)) continue;
            i64 c = t / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (!QuadForm{a, b, c}.is_primitive()) continue;
            ++h;
        }
    }
    return h;
}

struct GenusInfo {
    i64 num_genera;           // [G : G^2]
    i64 two_torsion_dual;     // number of characters of order <= 2 (= num_genera)
    bool one_class_per_genus; // every class has order <= 2
};

inline GenusInfo genus_analysis(const FormClassGroup& G) {
    int h = G.order();
    std::vector<char> is_square(h, 0);
    for (int i = 0; i < h; ++i) is_square[G.compose(i, i)] = 1;
    i64 squares = std::count(is_square.begin(), is_square.end(), char(1));
    bool all_two_torsion = true;
    for (int i = 0; i < h && all_two_torsion; ++i)
        if (G.compose(i, i) != 0) all_two_torsion = false;
    return {h / squares, h / squares, all_two_torsion};
}

inline void require_squarefree(i64 N) {
    if (N <= 0 || !is_squarefree(N))
        throw std::invalid_argument("N must be a squarefree positive integer, got " + std::to_string(N));
}

// Class number of disc -4N equals 2^t, t = number of distinct primes of N.
inline bool is_solvable(i64 N) {
    require_squarefree(N);
    i64 two_t = i64(1) << distinct_prime_factors(N).size();
    return class_number(-4 * N) == two_t;
}

// Classical idoneal criterion: one class per genus for disc -4N.
inline bool is_idoneal(i64 N) {
    require_squarefree(N);
    FormClassGroup G = FormClassGroup::enumerate(-4 * N);
    return genus_analysis(G).one_class_per_genus;
}

} // namespace bqf
