#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bqf/cyclotomic.hpp"
#include "bqf/forms.hpp"
#include "bqf/ideals.hpp"
#include "bqf/rational.hpp"

namespace bqf {

// Character of a form class group. Values are exact roots of unity: the
// value at class i is zeta_m^exps[i], m the group exponent. Characters are
// plain values; operations taking one expect the group it was built from.
struct ClassCharacter {
    int m = 1;                  // shared turn denominator (group exponent)
    std::vector<int> exps;      // exps[i] in [0, m)

    int order() const {
        int g = m;
        for (int e : exps) g = std::gcd(g, e);
        return m / g;
    }
    bool is_trivial() const {
        return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    }
    bool is_real() const {
        return std::all_of(exps.begin(), exps.end(), [&](int e) { return e == 0 || 2 * e == m; });
    }

    CycInt value(int class_index) const { return CycInt::root_of_unity(m, exps[class_index]); }
    CycInt value_conj(int class_index) const { return CycInt::root_of_unity(m, -exps[class_index]); }
    std::complex<double> value_complex(int class_index) const {
        double ang = 2.0 * M_PI * double(exps[class_index]) / double(m);
        return {std::cos(ang), std::sin(ang)};
    }
    // for real characters: the value as +-1
    int sign(int class_index) const {
        if (!is_real()) throw std::domain_error("character is not real");
        return exps[class_index] == 0 ? 1 : -1;
    }
};

inline bool is_genus_character(const ClassCharacter& chi) { return chi.order() <= 2; }

inline int group_exponent(const FormClassGroup& G) {
    int m = 1;
    for (int i = 0; i < G.order(); ++i) m = int(std::lcm(m, G.element_order(i)));
    return m;
}

// Full character table, built by extending characters one generator at a
// time; entry 0 is the trivial character.
inline std::vector<ClassCharacter> character_table(const FormClassGroup& G) {
    const int h = G.order();
    const int m = group_exponent(G);

    std::vector<int> members{0};               // current subgroup S, element indices
    std::vector<char> in_subgroup(h, 0);
    in_subgroup[0] = 1;
    // chars[c] holds exponents over `members` (parallel indexing)
    std::vector<std::vector<int>> chars{{0}};

    while (int(members.size()) < h) {
        int t = -1;
        for (int i = 0; i < h; ++i)
            if (!in_subgroup[i]) { t = i; break; }
        // order of t relative to S
        int e = 1, p = t;
        while (!in_subgroup[p]) { p = G.compose(p, t); ++e; }
        // p = t^e is in S; find its position and each character's value there
        std::vector<int> pos_of(h, -1);
        for (std::size_t i = 0; i < members.size(); ++i) pos_of[members[i]] = int(i);
        std::vector<std::vector<int>> new_chars;
        for (const auto& chi : chars) {
            int k = chi[std::size_t(pos_of[p])]; // chi(t^e) = zeta_m^k
            for (int y = 0; y < m; ++y) {
                if ((i64(e) * y - k) % m) continue; // need chi'(t) = zeta_m^y with e*y = k mod m
                std::vector<int> ext(members.size() * std::size_t(e));
                for (int j = 0; j < e; ++j) {
                    // value on s * t^j is chi(s) * zeta^(j*y)
                    for (std::size_t i = 0; i < members.size(); ++i)
                        ext[std::size_t(j) * members.size() + i] = int((chi[i] + i64(j) * y) % m);
                }
                new_chars.push_back(std::move(ext));
            }
        }
        // element list in the same order the extended values were laid out
        std::vector<int> ext_members(members.size() * std::size_t(e));
        int tj = 0; // t^j
        for (int j = 0; j < e; ++j) {
            for (std::size_t i = 0; i < members.size(); ++i) {
                int el = G.compose(members[i], tj);
                ext_members[std::size_t(j) * members.size() + i] = el;
                in_subgroup[el] = 1;
            }
            tj = G.compose(tj, t);
        }
        members = std::move(ext_members);
        chars = std::move(new_chars);
    }

    // reindex from subgroup order to class index order
    std::vector<int> pos_of(h, -1);
    for (std::size_t i = 0; i < members.size(); ++i) pos_of[members[i]] = int(i);
    std::vector<ClassCharacter> table;
    table.reserve(chars.size());
    for (const auto& chi : chars) {
        ClassCharacter cc;
        cc.m = m;
        cc.exps.resize(h);
        for (int i = 0; i < h; ++i) cc.exps[i] = chi[std::size_t(pos_of[i])];
        table.push_back(std::move(cc));
    }
    if (int(table.size()) != h) throw std::logic_error("character table has wrong size");
    // trivial character first, rest in a deterministic order
    std::sort(table.begin(), table.end(), [](const ClassCharacter& x, const ClassCharacter& y) {
        return x.exps < y.exps;
    });
    if (!table.front().is_trivial()) throw std::logic_error("trivial character missing");
    for (std::size_t i = 1; i < table.size(); ++i)
        if (table[i].exps == table[i - 1].exps) throw std::logic_error("duplicate character");
    return table;
}

// n-th Dirichlet coefficient of the Hecke series of chi:
// sum over ideals of norm n (coprime to `coprime_to`) of chi(class).
inline CycInt hecke_coefficient(const FormClassGroup& G, const ClassCharacter& chi, i64 n,
                                int coprime_to = 2) {
    CycInt total(chi.m);
    if (n < 1) return total;
    if (coprime_to == 2 && n % 2 == 0) return total;
    for (int c = 0; c < G.order(); ++c) {
        i64 j = ideal_count(G.disc, G, c, n, coprime_to);
        if (j) total += chi.value(c) * j;
    }
    return total;
}

// Coefficient of the convolution series chi1 (x) chi2: multiply values per
// ideal. Must agree with the Hecke coefficient of the product character.
inline CycInt convolution_coefficient(const FormClassGroup& G, const ClassCharacter& chi1,
                                      const ClassCharacter& chi2, i64 n, int coprime_to = 2) {
    if (chi1.m != chi2.m || chi1.exps.size() != chi2.exps.size())
        throw std::invalid_argument("convolution: characters live on different groups");
    CycInt total(chi1.m);
    if (n >= 1 && !(coprime_to == 2 && n % 2 == 0)) {
        for (int c = 0; c < G.order(); ++c) {
            i64 j = ideal_count(G.disc, G, c, n, coprime_to);
            if (j) total += chi1.value(c) * chi2.value(c) * j;
        }
    }
    ClassCharacter prod;
    prod.m = chi1.m;
    prod.exps.resize(chi1.exps.size());
    for (std::size_t i = 0; i < prod.exps.size(); ++i)
        prod.exps[i] = int((chi1.exps[i] + chi2.exps[i]) % chi1.m);
    if (total != hecke_coefficient(G, prod, n, coprime_to))
        throw std::logic_error("convolution coefficient disagrees with product character");
    return total;
}

// Orthogonality inversion: (1/h) sum_chi conj(chi(c)) b_chi(n) must equal
// J(c, n) exactly; any mismatch is a hard failure.
inline Rational decompose_ideal_count(const FormClassGroup& G, const std::vector<ClassCharacter>& table,
                                      i64 n, int class_index) {
    const int h = G.order();
    CycInt sum(table.front().m);
    for (const auto& chi : table)
        sum += chi.value_conj(class_index) * hecke_coefficient(G, chi, n, 2);
    if (!sum.is_rational_integer())
        throw std::logic_error("orthogonality inversion produced an irrational value");
    i64 v = sum.rational_value();
    if (v % h) throw std::logic_error("orthogonality inversion not divisible by group order");
    Rational result(v, h);
    i64 direct = ideal_count(G.disc, G, class_index, n, 2);
    if (result != Rational(direct))
        throw std::logic_error("orthogonality inversion disagrees with direct ideal count at n=" +
                               std::to_string(n));
    return result;
}

} // namespace bqf
