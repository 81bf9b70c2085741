#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "bqf/common.hpp"
#include "bqf/rational.hpp"

namespace bqf {

// Integer polynomial helpers for the cyclotomic machinery. Coefficient
// vectors are little-endian (coeffs[k] multiplies x^k).
namespace poly {

inline void trim(std::vector<i64>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division, throws if the division does not come out exact
inline std::vector<i64> divide_exact(std::vector<i64> num, const std::vector<i64>& den) {
    trim(num);
    std::vector<i64> d = den;
    trim(d);
    if (d.empty()) throw std::domain_error("poly division by zero");
    std::vector<i64> q(num.size() >= d.size() ? num.size() - d.size() + 1 : 0, 0);
    while (num.size() >= d.size()) {
        i64 lead = num.back();
        if (lead % d.back()) throw std::domain_error("poly division not exact");
        i64 coef = lead / d.back();
        std::size_t shift = num.size() - d.size();
        q[shift] = coef;
        for (std::size_t i = 0; i < d.size(); ++i) num[shift + i] -= coef * d[i];
        trim(num);
    }
    if (!num.empty()) throw std::domain_error("poly division leaves remainder");
    return q;
}

} // namespace poly

// m-th cyclotomic polynomial, via Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d.
inline const std::vector<i64>& cyclotomic_polynomial(int m) {
    static std::map<int, std::vector<i64>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<i64> num(std::size_t(m) + 1, 0);
    num[0] = -1;
    num[std::size_t(m)] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d) continue;
        num = poly::divide_exact(std::move(num), cyclotomic_polynomial(d));
    }
    return cache.emplace(m, std::move(num)).first->second;
}

// Element of Z[zeta_m], stored canonically as an integer polynomial in
// zeta_m reduced mod Phi_m. Exact equality is coefficient equality.
class CycInt {
  public:
    CycInt() : m_(1), coeffs_{} {}
    explicit CycInt(int m, i64 constant = 0) : m_(m) {
        if (m < 1) throw std::domain_error("CycInt: order must be positive");
        if (constant) coeffs_.push_back(constant);
    }

    // zeta_m^k
    static CycInt root_of_unity(int m, i64 k) {
        CycInt z(m);
        k %= m;
        if (k < 0) k += m;
        z.coeffs_.assign(std::size_t(k) + 1, 0);
        z.coeffs_[std::size_t(k)] = 1;
        z.reduce();
        return z;
    }

    int order() const { return m_; }
    bool is_zero() const { return coeffs_.empty(); }

    bool is_rational_integer() const { return coeffs_.size() <= 1; }
    i64 rational_value() const {
        if (!is_rational_integer()) throw std::domain_error("CycInt: not a rational integer");
        return coeffs_.empty() ? 0 : coeffs_[0];
    }

    CycInt& operator+=(const CycInt& o) {
        check(o);
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        poly::trim(coeffs_);
        return *this;
    }
    CycInt operator+(const CycInt& o) const { CycInt r = *this; r += o; return r; }

    CycInt operator-() const {
        CycInt r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    CycInt operator-(const CycInt& o) const { return *this + (-o); }

    CycInt operator*(const CycInt& o) const {
        check(o);
        CycInt r(m_);
        if (is_zero() || o.is_zero()) return r;
        // multiply mod x^m - 1, then reduce mod Phi_m
        std::vector<i64> prod(std::size_t(m_), 0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!coeffs_[i]) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                prod[(i + j) % std::size_t(m_)] += coeffs_[i] * o.coeffs_[j];
        }
        r.coeffs_ = std::move(prod);
        r.reduce();
        return r;
    }

    CycInt& operator*=(i64 s) {
        for (auto& c : coeffs_) c *= s;
        if (s == 0) coeffs_.clear();
        return *this;
    }
    CycInt operator*(i64 s) const { CycInt r = *this; r *= s; return r; }

    // complex conjugate: zeta^k -> zeta^(m-k)
    CycInt conj() const {
        CycInt r(m_);
        if (is_zero()) return r;
        std::vector<i64> folded(std::size_t(m_), 0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            folded[(std::size_t(m_) - i) % std::size_t(m_)] += coeffs_[i];
        r.coeffs_ = std::move(folded);
        r.reduce();
        return r;
    }

    // |z|^2 = z * conj(z), exact (real, but not always rational)
    CycInt norm_squared() const { return *this * conj(); }

    bool operator==(const CycInt& o) const { return m_ == o.m_ && coeffs_ == o.coeffs_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        std::complex<double> z = 0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (!coeffs_[k]) continue;
            double ang = 2.0 * M_PI * double(k) / double(m_);
            z += double(coeffs_[k]) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return z;
    }

  private:
    void check(const CycInt& o) const {
        if (m_ != o.m_) throw std::domain_error("CycInt: mixed root orders");
    }
    void reduce() {
        const auto& phi = cyclotomic_polynomial(m_);
        poly::trim(coeffs_);
        // Phi_m is monic, so synthetic division stays in integers
        while (coeffs_.size() >= phi.size()) {
            i64 lead = coeffs_.back();
            std::size_t shift = coeffs_.size() - phi.size();
            for (std::size_t i = 0; i < phi.size(); ++i) coeffs_[shift + i] -= lead * phi[i];
            poly::trim(coeffs_);
        }
    }

    int m_;
    std::vector<i64> coeffs_;
};

} // namespace bqf
