#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsion/arith.hpp"

namespace torsion {

namespace detail {

// dense univariate polynomials over Q, little-endian coefficients
using QPoly = std::vector<Rat>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    qp_trim(c);
    return c;
}

// division with remainder; b must be nonzero
inline void qp_divmod(QPoly a, const QPoly& b, QPoly& quot, QPoly& rem) {
    quot.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        quot[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        qp_trim(a);
        if (a.size() >= b.size() && !a.empty() && a.back() == 0) qp_trim(a);
    }
    qp_trim(quot);
    rem = a;
}

inline long long euler_phi(long long n) {
    long long result = n, m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline int mobius(long long n) {
    int cnt = 0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++cnt;
        }
    }
    if (n > 1) ++cnt;
    return cnt % 2 ? -1 : 1;
}

// n-th cyclotomic polynomial as the Moebius product of (x^d - 1) factors
inline const QPoly& cyclotomic_polynomial(long long n) {
    static std::map<long long, QPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    QPoly num{Rat(1)}, den{Rat(1)};
    for (long long d = 1; d <= n; ++d) {
        if (n % d) continue;
        int mu = mobius(n / d);
        if (mu == 0) continue;
        QPoly f(d + 1, Rat(0));
        f[0] = -1;
        f[d] = 1;
        (mu == 1 ? num : den) = qp_mul(mu == 1 ? num : den, f);
    }
    QPoly q, r;
    qp_divmod(num, den, q, r);
    if (!r.empty()) throw std::logic_error("cyclotomic polynomial division not exact");
    return cache.emplace(n, std::move(q)).first->second;
}

}  // namespace detail

/// Element of Q(zeta_n) in the power basis 1, z, ..., z^{phi(n)-1} modulo the
/// n-th cyclotomic polynomial. All arithmetic is exact.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1, Rat(0)) {}
    explicit Cyclotomic(long long n) : n_(n), c_(detail::euler_phi(n), Rat(0)) {}

    static Cyclotomic from_rational(long long n, const Rat& q) {
        Cyclotomic x(n);
        x.c_[0] = q;
        return x;
    }
    static Cyclotomic zero(long long n) { return Cyclotomic(n); }
    static Cyclotomic one(long long n) { return from_rational(n, 1); }
    /// zeta_n^k
    static Cyclotomic zeta_power(long long n, long long k) {
        Cyclotomic x(n);
        k = mod_pos(k, n);
        std::vector<Rat> raw(k + 1, Rat(0));
        raw[k] = 1;
        x.assign_reduced(raw);
        return x;
    }

    long long conductor() const { return n_; }
    int dim() const { return (int)c_.size(); }
    const Rat& coeff(int i) const { return c_[i]; }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_part() const { return c_[0]; }

    bool operator==(const Cyclotomic& o) const {
        if (n_ == o.n_) return c_ == o.c_;
        long long m = lcm_ll(n_, o.n_);
        return promoted(m).c_ == o.promoted(m).c_;
    }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (int i = 0; i < x.dim(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (int i = 0; i < x.dim(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        std::vector<Rat> raw = detail::qp_mul(x.c_, y.c_);
        Cyclotomic r(x.n_);
        r.assign_reduced(raw);
        return r;
    }

    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("cyclotomic inverse of zero");
        // extended euclid against Phi_n in Q[x]
        detail::QPoly a(c_.begin(), c_.end());
        detail::qp_trim(a);
        detail::QPoly b = detail::cyclotomic_polynomial(n_);
        detail::QPoly s0{Rat(1)}, s1{};
        while (!b.empty()) {
            detail::QPoly q, r;
            detail::qp_divmod(a, b, q, r);
            a.swap(b);
            b = r;
            // s0 - q*s1, shift
            detail::QPoly t = detail::qp_mul(q, s1);
            detail::QPoly ns(std::max(s0.size(), t.size()), Rat(0));
            for (size_t i = 0; i < s0.size(); ++i) ns[i] += s0[i];
            for (size_t i = 0; i < t.size(); ++i) ns[i] -= t[i];
            detail::qp_trim(ns);
            s0.swap(s1);
            s1 = ns;
        }
        // a = gcd (a nonzero constant since Phi_n is irreducible), s0 * this = a mod Phi
        if (a.size() != 1) throw std::logic_error("cyclotomic inverse: unexpected gcd degree");
        Cyclotomic r(n_);
        for (auto& q : s0) q /= a[0];
        r.assign_reduced(s0);
        return r;
    }

    Cyclotomic promoted(long long m) const {
        if (m == n_) return *this;
        if (m % n_ != 0) throw std::invalid_argument("cyclotomic promotion: conductor mismatch");
        long long e = m / n_;
        std::vector<Rat> raw((c_.size() - 1) * e + 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) raw[i * e] = c_[i];
        Cyclotomic r(m);
        r.assign_reduced(raw);
        return r;
    }

    std::string to_string() const {
        std::string s = "(";
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) s += c_[i] > 0 ? " + " : " - ";
            Rat a = first ? c_[i] : Rat(abs(numerator(c_[i])), denominator(c_[i]));
            if (first && a < 0) s += "-", a = -a;
            std::string coeff = rat_to_string(a);
            if (i == 0)
                s += coeff;
            else {
                if (coeff != "1") s += coeff + "*";
                s += "z";
                if (i > 1) s += "^" + std::to_string(i);
            }
            first = false;
        }
        if (first) s += "0";
        s += ")";
        return s;
    }

private:
    long long n_;
    std::vector<Rat> c_;

    void assign_reduced(std::vector<Rat> raw) {
        const detail::QPoly& phi = detail::cyclotomic_polynomial(n_);
        detail::qp_trim(raw);
        if (raw.size() >= phi.size()) {
            detail::QPoly q, r;
            detail::qp_divmod(raw, phi, q, r);
            raw = r;
        }
        c_.assign(detail::euler_phi(n_), Rat(0));
        for (size_t i = 0; i < raw.size(); ++i) c_[i] = raw[i];
    }

    static std::pair<Cyclotomic, Cyclotomic> align(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ == b.n_) return {a, b};
        long long m = lcm_ll(a.n_, b.n_);
        return {a.promoted(m), b.promoted(m)};
    }
};

}  // namespace torsion
