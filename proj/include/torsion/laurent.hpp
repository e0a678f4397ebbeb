#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsion/cyclotomic.hpp"

namespace torsion {

/// Multivariate Laurent polynomial in t_1..t_nvars with Q(zeta_n)
/// coefficients. Terms are kept in a map keyed by exponent vector
/// (lexicographic order, variable 1 most significant); zero coefficients are
/// never stored.
class Laurent {
public:
    using Exp = std::vector<long long>;

    Laurent() : n_(1), nvars_(0) {}
    Laurent(long long conductor, int nvars) : n_(conductor), nvars_(nvars) {}

    static Laurent zero(long long n, int nvars) { return Laurent(n, nvars); }
    static Laurent constant(long long n, int nvars, const Cyclotomic& c) {
        Laurent p(n, nvars);
        p.add_term(Exp(nvars, 0), c.conductor() == n ? c : c.promoted(n));
        return p;
    }
    static Laurent one(long long n, int nvars) { return constant(n, nvars, Cyclotomic::one(n)); }
    static Laurent monomial(long long n, int nvars, const Exp& e, const Cyclotomic& c) {
        Laurent p(n, nvars);
        p.add_term(e, c);
        return p;
    }
    static Laurent variable(long long n, int nvars, int v) {
        Exp e(nvars, 0);
        e[v] = 1;
        return monomial(n, nvars, e, Cyclotomic::one(n));
    }

    long long conductor() const { return n_; }
    int nvars() const { return nvars_; }
    const std::map<Exp, Cyclotomic>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exp(nvars_, 0));
    }
    bool is_monomial() const { return t_.size() == 1; }
    Cyclotomic constant_coefficient(const Exp& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? Cyclotomic::zero(n_) : it->second;
    }

    bool operator==(const Laurent& o) const {
        return n_ == o.n_ && nvars_ == o.nvars_ && t_ == o.t_;
    }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    void add_term(const Exp& e, const Cyclotomic& c) {
        if ((int)e.size() != nvars_) throw std::invalid_argument("laurent: exponent arity");
        if (c.is_zero()) return;
        auto [it, fresh] = t_.emplace(e, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    Laurent operator-() const {
        Laurent r(n_, nvars_);
        for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
        return r;
    }
    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        a.check_field(b);
        Laurent r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, c);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) {
        a.check_field(b);
        Laurent r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, -c);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        a.check_field(b);
        Laurent r(a.n_, a.nvars_);
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                Exp e = ea;
                for (int i = 0; i < a.nvars_; ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Laurent scaled(const Cyclotomic& c) const {
        Laurent r(n_, nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, k] : t_) r.t_.emplace(e, k * c);
        return r;
    }

    /// componentwise minimum of the exponent vectors (zero vector if empty)
    Exp min_exponents() const {
        Exp m(nvars_, 0);
        bool first = true;
        for (const auto& [e, c] : t_) {
            if (first) {
                m = e;
                first = false;
            } else
                for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
        }
        return m;
    }

    Laurent shifted(const Exp& delta) const {
        Laurent r(n_, nvars_);
        for (const auto& [e, c] : t_) {
            Exp e2 = e;
            for (int i = 0; i < nvars_; ++i) e2[i] += delta[i];
            r.t_.emplace(e2, c);
        }
        return r;
    }

    bool is_polynomial() const {
        for (const auto& [e, c] : t_)
            for (auto x : e)
                if (x < 0) return false;
        return true;
    }

    /// lexicographically largest exponent (the leading term under lex order)
    const Exp& leading_exponent() const {
        if (t_.empty()) throw std::domain_error("leading term of zero");
        return t_.rbegin()->first;
    }
    const Cyclotomic& leading_coefficient() const {
        if (t_.empty()) throw std::domain_error("leading term of zero");
        return t_.rbegin()->second;
    }

    long long degree_in(int v) const {
        long long d = 0;
        bool any = false;
        for (const auto& [e, c] : t_) {
            if (!any || e[v] > d) d = e[v];
            any = true;
        }
        return any ? d : -1;
    }

    /// coefficient of t_v^k, as a polynomial not involving t_v
    Laurent coefficient_of(int v, long long k) const {
        Laurent r(n_, nvars_);
        for (const auto& [e, c] : t_)
            if (e[v] == k) {
                Exp e2 = e;
                e2[v] = 0;
                r.t_.emplace(e2, c);
            }
        return r;
    }

    Laurent times_power(int v, long long k) const {
        Laurent r(n_, nvars_);
        for (const auto& [e, c] : t_) {
            Exp e2 = e;
            e2[v] += k;
            r.t_.emplace(e2, c);
        }
        return r;
    }

    std::string to_string(const std::vector<std::string>& var_names = {}) const;

private:
    long long n_;
    int nvars_;
    std::map<Exp, Cyclotomic> t_;

    void check_field(const Laurent& o) const {
        if (n_ != o.n_ || nvars_ != o.nvars_)
            throw std::invalid_argument("laurent: mixed fields in arithmetic");
    }
};

namespace detail {

/// Exact division of Laurent polynomials (throws if not divisible). Works by
/// lex-leading-term reduction after clearing monomial shifts.
inline Laurent laurent_exact_divide(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw std::domain_error("laurent division by zero");
    if (a.is_zero()) return Laurent::zero(a.conductor(), a.nvars());
    Laurent::Exp sa = a.min_exponents(), sb = b.min_exponents();
    Laurent::Exp neg_sa = sa, neg_sb = sb, shift_q(a.nvars());
    for (int i = 0; i < a.nvars(); ++i) {
        neg_sa[i] = -sa[i];
        neg_sb[i] = -sb[i];
        shift_q[i] = sa[i] - sb[i];
    }
    Laurent A = a.shifted(neg_sa), B = b.shifted(neg_sb);
    Laurent q(a.conductor(), a.nvars());
    const Laurent::Exp& lb = B.leading_exponent();
    Cyclotomic lb_inv = B.leading_coefficient().inverse();
    while (!A.is_zero()) {
        const Laurent::Exp& la = A.leading_exponent();
        Laurent::Exp e(a.nvars());
        for (int i = 0; i < a.nvars(); ++i) {
            e[i] = la[i] - lb[i];
            if (e[i] < 0) throw std::domain_error("laurent division not exact");
        }
        Cyclotomic c = A.leading_coefficient() * lb_inv;
        Laurent term = Laurent::monomial(a.conductor(), a.nvars(), e, c);
        q = q + term;
        A = A - term * B;
    }
    return q.shifted(shift_q);
}

inline Laurent laurent_gcd(const Laurent& a, const Laurent& b);

/// gcd of all coefficients of f viewed as a polynomial in variable v
inline Laurent content_in(const Laurent& f, int v) {
    Laurent g = Laurent::zero(f.conductor(), f.nvars());
    for (long long k = 0; k <= f.degree_in(v); ++k) {
        Laurent c = f.coefficient_of(v, k);
        if (c.is_zero()) continue;
        g = laurent_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;  // already a unit
    }
    return g;
}

/// pseudo-remainder of a by b in variable v (deg_v(b) >= 1)
inline Laurent pseudo_remainder(Laurent a, const Laurent& b, int v) {
    long long db = b.degree_in(v);
    Laurent lcb = b.coefficient_of(v, db);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        long long da = a.degree_in(v);
        Laurent lca = a.coefficient_of(v, da);
        // a <- lcb * a - lca * t_v^{da-db} * b
        a = lcb * a - lca.times_power(v, da - db) * b;
    }
    return a;
}

/// normalize a polynomial gcd candidate: monic leading coefficient
inline Laurent make_monic(Laurent g) {
    if (g.is_zero()) return g;
    return g.scaled(g.leading_coefficient().inverse());
}

/// gcd of two genuine polynomials (all exponents >= 0) over Q(zeta_n),
/// computed by recursive content / primitive-part reduction.
inline Laurent laurent_gcd(const Laurent& a, const Laurent& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_constant() || b.is_constant()) return Laurent::one(a.conductor(), a.nvars());

    // last variable occurring in either
    int v = -1;
    for (int i = a.nvars() - 1; i >= 0; --i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            v = i;
            break;
        }
    if (v < 0) return Laurent::one(a.conductor(), a.nvars());

    if (a.degree_in(v) == 0) return laurent_gcd(content_in(b, v), a);
    if (b.degree_in(v) == 0) return laurent_gcd(content_in(a, v), b);

    Laurent ca = content_in(a, v), cb = content_in(b, v);
    Laurent cg = laurent_gcd(ca, cb);
    // keep the primitive parts monic (units are free) or coefficient growth
    // in the remainder sequence becomes exponential
    Laurent pa = make_monic(laurent_exact_divide(a, ca));
    Laurent pb = make_monic(laurent_exact_divide(b, cb));
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        Laurent r = pseudo_remainder(pa, pb, v);
        pa = pb;
        if (r.is_zero())
            pb = r;
        else
            pb = make_monic(laurent_exact_divide(r, content_in(r, v)));
    }
    return make_monic(cg * pa);
}

}  // namespace detail

inline std::string Laurent::to_string(const std::vector<std::string>& var_names) const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    // leading (lex-largest) term first
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) s += " + ";
        first = false;
        std::string mono;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += i < (int)var_names.size() ? var_names[i] : "t" + std::to_string(i + 1);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (c.is_rational() && !mono.empty()) {
            Rat q = c.rational_part();
            if (q == 1)
                s += mono;
            else if (q == -1)
                s += "-" + mono;
            else
                s += rat_to_string(q) + "*" + mono;
        } else {
            s += c.to_string();
            if (!mono.empty()) s += "*" + mono;
        }
    }
    return s;
}

}  // namespace torsion
