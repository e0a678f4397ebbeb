#pragma once

#include <string>

#include "torsion/laurent.hpp"
#include "torsion/matrix.hpp"

namespace torsion {

/// Element of the rational function field Q(zeta_n)(t_1..t_b), stored as a
/// reduced fraction of Laurent polynomials. Canonical form: the denominator
/// is a genuine polynomial with componentwise-minimal exponent vector 0 and
/// lex-leading coefficient 1, and shares no factor with the numerator's
/// polynomial part. Representation equality is field equality.
class FieldElem {
public:
    FieldElem() : num_(1, 0), den_(Laurent::one(1, 0)) {}
    FieldElem(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    explicit FieldElem(const Laurent& num) : num_(num), den_(Laurent::one(num.conductor(), num.nvars())) {
        normalize();
    }

    static FieldElem zero(long long n, int nvars) { return FieldElem(Laurent::zero(n, nvars)); }
    static FieldElem one(long long n, int nvars) { return FieldElem(Laurent::one(n, nvars)); }
    static FieldElem from_rational(long long n, int nvars, const Rat& q) {
        return FieldElem(Laurent::constant(n, nvars, Cyclotomic::from_rational(n, q)));
    }
    static FieldElem variable(long long n, int nvars, int v) {
        return FieldElem(Laurent::variable(n, nvars, v));
    }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    long long conductor() const { return num_.conductor(); }
    int nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return !num_.is_zero() && num_ == den_; }
    bool is_polynomial() const { return den_ == Laurent::one(conductor(), nvars()); }

    bool operator==(const FieldElem& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem operator-() const {
        FieldElem r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        if (a.den_ == b.den_) return FieldElem(a.num_ + b.num_, a.den_);
        return FieldElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        if (a.den_ == b.den_) return FieldElem(a.num_ - b.num_, a.den_);
        return FieldElem(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        if (a.is_polynomial() && b.is_polynomial()) {
            FieldElem r;
            r.num_ = a.num_ * b.num_;
            r.den_ = a.den_;
            return r;
        }
        return FieldElem(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        if (b.is_zero()) throw std::domain_error("field division by zero");
        return FieldElem(a.num_ * b.den_, a.den_ * b.num_);
    }
    FieldElem inverse() const {
        if (is_zero()) throw std::domain_error("field inverse of zero");
        return FieldElem(den_, num_);
    }
    FieldElem pow(long long k) const {
        if (k < 0) return inverse().pow(-k);
        FieldElem r = one(conductor(), nvars());
        FieldElem base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    std::string to_string(const std::vector<std::string>& var_names = {}) const {
        if (is_polynomial()) return num_.to_string(var_names);
        std::string n = num_.to_string(var_names), d = den_.to_string(var_names);
        if (num_.terms().size() > 1) n = "(" + n + ")";
        if (den_.terms().size() > 1) d = "(" + d + ")";
        return n + " / " + d;
    }

private:
    Laurent num_, den_;

    void normalize() {
        if (num_.conductor() != den_.conductor() || num_.nvars() != den_.nvars())
            throw std::invalid_argument("field element: numerator/denominator field mismatch");
        if (den_.is_zero()) throw std::domain_error("field element with zero denominator");
        long long n = num_.conductor();
        int b = num_.nvars();
        if (num_.is_zero()) {
            den_ = Laurent::one(n, b);
            return;
        }
        Laurent::Exp sa = num_.min_exponents(), sb = den_.min_exponents();
        Laurent::Exp neg_sa(b), neg_sb(b), shift(b);
        for (int i = 0; i < b; ++i) {
            neg_sa[i] = -sa[i];
            neg_sb[i] = -sb[i];
            shift[i] = sa[i] - sb[i];
        }
        Laurent N = num_.shifted(neg_sa), D = den_.shifted(neg_sb);
        if (!(D == Laurent::one(n, b))) {
            Laurent g = detail::laurent_gcd(N, D);
            if (!g.is_constant()) {
                N = detail::laurent_exact_divide(N, g);
                D = detail::laurent_exact_divide(D, g);
            }
        }
        Cyclotomic lead = D.leading_coefficient();
        if (!(lead == Cyclotomic::one(n))) {
            Cyclotomic inv = lead.inverse();
            N = N.scaled(inv);
            D = D.scaled(inv);
        }
        num_ = N.shifted(shift);
        den_ = D;
    }
};

/// Exact determinant of a matrix of field elements: clears each row to
/// polynomial form, runs fraction-free (Bareiss) elimination there, and
/// divides by the tracked row factors at the end.
inline FieldElem determinant(const Mat<FieldElem>& m, long long cond_if_empty = 1,
                             int nvars_if_empty = 0) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return FieldElem::one(cond_if_empty, nvars_if_empty);
    long long cond = m(0, 0).conductor();
    int nv = m(0, 0).nvars();
    FieldElem factor = FieldElem::one(cond, nv);
    Mat<Laurent> a(n, n, Laurent::zero(cond, nv));
    for (int i = 0; i < n; ++i) {
        Laurent rowden = Laurent::one(cond, nv);
        for (int j = 0; j < n; ++j)
            if (!m(i, j).is_polynomial()) rowden = rowden * m(i, j).den();
        factor = factor * FieldElem(rowden);
        for (int j = 0; j < n; ++j) {
            FieldElem x = m(i, j) * FieldElem(rowden);
            if (!x.is_polynomial()) throw std::logic_error("determinant: row clearing failed");
            a(i, j) = x.num();
        }
    }

    Laurent prev = Laurent::one(cond, nv);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k).is_zero()) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!a(i, k).is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) return FieldElem::zero(cond, nv);
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = detail::laurent_exact_divide(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
    }
    FieldElem det(a(n - 1, n - 1));
    if (sign < 0) det = -det;
    return det / factor;
}

}  // namespace torsion
