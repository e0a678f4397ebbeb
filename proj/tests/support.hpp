#pragma once

// shared helpers for the unit and acceptance suites: small field literals and
// randomized chain-complex generators

#include <random>

#include "torsion/chain_complex.hpp"

namespace torsion::testsup {

inline FieldElem qt_zero() { return FieldElem::zero(1, 1); }
inline FieldElem qt_one() { return FieldElem::one(1, 1); }
inline FieldElem qt_t() { return FieldElem::variable(1, 1, 0); }
inline FieldElem qt_c(long long v) { return FieldElem::from_rational(1, 1, Rat(v)); }

template <class F>
Mat<F> mat_mul(const Mat<F>& a, const Mat<F>& b, const F& zero) {
    Mat<F> z(a.rows(), b.cols(), zero);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            F s = zero;
            for (int k = 0; k < a.cols(); ++k) s = s + a(i, k) * b(k, j);
            z(i, j) = s;
        }
    return z;
}

/// random invertible matrix together with its inverse, built from elementary
/// operations; entries are small polynomials in t
inline std::pair<Mat<FieldElem>, Mat<FieldElem>> random_invertible(int n, std::mt19937_64& rng) {
    Mat<FieldElem> m = Mat<FieldElem>::identity(n, qt_one(), qt_zero());
    Mat<FieldElem> minv = m;
    if (n == 0) return {m, minv};
    std::uniform_int_distribution<int> coeff(-2, 2), pick(0, n - 1), kind(0, 3);
    int ops = 2 * n + 2;
    for (int s = 0; s < ops; ++s) {
        int i = pick(rng), j = pick(rng);
        switch (kind(rng)) {
            case 0: {  // row_i += f * row_j on m  (minv: col_j -= f * col_i)
                if (i == j) break;
                FieldElem f = qt_c(coeff(rng));
                if (rng() % 3 == 0) f = f + qt_t();
                for (int k = 0; k < n; ++k) m(i, k) = m(i, k) + f * m(j, k);
                for (int k = 0; k < n; ++k) minv(k, j) = minv(k, j) - f * minv(k, i);
                break;
            }
            case 1: {  // swap rows
                if (i == j) break;
                m.swap_rows(i, j);
                minv.swap_cols(i, j);
                break;
            }
            case 2: {  // scale row by -1
                for (int k = 0; k < n; ++k) m(i, k) = -m(i, k);
                for (int k = 0; k < n; ++k) minv(k, i) = -minv(k, i);
                break;
            }
            default: {  // scale row by a nonzero constant
                long long c = coeff(rng);
                if (c == 0) c = 2;
                FieldElem f = qt_c(c), finv = qt_one() / f;
                for (int k = 0; k < n; ++k) m(i, k) = f * m(i, k);
                for (int k = 0; k < n; ++k) minv(k, i) = minv(k, i) * finv;
                break;
            }
        }
    }
    return {m, minv};
}

/// Random based chain complex over Q(t) with prescribed boundary ranks r[d-1]
/// (rank of C_d -> C_{d-1}, d = 1..m) and homology ranks h[i]; dims come out
/// as r[i] + h[i] + r[i+1].
inline BasedChainComplex<FieldElem> random_complex(const std::vector<int>& r,
                                                   const std::vector<int>& h, std::mt19937_64& rng) {
    int m = (int)h.size() - 1;
    std::vector<int> rr(m + 2, 0);
    for (int d = 1; d <= m && d - 1 < (int)r.size(); ++d) rr[d] = r[d - 1];
    BasedChainComplex<FieldElem> c;
    c.zero = qt_zero();
    c.one = qt_one();
    c.dims.resize(m + 1);
    for (int i = 0; i <= m; ++i) c.dims[i] = rr[i] + h[i] + rr[i + 1];

    std::vector<Mat<FieldElem>> mats(m + 1), invs(m + 1);
    for (int i = 0; i <= m; ++i) {
        auto [mm, mi] = random_invertible(c.dims[i], rng);
        mats[i] = mm;
        invs[i] = mi;
    }
    c.boundary.resize(m + 1);
    c.boundary[0] = Mat<FieldElem>(0, c.dims[0]);
    for (int d = 1; d <= m; ++d) {
        // E maps the first rr[d] coordinates of C_d to the last rr[d] of C_{d-1}
        Mat<FieldElem> e(c.dims[d - 1], c.dims[d], qt_zero());
        for (int k = 0; k < rr[d]; ++k) e(rr[d - 1] + h[d - 1] + k, k) = qt_one();
        c.boundary[d] = mat_mul(mat_mul(mats[d - 1], e, qt_zero()), invs[d], qt_zero());
    }
    return c;
}

inline BasedChainComplex<FieldElem> random_acyclic_complex(const std::vector<int>& r,
                                                           std::mt19937_64& rng) {
    return random_complex(r, std::vector<int>(r.size() + 1, 0), rng);
}

/// Random compatibly based pair: block upper-triangular total complex whose
/// first sub-dims basis vectors span a subcomplex.
inline ChainPair<FieldElem> random_pair(std::mt19937_64& rng, int maxdim = 3) {
    std::uniform_int_distribution<int> rk(0, 2), hk(0, 1);
    int m = 3;
    std::vector<int> rs, hs, rq, hq;
    for (int d = 0; d < m; ++d) {
        rs.push_back(rk(rng) % (maxdim));
        rq.push_back(rk(rng) % (maxdim));
    }
    for (int i = 0; i <= m; ++i) {
        hs.push_back(hk(rng));
        hq.push_back(hk(rng));
    }
    BasedChainComplex<FieldElem> s = random_complex(rs, hs, rng);
    BasedChainComplex<FieldElem> q = random_complex(rq, hq, rng);

    BasedChainComplex<FieldElem> tot;
    tot.zero = qt_zero();
    tot.one = qt_one();
    tot.dims.resize(m + 1);
    std::vector<int> sub_dims(m + 1);
    for (int i = 0; i <= m; ++i) {
        sub_dims[i] = s.dims[i];
        tot.dims[i] = s.dims[i] + q.dims[i];
    }
    tot.boundary.resize(m + 1);
    tot.boundary[0] = Mat<FieldElem>(0, tot.dims[0]);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int d = 1; d <= m; ++d) {
        Mat<FieldElem> b(tot.dims[d - 1], tot.dims[d], qt_zero());
        for (int i = 0; i < s.dims[d - 1]; ++i)
            for (int j = 0; j < s.dims[d]; ++j) b(i, j) = s.d(d)(i, j);
        for (int i = 0; i < q.dims[d - 1]; ++i)
            for (int j = 0; j < q.dims[d]; ++j) b(i + s.dims[d - 1], j + s.dims[d]) = q.d(d)(i, j);
        tot.boundary[d] = std::move(b);
    }
    // conjugate by a block-unipotent change of basis to twist the extension:
    // U_i = I + X_i with X_i mapping quotient coordinates into sub coordinates
    std::vector<Mat<FieldElem>> u(m + 1), uinv(m + 1);
    for (int i = 0; i <= m; ++i) {
        Mat<FieldElem> x = Mat<FieldElem>::identity(tot.dims[i], qt_one(), qt_zero());
        Mat<FieldElem> xi = x;
        for (int r = 0; r < sub_dims[i]; ++r)
            for (int cq = sub_dims[i]; cq < tot.dims[i]; ++cq) {
                long long v = coeff(rng);
                if (v == 0) continue;
                x(r, cq) = qt_c(v);
                xi(r, cq) = qt_c(-v);
            }
        u[i] = x;
        uinv[i] = xi;
    }
    for (int d = 1; d <= m; ++d)
        tot.boundary[d] = mat_mul(mat_mul(uinv[d - 1], tot.boundary[d], qt_zero()), u[d], qt_zero());

    ChainPair<FieldElem> pair{std::move(tot), std::move(sub_dims)};
    pair.check_valid();
    return pair;
}

}  // namespace torsion::testsup
