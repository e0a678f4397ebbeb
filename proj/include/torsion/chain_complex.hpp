#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "torsion/field.hpp"
#include "torsion/matrix.hpp"

namespace torsion {

// ---------------------------------------------------------------------------
// generic exact linear algebra over a field F (F = Rat or FieldElem)
// ---------------------------------------------------------------------------

template <class F>
using Vec = std::vector<F>;

template <class F>
F field_det(const Mat<F>& m, const F& zero, const F& one) {
    if constexpr (std::is_same_v<F, FieldElem>) {
        return determinant(m, one.conductor(), one.nvars());
    } else {
        (void)zero;
        Mat<F> a = m;
        int n = a.rows();
        if (n == 0) return one;
        F det = one;
        for (int k = 0; k < n; ++k) {
            int p = -1;
            for (int i = k; i < n; ++i)
                if (!(a(i, k) == zero)) {
                    p = i;
                    break;
                }
            if (p < 0) return zero;
            if (p != k) {
                a.swap_rows(k, p);
                det = -det;
            }
            det = det * a(k, k);
            F inv = one / a(k, k);
            for (int j = k; j < n; ++j) a(k, j) = a(k, j) * inv;
            for (int i = k + 1; i < n; ++i) {
                if (a(i, k) == zero) continue;
                F f = a(i, k);
                for (int j = k; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
            }
        }
        return det;
    }
}

/// Row-reduce in place; returns pivot column indices (in the order columns
/// are visited, i.e. the supplied column order).
template <class F>
std::vector<int> row_reduce(Mat<F>& a, const F& zero, const F& one,
                            const std::vector<int>& col_order = {}) {
    std::vector<int> order(a.cols());
    if (col_order.empty())
        std::iota(order.begin(), order.end(), 0);
    else
        order = col_order;
    std::vector<int> pivots;
    int row = 0;
    for (int j : order) {
        if (row >= a.rows()) break;
        int p = -1;
        for (int i = row; i < a.rows(); ++i)
            if (!(a(i, j) == zero)) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row) a.swap_rows(row, p);
        F inv = one / a(row, j);
        for (int k = 0; k < a.cols(); ++k) a(row, k) = a(row, k) * inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, j) == zero) continue;
            F f = a(i, j);
            for (int k = 0; k < a.cols(); ++k) a(i, k) = a(i, k) - f * a(row, k);
        }
        pivots.push_back(j);
        ++row;
    }
    return pivots;
}

template <class F>
int rank_of(const Mat<F>& m, const F& zero, const F& one) {
    Mat<F> a = m;
    return (int)row_reduce(a, zero, one).size();
}

/// Greedy selection of columns whose images are independent, visiting columns
/// in the given order.
template <class F>
std::vector<int> pivot_columns(const Mat<F>& m, const F& zero, const F& one,
                               const std::vector<int>& col_order = {}) {
    Mat<F> a = m;
    std::vector<int> piv = row_reduce(a, zero, one, col_order);
    std::sort(piv.begin(), piv.end());
    if (!col_order.empty()) {
        // keep the visit order for deterministic bases
        std::vector<int> ordered;
        for (int j : col_order)
            if (std::find(piv.begin(), piv.end(), j) != piv.end()) ordered.push_back(j);
        return ordered;
    }
    return piv;
}

/// Canonical kernel basis from the reduced row echelon form.
template <class F>
std::vector<Vec<F>> kernel_basis(const Mat<F>& m, const F& zero, const F& one) {
    Mat<F> a = m;
    std::vector<int> piv = row_reduce(a, zero, one);
    std::vector<bool> is_piv(a.cols(), false);
    for (int j : piv) is_piv[j] = true;
    std::vector<Vec<F>> out;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_piv[j]) continue;
        Vec<F> v(a.cols(), zero);
        v[j] = one;
        for (size_t r = 0; r < piv.size(); ++r) {
            // row r has pivot at piv[r]
            if (!(a((int)r, j) == zero)) v[piv[r]] = -a((int)r, j);
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// Solve A x = b. Returns nullopt when inconsistent; free variables are set
/// to zero.
template <class F>
std::optional<Vec<F>> solve_linear(const Mat<F>& m, const Vec<F>& b, const F& zero, const F& one) {
    Mat<F> a(m.rows(), m.cols() + 1, zero);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
        a(i, m.cols()) = b[i];
    }
    std::vector<int> order(m.cols());
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> piv = row_reduce(a, zero, one, order);
    // inconsistent iff some zero row of the coefficient part keeps a residue
    for (int i = (int)piv.size(); i < a.rows(); ++i)
        if (!(a(i, m.cols()) == zero)) return std::nullopt;
    Vec<F> x(m.cols(), zero);
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a((int)r, m.cols());
    return x;
}

/// Incremental independence tester (echelon accumulator).
template <class F>
class SpanTracker {
public:
    SpanTracker(int dim, F zero, F one) : dim_(dim), zero_(zero), one_(one) {}

    int rank() const { return (int)rows_.size(); }

    /// Reduce v against the accumulated span; if independent, absorb and
    /// return true.
    bool add(Vec<F> v) {
        reduce(v);
        int p = first_nonzero(v);
        if (p < 0) return false;
        F inv = one_ / v[p];
        for (auto& x : v) x = x * inv;
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    bool contains(Vec<F> v) const {
        reduce(v);
        return first_nonzero(v) < 0;
    }

private:
    int dim_;
    F zero_, one_;
    std::vector<Vec<F>> rows_;
    std::vector<int> pivots_;

    void reduce(Vec<F>& v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            int p = pivots_[r];
            if (v[p] == zero_) continue;
            F f = v[p];
            for (int j = 0; j < dim_; ++j) v[j] = v[j] - f * rows_[r][j];
        }
    }
    int first_nonzero(const Vec<F>& v) const {
        for (int j = 0; j < dim_; ++j)
            if (!(v[j] == zero_)) return j;
        return -1;
    }
};

// ---------------------------------------------------------------------------
// based chain complexes and their torsion
// ---------------------------------------------------------------------------

/// 0 -> C_m -> ... -> C_0 -> 0 over a field, with the standard ordered basis
/// in every degree. boundary[d] is the matrix of C_d -> C_{d-1} (columns are
/// images of basis vectors); boundary[0] has zero rows.
template <class F>
struct BasedChainComplex {
    std::vector<int> dims;
    std::vector<Mat<F>> boundary;
    F zero, one;

    int length() const { return (int)dims.size() - 1; }
    int dim(int i) const { return i >= 0 && i < (int)dims.size() ? dims[i] : 0; }
    int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

    const Mat<F>& d(int i) const { return boundary[i]; }

    void check_valid() const {
        if (dims.empty()) throw std::invalid_argument("empty chain complex");
        if (boundary.size() != dims.size()) throw std::invalid_argument("boundary count mismatch");
        if (boundary[0].rows() != 0 || boundary[0].cols() != dims[0])
            throw std::invalid_argument("boundary[0] must be 0 x dim C_0");
        for (int i = 1; i <= length(); ++i)
            if (boundary[i].rows() != dims[i - 1] || boundary[i].cols() != dims[i])
                throw std::invalid_argument("boundary shape mismatch");
        for (int i = 1; i < length(); ++i) {
            // d_{i} o d_{i+1} = 0
            const Mat<F>&a = boundary[i], &b = boundary[i + 1];
            for (int r = 0; r < a.rows(); ++r)
                for (int c = 0; c < b.cols(); ++c) {
                    F s = zero;
                    for (int k = 0; k < a.cols(); ++k) s = s + a(r, k) * b(k, c);
                    if (!(s == zero)) throw std::invalid_argument("boundary squared is nonzero");
                }
        }
    }
};

template <class F>
BasedChainComplex<F> make_complex(std::vector<int> dims, std::vector<Mat<F>> boundary, F zero, F one) {
    BasedChainComplex<F> c{std::move(dims), std::move(boundary), std::move(zero), std::move(one)};
    c.check_valid();
    return c;
}

/// Ranks and representative cycles for the homology of every degree.
template <class F>
struct HomologyData {
    std::vector<int> ranks;                 // per degree
    std::vector<std::vector<Vec<F>>> reps;  // per degree, one cycle per rank

    int total_rank() const { return std::accumulate(ranks.begin(), ranks.end(), 0); }
    bool acyclic() const { return total_rank() == 0; }
};

template <class F>
HomologyData<F> empty_homology(const BasedChainComplex<F>& c) {
    HomologyData<F> h;
    h.ranks.assign(c.dims.size(), 0);
    h.reps.resize(c.dims.size());
    return h;
}

/// Homology with deterministic reduced-echelon representatives.
template <class F>
HomologyData<F> homology(const BasedChainComplex<F>& c) {
    int m = c.length();
    HomologyData<F> h;
    h.ranks.assign(m + 1, 0);
    h.reps.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
        std::vector<Vec<F>> cycles;
        if (i == 0) {
            cycles.resize(c.dims[0]);
            for (int j = 0; j < c.dims[0]; ++j) {
                cycles[j].assign(c.dims[0], c.zero);
                cycles[j][j] = c.one;
            }
        } else {
            cycles = kernel_basis(c.d(i), c.zero, c.one);
        }
        SpanTracker<F> span(c.dims[i], c.zero, c.one);
        if (i < m) {
            const Mat<F>& bnd = c.d(i + 1);
            std::vector<int> piv = pivot_columns(bnd, c.zero, c.one);
            for (int j : piv) {
                Vec<F> v(c.dims[i], c.zero);
                for (int r = 0; r < c.dims[i]; ++r) v[r] = bnd(r, j);
                span.add(std::move(v));
            }
        }
        for (auto& z : cycles)
            if (span.add(z)) {
                h.reps[i].push_back(z);
                ++h.ranks[i];
            }
    }
    return h;
}

template <class F>
struct TorsionResult {
    F value;
    bool acyclic = false;
};

namespace detail_chain {

/// columns of b_{i+1} selected greedily so that their boundary images form a
/// basis of im d_{i+1}; col_orders[d] optionally permutes the greedy scan.
template <class F>
std::vector<std::vector<int>> select_b(const BasedChainComplex<F>& c,
                                       const std::vector<std::vector<int>>& col_orders) {
    int m = c.length();
    std::vector<std::vector<int>> b(m + 1);
    for (int d = 1; d <= m; ++d) {
        std::vector<int> order;
        if ((int)col_orders.size() > d) order = col_orders[d];
        b[d] = pivot_columns(c.d(d), c.zero, c.one, order);
    }
    return b;
}

}  // namespace detail_chain

/// Sign exponent |C| of the torsion definition.
template <class F>
int complex_sign_exponent(const BasedChainComplex<F>& c, const HomologyData<F>& h) {
    int m = c.length();
    long long total = 0, dc = 0, dh = 0;
    for (int i = 0; i <= m; ++i) {
        dc += c.dims[i];
        dh += h.ranks[i];
        total += dc * dh;
    }
    return (int)(total & 1);
}

/// Torsion of a based chain complex with based homology (Def of tau(C)).
/// The choice of b_i does not affect the result; col_orders only reorders the
/// greedy pivot scan (used by the independence property tests).
template <class F>
TorsionResult<F> chain_torsion(const BasedChainComplex<F>& c, const HomologyData<F>& h,
                               const std::vector<std::vector<int>>& col_orders = {}) {
    int m = c.length();
    if ((int)h.ranks.size() != m + 1) throw std::invalid_argument("homology data length mismatch");

    // consistency of supplied homology data
    {
        std::vector<int> out_rank(m + 2, 0);
        for (int d = 1; d <= m; ++d) out_rank[d] = rank_of(c.d(d), c.zero, c.one);
        for (int i = 0; i <= m; ++i) {
            int expect = c.dims[i] - out_rank[i] - out_rank[i + 1];
            if (h.ranks[i] != expect || (int)h.reps[i].size() != h.ranks[i])
                throw std::invalid_argument("inconsistent homology data");
        }
    }

    auto b = detail_chain::select_b(c, col_orders);
    F num = c.one, den = c.one;
    for (int i = 0; i <= m; ++i) {
        int n = c.dims[i];
        std::vector<Vec<F>> cols;
        if (i < m)
            for (int j : b[i + 1]) {
                Vec<F> v(n, c.zero);
                for (int r = 0; r < n; ++r) v[r] = c.d(i + 1)(r, j);
                cols.push_back(std::move(v));
            }
        for (const auto& rep : h.reps[i]) {
            if ((int)rep.size() != n) throw std::invalid_argument("homology representative size");
            cols.push_back(rep);
        }
        for (int j : b[i]) {
            Vec<F> v(n, c.zero);
            v[j] = c.one;
            cols.push_back(std::move(v));
        }
        if ((int)cols.size() != n) throw std::invalid_argument("inconsistent homology data (basis size)");
        if (n == 0) continue;
        Mat<F> t(n, n, c.zero);
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) t(r, j) = cols[j][r];
        F dt = field_det(t, c.zero, c.one);
        if (dt == c.zero) throw std::invalid_argument("homology representatives are not a basis");
        if (i % 2 == 0)
            den = den * dt;  // exponent (-1)^{i+1} = -1 for even i
        else
            num = num * dt;
    }
    F value = num / den;
    if (complex_sign_exponent(c, h) == 1) value = -value;
    TorsionResult<F> r;
    r.value = value;
    r.acyclic = h.acyclic();
    return r;
}

template <class F>
TorsionResult<F> chain_torsion(const BasedChainComplex<F>& c) {
    return chain_torsion(c, homology(c));
}

/// tau with respect to a new basis: multiplies by det(change_i)^{(-1)^{i+1}}
/// where change_i expresses the current basis in the new one (the [c_i/d_i]
/// of the rebasing lemma).
template <class F>
F rebase_torsion(const F& tau, const std::vector<Mat<F>>& change, const F& zero, const F& one) {
    F num = one, den = one;
    for (size_t i = 0; i < change.size(); ++i) {
        if (change[i].rows() == 0) continue;
        F dt = field_det(change[i], zero, one);
        if (dt == zero) throw std::invalid_argument("rebase: singular change of basis");
        if (i % 2 == 0)
            den = den * dt;
        else
            num = num * dt;
    }
    return tau * num / den;
}

// ---------------------------------------------------------------------------
// pairs C' < C, the connecting maps, and multiplicativity
// ---------------------------------------------------------------------------

/// A based pair: the subcomplex is spanned by the first sub_dims[i] basis
/// vectors in every degree (so the concatenated sub/quotient bases equal the
/// total basis, and the compatibility determinant is 1).
template <class F>
struct ChainPair {
    BasedChainComplex<F> total;
    std::vector<int> sub_dims;

    void check_valid() const {
        total.check_valid();
        if (sub_dims.size() != total.dims.size()) throw std::invalid_argument("pair: dims mismatch");
        for (size_t i = 0; i < sub_dims.size(); ++i)
            if (sub_dims[i] < 0 || sub_dims[i] > total.dims[i])
                throw std::invalid_argument("pair: subcomplex dimension out of range");
        // subcomplex must be closed under the boundary
        for (int d = 1; d <= total.length(); ++d)
            for (int j = 0; j < sub_dims[d]; ++j)
                for (int r = sub_dims[d - 1]; r < total.dims[d - 1]; ++r)
                    if (!(total.d(d)(r, j) == total.zero))
                        throw std::invalid_argument("pair: not a subcomplex");
    }

    BasedChainComplex<F> sub() const {
        BasedChainComplex<F> c;
        c.dims = sub_dims;
        c.zero = total.zero;
        c.one = total.one;
        c.boundary.resize(total.boundary.size());
        c.boundary[0] = Mat<F>(0, sub_dims[0]);
        for (int d = 1; d <= total.length(); ++d) {
            Mat<F> m(sub_dims[d - 1], sub_dims[d], total.zero);
            for (int i = 0; i < sub_dims[d - 1]; ++i)
                for (int j = 0; j < sub_dims[d]; ++j) m(i, j) = total.d(d)(i, j);
            c.boundary[d] = std::move(m);
        }
        return c;
    }

    BasedChainComplex<F> quotient() const {
        BasedChainComplex<F> c;
        c.zero = total.zero;
        c.one = total.one;
        c.dims.resize(total.dims.size());
        for (size_t i = 0; i < c.dims.size(); ++i) c.dims[i] = total.dims[i] - sub_dims[i];
        c.boundary.resize(total.boundary.size());
        c.boundary[0] = Mat<F>(0, c.dims[0]);
        for (int d = 1; d <= total.length(); ++d) {
            Mat<F> m(c.dims[d - 1], c.dims[d], total.zero);
            for (int i = 0; i < c.dims[d - 1]; ++i)
                for (int j = 0; j < c.dims[d]; ++j)
                    m(i, j) = total.d(d)(i + sub_dims[d - 1], j + sub_dims[d]);
            c.boundary[d] = std::move(m);
        }
        return c;
    }
};

/// nu(C, C') = sum alpha_i(C'') alpha_{i-1}(C') mod 2 with alpha the partial
/// dimension sums.
inline int nu(const std::vector<int>& total_dims, const std::vector<int>& sub_dims) {
    if (total_dims.size() != sub_dims.size()) throw std::invalid_argument("nu: dimension mismatch");
    int m = (int)total_dims.size() - 1;
    auto alpha = [&](const std::vector<int>& d, int j) {
        int s = 0;
        for (int r = 0; r <= j; ++r) s += d[r];
        return s & 1;
    };
    std::vector<int> quot(total_dims.size());
    for (size_t i = 0; i < quot.size(); ++i) {
        quot[i] = total_dims[i] - sub_dims[i];
        if (quot[i] < 0) throw std::invalid_argument("nu: sub dims exceed total");
    }
    int s = 0;
    for (int i = 0; i <= m; ++i) {
        int a2 = i >= 1 ? alpha(sub_dims, i - 1) : 0;
        s ^= alpha(quot, i) & a2;
    }
    return s;
}

template <class F>
int nu(const BasedChainComplex<F>& total, const BasedChainComplex<F>& sub) {
    return nu(total.dims, sub.dims);
}

/// theta(C, C') from the homology ranks of C, C', C''.
inline int theta(const std::vector<int>& h_total, const std::vector<int>& h_sub,
                 const std::vector<int>& h_quot) {
    size_t m1 = std::max({h_total.size(), h_sub.size(), h_quot.size()});
    auto beta = [&](const std::vector<int>& h, int j) {
        int s = 0;
        for (int r = 0; r <= j && r < (int)h.size(); ++r) s += h[r];
        return s & 1;
    };
    int s = 0;
    for (int i = 0; i < (int)m1; ++i) {
        int bi_c = beta(h_total, i), bi_s = beta(h_sub, i), bi_q = beta(h_quot, i);
        int bim1_s = i >= 1 ? beta(h_sub, i - 1) : 0;
        s ^= ((bi_c ^ 1) & (bi_s ^ bi_q)) ^ (bim1_s & bi_q);
    }
    return s;
}

/// Connecting homomorphism on chains: lift a quotient cycle, apply the total
/// boundary, land in the subcomplex.
template <class F>
Vec<F> connecting_image(const ChainPair<F>& pair, int degree, const Vec<F>& quot_cycle) {
    const auto& c = pair.total;
    int nq = c.dims[degree] - pair.sub_dims[degree];
    if ((int)quot_cycle.size() != nq) throw std::invalid_argument("connecting image: size mismatch");
    Vec<F> lift(c.dims[degree], c.zero);
    for (int j = 0; j < nq; ++j) lift[pair.sub_dims[degree] + j] = quot_cycle[j];
    Vec<F> img(c.dims[degree - 1], c.zero);
    for (int r = 0; r < c.dims[degree - 1]; ++r) {
        F s = c.zero;
        for (int k = 0; k < c.dims[degree]; ++k) s = s + c.d(degree)(r, k) * lift[k];
        img[r] = s;
    }
    for (int r = pair.sub_dims[degree - 1]; r < c.dims[degree - 1]; ++r)
        if (!(img[r] == c.zero))
            throw std::invalid_argument("connecting image: lift boundary leaves the subcomplex");
    return Vec<F>(img.begin(), img.begin() + pair.sub_dims[degree - 1]);
}

namespace detail_chain {

/// coordinates of the class [z] in the homology basis (reps, with boundary
/// image basis bimg); throws when z is not a combination of both.
template <class F>
Vec<F> class_coordinates(const Vec<F>& z, const std::vector<Vec<F>>& reps,
                         const std::vector<Vec<F>>& bimg, const F& zero, const F& one) {
    int n = (int)z.size();
    int cols = (int)(reps.size() + bimg.size());
    Mat<F> a(n, cols, zero);
    for (size_t j = 0; j < reps.size(); ++j)
        for (int r = 0; r < n; ++r) a(r, (int)j) = reps[j][r];
    for (size_t j = 0; j < bimg.size(); ++j)
        for (int r = 0; r < n; ++r) a(r, (int)(reps.size() + j)) = bimg[j][r];
    auto x = solve_linear(a, z, zero, one);
    if (!x) throw std::invalid_argument("class is not spanned by the supplied homology basis");
    return Vec<F>(x->begin(), x->begin() + reps.size());
}

template <class F>
std::vector<Vec<F>> boundary_image_basis(const BasedChainComplex<F>& c, int degree) {
    std::vector<Vec<F>> out;
    if (degree + 1 > c.length()) return out;
    const Mat<F>& bnd = c.d(degree + 1);
    for (int j : pivot_columns(bnd, c.zero, c.one)) {
        Vec<F> v(c.dims[degree], c.zero);
        for (int r = 0; r < c.dims[degree]; ++r) v[r] = bnd(r, j);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail_chain

/// The long exact homology sequence of the pair as a based acyclic complex:
/// degree 3r holds H_r(C''), 3r+1 holds H_r(C), 3r+2 holds H_r(C'), based by
/// the supplied homology bases.
template <class F>
BasedChainComplex<F> les_complex(const ChainPair<F>& pair, const HomologyData<F>& h_total,
                                 const HomologyData<F>& h_sub, const HomologyData<F>& h_quot) {
    const auto& c = pair.total;
    BasedChainComplex<F> sub = pair.sub();
    BasedChainComplex<F> quot = pair.quotient();
    int m = c.length();

    auto pad_sub = [&](const Vec<F>& v, int degree) {
        Vec<F> w(c.dims[degree], c.zero);
        for (size_t i = 0; i < v.size(); ++i) w[i] = v[i];
        return w;
    };
    auto project_quot = [&](const Vec<F>& v, int degree) {
        return Vec<F>(v.begin() + pair.sub_dims[degree], v.end());
    };

    BasedChainComplex<F> les;
    les.zero = c.zero;
    les.one = c.one;
    les.dims.assign(3 * (m + 1), 0);
    for (int r = 0; r <= m; ++r) {
        les.dims[3 * r] = h_quot.ranks[r];
        les.dims[3 * r + 1] = h_total.ranks[r];
        les.dims[3 * r + 2] = h_sub.ranks[r];
    }
    les.boundary.resize(les.dims.size());
    les.boundary[0] = Mat<F>(0, les.dims[0]);

    for (int r = 0; r <= m; ++r) {
        // H_r(C) -> H_r(C''), degree 3r+1 -> 3r
        {
            Mat<F> mtx(les.dims[3 * r], les.dims[3 * r + 1], c.zero);
            auto bimg = detail_chain::boundary_image_basis(quot, r);
            for (int j = 0; j < h_total.ranks[r]; ++j) {
                Vec<F> coords = detail_chain::class_coordinates(
                    project_quot(h_total.reps[r][j], r), h_quot.reps[r], bimg, c.zero, c.one);
                for (int i = 0; i < les.dims[3 * r]; ++i) mtx(i, j) = coords[i];
            }
            les.boundary[3 * r + 1] = std::move(mtx);
        }
        // H_r(C') -> H_r(C), degree 3r+2 -> 3r+1
        {
            Mat<F> mtx(les.dims[3 * r + 1], les.dims[3 * r + 2], c.zero);
            auto bimg = detail_chain::boundary_image_basis(c, r);
            for (int j = 0; j < h_sub.ranks[r]; ++j) {
                Vec<F> coords = detail_chain::class_coordinates(pad_sub(h_sub.reps[r][j], r),
                                                                h_total.reps[r], bimg, c.zero, c.one);
                for (int i = 0; i < les.dims[3 * r + 1]; ++i) mtx(i, j) = coords[i];
            }
            les.boundary[3 * r + 2] = std::move(mtx);
        }
        // delta: H_r(C'') -> H_{r-1}(C'), degree 3r -> 3r-1
        if (r >= 1) {
            Mat<F> mtx(les.dims[3 * r - 1], les.dims[3 * r], c.zero);
            auto bimg = detail_chain::boundary_image_basis(sub, r - 1);
            for (int j = 0; j < h_quot.ranks[r]; ++j) {
                Vec<F> delta = connecting_image(pair, r, h_quot.reps[r][j]);
                Vec<F> coords =
                    detail_chain::class_coordinates(delta, h_sub.reps[r - 1], bimg, c.zero, c.one);
                for (int i = 0; i < les.dims[3 * r - 1]; ++i) mtx(i, j) = coords[i];
            }
            les.boundary[3 * r] = std::move(mtx);
        }
    }
    return les;
}

/// tau(H) of the based long exact sequence of the pair.
template <class F>
F les_torsion(const ChainPair<F>& pair, const HomologyData<F>& h_total, const HomologyData<F>& h_sub,
              const HomologyData<F>& h_quot) {
    BasedChainComplex<F> les = les_complex(pair, h_total, h_sub, h_quot);
    HomologyData<F> h = homology(les);
    if (!h.acyclic()) throw std::logic_error("long exact sequence is not acyclic");
    return chain_torsion(les, h).value;
}

/// tau(C' < C) = (-1)^theta tau(H)
template <class F>
F pair_torsion_correction(const ChainPair<F>& pair, const HomologyData<F>& h_total,
                          const HomologyData<F>& h_sub, const HomologyData<F>& h_quot) {
    F t = les_torsion(pair, h_total, h_sub, h_quot);
    if (theta(h_total.ranks, h_sub.ranks, h_quot.ranks) == 1) t = -t;
    return t;
}

/// Exact check of tau(C) = (-1)^nu tau(C') tau(C'') tau(C' < C) for a
/// compatibly based pair with the supplied homology bases.
template <class F>
bool multiplicativity_check(const ChainPair<F>& pair, const HomologyData<F>& h_total,
                            const HomologyData<F>& h_sub, const HomologyData<F>& h_quot) {
    pair.check_valid();
    BasedChainComplex<F> sub = pair.sub();
    BasedChainComplex<F> quot = pair.quotient();
    F lhs = chain_torsion(pair.total, h_total).value;
    F rhs = chain_torsion(sub, h_sub).value * chain_torsion(quot, h_quot).value *
            pair_torsion_correction(pair, h_total, h_sub, h_quot);
    if (nu(pair.total.dims, pair.sub_dims) == 1) rhs = -rhs;
    return lhs == rhs;
}

}  // namespace torsion
