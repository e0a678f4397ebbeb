#pragma once

#include <cassert>
#include <initializer_list>
#include <vector>

#include "torsion/arith.hpp"

namespace torsion {

/// Dense row-major matrix over an arbitrary ring T.
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, T fill = T()) : rows_(rows), cols_(cols), a_((size_t)rows * cols, fill) {}

    static Mat identity(int n, T one, T zero = T()) {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[(size_t)i * cols_ + j];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[(size_t)i * cols_ + j];
    }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    void swap_rows(int i, int j) {
        for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

private:
    int rows_, cols_;
    std::vector<T> a_;
};

using IMat = Mat<Int>;

inline IMat imat_from(std::initializer_list<std::initializer_list<long long>> rows) {
    int m = (int)rows.size();
    int n = m ? (int)rows.begin()->size() : 0;
    IMat a(m, n);
    int i = 0;
    for (auto& r : rows) {
        assert((int)r.size() == n);
        int j = 0;
        for (auto v : r) a(i, j++) = v;
        ++i;
    }
    return a;
}

inline IMat operator*(const IMat& x, const IMat& y) {
    assert(x.cols() == y.rows());
    IMat z(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols(); ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

/// Exact integer determinant (fraction-free Bareiss).
inline Int idet(IMat m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

}  // namespace torsion
