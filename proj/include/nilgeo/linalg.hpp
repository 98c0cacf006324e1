#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace nilgeo {

template <class T> struct scalar_traits;

template <> struct scalar_traits<Rat> {
    static bool is_zero(const Rat& x, double) { return x.is_zero(); }
    static bool abs_less(const Rat& a, const Rat& b) { return abs(a) < abs(b); }
    static Rat from_int(long long n) { return Rat(n); }
};

template <> struct scalar_traits<double> {
    static bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
    static bool abs_less(double a, double b) { return std::fabs(a) < std::fabs(b); }
    static double from_int(long long n) { return double(n); }
};

template <class T> using Vec = std::vector<T>;

/// Dense row-major matrix over a field.
template <class T>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(std::size_t r, std::size_t c) : r_(r), c_(c), d_(r * c, T(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    Vec<T> row(std::size_t i) const {
        return Vec<T>(d_.begin() + i * c_, d_.begin() + (i + 1) * c_);
    }
    Vec<T> col(std::size_t j) const {
        Vec<T> out(r_);
        for (std::size_t i = 0; i < r_; ++i) out[i] = (*this)(i, j);
        return out;
    }
    void set_col(std::size_t j, const Vec<T>& v) {
        for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat m(a.r_, a.c_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = a.d_[k] + b.d_[k];
        return m;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat m(a.r_, a.c_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = a.d_[k] - b.d_[k];
        return m;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::logic_error("matrix product shape mismatch");
        Mat m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& aik = a(i, k);
                if (scalar_traits<T>::is_zero(aik, 0.0)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }
    friend Mat operator*(const T& s, const Mat& a) {
        Mat m(a.r_, a.c_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = s * a.d_[k];
        return m;
    }
    friend Vec<T> operator*(const Mat& a, const Vec<T>& x) {
        if (a.c_ != x.size()) throw std::logic_error("matrix-vector shape mismatch");
        Vec<T> y(a.r_, T(0));
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < a.c_; ++j) y[i] += a(i, j) * x[j];
        return y;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
    }

private:
    std::size_t r_, c_;
    std::vector<T> d_;
};

template <class T> Vec<T> vadd(const Vec<T>& a, const Vec<T>& b) {
    Vec<T> o(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = a[i] + b[i];
    return o;
}
template <class T> Vec<T> vsub(const Vec<T>& a, const Vec<T>& b) {
    Vec<T> o(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = a[i] - b[i];
    return o;
}
template <class T> Vec<T> vscale(const T& s, const Vec<T>& a) {
    Vec<T> o(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = s * a[i];
    return o;
}
template <class T> bool vis_zero(const Vec<T>& a, double tol = 0.0) {
    for (const auto& x : a)
        if (!scalar_traits<T>::is_zero(x, tol)) return false;
    return true;
}

/// Bilinear form value x^T G y.
template <class T> T form(const Vec<T>& x, const Mat<T>& G, const Vec<T>& y) {
    T acc(0);
    for (std::size_t i = 0; i < G.rows(); ++i) {
        if (scalar_traits<T>::is_zero(x[i], 0.0)) continue;
        T row(0);
        for (std::size_t j = 0; j < G.cols(); ++j) row += G(i, j) * y[j];
        acc += x[i] * row;
    }
    return acc;
}

/// In-place reduced row echelon form; returns pivot column indices.
/// Pivot selection: largest absolute value in the column (deterministic,
/// exact for Rat, numerically sane for double).
template <class T>
std::vector<std::size_t> rref(Mat<T>& M, double tol = 0.0) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < M.rows(); ++i)
            if (scalar_traits<T>::abs_less(M(best, c), M(i, c))) best = i;
        if (scalar_traits<T>::is_zero(M(best, c), tol)) continue;
        if (best != r)
            for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(best, j), M(r, j));
        T inv = T(1) / M(r, c);
        for (std::size_t j = c; j < M.cols(); ++j) M(r, j) = inv * M(r, j);
        M(r, c) = T(1);
        for (std::size_t i = 0; i < M.rows(); ++i) {
            if (i == r) continue;
            T f = M(i, c);
            if (scalar_traits<T>::is_zero(f, 0.0)) continue;
            for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
            M(i, c) = T(0);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T> std::size_t rank(Mat<T> M, double tol = 0.0) { return rref(M, tol).size(); }

/// Basis of the null space, one vector per free column (free variable set to 1).
template <class T>
std::vector<Vec<T>> kernel_basis(Mat<T> M, double tol = 0.0) {
    auto piv = rref(M, tol);
    std::vector<bool> is_piv(M.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec<T>> out;
    for (std::size_t c = 0; c < M.cols(); ++c) {
        if (is_piv[c]) continue;
        Vec<T> v(M.cols(), T(0));
        v[c] = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -M(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

/// Particular solution of A x = b with free variables zero; nullopt if inconsistent.
template <class T>
std::optional<Vec<T>> solve(const Mat<T>& A, const Vec<T>& b, double tol = 0.0) {
    Mat<T> Aug(A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) Aug(i, j) = A(i, j);
        Aug(i, A.cols()) = b[i];
    }
    auto piv = rref(Aug, tol);
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
    Vec<T> x(A.cols(), T(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = Aug(r, A.cols());
    return x;
}

template <class T>
T determinant(Mat<T> M, double tol = 0.0) {
    if (M.rows() != M.cols()) throw std::logic_error("determinant of non-square matrix");
    T det(1);
    for (std::size_t c = 0; c < M.cols(); ++c) {
        std::size_t best = c;
        for (std::size_t i = c + 1; i < M.rows(); ++i)
            if (scalar_traits<T>::abs_less(M(best, c), M(i, c))) best = i;
        if (scalar_traits<T>::is_zero(M(best, c), tol)) return T(0);
        if (best != c) {
            for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(best, j), M(c, j));
            det = -det;
        }
        det *= M(c, c);
        T inv = T(1) / M(c, c);
        for (std::size_t i = c + 1; i < M.rows(); ++i) {
            T f = inv * M(i, c);
            if (scalar_traits<T>::is_zero(f, 0.0)) continue;
            for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= f * M(c, j);
        }
    }
    return det;
}

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& A, double tol = 0.0) {
    if (A.rows() != A.cols()) throw std::logic_error("inverse of non-square matrix");
    std::size_t n = A.rows();
    Mat<T> Aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) Aug(i, j) = A(i, j);
        Aug(i, n + i) = T(1);
    }
    auto piv = rref(Aug, tol);
    if (piv.size() != n) return std::nullopt;
    Mat<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = Aug(i, n + j);
    return inv;
}

/// Columns of B assembled from a list of vectors.
template <class T>
Mat<T> from_columns(const std::vector<Vec<T>>& cols) {
    if (cols.empty()) return Mat<T>(0, 0);
    Mat<T> m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

template <class T>
Mat<T> cast_mat(const Mat<Rat>& a);

template <>
inline Mat<double> cast_mat<double>(const Mat<Rat>& a) {
    Mat<double> m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_double();
    return m;
}

inline Vec<double> cast_vec(const Vec<Rat>& v) {
    Vec<double> o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i].to_double();
    return o;
}

} // namespace nilgeo
