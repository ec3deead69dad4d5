#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gpt/scalar.hpp"

namespace gpt {

template <class T>
using Vector = std::vector<T>;

template <class T>
T dot(std::span<const T> a, std::span<const T> b)
{
    if (a.size() != b.size()) {
        throw InvalidInput("dot: dimension mismatch");
    }
    T s = T(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

template <class T>
T dot(const Vector<T>& a, const Vector<T>& b)
{
    return dot(std::span<const T>(a), std::span<const T>(b));
}

template <class T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b)
{
    if (a.size() != b.size()) {
        throw InvalidInput("vector sum: dimension mismatch");
    }
    Vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

template <class T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b)
{
    if (a.size() != b.size()) {
        throw InvalidInput("vector difference: dimension mismatch");
    }
    Vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
    }
    return r;
}

template <class T>
Vector<T> operator*(const T& c, const Vector<T>& a)
{
    Vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = c * a[i];
    }
    return r;
}

/// Row-major Kronecker product: entry i*dim(w)+j holds v[i]*w[j].
template <class T>
Vector<T> kron(const Vector<T>& v, const Vector<T>& w)
{
    Vector<T> r;
    r.reserve(v.size() * w.size());
    for (const T& a : v) {
        for (const T& b : w) {
            r.push_back(a * b);
        }
    }
    return r;
}

template <class T>
double norm(const Vector<T>& v)
{
    double s = 0.0;
    for (const T& x : v) {
        const double d = NumTraits<T>::to_double(x);
        s += d * d;
    }
    return std::sqrt(s);
}

template <class T>
bool is_zero_vector(const Vector<T>& v, double eps)
{
    return std::all_of(v.begin(), v.end(), [eps](const T& x) { return NumTraits<T>::is_zero(x, eps); });
}

template <class T>
bool vectors_equal(const Vector<T>& a, const Vector<T>& b, double eps)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!NumTraits<T>::is_zero(a[i] - b[i], eps)) {
            return false;
        }
    }
    return true;
}

template <class T>
bool lex_less(const Vector<T>& a, const Vector<T>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Scales a ray so that its first nonzero entry is +-1 (exact) or to unit
/// Euclidean norm (approx). Entries within eps of zero are snapped to zero.
template <class T>
Vector<T> canonical_ray(Vector<T> v, double eps)
{
    if constexpr (is_exact_v<T>) {
        for (const T& x : v) {
            if (!x.is_zero()) {
                const T s = NumTraits<T>::abs(x);
                for (T& y : v) {
                    y /= s;
                }
                break;
            }
        }
    } else {
        const double n = norm(v);
        if (n > 0.0) {
            for (double& y : v) {
                y /= n;
                if (std::abs(y) <= eps) {
                    y = 0.0;
                }
            }
        }
    }
    return v;
}

template <class T>
Vector<T> snap(Vector<T> v, double eps)
{
    if constexpr (!is_exact_v<T>) {
        for (double& y : v) {
            if (std::abs(y) <= eps) {
                y = 0.0;
            }
        }
    }
    return v;
}

/// Sorts lexicographically and drops duplicates (within eps for approx).
template <class T>
void sort_unique(std::vector<Vector<T>>& vs, double eps)
{
    std::sort(vs.begin(), vs.end(), lex_less<T>);
    std::vector<Vector<T>> out;
    out.reserve(vs.size());
    for (auto& v : vs) {
        bool dup = false;
        if constexpr (is_exact_v<T>) {
            dup = !out.empty() && out.back() == v;
        } else {
            for (const auto& w : out) {
                if (vectors_equal(v, w, eps)) {
                    dup = true;
                    break;
                }
            }
        }
        if (!dup) {
            out.push_back(std::move(v));
        }
    }
    vs = std::move(out);
}

/// Set equality of two point lists (order-insensitive, tolerance-aware).
template <class T>
bool same_point_set(std::vector<Vector<T>> a, std::vector<Vector<T>> b, double eps)
{
    if (a.size() != b.size()) {
        return false;
    }
    if constexpr (is_exact_v<T>) {
        std::sort(a.begin(), a.end(), lex_less<T>);
        std::sort(b.begin(), b.end(), lex_less<T>);
        return a == b;
    } else {
        std::vector<bool> used(b.size(), false);
        for (const auto& v : a) {
            bool found = false;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (!used[j] && vectors_equal(v, b[j], eps)) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) {
                return false;
            }
        }
        return true;
    }
}

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    static Matrix diagonal(const Vector<T>& d)
    {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    static Matrix from_rows(const std::vector<Vector<T>>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw InvalidInput("matrix: ragged rows");
            }
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector<T> row_vector(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    Vector<T> operator*(const Vector<T>& v) const
    {
        if (v.size() != cols_) {
            throw InvalidInput("matrix-vector product: dimension mismatch");
        }
        Vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                r[i] += (*this)(i, j) * v[j];
            }
        }
        return r;
    }

    Matrix operator*(const Matrix& o) const
    {
        if (cols_ != o.rows_) {
            throw InvalidInput("matrix product: dimension mismatch");
        }
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) {
                    continue;
                }
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    r(i, j) += a * o(k, j);
                }
            }
        }
        return r;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b)
{
    Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return r;
}

template <class T>
struct Echelon {
    Matrix<T> reduced;                // nonzero rows only, pivots normalized to 1
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form. With `from_right`, pivot columns are chosen
/// scanning from the last column towards the first, so the trailing
/// coordinates are the ones eliminated.
template <class T>
Echelon<T> reduced_echelon(Matrix<T> m, double eps, bool from_right = false)
{
    const std::size_t nr = m.rows();
    const std::size_t nc = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t step = 0; step < nc && r < nr; ++step) {
        const std::size_t c = from_right ? nc - 1 - step : step;
        std::size_t best = nr;
        if constexpr (is_exact_v<T>) {
            for (std::size_t i = r; i < nr; ++i) {
                if (!m(i, c).is_zero()) {
                    best = i;
                    break;
                }
            }
        } else {
            double bv = eps;
            for (std::size_t i = r; i < nr; ++i) {
                if (std::abs(m(i, c)) > bv) {
                    bv = std::abs(m(i, c));
                    best = i;
                }
            }
        }
        if (best == nr) {
            if constexpr (!is_exact_v<T>) {
                for (std::size_t i = r; i < nr; ++i) {
                    m(i, c) = 0.0;
                }
            }
            continue;
        }
        if (best != r) {
            for (std::size_t j = 0; j < nc; ++j) {
                std::swap(m(r, j), m(best, j));
            }
        }
        const T p = m(r, c);
        for (std::size_t j = 0; j < nc; ++j) {
            m(r, j) /= p;
        }
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r) {
                continue;
            }
            const T f = m(i, c);
            if (NumTraits<T>::is_zero(f, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < nc; ++j) {
                m(i, j) -= f * m(r, j);
            }
            m(i, c) = T(0);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<T> out(r, nc);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            out(i, j) = m(i, j);
        }
    }
    if constexpr (!is_exact_v<T>) {
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < nc; ++j) {
                if (std::abs(out(i, j)) <= eps) {
                    out(i, j) = 0.0;
                }
            }
        }
    }
    return {std::move(out), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m, double eps)
{
    return reduced_echelon(m, eps).pivots.size();
}

/// Basis of {x : m x = 0}, one vector per free column, each with a 1 in
/// its free column and zeros in the other free columns.
template <class T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m, double eps, bool from_right = false)
{
    const auto ech = reduced_echelon(m, eps, from_right);
    const std::size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (auto p : ech.pivots) {
        is_pivot[p] = true;
    }
    std::vector<Vector<T>> basis;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        Vector<T> v(nc, T(0));
        v[f] = T(1);
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
            v[ech.pivots[i]] = -ech.reduced(i, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m, double eps)
{
    const std::size_t n = m.rows();
    if (m.cols() != n) {
        throw InvalidInput("inverse: matrix is not square");
    }
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = T(1);
    }
    // Pivoting only over the left block: restrict the echelon scan by hand.
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n;
        double bv = is_exact_v<T> ? -1.0 : eps;
        for (std::size_t i = c; i < n; ++i) {
            const double a = std::abs(NumTraits<T>::to_double(aug(i, c)));
            if constexpr (is_exact_v<T>) {
                if (!aug(i, c).is_zero()) {
                    best = i;
                    break;
                }
            } else if (a > bv) {
                bv = a;
                best = i;
            }
        }
        if (best == n) {
            throw SingularMap("matrix is singular");
        }
        if (best != c) {
            for (std::size_t j = 0; j < 2 * n; ++j) {
                std::swap(aug(c, j), aug(best, j));
            }
        }
        const T p = aug(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j) {
            aug(c, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || aug(i, c) == T(0)) {
                continue;
            }
            const T f = aug(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j) {
                aug(i, j) -= f * aug(c, j);
            }
        }
    }
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = aug(i, n + j);
        }
    }
    return inv;
}

template <class To, class From>
Vector<To> convert_vector(const Vector<From>& v)
{
    Vector<To> r;
    r.reserve(v.size());
    for (const auto& x : v) {
        r.push_back(convert_scalar<To>(x));
    }
    return r;
}

template <class To, class From>
Matrix<To> convert_matrix(const Matrix<From>& m)
{
    Matrix<To> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = convert_scalar<To>(m(i, j));
        }
    }
    return r;
}

}  // namespace gpt
