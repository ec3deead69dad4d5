#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "gpt/linalg.hpp"
#include "oracles.hpp"

namespace gpt::test {

using Q = Rational;
using VQ = Vector<Q>;

/// Vector from integers, or from "p/q" strings.
inline VQ q(std::initializer_list<int> xs)
{
    VQ v;
    for (int x : xs) {
        v.emplace_back(x);
    }
    return v;
}

inline VQ q(std::initializer_list<const char*> xs)
{
    VQ v;
    for (const char* x : xs) {
        v.push_back(parse_rational(x));
    }
    return v;
}

inline Matrix<Q> diag(std::initializer_list<const char*> xs) { return Matrix<Q>::diagonal(q(xs)); }

/// Random invertible matrix with small rational entries.
inline Matrix<Q> random_invertible(std::mt19937_64& rng, std::size_t n)
{
    for (;;) {
        Matrix<Q> m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = oracle::random_rational(rng, -3, 3, 3);
            }
        }
        if (rank(m, 0.0) == n) {
            return m;
        }
    }
}

/// The probability table as a plain nested vector for equality checks.
template <class T>
std::vector<std::vector<T>> table_of(const Matrix<T>& m)
{
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.push_back(m.row_vector(i));
    }
    return out;
}

}  // namespace gpt::test
