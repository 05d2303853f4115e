#pragma once

// Dense hypercubic arrays (every axis has the same extent) and the few
// matrix routines the algebra code needs.

#include "dendra/scalar.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace dendra {

template <typename T, std::size_t Rank>
class Cube {
public:
    static constexpr std::size_t rank = Rank;

    Cube() = default;
    explicit Cube(std::size_t dim, const T &fill = T{}) : m_dim(dim), m_data(ipow(dim), fill) {}

    std::size_t dim() const { return m_dim; }
    std::size_t size() const { return m_data.size(); }

    template <typename... I>
    T &operator()(I... idx)
    {
        static_assert(sizeof...(I) == Rank);
        return m_data[flat({static_cast<std::size_t>(idx)...})];
    }
    template <typename... I>
    const T &operator()(I... idx) const
    {
        static_assert(sizeof...(I) == Rank);
        return m_data[flat({static_cast<std::size_t>(idx)...})];
    }

    T &at_flat(std::size_t i) { return m_data[i]; }
    const T &at_flat(std::size_t i) const { return m_data[i]; }

    // Multi-index of a flat position, most significant axis first.
    std::array<std::size_t, Rank> index_of(std::size_t pos) const
    {
        std::array<std::size_t, Rank> idx{};
        for (std::size_t r = Rank; r-- > 0;) {
            idx[r] = pos % m_dim;
            pos /= m_dim;
        }
        return idx;
    }

    auto begin() { return m_data.begin(); }
    auto end() { return m_data.end(); }
    auto begin() const { return m_data.begin(); }
    auto end() const { return m_data.end(); }

    friend bool operator==(const Cube &a, const Cube &b) { return a.m_dim == b.m_dim && a.m_data == b.m_data; }

private:
    std::size_t ipow(std::size_t n) const
    {
        std::size_t s = 1;
        for (std::size_t r = 0; r < Rank; ++r) s *= n;
        return s;
    }
    std::size_t flat(std::array<std::size_t, Rank> idx) const
    {
        std::size_t pos = 0;
        for (std::size_t r = 0; r < Rank; ++r) pos = pos * m_dim + idx[r];
        return pos;
    }

    std::size_t m_dim = 0;
    std::vector<T> m_data;
};

using Matrix = Cube<Scalar, 2>;
using StructureConstants = Cube<Scalar, 3>;
using RationalMatrix = Cube<Rational, 2>;

inline bool all_zero(const auto &cube)
{
    for (const auto &v : cube)
        if (!v.is_zero()) return false;
    return true;
}

inline Matrix transpose(const Matrix &m)
{
    Matrix t(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) t(j, i) = m(i, j);
    return t;
}

inline Matrix operator*(const Matrix &a, const Matrix &b)
{
    if (a.dim() != b.dim()) throw Error("matrix dimension mismatch");
    Matrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline Matrix identity_matrix(std::size_t n)
{
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

// Cofactor expansion along the first row; the matrices here are at most 4x4
// with polynomial entries, where fraction-free elimination would need exact
// polynomial division.
inline Scalar determinant(const Matrix &m)
{
    const std::size_t n = m.dim();
    if (n == 0) return Scalar(1);
    if (n == 1) return m(0, 0);
    Scalar det;
    for (std::size_t col = 0; col < n; ++col) {
        if (m(0, col).is_zero()) continue;
        Matrix minor(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j) {
                if (j == col) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        Scalar term = m(0, col) * determinant(minor);
        if (col % 2) det -= term;
        else det += term;
    }
    return det;
}

inline Matrix to_scalar_matrix(const RationalMatrix &m)
{
    Matrix out(m.dim());
    for (std::size_t i = 0; i < m.size(); ++i) out.at_flat(i) = Scalar(m.at_flat(i));
    return out;
}

// Gauss-Jordan over the rationals; nullopt when singular.
inline std::optional<RationalMatrix> inverse(const RationalMatrix &m)
{
    const std::size_t n = m.dim();
    RationalMatrix a = m, inv(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) inv(i, i) = Rational(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        const Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace dendra
