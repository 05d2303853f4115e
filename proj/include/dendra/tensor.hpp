#pragma once

// Elements of A (x) A and A (x) A (x) A, the exchange operator, and the
// associative Yang-Baxter residual.

#include "dendra/algebra.hpp"

namespace dendra {

struct Tensor2 {
    // r = sum a(i, j) e_i (x) e_j
    Matrix a;
    std::vector<Constraint> constraints;

    Tensor2() = default;
    explicit Tensor2(std::size_t n) : a(n) {}
    Tensor2(Matrix coeffs, std::vector<Constraint> cs = {}) : a(std::move(coeffs)), constraints(std::move(cs)) {}

    std::size_t dim() const { return a.dim(); }
    const Scalar &operator()(std::size_t i, std::size_t j) const { return a(i, j); }
    Scalar &operator()(std::size_t i, std::size_t j) { return a(i, j); }

    // Fully general r over a11 .. ann.
    static Tensor2 general(std::size_t n, const std::string &prefix = "a")
    {
        Tensor2 r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) = Scalar::var(coefficient_name(prefix, i, j));
        return r;
    }
    static std::string coefficient_name(const std::string &prefix, std::size_t i, std::size_t j)
    {
        return prefix + std::to_string(i + 1) + std::to_string(j + 1);
    }

    Tensor2 scaled(const Scalar &s) const
    {
        Tensor2 r = *this;
        for (auto &v : r.a) v = s * v;
        return r;
    }

    friend bool operator==(const Tensor2 &x, const Tensor2 &y) { return x.a == y.a && x.constraints == y.constraints; }
};

struct Tensor3 {
    Cube<Scalar, 3> t;

    Tensor3() = default;
    explicit Tensor3(std::size_t n) : t(n) {}

    std::size_t dim() const { return t.dim(); }
    bool is_zero() const { return all_zero(t); }
    Scalar &operator()(std::size_t i, std::size_t j, std::size_t k) { return t(i, j, k); }
    const Scalar &operator()(std::size_t i, std::size_t j, std::size_t k) const { return t(i, j, k); }

    friend bool operator==(const Tensor3 &x, const Tensor3 &y) { return x.t == y.t; }
};

inline Tensor2 sigma(const Tensor2 &r) { return Tensor2(transpose(r.a), r.constraints); }

inline bool is_antisymmetric(const Tensor2 &r)
{
    ConstraintSet cs(r.constraints);
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = i; j < r.dim(); ++j)
            if (!cs.vanishes(r(i, j) + r(j, i))) return false;
    return true;
}

inline bool is_symmetric(const Tensor2 &r)
{
    ConstraintSet cs(r.constraints);
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = i + 1; j < r.dim(); ++j)
            if (!cs.vanishes(r(i, j) - r(j, i))) return false;
    return true;
}

// r12 r13 + r13 r23 - r23 r12 with
//   r12 r13 = sum x_i x_j (x) y_i (x) y_j
//   r13 r23 = sum x_i (x) x_j (x) y_i y_j
//   r23 r12 = sum x_j (x) x_i y_j (x) y_i
// The result is over the unconstrained coefficients of r; apply r's
// constraints to decide whether it vanishes.
inline Tensor3 aybe_residual(const StructureConstants &c, const Tensor2 &r)
{
    const std::size_t n = c.dim();
    if (r.dim() != n) throw Error("tensor dimension does not match algebra dimension");
    Tensor3 t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < n; ++p) {
            if (r(i, p).is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t q = 0; q < n; ++q) {
                    if (r(j, q).is_zero()) continue;
                    const Scalar w = r(i, p) * r(j, q);
                    for (std::size_t k = 0; k < n; ++k) {
                        if (!c(i, j, k).is_zero()) t(k, p, q) += w * c(i, j, k);
                        if (!c(p, q, k).is_zero()) t(i, j, k) += w * c(p, q, k);
                        if (!c(i, q, k).is_zero()) t(j, k, p) -= w * c(i, q, k);
                    }
                }
        }
    return t;
}

inline Tensor3 aybe_residual(const Algebra &a, const Tensor2 &r) { return aybe_residual(a.constants(), r); }

// (M (x) id) r and (id (x) M) r for an operator M on A.
inline Matrix apply_first_factor(const Matrix &m, const Matrix &a) { return m * a; }
inline Matrix apply_second_factor(const Matrix &m, const Matrix &a) { return a * transpose(m); }

enum class PairingSlot { first, second };

// Matrix of r : A* -> A. With the first-slot pairing, r(e_i*) = sum_j a(i, j) e_j,
// so column i of the matrix is row i of the coefficient matrix.
inline Matrix r_map_matrix(const Tensor2 &r, PairingSlot slot = PairingSlot::first)
{
    return slot == PairingSlot::first ? transpose(r.a) : r.a;
}

inline OperatorMatrix r_as_map(const Tensor2 &r, PairingSlot slot = PairingSlot::first)
{
    return {r_map_matrix(r, slot), OperatorKind::left, Element{}};
}

inline Element apply_r(const Tensor2 &r, const Element &dual, PairingSlot slot = PairingSlot::first)
{
    const std::size_t n = r.dim();
    if (dual.dim() != n) throw Error("dual element dimension mismatch");
    Element out = Element::zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (dual[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const Scalar &coef = slot == PairingSlot::first ? r(i, j) : r(j, i);
            if (!coef.is_zero()) out[j] += dual[i] * coef;
        }
    }
    return out;
}

// Entries of a residual that survive the given constraints, as
// (flat index, reduced value).
template <typename CubeT>
std::vector<std::pair<std::size_t, Fraction>> surviving_entries(const CubeT &cube, const ConstraintSet &cs)
{
    std::vector<std::pair<std::size_t, Fraction>> out;
    for (std::size_t i = 0; i < cube.size(); ++i) {
        const auto &v = cube.at_flat(i);
        if (v.is_zero()) continue;
        Fraction f = cs.reduce(v);
        if (!f.is_zero()) out.emplace_back(i, std::move(f));
    }
    return out;
}

} // namespace dendra
