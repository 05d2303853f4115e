#pragma once

// Finite-dimensional algebras given by structure constants:
// e_i . e_j = sum_k c(i, j, k) e_k.

#include "dendra/cube.hpp"
#include "dendra/scalar.hpp"

#include <set>
#include <string>
#include <vector>

namespace dendra {

inline std::vector<std::string> default_basis(std::size_t n, const std::string &prefix = "e")
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

struct Element {
    std::vector<Scalar> coeffs;

    static Element zero(std::size_t n) { return Element{std::vector<Scalar>(n)}; }
    static Element basis(std::size_t n, std::size_t i)
    {
        Element e = zero(n);
        e.coeffs.at(i) = Scalar(1);
        return e;
    }

    std::size_t dim() const { return coeffs.size(); }
    bool is_zero() const
    {
        for (const auto &c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }
    const Scalar &operator[](std::size_t i) const { return coeffs[i]; }
    Scalar &operator[](std::size_t i) { return coeffs[i]; }

    Element &operator+=(const Element &o)
    {
        check_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    Element &operator-=(const Element &o)
    {
        check_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) coeffs[i] -= o.coeffs[i];
        return *this;
    }
    friend Element operator+(Element a, const Element &b) { return a += b; }
    friend Element operator-(Element a, const Element &b) { return a -= b; }
    friend Element operator-(Element a)
    {
        for (auto &c : a.coeffs) c = -c;
        return a;
    }
    friend Element operator*(const Scalar &s, Element a)
    {
        for (auto &c : a.coeffs) c = s * c;
        return a;
    }
    friend bool operator==(const Element &a, const Element &b) { return a.coeffs == b.coeffs; }

private:
    void check_dim(const Element &o) const
    {
        if (o.dim() != dim()) throw Error("element dimension mismatch");
    }
};

class Algebra {
public:
    Algebra() = default;
    Algebra(std::string name, std::size_t dim) : Algebra(std::move(name), StructureConstants(dim)) {}
    Algebra(std::string name, StructureConstants c, std::vector<Constraint> constraints = {})
        : m_name(std::move(name)), m_basis(default_basis(c.dim())), m_c(std::move(c)),
          m_constraints(std::move(constraints))
    {
        if (m_c.dim() == 0) throw Error("algebra '" + m_name + "' must have positive dimension");
    }

    const std::string &name() const { return m_name; }
    std::size_t dim() const { return m_c.dim(); }
    const std::vector<std::string> &basis_names() const { return m_basis; }
    const StructureConstants &constants() const { return m_c; }
    const std::vector<Constraint> &constraints() const { return m_constraints; }

    void set_basis_names(std::vector<std::string> names)
    {
        if (names.size() != dim()) throw Error("basis name count does not match dimension");
        if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
            throw Error("basis names must be unique");
        m_basis = std::move(names);
    }
    void set_product(std::size_t i, std::size_t j, const Element &value)
    {
        check(value);
        for (std::size_t k = 0; k < dim(); ++k) m_c(i, j, k) = value[k];
    }
    void add_constraint(Constraint c) { m_constraints.push_back(std::move(c)); }

    Element basis(std::size_t i) const { return Element::basis(dim(), i); }
    Element zero() const { return Element::zero(dim()); }

    void check(const Element &x) const
    {
        if (x.dim() != dim()) throw Error("element of dimension " + std::to_string(x.dim()) + " used in algebra '"
                                          + m_name + "' of dimension " + std::to_string(dim()));
    }

    friend bool operator==(const Algebra &a, const Algebra &b)
    {
        return a.m_name == b.m_name && a.m_basis == b.m_basis && a.m_c == b.m_c && a.m_constraints == b.m_constraints;
    }

private:
    std::string m_name;
    std::vector<std::string> m_basis;
    StructureConstants m_c;
    std::vector<Constraint> m_constraints;
};

// Bilinear extension of a product table.
inline Element apply_product(const StructureConstants &c, const Element &x, const Element &y)
{
    const std::size_t n = c.dim();
    if (x.dim() != n || y.dim() != n) throw Error("dimension mismatch in product");
    Element out = Element::zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            const Scalar xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (!c(i, j, k).is_zero()) out[k] += xy * c(i, j, k);
        }
    }
    return out;
}

inline Element multiply(const Algebra &a, const Element &x, const Element &y)
{
    a.check(x);
    a.check(y);
    return apply_product(a.constants(), x, y);
}

// Entry (i, j, k, m): coefficient of e_m in (e_i e_j) e_k - e_i (e_j e_k).
inline Cube<Scalar, 4> associativity_residual(const StructureConstants &c)
{
    const std::size_t n = c.dim();
    Cube<Scalar, 4> res(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Element ei = Element::basis(n, i), ej = Element::basis(n, j), ek = Element::basis(n, k);
                const Element lhs = apply_product(c, apply_product(c, ei, ej), ek);
                const Element rhs = apply_product(c, ei, apply_product(c, ej, ek));
                for (std::size_t m = 0; m < n; ++m) res(i, j, k, m) = lhs[m] - rhs[m];
            }
    return res;
}

inline Cube<Scalar, 4> associativity_residual(const Algebra &a) { return associativity_residual(a.constants()); }

enum class OperatorKind { left, right, dual_left, dual_right };

struct OperatorMatrix {
    Matrix entries;
    OperatorKind meaning = OperatorKind::left;
    Element defining;

    Element apply(const Element &v) const
    {
        const std::size_t n = entries.dim();
        if (v.dim() != n) throw Error("operator applied to element of wrong dimension");
        Element out = Element::zero(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t col = 0; col < n; ++col)
                if (!entries(r, col).is_zero() && !v[col].is_zero()) out[r] += entries(r, col) * v[col];
        return out;
    }
};

// Column j holds the coefficients of x . e_j.
inline Matrix left_operator(const StructureConstants &c, const Element &x)
{
    const std::size_t n = c.dim();
    Matrix m(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Element col = apply_product(c, x, Element::basis(n, j));
        for (std::size_t r = 0; r < n; ++r) m(r, j) = col[r];
    }
    return m;
}

// Column j holds the coefficients of e_j . x.
inline Matrix right_operator(const StructureConstants &c, const Element &x)
{
    const std::size_t n = c.dim();
    Matrix m(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Element col = apply_product(c, Element::basis(n, j), x);
        for (std::size_t r = 0; r < n; ++r) m(r, j) = col[r];
    }
    return m;
}

inline OperatorMatrix left_matrix(const Algebra &a, const Element &x)
{
    a.check(x);
    return {left_operator(a.constants(), x), OperatorKind::left, x};
}

inline OperatorMatrix right_matrix(const Algebra &a, const Element &x)
{
    a.check(x);
    return {right_operator(a.constants(), x), OperatorKind::right, x};
}

// <L*(x) u, v> = <u, L(x) v>: in the dual basis the matrix is the transpose.
inline OperatorMatrix dual_left_matrix(const Algebra &a, const Element &x)
{
    a.check(x);
    return {transpose(left_operator(a.constants(), x)), OperatorKind::dual_left, x};
}

inline OperatorMatrix dual_right_matrix(const Algebra &a, const Element &x)
{
    a.check(x);
    return {transpose(right_operator(a.constants(), x)), OperatorKind::dual_right, x};
}

inline std::string render_element(const Element &x, const std::vector<std::string> &names)
{
    std::string out;
    for (std::size_t k = 0; k < x.dim(); ++k) {
        if (x[k].is_zero()) continue;
        std::string coef = x[k].str();
        std::string term;
        if (x[k] == Scalar(1)) term = names[k];
        else if (x[k] == Scalar(-1)) term = "-" + names[k];
        else if (x[k].terms().size() == 1) term = coef + "*" + names[k];
        else term = "(" + coef + ")*" + names[k];
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace dendra
