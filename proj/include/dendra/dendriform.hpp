#pragma once

// Dendriform structures (A, <, >) with x * y = x < y + x > y, the D-equation
// and the splitting of an associative product into two halves.

#include "dendra/algebra.hpp"
#include "dendra/system.hpp"
#include "dendra/tensor.hpp"

#include <optional>

namespace dendra {

class DendriformStructure {
public:
    DendriformStructure() = default;
    DendriformStructure(std::string name, std::size_t dim)
        : m_name(std::move(name)), m_basis(default_basis(dim)), m_succ(dim), m_prec(dim)
    {
        if (dim == 0) throw Error("dendriform structure '" + m_name + "' must have positive dimension");
    }
    DendriformStructure(std::string name, StructureConstants succ, StructureConstants prec,
                        std::vector<Constraint> constraints = {})
        : m_name(std::move(name)), m_basis(default_basis(succ.dim())), m_succ(std::move(succ)),
          m_prec(std::move(prec)), m_constraints(std::move(constraints))
    {
        if (m_succ.dim() != m_prec.dim()) throw Error("succ and prec tables differ in dimension");
        if (m_succ.dim() == 0) throw Error("dendriform structure '" + m_name + "' must have positive dimension");
    }

    const std::string &name() const { return m_name; }
    std::size_t dim() const { return m_succ.dim(); }
    const std::vector<std::string> &basis_names() const { return m_basis; }
    const StructureConstants &succ() const { return m_succ; }
    const StructureConstants &prec() const { return m_prec; }
    const std::vector<Constraint> &constraints() const { return m_constraints; }
    const std::optional<Algebra> &parent() const { return m_parent; }

    StructureConstants star() const
    {
        StructureConstants c(dim());
        for (std::size_t i = 0; i < c.size(); ++i) c.at_flat(i) = m_succ.at_flat(i) + m_prec.at_flat(i);
        return c;
    }

    void set_basis_names(std::vector<std::string> names)
    {
        if (names.size() != dim()) throw Error("basis name count does not match dimension");
        if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
            throw Error("basis names must be unique");
        m_basis = std::move(names);
    }
    void set_succ(std::size_t i, std::size_t j, const Element &v) { set(m_succ, i, j, v); }
    void set_prec(std::size_t i, std::size_t j, const Element &v) { set(m_prec, i, j, v); }
    void add_constraint(Constraint c) { m_constraints.push_back(std::move(c)); }
    void set_parent(Algebra a)
    {
        if (a.dim() != dim()) throw Error("parent algebra '" + a.name() + "' has the wrong dimension");
        m_parent = std::move(a);
    }

    // Both tables with the given substitution applied (used for lambda = 0, 1 rows).
    DendriformStructure specialized(const std::map<std::string, Scalar> &bindings) const
    {
        DendriformStructure d = *this;
        for (auto &v : d.m_succ) v = v.substitute(bindings);
        for (auto &v : d.m_prec) v = v.substitute(bindings);
        return d;
    }

    friend bool operator==(const DendriformStructure &a, const DendriformStructure &b)
    {
        return a.m_name == b.m_name && a.m_basis == b.m_basis && a.m_succ == b.m_succ && a.m_prec == b.m_prec
            && a.m_constraints == b.m_constraints && a.m_parent == b.m_parent;
    }

private:
    void set(StructureConstants &c, std::size_t i, std::size_t j, const Element &v)
    {
        if (v.dim() != dim()) throw Error("product value has the wrong dimension");
        for (std::size_t k = 0; k < dim(); ++k) c(i, j, k) = v[k];
    }

    std::string m_name;
    std::vector<std::string> m_basis;
    StructureConstants m_succ, m_prec;
    std::vector<Constraint> m_constraints;
    std::optional<Algebra> m_parent;
};

struct DendriformResiduals {
    Cube<Scalar, 4> prec_prec; // (x<y)<z - x<(y*z)
    Cube<Scalar, 4> succ_prec; // (x>y)<z - x>(y<z)
    Cube<Scalar, 4> succ_succ; // x>(y>z) - (x*y)>z

    bool is_zero() const { return all_zero(prec_prec) && all_zero(succ_prec) && all_zero(succ_succ); }
};

inline DendriformResiduals dendriform_axiom_residuals(const StructureConstants &succ, const StructureConstants &prec)
{
    const std::size_t n = succ.dim();
    StructureConstants star(n);
    for (std::size_t i = 0; i < star.size(); ++i) star.at_flat(i) = succ.at_flat(i) + prec.at_flat(i);
    DendriformResiduals r{Cube<Scalar, 4>(n), Cube<Scalar, 4>(n), Cube<Scalar, 4>(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Element x = Element::basis(n, i), y = Element::basis(n, j), z = Element::basis(n, k);
                const Element r1 = apply_product(prec, apply_product(prec, x, y), z)
                                 - apply_product(prec, x, apply_product(star, y, z));
                const Element r2 = apply_product(prec, apply_product(succ, x, y), z)
                                 - apply_product(succ, x, apply_product(prec, y, z));
                const Element r3 = apply_product(succ, x, apply_product(succ, y, z))
                                 - apply_product(succ, apply_product(star, x, y), z);
                for (std::size_t m = 0; m < n; ++m) {
                    r.prec_prec(i, j, k, m) = r1[m];
                    r.succ_prec(i, j, k, m) = r2[m];
                    r.succ_succ(i, j, k, m) = r3[m];
                }
            }
    return r;
}

inline DendriformResiduals dendriform_axiom_residuals(const DendriformStructure &d)
{
    return dendriform_axiom_residuals(d.succ(), d.prec());
}

inline Algebra sum_algebra(const DendriformStructure &d)
{
    Algebra a(d.name(), d.star(), d.constraints());
    a.set_basis_names(d.basis_names());
    return a;
}

// succ + prec - c(parent); zero iff the splitting is compatible.
inline StructureConstants compatibility_residual(const DendriformStructure &d, const Algebra &parent)
{
    if (parent.dim() != d.dim()) throw Error("parent algebra dimension mismatch");
    StructureConstants s = d.star();
    for (std::size_t i = 0; i < s.size(); ++i) s.at_flat(i) -= parent.constants().at_flat(i);
    return s;
}

// r12 * r13 - r13 < r23 - r23 > r12 with
//   r12 * r13 = sum (x_i * x_j) (x) y_i (x) y_j
//   r13 < r23 = sum x_i (x) x_j (x) (y_i < y_j)
//   r23 > r12 = sum x_j (x) (x_i > y_j) (x) y_i
inline Tensor3 deq_residual(const StructureConstants &succ, const StructureConstants &prec, const Tensor2 &r)
{
    const std::size_t n = succ.dim();
    if (r.dim() != n) throw Error("tensor dimension does not match dendriform dimension");
    Tensor3 t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < n; ++p) {
            if (r(i, p).is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t q = 0; q < n; ++q) {
                    if (r(j, q).is_zero()) continue;
                    const Scalar w = r(i, p) * r(j, q);
                    for (std::size_t k = 0; k < n; ++k) {
                        const Scalar star = succ(i, j, k) + prec(i, j, k);
                        if (!star.is_zero()) t(k, p, q) += w * star;
                        if (!prec(p, q, k).is_zero()) t(i, j, k) -= w * prec(p, q, k);
                        if (!succ(i, q, k).is_zero()) t(j, k, p) -= w * succ(i, q, k);
                    }
                }
        }
    return t;
}

inline Tensor3 deq_residual(const DendriformStructure &d, const Tensor2 &r)
{
    return deq_residual(d.succ(), d.prec(), r);
}

struct DendriformCoboundaries {
    std::vector<Tensor2> succ; // Delta_>(e_m)
    std::vector<Tensor2> prec; // Delta_<(e_m)
};

// Delta_>(x) = (id (x) L(x) - R_<(x) (x) id)(-r)
// Delta_<(x) = (id (x) L_>(x) - R(x) (x) id)(r)
inline DendriformCoboundaries dendriform_coboundaries(const DendriformStructure &d, const Tensor2 &r)
{
    const std::size_t n = d.dim();
    if (r.dim() != n) throw Error("tensor dimension does not match dendriform dimension");
    if (!is_symmetric(r)) throw Error("dendriform coboundaries need a symmetric r");
    const StructureConstants star = d.star();
    const Matrix minus_r = r.scaled(Scalar(-1)).a;
    DendriformCoboundaries out;
    for (std::size_t m = 0; m < n; ++m) {
        const Element x = Element::basis(n, m);
        Matrix s = apply_second_factor(left_operator(star, x), minus_r);
        const Matrix s2 = apply_first_factor(right_operator(d.prec(), x), minus_r);
        for (std::size_t i = 0; i < s.size(); ++i) s.at_flat(i) -= s2.at_flat(i);
        Matrix p = apply_second_factor(left_operator(d.succ(), x), r.a);
        const Matrix p2 = apply_first_factor(right_operator(star, x), r.a);
        for (std::size_t i = 0; i < p.size(); ++i) p.at_flat(i) -= p2.at_flat(i);
        out.succ.emplace_back(std::move(s), r.constraints);
        out.prec.emplace_back(std::move(p), r.constraints);
    }
    return out;
}

// Column j of f holds F(e_j). Checks F(x >1 y) = F(y) <2 F(x) and
// F(x <1 y) = F(y) >2 F(x) on basis pairs, and det F != 0.
inline bool anti_isomorphism_check(const DendriformStructure &d1, const DendriformStructure &d2, const Matrix &f)
{
    const std::size_t n = d1.dim();
    if (d2.dim() != n || f.dim() != n) throw Error("anti-isomorphism check: dimension mismatch");
    ConstraintSet cs(d1.constraints());
    cs.add_all(d2.constraints());
    auto image = [&](const Element &x) {
        Element out = Element::zero(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) out[r] += f(r, c) * x[c];
        return out;
    };
    auto same = [&](const Element &a, const Element &b) {
        for (std::size_t k = 0; k < n; ++k)
            if (!cs.vanishes(a[k] - b[k])) return false;
        return true;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Element x = Element::basis(n, i), y = Element::basis(n, j);
            const Element fx = image(x), fy = image(y);
            if (!same(image(apply_product(d1.succ(), x, y)), apply_product(d2.prec(), fy, fx))) return false;
            if (!same(image(apply_product(d1.prec(), x, y)), apply_product(d2.succ(), fy, fx))) return false;
        }
    return !cs.vanishes(determinant(f));
}

// Unknown names for the splitting ansatz e_i > e_j = sum a^k_ij e_k,
// e_i < e_j = sum b^k_ij e_k. In dimension 1 they are plain a and b.
inline std::string splitting_unknown(char half, std::size_t n, std::size_t i, std::size_t j, std::size_t k)
{
    if (n == 1) return std::string(1, half);
    return std::string(1, half) + std::to_string(i + 1) + std::to_string(j + 1) + "_" + std::to_string(k + 1);
}

struct SplittingSystem {
    // a + b = c followed by the axiom equations in a and b.
    PolySystem raw;
    // Axiom equations after eliminating b = c - a.
    PolySystem eliminated;
};

inline SplittingSystem splitting_system(const Algebra &alg)
{
    const std::size_t n = alg.dim();
    const StructureConstants &c = alg.constants();
    StructureConstants a(n), b(n), b_elim(n);
    SplittingSystem out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const std::string an = splitting_unknown('a', n, i, j, k), bn = splitting_unknown('b', n, i, j, k);
                a(i, j, k) = Scalar::var(an);
                b(i, j, k) = Scalar::var(bn);
                b_elim(i, j, k) = c(i, j, k) - a(i, j, k);
                out.raw.unknowns.push_back(an);
                out.eliminated.unknowns.push_back(an);
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                out.raw.unknowns.push_back(splitting_unknown('b', n, i, j, k));
    for (const auto &con : alg.constraints())
        for (const auto &v : con.expression().variables()) {
            out.raw.parameters.push_back(v);
            out.eliminated.parameters.push_back(v);
        }

    auto collect = [](PolySystem &sys, const DendriformResiduals &res) {
        std::set<std::string> seen;
        const std::pair<const char *, const Cube<Scalar, 4> *> parts[] = {
            {"prec-prec", &res.prec_prec}, {"succ-prec", &res.succ_prec}, {"succ-succ", &res.succ_succ}};
        for (const auto &[label, cube] : parts)
            for (std::size_t pos = 0; pos < cube->size(); ++pos) {
                Scalar eq = normalize_sign(cube->at_flat(pos));
                if (eq.is_zero() || !seen.insert(eq.str()).second) continue;
                const auto idx = cube->index_of(pos);
                sys.add(std::move(eq), std::string(label) + "(" + std::to_string(idx[0] + 1) + ","
                                           + std::to_string(idx[1] + 1) + "," + std::to_string(idx[2] + 1) + ";"
                                           + std::to_string(idx[3] + 1) + ")");
            }
    };

    for (std::size_t pos = 0; pos < a.size(); ++pos) {
        const auto idx = a.index_of(pos);
        out.raw.add(normalize_sign(a.at_flat(pos) + b.at_flat(pos) - c.at_flat(pos)),
                    "compat(" + std::to_string(idx[0] + 1) + "," + std::to_string(idx[1] + 1) + ";"
                        + std::to_string(idx[2] + 1) + ")");
    }
    collect(out.raw, dendriform_axiom_residuals(a, b));
    collect(out.eliminated, dendriform_axiom_residuals(a, b_elim));
    return out;
}

} // namespace dendra
