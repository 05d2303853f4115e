#pragma once

// Double constructions on A + A* with basis (e1..en, f1..fn), fi = ei*.
// Frobenius kind: an associative product with the symmetric pairing B.
// Connes kind: the * product of a dendriform double with the antisymmetric
// pairing omega.

#include "dendra/check.hpp"
#include "dendra/dendriform.hpp"

namespace dendra {

class PreconditionError : public Error {
public:
    using Error::Error;
};

enum class DoubleKind { frobenius, connes };
enum class FormFlavor { symmetric, antisymmetric };

struct BilinearFormMatrix {
    Matrix gram;
    FormFlavor flavor = FormFlavor::symmetric;

    Scalar operator()(const Element &x, const Element &y) const
    {
        Scalar s;
        for (std::size_t i = 0; i < gram.dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < gram.dim(); ++j)
                if (!gram(i, j).is_zero() && !y[j].is_zero()) s += x[i] * gram(i, j) * y[j];
        }
        return s;
    }
};

// [[0, I], [I, 0]]
inline BilinearFormMatrix natural_symmetric_form(std::size_t n)
{
    BilinearFormMatrix b{Matrix(2 * n), FormFlavor::symmetric};
    for (std::size_t i = 0; i < n; ++i) b.gram(i, n + i) = b.gram(n + i, i) = Scalar(1);
    return b;
}

// [[0, -I], [I, 0]]: omega(x + a*, y + b*) = -<x, b*> + <a*, y>
inline BilinearFormMatrix natural_antisymmetric_form(std::size_t n)
{
    BilinearFormMatrix w{Matrix(2 * n), FormFlavor::antisymmetric};
    for (std::size_t i = 0; i < n; ++i) {
        w.gram(i, n + i) = Scalar(-1);
        w.gram(n + i, i) = Scalar(1);
    }
    return w;
}

struct DoubleAlgebra {
    DoubleKind kind = DoubleKind::frobenius;
    std::string base_name;
    std::size_t n = 0;
    StructureConstants product;
    // Connes kind only: the two halves of the product.
    std::optional<StructureConstants> succ, prec;
    std::vector<Constraint> constraints;

    std::size_t dim() const { return 2 * n; }
    std::vector<std::string> basis_names() const
    {
        auto names = default_basis(n, "e");
        for (auto &f : default_basis(n, "f")) names.push_back(f);
        return names;
    }
    Algebra as_algebra() const { return Algebra(base_name + "+dual", product, constraints); }
};

namespace detail {

// transpose(op) u: the dual action of an operator on A*.
inline Element dual_action(const Matrix &op, const Element &u)
{
    return OperatorMatrix{transpose(op), OperatorKind::dual_left, Element{}}.apply(u);
}

inline void store(StructureConstants &t, std::size_t n, std::size_t row, std::size_t col, const Element &a_part,
                  const Element &dual_part)
{
    for (std::size_t k = 0; k < n; ++k) {
        t(row, col, k) = a_part[k];
        t(row, col, n + k) = dual_part[k];
    }
}

inline std::vector<Constraint> merged(const std::vector<Constraint> &a, const std::vector<Constraint> &b)
{
    std::vector<Constraint> out = a;
    for (const auto &c : b)
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    return out;
}

} // namespace detail

// a* * b* = R*(r(a*)) b* + L*(r(b*)) a*
// x * a*  = x r(a*) - r(R*(x) a*) + R*(x) a*
// a* * x  = r(a*) x - r(L*(x) a*) + L*(x) a*
// No preconditions are checked.
inline DoubleAlgebra frobenius_double_unchecked(const Algebra &alg, const Tensor2 &r,
                                                PairingSlot slot = PairingSlot::first)
{
    const std::size_t n = alg.dim();
    if (r.dim() != n) throw Error("tensor dimension does not match algebra dimension");
    const StructureConstants &c = alg.constants();
    auto rmap = [&](const Element &u) { return apply_r(r, u, slot); };
    DoubleAlgebra d;
    d.kind = DoubleKind::frobenius;
    d.base_name = alg.name();
    d.n = n;
    d.product = StructureConstants(2 * n);
    d.constraints = detail::merged(alg.constraints(), r.constraints);
    const Element zero = Element::zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Element ei = Element::basis(n, i), ej = Element::basis(n, j);
            detail::store(d.product, n, i, j, apply_product(c, ei, ej), zero);

            const Element rs = detail::dual_action(right_operator(c, ei), ej);
            detail::store(d.product, n, i, n + j, apply_product(c, ei, rmap(ej)) - rmap(rs), rs);

            const Element ls = detail::dual_action(left_operator(c, ej), ei);
            detail::store(d.product, n, n + i, j, apply_product(c, rmap(ei), ej) - rmap(ls), ls);

            const Element ff = detail::dual_action(right_operator(c, rmap(ei)), ej)
                             + detail::dual_action(left_operator(c, rmap(ej)), ei);
            detail::store(d.product, n, n + i, n + j, zero, ff);
        }
    return d;
}

inline void require_vanishing(const std::string &what, const auto &cube, const ConstraintSet &cs)
{
    const CheckResult res = residual_check(what, cube, cs);
    if (!res.pass) throw PreconditionError(what + " fails: " + res.detail);
}

inline std::pair<DoubleAlgebra, BilinearFormMatrix> frobenius_double(const Algebra &alg, const Tensor2 &r)
{
    ConstraintSet cs(detail::merged(alg.constraints(), r.constraints));
    require_vanishing("associativity", associativity_residual(alg), cs);
    if (!is_antisymmetric(r)) throw PreconditionError("r is not antisymmetric");
    require_vanishing("aybe-residual", aybe_residual(alg, r).t, cs);
    return {frobenius_double_unchecked(alg, r), natural_symmetric_form(alg.dim())};
}

// The nine products of the Connes double, assembled into the >, < and *
// tables on A + A*. No preconditions are checked.
inline DoubleAlgebra connes_double_unchecked(const DendriformStructure &dd, const Tensor2 &r,
                                             PairingSlot slot = PairingSlot::first)
{
    const std::size_t n = dd.dim();
    if (r.dim() != n) throw Error("tensor dimension does not match dendriform dimension");
    const StructureConstants &s = dd.succ(), &p = dd.prec();
    const StructureConstants st = dd.star();
    // r enters through r_succ = -r
    auto rmap = [&](const Element &u) { return Element::zero(n) - apply_r(r, u, slot); };
    auto dual = [](const Matrix &op, const Element &u) { return detail::dual_action(op, u); };

    DoubleAlgebra d;
    d.kind = DoubleKind::connes;
    d.base_name = dd.name();
    d.n = n;
    d.product = StructureConstants(2 * n);
    StructureConstants ts(2 * n), tp(2 * n);
    d.constraints = detail::merged(dd.constraints(), r.constraints);
    const Element zero = Element::zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Element ei = Element::basis(n, i), ej = Element::basis(n, j);
            detail::store(ts, n, i, j, apply_product(s, ei, ej), zero);
            detail::store(tp, n, i, j, apply_product(p, ei, ej), zero);
            detail::store(d.product, n, i, j, apply_product(st, ei, ej), zero);

            // x = ei, a* = fj
            {
                const Element &x = ei, &a = ej;
                const Element rr = dual(right_operator(st, x), a);
                const Element rs = dual(right_operator(s, x), a);
                const Element rp = dual(right_operator(p, x), a);
                detail::store(ts, n, i, n + j, apply_product(s, x, rmap(a)) - rmap(rr), rr);
                detail::store(tp, n, i, n + j, apply_product(p, x, rmap(a)) + rmap(rs), -rs);
                detail::store(d.product, n, i, n + j, apply_product(st, x, rmap(a)) - rmap(rp), rp);
            }
            // a* = fi, x = ej
            {
                const Element &a = ei, &x = ej;
                const Element lr = dual(left_operator(st, x), a);
                const Element ls = dual(left_operator(s, x), a);
                const Element lp = dual(left_operator(p, x), a);
                detail::store(ts, n, n + i, j, apply_product(s, rmap(a), x) + rmap(lp), -lp);
                detail::store(tp, n, n + i, j, apply_product(p, rmap(a), x) - rmap(lr), lr);
                detail::store(d.product, n, n + i, j, apply_product(st, rmap(a), x) - rmap(ls), ls);
            }
            // a* = fi, b* = fj
            {
                const Element ra = rmap(ei), rb = rmap(ej);
                detail::store(tp, n, n + i, n + j, zero,
                              dual(left_operator(st, rb), ei) - dual(right_operator(s, ra), ej));
                detail::store(ts, n, n + i, n + j, zero,
                              dual(right_operator(st, ra), ej) - dual(left_operator(p, rb), ei));
                detail::store(d.product, n, n + i, n + j, zero,
                              dual(right_operator(p, ra), ej) + dual(left_operator(s, rb), ei));
            }
        }
    d.succ = std::move(ts);
    d.prec = std::move(tp);
    return d;
}

inline std::pair<DoubleAlgebra, BilinearFormMatrix> connes_double(const DendriformStructure &dd, const Tensor2 &r)
{
    ConstraintSet cs(detail::merged(dd.constraints(), r.constraints));
    const DendriformResiduals ax = dendriform_axiom_residuals(dd);
    require_vanishing("dendriform (x<y)<z", ax.prec_prec, cs);
    require_vanishing("dendriform (x>y)<z", ax.succ_prec, cs);
    require_vanishing("dendriform x>(y>z)", ax.succ_succ, cs);
    if (!is_symmetric(r)) throw PreconditionError("r is not symmetric");
    require_vanishing("deq-residual", deq_residual(dd, r).t, cs);
    return {connes_double_unchecked(dd, r), natural_antisymmetric_form(dd.dim())};
}

// B(u v, w) - B(u, v w) over basis triples.
inline Cube<Scalar, 3> invariance_residual(const DoubleAlgebra &d, const BilinearFormMatrix &b)
{
    const std::size_t m = d.dim();
    if (b.gram.dim() != m) throw Error("form dimension does not match double dimension");
    Cube<Scalar, 3> res(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                const Element u = Element::basis(m, i), v = Element::basis(m, j), w = Element::basis(m, k);
                res(i, j, k) = b(apply_product(d.product, u, v), w) - b(u, apply_product(d.product, v, w));
            }
    return res;
}

// omega(u v, w) + omega(v w, u) + omega(w u, v) over basis triples.
inline Cube<Scalar, 3> connes_cocycle_residual(const DoubleAlgebra &d, const BilinearFormMatrix &w)
{
    const std::size_t m = d.dim();
    if (w.gram.dim() != m) throw Error("form dimension does not match double dimension");
    Cube<Scalar, 3> res(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                const Element u = Element::basis(m, i), v = Element::basis(m, j), x = Element::basis(m, k);
                res(i, j, k) = w(apply_product(d.product, u, v), x) + w(apply_product(d.product, v, x), u)
                             + w(apply_product(d.product, x, u), v);
            }
    return res;
}

inline bool nondegeneracy_check(const BilinearFormMatrix &form) { return !determinant(form.gram).is_zero(); }

inline bool gram_is(const BilinearFormMatrix &form, const BilinearFormMatrix &expected)
{
    return form.flavor == expected.flavor && form.gram == expected.gram;
}

// Components that leave a block: A-components of A* A* products and
// A*-components of A A products. Zero iff both are subalgebras.
inline Cube<Scalar, 3> closure_residual(const DoubleAlgebra &d)
{
    const std::size_t n = d.n;
    Cube<Scalar, 3> res(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                res(i, j, n + k) = d.product(i, j, n + k);
                res(n + i, n + j, k) = d.product(n + i, n + j, k);
            }
    return res;
}

// The e-block of the double minus the base product.
inline StructureConstants base_block_residual(const DoubleAlgebra &d, const StructureConstants &base)
{
    StructureConstants res(d.n);
    for (std::size_t i = 0; i < d.n; ++i)
        for (std::size_t j = 0; j < d.n; ++j)
            for (std::size_t k = 0; k < d.n; ++k) res(i, j, k) = d.product(i, j, k) - base(i, j, k);
    return res;
}

// * minus (> + <) on the given slice of the Connes double; dual_only limits it
// to products of two dual basis elements.
inline Cube<Scalar, 3> split_sum_residual(const DoubleAlgebra &d, bool dual_only)
{
    if (!d.succ || !d.prec) throw Error("split_sum_residual needs a Connes double");
    const std::size_t m = d.dim(), lo = dual_only ? d.n : 0;
    Cube<Scalar, 3> res(m);
    for (std::size_t i = lo; i < m; ++i)
        for (std::size_t j = lo; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) res(i, j, k) = d.product(i, j, k) - (*d.succ)(i, j, k) - (*d.prec)(i, j, k);
    return res;
}

// Delta(x) = (id (x) L(x) - R(x) (x) id) r, one Tensor2 per basis element.
inline std::vector<Tensor2> bialgebra_coboundary_unchecked(const Algebra &alg, const Tensor2 &r)
{
    const std::size_t n = alg.dim();
    if (r.dim() != n) throw Error("tensor dimension does not match algebra dimension");
    std::vector<Tensor2> delta;
    for (std::size_t m = 0; m < n; ++m) {
        const Element x = Element::basis(n, m);
        Matrix t = apply_second_factor(left_operator(alg.constants(), x), r.a);
        const Matrix u = apply_first_factor(right_operator(alg.constants(), x), r.a);
        for (std::size_t i = 0; i < t.size(); ++i) t.at_flat(i) -= u.at_flat(i);
        delta.emplace_back(std::move(t), r.constraints);
    }
    return delta;
}

inline std::vector<Tensor2> bialgebra_coboundary(const Algebra &alg, const Tensor2 &r)
{
    if (!is_antisymmetric(r)) throw PreconditionError("r is not antisymmetric");
    return bialgebra_coboundary_unchecked(alg, r);
}

struct BialgebraResiduals {
    // (x, y, p, q): coefficient of e_p (x) e_q in
    //   Delta(xy) - (id (x) L(x)) Delta(y) - (R(y) (x) id) Delta(x)
    Cube<Scalar, 4> derivation;
    //   (L(y) (x) id - id (x) R(y)) Delta(x) + sigma[(L(x) (x) id - id (x) R(x)) Delta(y)]
    Cube<Scalar, 4> exchange;
    // Associativity of the product on A* dual to Delta.
    Cube<Scalar, 4> dual_associativity;
};

inline BialgebraResiduals bialgebra_residuals(const Algebra &alg, const std::vector<Tensor2> &delta)
{
    const std::size_t n = alg.dim();
    if (delta.size() != n) throw Error("coproduct must be given on every basis element");
    const StructureConstants &c = alg.constants();
    BialgebraResiduals out{Cube<Scalar, 4>(n), Cube<Scalar, 4>(n), {}};
    std::vector<Matrix> lm, rm;
    for (std::size_t m = 0; m < n; ++m) {
        lm.push_back(left_operator(c, Element::basis(n, m)));
        rm.push_back(right_operator(c, Element::basis(n, m)));
    }
    auto minus = [](Matrix a, const Matrix &b) {
        for (std::size_t i = 0; i < a.size(); ++i) a.at_flat(i) -= b.at_flat(i);
        return a;
    };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Matrix dxy(n);
            for (std::size_t k = 0; k < n; ++k)
                if (!c(x, y, k).is_zero())
                    for (std::size_t i = 0; i < dxy.size(); ++i) dxy.at_flat(i) += c(x, y, k) * delta[k].a.at_flat(i);
            const Matrix r1 = minus(minus(dxy, apply_second_factor(lm[x], delta[y].a)),
                                    apply_first_factor(rm[y], delta[x].a));
            const Matrix first = minus(apply_first_factor(lm[y], delta[x].a), apply_second_factor(rm[y], delta[x].a));
            const Matrix second = transpose(
                minus(apply_first_factor(lm[x], delta[y].a), apply_second_factor(rm[x], delta[y].a)));
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    out.derivation(x, y, p, q) = r1(p, q);
                    out.exchange(x, y, p, q) = first(p, q) + second(p, q);
                }
        }
    StructureConstants dual(n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) dual(p, q, m) = delta[m](p, q);
    out.dual_associativity = associativity_residual(dual);
    return out;
}

// Basis product u v of the double, rendered with e/f names.
inline std::string render_double_product(const DoubleAlgebra &d, std::size_t u, std::size_t v)
{
    const std::size_t m = d.dim();
    return render_element(apply_product(d.product, Element::basis(m, u), Element::basis(m, v)), d.basis_names());
}

} // namespace dendra
