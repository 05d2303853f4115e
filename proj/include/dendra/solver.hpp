#pragma once

// Polynomial systems from the AYBE and the D-equation, symbolic checks of
// solution families and exhaustive scans over small rational grids.

#include "dendra/dendriform.hpp"
#include "dendra/system.hpp"

#include <functional>

namespace dendra {

namespace detail {

inline std::vector<std::string> variables_of(const StructureConstants &c)
{
    std::set<std::string> vars;
    for (const auto &v : c)
        for (const auto &name : v.variables()) vars.insert(name);
    return {vars.begin(), vars.end()};
}

inline std::vector<std::string> general_unknowns(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.push_back(Tensor2::coefficient_name("a", i, j));
    return out;
}

inline void add_residual(PolySystem &sys, const Tensor3 &t)
{
    for (std::size_t pos = 0; pos < t.t.size(); ++pos)
        if (!t.t.at_flat(pos).is_zero()) sys.add(t.t.at_flat(pos), index_text(t.t.index_of(pos)));
}

} // namespace detail

// Unknowns a11 .. ann; one equation per nonzero entry of the residual for
// the general r, in index order.
inline PolySystem extract_aybe_system(const Algebra &alg)
{
    PolySystem sys;
    sys.unknowns = detail::general_unknowns(alg.dim());
    sys.parameters = detail::variables_of(alg.constants());
    sys.side_conditions = alg.constraints();
    detail::add_residual(sys, aybe_residual(alg, Tensor2::general(alg.dim())));
    return sys;
}

inline PolySystem extract_deq_system(const DendriformStructure &d)
{
    PolySystem sys;
    sys.unknowns = detail::general_unknowns(d.dim());
    std::set<std::string> params;
    for (const auto &v : detail::variables_of(d.succ())) params.insert(v);
    for (const auto &v : detail::variables_of(d.prec())) params.insert(v);
    sys.parameters.assign(params.begin(), params.end());
    sys.side_conditions = d.constraints();
    detail::add_residual(sys, deq_residual(d, Tensor2::general(d.dim())));
    return sys;
}

// Equations that survive substituting the family and then reducing through
// the equality constraints, as (equation index, reduced value).
inline std::vector<std::pair<std::size_t, Fraction>> family_residuals(const PolySystem &sys,
                                                                      const std::map<std::string, Scalar> &family,
                                                                      const std::vector<Constraint> &equalities)
{
    for (const auto &u : sys.unknowns)
        if (!family.count(u)) throw Error("family leaves unknown '" + u + "' unbound");
    ConstraintSet cs;
    for (const auto &c : sys.side_conditions)
        if (c.kind() == ConstraintKind::equals_zero) cs.add(c);
    for (const auto &c : equalities)
        if (c.kind() == ConstraintKind::equals_zero) cs.add(c);
    std::vector<std::pair<std::size_t, Fraction>> out;
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        Fraction f = cs.reduce(sys.equations[i].substitute(family));
        if (!f.is_zero()) out.emplace_back(i, std::move(f));
    }
    return out;
}

inline bool verify_family(const PolySystem &sys, const std::map<std::string, Scalar> &family,
                          const std::vector<Constraint> &equalities)
{
    return family_residuals(sys, family, equalities).empty();
}

// The family of a tensor pattern: a_ij -> entry (i, j).
inline std::map<std::string, Scalar> family_of(const Tensor2 &r)
{
    std::map<std::string, Scalar> fam;
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = 0; j < r.dim(); ++j) fam[Tensor2::coefficient_name("a", i, j)] = r(i, j);
    return fam;
}

struct GridPoint {
    std::map<std::string, Rational> assignment;
    bool satisfies = false;
};

struct GridScanResult {
    std::vector<std::string> unknowns;
    std::vector<Rational> grid_spec;
    std::vector<GridPoint> points;

    std::size_t satisfying_count() const
    {
        std::size_t k = 0;
        for (const auto &p : points) k += p.satisfies;
        return k;
    }
};

inline constexpr std::size_t grid_limit = 1'000'000;

// Evaluates a constraint side at a point; nullopt if a denominator vanishes.
inline std::optional<Rational> evaluate_fraction(const Fraction &f, const std::map<std::string, Rational> &point)
{
    const Rational den = f.den().evaluate(point);
    if (den.is_zero()) return std::nullopt;
    return f.num().evaluate(point) / den;
}

inline bool constraint_holds(const Constraint &c, const std::map<std::string, Rational> &point)
{
    const auto lhs = evaluate_fraction(c.lhs(), point), rhs = evaluate_fraction(c.rhs(), point);
    if (!lhs || !rhs) return false;
    if (c.kind() == ConstraintKind::nonzero) return !lhs->is_zero();
    return *lhs == *rhs;
}

// Every point of values^unknowns in lexicographic order (first unknown
// slowest). Parameters must be fixed by `fixed`.
inline GridScanResult grid_scan(const PolySystem &sys, const std::vector<Rational> &values,
                                const std::map<std::string, Rational> &fixed = {})
{
    for (const auto &p : sys.parameters)
        if (!fixed.count(p)) throw Error("parameter '" + p + "' needs a fixed value for a grid scan");
    const std::size_t k = sys.unknowns.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (values.empty()) { total = 0; break; }
        if (total > grid_limit / values.size()) throw Error("grid has more than 10^6 points");
        total *= values.size();
    }
    GridScanResult res{sys.unknowns, values, {}};
    res.points.reserve(total);
    std::vector<std::size_t> digit(k, 0);
    for (std::size_t count = 0; count < total; ++count) {
        GridPoint pt;
        pt.assignment = fixed;
        for (std::size_t i = 0; i < k; ++i) pt.assignment[sys.unknowns[i]] = values[digit[i]];
        bool ok = true;
        for (const auto &eq : sys.equations)
            if (!eq.evaluate(pt.assignment).is_zero()) { ok = false; break; }
        for (const auto &c : sys.side_conditions)
            if (ok && !constraint_holds(c, pt.assignment)) ok = false;
        pt.satisfies = ok;
        for (const auto &f : fixed) pt.assignment.erase(f.first);
        res.points.push_back(std::move(pt));
        for (std::size_t i = k; i-- > 0;) {
            if (++digit[i] < values.size()) break;
            digit[i] = 0;
        }
    }
    return res;
}

// Whether a numeric r lies in a family: bare-variable entries are read off
// the point, every other entry must then agree, and all constraints of the
// family must hold.
inline bool family_contains(const Tensor2 &family, const Matrix &point)
{
    const std::size_t n = family.dim();
    std::map<std::string, Rational> values;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (auto v = family(i, j).as_variable()) {
                const Rational x = point(i, j).constant_value();
                auto [it, fresh] = values.emplace(*v, x);
                if (!fresh && !(it->second == x)) return false;
            }
    for (const auto &c : family.constraints)
        for (const auto &side : {c.lhs().num(), c.lhs().den(), c.rhs().num(), c.rhs().den()})
            for (const auto &v : side.variables())
                if (!values.count(v)) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto &v : family(i, j).variables())
                if (!values.count(v)) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(family(i, j).evaluate(values) == point(i, j).constant_value())) return false;
    for (const auto &c : family.constraints)
        if (!constraint_holds(c, values)) return false;
    return true;
}

inline Matrix point_matrix(const std::map<std::string, Rational> &assignment, std::size_t n)
{
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(assignment.at(Tensor2::coefficient_name("a", i, j)));
    return m;
}

inline std::vector<Rational> integer_range(long lo, long hi)
{
    std::vector<Rational> v;
    for (long x = lo; x <= hi; ++x) v.emplace_back(x);
    return v;
}

} // namespace dendra
