#pragma once

// Exact coefficient arithmetic: rationals, multivariate polynomials over
// named indeterminates, unreduced rational functions and the side-condition
// bookkeeping that families of structure constants carry around.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dendra {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rational

class Rational {
public:
    Rational() = default;
    Rational(long v) : m_value(v) {}
    Rational(int v) : m_value(v) {}
    Rational(long num, long den)
    {
        if (den == 0) throw Error("rational with zero denominator");
        m_value = mpq_class(num, den);
        m_value.canonicalize();
    }
    explicit Rational(const mpq_class &v) : m_value(v) { m_value.canonicalize(); }

    // Accepts "p" or "p/q" with optional sign.
    static Rational parse(std::string_view text)
    {
        mpq_class q;
        if (q.set_str(std::string(text), 10) != 0) throw Error("malformed rational '" + std::string(text) + "'");
        if (q.get_den() == 0) throw Error("rational with zero denominator");
        return Rational(q);
    }

    bool is_zero() const { return sgn(m_value) == 0; }
    bool is_one() const { return m_value == 1; }
    bool is_integer() const { return m_value.get_den() == 1; }
    int sign() const { return sgn(m_value); }
    std::string numerator() const { return m_value.get_num().get_str(); }
    std::string denominator() const { return m_value.get_den().get_str(); }
    const mpq_class &raw() const { return m_value; }

    Rational operator-() const { return Rational(mpq_class(-m_value)); }
    Rational &operator+=(const Rational &o) { m_value += o.m_value; return *this; }
    Rational &operator-=(const Rational &o) { m_value -= o.m_value; return *this; }
    Rational &operator*=(const Rational &o) { m_value *= o.m_value; return *this; }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) throw Error("division by zero rational");
        m_value /= o.m_value;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend bool operator==(const Rational &a, const Rational &b) { return a.m_value == b.m_value; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.m_value < b.m_value; }

    Rational pow(unsigned e) const
    {
        Rational r(1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    std::string str() const { return m_value.get_str(); }
    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

private:
    mpq_class m_value{0};
};

// ---------------------------------------------------------------------------
// Monomial: product of named indeterminates with positive exponents, kept
// sorted by name.

class Monomial {
public:
    using Factor = std::pair<std::string, unsigned>;

    Monomial() = default;
    explicit Monomial(std::string var, unsigned exp = 1)
    {
        if (exp > 0) m_factors.emplace_back(std::move(var), exp);
    }

    const std::vector<Factor> &factors() const { return m_factors; }
    bool is_one() const { return m_factors.empty(); }

    unsigned degree() const
    {
        unsigned d = 0;
        for (const auto &f : m_factors) d += f.second;
        return d;
    }

    unsigned degree_in(std::string_view var) const
    {
        for (const auto &f : m_factors)
            if (f.first == var) return f.second;
        return 0;
    }

    Monomial without(std::string_view var) const
    {
        Monomial m;
        for (const auto &f : m_factors)
            if (f.first != var) m.m_factors.push_back(f);
        return m;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial out;
        auto i = a.m_factors.begin(), j = b.m_factors.begin();
        while (i != a.m_factors.end() || j != b.m_factors.end()) {
            if (j == b.m_factors.end() || (i != a.m_factors.end() && i->first < j->first)) {
                out.m_factors.push_back(*i++);
            } else if (i == a.m_factors.end() || j->first < i->first) {
                out.m_factors.push_back(*j++);
            } else {
                out.m_factors.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return out;
    }

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.m_factors == b.m_factors; }

    // Graded lexicographic order with indeterminates ranked by name
    // (a11 > a12 > ... in the lex part).
    friend bool grlex_less(const Monomial &a, const Monomial &b)
    {
        const unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        auto i = a.m_factors.begin(), j = b.m_factors.begin();
        for (; i != a.m_factors.end() && j != b.m_factors.end(); ++i, ++j) {
            if (i->first != j->first) return j->first < i->first;
            if (i->second != j->second) return i->second < j->second;
        }
        return i == a.m_factors.end() && j != b.m_factors.end();
    }

    std::string str() const
    {
        std::string out;
        for (const auto &[name, e] : m_factors) {
            if (!out.empty()) out += '*';
            out += name;
            if (e > 1) out += '^' + std::to_string(e);
        }
        return out;
    }

private:
    std::vector<Factor> m_factors;
};

struct GrlexDescending {
    bool operator()(const Monomial &a, const Monomial &b) const { return grlex_less(b, a); }
};

// ---------------------------------------------------------------------------
// Scalar: a polynomial with rational coefficients. Terms are stored in
// descending graded-lex order and never carry a zero coefficient, so equal
// polynomials have identical term maps.

class Scalar {
public:
    using Terms = std::map<Monomial, Rational, GrlexDescending>;

    Scalar() = default;
    Scalar(int c) : Scalar(Rational(c)) {}
    Scalar(long c) : Scalar(Rational(c)) {}
    Scalar(const Rational &c)
    {
        if (!c.is_zero()) m_terms.emplace(Monomial(), c);
    }

    static Scalar var(const std::string &name, unsigned exp = 1)
    {
        Scalar s;
        s.m_terms.emplace(Monomial(name, exp), Rational(1));
        return s;
    }

    static Scalar term(const Rational &c, const Monomial &m)
    {
        Scalar s;
        if (!c.is_zero()) s.m_terms.emplace(m, c);
        return s;
    }

    const Terms &terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }
    bool is_constant() const { return m_terms.empty() || (m_terms.size() == 1 && m_terms.begin()->first.is_one()); }

    Rational constant_value() const
    {
        if (!is_constant()) throw Error("polynomial '" + str() + "' is not a constant");
        return m_terms.empty() ? Rational(0) : m_terms.begin()->second;
    }

    // The single indeterminate this polynomial equals, if it is exactly one.
    std::optional<std::string> as_variable() const
    {
        if (m_terms.size() != 1) return std::nullopt;
        const auto &[m, c] = *m_terms.begin();
        if (!c.is_one() || m.factors().size() != 1 || m.factors()[0].second != 1) return std::nullopt;
        return m.factors()[0].first;
    }

    unsigned degree() const { return m_terms.empty() ? 0 : m_terms.begin()->first.degree(); }

    unsigned degree_in(std::string_view var) const
    {
        unsigned d = 0;
        for (const auto &[m, c] : m_terms) d = std::max(d, m.degree_in(var));
        return d;
    }

    std::set<std::string> variables() const
    {
        std::set<std::string> out;
        for (const auto &[m, c] : m_terms)
            for (const auto &f : m.factors()) out.insert(f.first);
        return out;
    }

    // Coefficient of var^k, as a polynomial free of var.
    Scalar coefficient_of(std::string_view var, unsigned k) const
    {
        Scalar out;
        for (const auto &[m, c] : m_terms)
            if (m.degree_in(var) == k) out.add_term(m.without(var), c);
        return out;
    }

    Scalar operator-() const
    {
        Scalar out = *this;
        for (auto &[m, c] : out.m_terms) c = -c;
        return out;
    }
    Scalar &operator+=(const Scalar &o)
    {
        for (const auto &[m, c] : o.m_terms) add_term(m, c);
        return *this;
    }
    Scalar &operator-=(const Scalar &o)
    {
        for (const auto &[m, c] : o.m_terms) add_term(m, -c);
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(const Scalar &a, const Scalar &b)
    {
        Scalar out;
        for (const auto &[ma, ca] : a.m_terms)
            for (const auto &[mb, cb] : b.m_terms) out.add_term(ma * mb, ca * cb);
        return out;
    }
    Scalar &operator*=(const Scalar &o) { return *this = *this * o; }
    friend bool operator==(const Scalar &a, const Scalar &b) { return a.m_terms == b.m_terms; }

    Scalar pow(unsigned e) const
    {
        Scalar r(1), base = *this;
        while (e) {
            if (e & 1u) r *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return r;
    }

    // Simultaneous substitution of indeterminates by polynomials.
    Scalar substitute(const std::map<std::string, Scalar> &bindings) const
    {
        if (bindings.empty()) return *this;
        Scalar out;
        for (const auto &[m, c] : m_terms) {
            Scalar t(c);
            Monomial rest;
            for (const auto &[name, e] : m.factors()) {
                auto it = bindings.find(name);
                if (it == bindings.end()) rest = rest * Monomial(name, e);
                else t *= it->second.pow(e);
            }
            out += t * Scalar::term(Rational(1), rest);
        }
        return out;
    }

    Rational evaluate(const std::map<std::string, Rational> &point) const
    {
        Rational total(0);
        for (const auto &[m, c] : m_terms) {
            Rational t = c;
            for (const auto &[name, e] : m.factors()) {
                auto it = point.find(name);
                if (it == point.end()) throw Error("no value for indeterminate '" + name + "'");
                t *= it->second.pow(e);
            }
            total += t;
        }
        return total;
    }

    std::string str() const
    {
        if (m_terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            const bool negative = c.sign() < 0;
            const Rational mag = negative ? -c : c;
            if (first) out += negative ? "-" : "";
            else out += negative ? " - " : " + ";
            first = false;
            if (m.is_one()) out += mag.str();
            else if (mag.is_one()) out += m.str();
            else out += mag.str() + "*" + m.str();
        }
        return out;
    }

    friend std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.str(); }

private:
    void add_term(const Monomial &m, const Rational &c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) m_terms.erase(it);
        }
    }

    Terms m_terms;
};

inline bool is_identically_zero(const Scalar &s) { return s.is_zero(); }

inline Scalar substitute(const Scalar &s, const std::map<std::string, Scalar> &bindings)
{
    return s.substitute(bindings);
}

// ---------------------------------------------------------------------------
// Fraction: an unreduced quotient of polynomials. No gcd cancellation takes
// place; only constant denominators are folded into the numerator.

class Fraction {
public:
    Fraction() = default;
    Fraction(const Scalar &num) : m_num(num) {}
    Fraction(int c) : m_num(c) {}
    Fraction(const Rational &c) : m_num(c) {}
    Fraction(Scalar num, Scalar den) : m_num(std::move(num)), m_den(std::move(den))
    {
        if (m_den.is_zero()) throw Error("fraction with zero denominator");
        normalize();
    }

    const Scalar &num() const { return m_num; }
    const Scalar &den() const { return m_den; }
    bool is_zero() const { return m_num.is_zero(); }
    bool is_polynomial() const { return m_den.is_constant(); }

    Scalar as_polynomial() const
    {
        if (!is_polynomial()) throw Error("'" + str() + "' is not a polynomial");
        return m_num;
    }

    Fraction operator-() const { return Fraction(-m_num, m_den); }
    friend Fraction operator+(const Fraction &a, const Fraction &b)
    {
        if (a.m_den == b.m_den) return Fraction(a.m_num + b.m_num, a.m_den);
        return Fraction(a.m_num * b.m_den + b.m_num * a.m_den, a.m_den * b.m_den);
    }
    friend Fraction operator-(const Fraction &a, const Fraction &b) { return a + (-b); }
    friend Fraction operator*(const Fraction &a, const Fraction &b)
    {
        return Fraction(a.m_num * b.m_num, a.m_den * b.m_den);
    }
    friend Fraction operator/(const Fraction &a, const Fraction &b)
    {
        if (b.is_zero()) throw Error("division by zero");
        return Fraction(a.m_num * b.m_den, a.m_den * b.m_num);
    }
    Fraction pow(unsigned e) const { return Fraction(m_num.pow(e), m_den.pow(e)); }

    // Exact equality in the fraction field.
    friend bool operator==(const Fraction &a, const Fraction &b)
    {
        return (a.m_num * b.m_den - b.m_num * a.m_den).is_zero();
    }

    // var -> value, with the common power of value's denominator cleared from
    // both numerator and denominator.
    Fraction substitute(const std::string &var, const Fraction &value) const
    {
        const unsigned k = std::max(m_num.degree_in(var), m_den.degree_in(var));
        if (k == 0) return *this;
        auto expand = [&](const Scalar &p) {
            Scalar out;
            for (unsigned i = 0; i <= k; ++i) {
                Scalar ci = p.coefficient_of(var, i);
                if (ci.is_zero()) continue;
                out += ci * value.m_num.pow(i) * value.m_den.pow(k - i);
            }
            return out;
        };
        Scalar den = expand(m_den);
        if (den.is_zero()) throw Error("substituting " + var + " = " + value.str() + " makes a denominator vanish");
        return Fraction(expand(m_num), den);
    }

    std::string str() const
    {
        if (m_den.is_constant()) return m_num.str();
        return "(" + m_num.str() + ")/(" + m_den.str() + ")";
    }
    friend std::ostream &operator<<(std::ostream &os, const Fraction &f) { return os << f.str(); }

private:
    void normalize()
    {
        if (m_den.is_constant() && !m_den.constant_value().is_one()) {
            const Rational c = m_den.constant_value();
            m_num = m_num * Scalar(Rational(1) / c);
            m_den = Scalar(1);
        }
    }

    Scalar m_num;
    Scalar m_den{1};
};

// ---------------------------------------------------------------------------
// Constraints

enum class ConstraintKind { equals_zero, nonzero };

class Constraint {
public:
    // lhs = rhs
    static Constraint equality(Fraction lhs, Fraction rhs)
    {
        Constraint c;
        c.m_kind = ConstraintKind::equals_zero;
        c.m_lhs = std::move(lhs);
        c.m_rhs = std::move(rhs);
        return c;
    }
    // expr != 0
    static Constraint nonzero(Fraction expr)
    {
        if (expr.is_zero()) throw Error("nonzero side condition on the zero polynomial");
        Constraint c;
        c.m_kind = ConstraintKind::nonzero;
        c.m_lhs = std::move(expr);
        c.m_rhs = Fraction(0);
        return c;
    }

    ConstraintKind kind() const { return m_kind; }
    const Fraction &lhs() const { return m_lhs; }
    const Fraction &rhs() const { return m_rhs; }

    // Numerator of lhs - rhs: the polynomial asserted zero (or nonzero).
    Scalar expression() const { return (m_lhs - m_rhs).num(); }

    std::string str() const
    {
        if (m_kind == ConstraintKind::nonzero) return m_lhs.str() + " != 0";
        return m_lhs.str() + " = " + m_rhs.str();
    }

    friend bool operator==(const Constraint &a, const Constraint &b)
    {
        return a.m_kind == b.m_kind && a.m_lhs.num() == b.m_lhs.num() && a.m_lhs.den() == b.m_lhs.den()
            && a.m_rhs.num() == b.m_rhs.num() && a.m_rhs.den() == b.m_rhs.den();
    }

private:
    ConstraintKind m_kind = ConstraintKind::equals_zero;
    Fraction m_lhs, m_rhs;
};

// Equality constraints in solved form (no bound indeterminate appears on any
// right-hand side) plus the nonzero side conditions.
class ConstraintSet {
public:
    ConstraintSet() = default;
    explicit ConstraintSet(const std::vector<Constraint> &cs)
    {
        for (const auto &c : cs) add(c);
    }

    void add(const Constraint &c)
    {
        m_constraints.push_back(c);
        if (c.kind() == ConstraintKind::nonzero) {
            m_nonzero.push_back(c.lhs());
            return;
        }
        auto [var, value] = solve_for_variable(c);
        bind(var, value);
    }

    void add_all(const std::vector<Constraint> &cs)
    {
        for (const auto &c : cs) add(c);
    }

    void bind(const std::string &var, const Fraction &value)
    {
        Fraction v = reduce(value);
        if (v.num().variables().count(var) || v.den().variables().count(var))
            throw Error("constraint binding " + var + " is circular");
        for (auto &[name, existing] : m_bindings) existing = existing.substitute(var, v);
        m_bindings.emplace_back(var, std::move(v));
    }

    const std::vector<Constraint> &constraints() const { return m_constraints; }
    const std::vector<std::pair<std::string, Fraction>> &bindings() const { return m_bindings; }
    const std::vector<Fraction> &nonzero_conditions() const { return m_nonzero; }
    bool empty() const { return m_constraints.empty(); }

    Fraction reduce(const Fraction &f) const
    {
        Fraction out = f;
        for (const auto &[var, value] : m_bindings) out = out.substitute(var, value);
        return out;
    }
    Fraction reduce(const Scalar &s) const { return reduce(Fraction(s)); }

    bool vanishes(const Scalar &s) const { return reduce(s).is_zero(); }

    // Nonzero conditions that the equalities force to zero.
    std::vector<std::string> contradicted_conditions() const
    {
        std::vector<std::string> out;
        for (const auto &nz : m_nonzero)
            if (reduce(nz).is_zero()) out.push_back(nz.str() + " != 0");
        return out;
    }

    // Whether every nonzero side condition evaluates to a nonzero value.
    bool nonzero_hold_at(const std::map<std::string, Rational> &point) const
    {
        for (const auto &nz : m_nonzero)
            if (nz.num().evaluate(point).is_zero()) return false;
        return true;
    }

private:
    static std::pair<std::string, Fraction> solve_for_variable(const Constraint &c)
    {
        if (c.lhs().is_polynomial())
            if (auto v = c.lhs().num().as_variable(); v && !mentions(c.rhs(), *v)) return {*v, c.rhs()};
        if (c.rhs().is_polynomial())
            if (auto v = c.rhs().num().as_variable(); v && !mentions(c.lhs(), *v)) return {*v, c.lhs()};
        // Fall back to an indeterminate that occurs linearly: v*p + q = 0.
        const Scalar e = c.expression();
        std::optional<std::pair<std::string, Fraction>> best;
        for (const auto &v : e.variables()) {
            if (e.degree_in(v) != 1) continue;
            Scalar p = e.coefficient_of(v, 1), q = e.coefficient_of(v, 0);
            Fraction value(-q, p);
            if (p.is_constant()) return {v, value};
            if (!best) best.emplace(v, value);
        }
        if (best) return *best;
        throw Error("cannot realize constraint '" + c.str() + "' as a substitution");
    }

    static bool mentions(const Fraction &f, const std::string &v)
    {
        return f.num().variables().count(v) || f.den().variables().count(v);
    }

    std::vector<Constraint> m_constraints;
    std::vector<std::pair<std::string, Fraction>> m_bindings;
    std::vector<Fraction> m_nonzero;
};

} // namespace dendra
