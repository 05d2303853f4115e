#pragma once

// A small definition language for algebras, dendriform structures, tensors
// and catalog rows:
//
//   algebra A2 dim 2
//   product e1 e1 = e1
//   product e1 e2 = e2
//   tensor r over A2 = a12*(e1 x e2) + a21*(e2 x e1)
//   require a12 = -a21
//   require a12 != 0
//
// Basis symbols are e1..en for A and f1..fn for A* (claims only). Any other
// identifier is an indeterminate. Newlines are plain whitespace; '#' starts a
// comment.

#include "dendra/dendriform.hpp"

#include <cctype>
#include <variant>

namespace dendra {

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string &msg, const std::string &source = {})
        : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + msg),
          m_line(line), m_column(column), m_message(msg)
    {
    }
    std::size_t line() const { return m_line; }
    std::size_t column() const { return m_column; }
    const std::string &message() const { return m_message; }
    ParseError in(const std::string &source) const { return ParseError(m_line, m_column, m_message, source); }

private:
    std::size_t m_line, m_column;
    std::string m_message;
};

struct AlgebraDecl {
    Algebra algebra;
    std::vector<std::string> params;
    friend bool operator==(const AlgebraDecl &, const AlgebraDecl &) = default;
};

struct DendriformDecl {
    DendriformStructure structure;
    std::string over; // empty when there is no parent
    std::vector<std::string> params;
    friend bool operator==(const DendriformDecl &, const DendriformDecl &) = default;
};

struct TensorDecl {
    std::string name;
    std::string over;
    Tensor2 tensor;
    friend bool operator==(const TensorDecl &, const TensorDecl &) = default;
};

// A product u * v on A + A*; indices run over (e1..en, f1..fn).
struct Claim {
    std::size_t left = 0, right = 0;
    Element value;
    friend bool operator==(const Claim &, const Claim &) = default;
};

struct ValueSpec {
    std::string param;
    std::vector<Rational> values;
    friend bool operator==(const ValueSpec &, const ValueSpec &) = default;
};

struct RowDecl {
    std::string id;
    int table = 0;
    std::string subject;
    bool single_tensor = false; // "tensor NAME" rather than "solutions NAME+"
    std::vector<std::string> tensors;
    std::vector<ValueSpec> values;
    std::vector<Claim> claims;
    friend bool operator==(const RowDecl &, const RowDecl &) = default;
};

using Declaration = std::variant<AlgebraDecl, DendriformDecl, TensorDecl, RowDecl>;

struct Document {
    std::vector<Declaration> declarations;

    template <typename T>
    const T *find(const std::string &name) const
    {
        for (const auto &d : declarations)
            if (const T *p = std::get_if<T>(&d); p && decl_name(*p) == name) return p;
        return nullptr;
    }
    const AlgebraDecl *algebra(const std::string &name) const { return find<AlgebraDecl>(name); }
    const DendriformDecl *dendriform(const std::string &name) const { return find<DendriformDecl>(name); }
    const TensorDecl *tensor(const std::string &name) const { return find<TensorDecl>(name); }

    std::vector<const RowDecl *> rows() const
    {
        std::vector<const RowDecl *> out;
        for (const auto &d : declarations)
            if (const auto *p = std::get_if<RowDecl>(&d)) out.push_back(p);
        return out;
    }

    static const std::string &decl_name(const AlgebraDecl &d) { return d.algebra.name(); }
    static const std::string &decl_name(const DendriformDecl &d) { return d.structure.name(); }
    static const std::string &decl_name(const TensorDecl &d) { return d.name; }
    static const std::string &decl_name(const RowDecl &d) { return d.id; }

    friend bool operator==(const Document &, const Document &) = default;
};

namespace dsl {

enum class Tok { ident, integer, plus, minus, star, slash, caret, lparen, rparen, equals, not_equals, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t s = 0; s < k; ++s, ++i) {
            if (src[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
        const std::size_t l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '.')) ++j;
            out.push_back({Tok::ident, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && (src[j] == '.' || std::isalpha(static_cast<unsigned char>(src[j]))))
                throw ParseError(l, cl, "malformed number (only integers and p/q rationals are accepted)");
            out.push_back({Tok::integer, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        Tok k;
        std::size_t len = 1;
        switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '*': k = Tok::star; break;
        case '/': k = Tok::slash; break;
        case '^': k = Tok::caret; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case '=': k = Tok::equals; break;
        case '!':
            if (i + 1 < src.size() && src[i + 1] == '=') { k = Tok::not_equals; len = 2; break; }
            [[fallthrough]];
        default: throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(src.substr(i, len)), l, cl});
        advance(len);
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

inline bool is_keyword(const std::string &s)
{
    static const std::set<std::string> kw = {"algebra", "dendriform", "tensor", "require", "row",   "product",
                                             "succ",    "prec",       "param",  "values",  "claim"};
    return kw.count(s) > 0;
}

// A linear combination of basis keys (empty key = scalar part) with
// rational-function coefficients.
struct Value {
    int rank = 0; // 0 scalar, 1 vector, 2 tensor
    std::map<std::vector<std::size_t>, Fraction> comps;

    static Value scalar(Fraction f)
    {
        Value v;
        if (!f.is_zero()) v.comps[{}] = std::move(f);
        return v;
    }
    bool is_zero() const { return comps.empty(); }
    Fraction scalar_part() const
    {
        auto it = comps.find({});
        return it == comps.end() ? Fraction(0) : it->second;
    }
    void add(const std::vector<std::size_t> &key, const Fraction &f)
    {
        auto [it, fresh] = comps.try_emplace(key, f);
        if (!fresh) {
            it->second = it->second + f;
            if (it->second.is_zero()) comps.erase(it);
        }
    }
};

class Parser {
public:
    explicit Parser(std::string_view src) : m_toks(tokenize(src)) {}

    Document parse()
    {
        while (peek().kind != Tok::end) statement();
        return std::move(m_doc);
    }

private:
    enum class Basis { none, primal, both };

    const Token &peek(std::size_t k = 0) const { return m_toks[std::min(m_pos + k, m_toks.size() - 1)]; }
    const Token &next() { return m_toks[m_pos < m_toks.size() - 1 ? m_pos++ : m_pos]; }

    [[noreturn]] void fail(const Token &t, const std::string &msg) const { throw ParseError(t.line, t.column, msg); }

    const Token &expect(Tok k, const char *what)
    {
        if (peek().kind != k) fail(peek(), std::string("expected ") + what + describe(peek()));
        return next();
    }
    static std::string describe(const Token &t)
    {
        return t.kind == Tok::end ? " but reached end of input" : ", found '" + t.text + "'";
    }
    void expect_word(const char *word)
    {
        if (peek().kind != Tok::ident || peek().text != word) fail(peek(), std::string("expected '") + word + "'" + describe(peek()));
        next();
    }
    std::string name(const char *what)
    {
        const Token &t = expect(Tok::ident, what);
        if (is_keyword(t.text)) fail(t, std::string("expected ") + what + ", found keyword '" + t.text + "'");
        return t.text;
    }
    std::size_t integer(const char *what)
    {
        const Token &t = expect(Tok::integer, what);
        if (t.text.size() > 6) fail(t, "integer too large");
        return std::stoul(t.text);
    }

    void statement()
    {
        const Token &t = peek();
        if (t.kind != Tok::ident) fail(t, "expected a declaration" + describe(t));
        if (t.text == "algebra") algebra_decl();
        else if (t.text == "dendriform") dendriform_decl();
        else if (t.text == "tensor") tensor_decl();
        else if (t.text == "product" || t.text == "succ" || t.text == "prec") product_stmt();
        else if (t.text == "require") require_stmt();
        else if (t.text == "param") param_stmt();
        else if (t.text == "row") row_decl();
        else if (t.text == "values") values_stmt();
        else if (t.text == "claim") claim_stmt();
        else fail(t, "unknown declaration '" + t.text + "'");
    }

    void check_unique(const Token &at, const std::string &n)
    {
        if (!m_names.insert(n).second) fail(at, "duplicate definition of '" + n + "'");
    }

    void algebra_decl()
    {
        next();
        const Token &at = peek();
        const std::string n = name("algebra name");
        check_unique(at, n);
        expect_word("dim");
        const std::size_t dim = positive_dim();
        m_doc.declarations.push_back(AlgebraDecl{Algebra(n, dim), {}});
        m_last = Last::algebra;
        m_current_dim = dim;
    }

    std::size_t positive_dim()
    {
        const Token &t = peek();
        const std::size_t dim = integer("dimension");
        if (dim == 0) fail(t, "dimension must be positive");
        return dim;
    }

    void dendriform_decl()
    {
        next();
        const Token &at = peek();
        const std::string n = name("dendriform name");
        check_unique(at, n);
        expect_word("dim");
        const std::size_t dim = positive_dim();
        DendriformDecl d{DendriformStructure(n, dim), {}, {}};
        if (peek().kind == Tok::ident && peek().text == "over") {
            next();
            const Token &pt = peek();
            d.over = name("parent algebra name");
            const AlgebraDecl *parent = m_doc.algebra(d.over);
            if (!parent) fail(pt, "unknown algebra '" + d.over + "'");
            if (parent->algebra.dim() != dim) fail(pt, "parent algebra '" + d.over + "' has dimension " + std::to_string(parent->algebra.dim()));
            d.structure.set_parent(parent->algebra);
        }
        m_doc.declarations.push_back(std::move(d));
        m_last = Last::dendriform;
        m_current_dim = dim;
    }

    void param_stmt()
    {
        const Token &kw = next();
        std::vector<std::string> *params = nullptr;
        if (!m_doc.declarations.empty()) {
            auto &back = m_doc.declarations.back();
            if (auto *a = std::get_if<AlgebraDecl>(&back)) params = &a->params;
            else if (auto *d = std::get_if<DendriformDecl>(&back)) params = &d->params;
        }
        if (!params) fail(kw, "'param' must follow an algebra or dendriform header");
        do params->push_back(name("parameter name"));
        while (peek().kind == Tok::ident && !is_keyword(peek().text));
    }

    void product_stmt()
    {
        const Token &kw = next();
        const std::string kind = kw.text;
        if (m_doc.declarations.empty()) fail(kw, "'" + kind + "' outside an algebra or dendriform block");
        auto &back = m_doc.declarations.back();
        auto *alg = std::get_if<AlgebraDecl>(&back);
        auto *den = std::get_if<DendriformDecl>(&back);
        if (kind == "product" && !alg) fail(kw, "'product' must follow an algebra declaration");
        if (kind != "product" && !den) fail(kw, "'" + kind + "' must follow a dendriform declaration");
        const std::size_t n = alg ? alg->algebra.dim() : den->structure.dim();
        const std::size_t i = basis_index(next_basis(), n, false);
        const std::size_t j = basis_index(next_basis(), n, false);
        expect(Tok::equals, "'='");
        const Element v = to_element(expression(n, Basis::primal), n, m_prev);
        if (alg) alg->algebra.set_product(i, j, v);
        else if (kind == "succ") den->structure.set_succ(i, j, v);
        else den->structure.set_prec(i, j, v);
    }

    void tensor_decl()
    {
        next();
        const Token &at = peek();
        const std::string n = name("tensor name");
        check_unique(at, n);
        expect_word("over");
        const Token &ot = peek();
        const std::string over = name("algebra or dendriform name");
        std::size_t dim = 0;
        if (const auto *a = m_doc.algebra(over)) dim = a->algebra.dim();
        else if (const auto *d = m_doc.dendriform(over)) dim = d->structure.dim();
        else fail(ot, "unknown algebra or dendriform '" + over + "'");
        const Token &eq = expect(Tok::equals, "'='");
        const Value v = expression(dim, Basis::primal);
        if (v.rank == 1) fail(eq, "tensor value is a vector, expected terms like a*(e1 x e2)");
        if (v.rank == 0 && !v.is_zero()) fail(eq, "tensor value is a scalar, expected terms like a*(e1 x e2)");
        Tensor2 r(dim);
        for (const auto &[key, f] : v.comps) r(key[0], key[1]) = polynomial(f, eq);
        m_doc.declarations.push_back(TensorDecl{n, over, std::move(r)});
        m_last = Last::tensor;
    }

    void require_stmt()
    {
        const Token &kw = next();
        const Value lhs = expression(0, Basis::none);
        Constraint c;
        if (peek().kind == Tok::not_equals) {
            next();
            const Token &z = expect(Tok::integer, "'0' after '!='");
            if (z.text.find_first_not_of('0') != std::string::npos) fail(z, "only '!= 0' side conditions are supported");
            if (lhs.is_zero()) fail(kw, "side condition on the zero polynomial");
            c = Constraint::nonzero(lhs.scalar_part());
        } else {
            expect(Tok::equals, "'=' or '!='");
            const Value rhs = expression(0, Basis::none);
            c = Constraint::equality(lhs.scalar_part(), rhs.scalar_part());
        }
        if (m_doc.declarations.empty() || m_last == Last::none) fail(kw, "'require' must follow an algebra, dendriform or tensor");
        auto &back = m_doc.declarations.back();
        if (auto *a = std::get_if<AlgebraDecl>(&back)) a->algebra.add_constraint(std::move(c));
        else if (auto *d = std::get_if<DendriformDecl>(&back)) d->structure.add_constraint(std::move(c));
        else if (auto *t = std::get_if<TensorDecl>(&back)) t->tensor.constraints.push_back(std::move(c));
        else fail(kw, "'require' must follow an algebra, dendriform or tensor");
    }

    void row_decl()
    {
        next();
        const Token &at = peek();
        const std::string id = name("row id");
        check_unique(at, id);
        RowDecl row;
        row.id = id;
        expect_word("table");
        const Token &tt = peek();
        const std::size_t table = integer("table number");
        if (table < 1 || table > 8) fail(tt, "table number must be between 1 and 8");
        row.table = static_cast<int>(table);
        expect_word("subject");
        const Token &st = peek();
        row.subject = name("subject name");
        std::size_t dim = 0;
        if (const auto *a = m_doc.algebra(row.subject)) dim = a->algebra.dim();
        else if (const auto *d = m_doc.dendriform(row.subject)) dim = d->structure.dim();
        else fail(st, "unknown algebra or dendriform '" + row.subject + "'");
        const Token &mode = expect(Tok::ident, "'tensor' or 'solutions'");
        if (mode.text == "tensor") {
            row.single_tensor = true;
            row.tensors.push_back(tensor_ref(dim));
        } else if (mode.text == "solutions") {
            do row.tensors.push_back(tensor_ref(dim));
            while (peek().kind == Tok::ident && !is_keyword(peek().text));
        } else {
            fail(mode, "expected 'tensor' or 'solutions', found '" + mode.text + "'");
        }
        m_doc.declarations.push_back(std::move(row));
        m_last = Last::row;
        m_current_dim = dim;
    }

    std::string tensor_ref(std::size_t dim)
    {
        const Token &t = peek();
        const std::string n = name("tensor name");
        const TensorDecl *td = m_doc.tensor(n);
        if (!td) fail(t, "unknown tensor '" + n + "'");
        if (td->tensor.dim() != dim) fail(t, "tensor '" + n + "' has the wrong dimension for this row");
        return n;
    }

    RowDecl &current_row(const Token &kw)
    {
        if (m_doc.declarations.empty()) fail(kw, "'" + kw.text + "' must follow a row declaration");
        auto *row = std::get_if<RowDecl>(&m_doc.declarations.back());
        if (!row) fail(kw, "'" + kw.text + "' must follow a row declaration");
        return *row;
    }

    void values_stmt()
    {
        const Token &kw = next();
        RowDecl &row = current_row(kw);
        ValueSpec spec;
        spec.param = name("parameter name");
        while (peek().kind == Tok::integer || peek().kind == Tok::minus) spec.values.push_back(rational_literal());
        if (spec.values.empty()) fail(peek(), "expected at least one value" + describe(peek()));
        row.values.push_back(std::move(spec));
    }

    Rational rational_literal()
    {
        bool neg = false;
        if (peek().kind == Tok::minus) { next(); neg = true; }
        const Token &num = expect(Tok::integer, "integer");
        std::string text = num.text;
        if (peek().kind == Tok::slash) {
            next();
            const Token &den = expect(Tok::integer, "denominator");
            if (den.text.find_first_not_of('0') == std::string::npos) fail(den, "zero denominator");
            text += "/" + den.text;
        }
        Rational r = Rational::parse(text);
        return neg ? -r : r;
    }

    void claim_stmt()
    {
        const Token &kw = next();
        RowDecl &row = current_row(kw);
        const std::size_t n = m_current_dim;
        const std::size_t i = basis_index(next_basis(), n, true);
        const std::size_t j = basis_index(next_basis(), n, true);
        expect(Tok::equals, "'='");
        const Element v = to_element(expression(n, Basis::both), 2 * n, m_prev);
        row.claims.push_back(Claim{i, j, v});
    }

    const Token &next_basis() { return expect(Tok::ident, "basis element"); }

    static bool looks_like_basis(const std::string &s)
    {
        return s.size() >= 2 && (s[0] == 'e' || s[0] == 'f')
            && std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    std::size_t basis_index(const Token &t, std::size_t n, bool dual_ok) const
    {
        if (!looks_like_basis(t.text)) fail(t, "expected a basis element, found '" + t.text + "'");
        const std::size_t k = std::stoul(t.text.substr(1));
        if (k == 0 || k > n) fail(t, "unknown basis name '" + t.text + "' (dimension " + std::to_string(n) + ")");
        if (t.text[0] == 'f') {
            if (!dual_ok) fail(t, "dual basis element '" + t.text + "' is not allowed here");
            return n + k - 1;
        }
        return k - 1;
    }

    Scalar polynomial(const Fraction &f, const Token &at) const
    {
        if (!f.is_polynomial()) fail(at, "coefficient '" + f.str() + "' is not a polynomial");
        return f.as_polynomial();
    }

    Element to_element(const Value &v, std::size_t size, const Token &at) const
    {
        if (v.rank == 2) fail(at, "expected a vector, found a tensor");
        if (v.rank == 0 && !v.is_zero()) fail(at, "expected a vector, found a scalar");
        Element e = Element::zero(size);
        for (const auto &[key, f] : v.comps) e[key[0]] = polynomial(f, at);
        return e;
    }

    // expr := term (('+'|'-') term)*
    Value expression(std::size_t n, Basis basis)
    {
        m_prev = peek();
        Value v = term(n, basis);
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token &op = next();
            Value rhs = term(n, basis);
            v = combine(v, rhs, op.kind == Tok::minus, op);
        }
        return v;
    }

    Value combine(const Value &a, const Value &b, bool subtract, const Token &op) const
    {
        if (a.rank != b.rank && !a.is_zero() && !b.is_zero())
            fail(op, "cannot add values of different kinds (scalar, vector, tensor)");
        Value out = a;
        if (a.is_zero()) out.rank = b.rank;
        for (const auto &[k, f] : b.comps) out.add(k, subtract ? -f : f);
        if (out.is_zero()) out.rank = 0;
        return out;
    }

    // term := unary (('*'|'/') unary | tensor-atom)*
    Value term(std::size_t n, Basis basis)
    {
        Value v = unary(n, basis);
        for (;;) {
            if (peek().kind == Tok::star) {
                const Token &op = next();
                v = multiply(v, unary(n, basis), op);
            } else if (peek().kind == Tok::slash) {
                const Token &op = next();
                const Value d = unary(n, basis);
                if (d.rank != 0) fail(op, "division by a non-scalar");
                if (d.is_zero()) fail(op, "division by zero");
                Value out{v.rank, {}};
                for (const auto &[k, f] : v.comps) out.add(k, f / d.scalar_part());
                v = out;
            } else if (at_tensor_atom()) {
                const Token &op = peek();
                v = multiply(v, tensor_atom(n), op);
            } else {
                return v;
            }
        }
    }

    Value multiply(const Value &a, const Value &b, const Token &op) const
    {
        if (a.rank > 0 && b.rank > 0) fail(op, "cannot multiply two basis expressions");
        Value out{std::max(a.rank, b.rank), {}};
        for (const auto &[ka, fa] : a.comps)
            for (const auto &[kb, fb] : b.comps) {
                std::vector<std::size_t> key = ka;
                key.insert(key.end(), kb.begin(), kb.end());
                out.add(key, fa * fb);
            }
        if (out.is_zero()) out.rank = 0;
        return out;
    }

    Value unary(std::size_t n, Basis basis)
    {
        if (peek().kind == Tok::minus) {
            const Token &op = next();
            Value v = unary(n, basis);
            return multiply(Value::scalar(Fraction(-1)), v, op);
        }
        if (peek().kind == Tok::plus) {
            next();
            return unary(n, basis);
        }
        return power(n, basis);
    }

    Value power(std::size_t n, Basis basis)
    {
        Value base = atom(n, basis);
        if (peek().kind == Tok::caret) {
            const Token &op = next();
            const Token &e = expect(Tok::integer, "integer exponent");
            if (base.rank != 0) fail(op, "only scalars can be raised to a power");
            if (e.text.size() > 3) fail(e, "exponent too large");
            return Value::scalar(base.scalar_part().pow(static_cast<unsigned>(std::stoul(e.text))));
        }
        return base;
    }

    bool at_tensor_atom() const
    {
        return peek().kind == Tok::lparen && peek(1).kind == Tok::ident && looks_like_basis(peek(1).text)
            && peek(2).kind == Tok::ident && peek(2).text == "x";
    }

    Value tensor_atom(std::size_t n)
    {
        expect(Tok::lparen, "'('");
        const std::size_t i = basis_index(next(), n, false);
        expect_word("x");
        const std::size_t j = basis_index(next_basis(), n, false);
        expect(Tok::rparen, "')'");
        Value v{2, {}};
        v.add({i, j}, Fraction(1));
        return v;
    }

    Value atom(std::size_t n, Basis basis)
    {
        const Token &t = peek();
        switch (t.kind) {
        case Tok::integer: {
            next();
            return Value::scalar(Fraction(Rational::parse(t.text)));
        }
        case Tok::lparen: {
            if (at_tensor_atom()) return tensor_atom(n);
            next();
            const Token saved = m_prev;
            Value v = expression(n, basis);
            m_prev = saved;
            expect(Tok::rparen, "')'");
            return v;
        }
        case Tok::ident: {
            if (is_keyword(t.text)) fail(t, "unexpected keyword '" + t.text + "' in expression");
            next();
            if (looks_like_basis(t.text)) {
                if (basis == Basis::none) fail(t, "basis element '" + t.text + "' is not allowed in a scalar expression");
                Value v{1, {}};
                v.add({basis_index(t, n, basis == Basis::both)}, Fraction(1));
                return v;
            }
            return Value::scalar(Fraction(Scalar::var(t.text)));
        }
        default: fail(t, "expected an expression" + describe(t));
        }
    }

    enum class Last { none, algebra, dendriform, tensor, row };

    std::vector<Token> m_toks;
    std::size_t m_pos = 0;
    Document m_doc;
    std::set<std::string> m_names;
    Last m_last = Last::none;
    std::size_t m_current_dim = 0;
    Token m_prev{Tok::end, "", 1, 1};
};

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_fraction(const Fraction &f) { return f.str(); }

inline std::string render_constraint(const Constraint &c)
{
    if (c.kind() == ConstraintKind::nonzero) return "require " + c.lhs().str() + " != 0";
    return "require " + c.lhs().str() + " = " + c.rhs().str();
}

inline std::string render_tensor(const Tensor2 &r, const std::vector<std::string> &names)
{
    std::string out;
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = 0; j < r.dim(); ++j) {
            const Scalar &c = r(i, j);
            if (c.is_zero()) continue;
            const std::string atom = "(" + names[i] + " x " + names[j] + ")";
            std::string term;
            if (c == Scalar(1)) term = atom;
            else if (c == Scalar(-1)) term = "-" + atom;
            else if (c.terms().size() == 1) term = c.str() + "*" + atom;
            else term = "(" + c.str() + ")*" + atom;
            if (out.empty()) out = term;
            else if (term[0] == '-') out += " - " + term.substr(1);
            else out += " + " + term;
        }
    return out.empty() ? "0" : out;
}

inline std::string render_products(const std::string &keyword, const StructureConstants &c,
                                   const std::vector<std::string> &names)
{
    std::string out;
    const std::size_t n = c.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Element v = Element::zero(n);
            for (std::size_t k = 0; k < n; ++k) v[k] = c(i, j, k);
            if (v.is_zero()) continue;
            out += keyword + " " + names[i] + " " + names[j] + " = " + render_element(v, names) + "\n";
        }
    return out;
}

inline std::string render_params(const std::vector<std::string> &params)
{
    if (params.empty()) return {};
    std::string out = "param";
    for (const auto &p : params) out += " " + p;
    return out + "\n";
}

inline std::string render(const Document &doc)
{
    std::string out;
    for (const auto &decl : doc.declarations) {
        if (!out.empty()) out += "\n";
        if (const auto *a = std::get_if<AlgebraDecl>(&decl)) {
            const auto names = default_basis(a->algebra.dim());
            out += "algebra " + a->algebra.name() + " dim " + std::to_string(a->algebra.dim()) + "\n";
            out += render_params(a->params);
            out += render_products("product", a->algebra.constants(), names);
            for (const auto &c : a->algebra.constraints()) out += render_constraint(c) + "\n";
        } else if (const auto *d = std::get_if<DendriformDecl>(&decl)) {
            const auto &s = d->structure;
            const auto names = default_basis(s.dim());
            out += "dendriform " + s.name() + " dim " + std::to_string(s.dim());
            if (!d->over.empty()) out += " over " + d->over;
            out += "\n" + render_params(d->params);
            out += render_products("succ", s.succ(), names);
            out += render_products("prec", s.prec(), names);
            for (const auto &c : s.constraints()) out += render_constraint(c) + "\n";
        } else if (const auto *t = std::get_if<TensorDecl>(&decl)) {
            out += "tensor " + t->name + " over " + t->over + " = "
                 + render_tensor(t->tensor, default_basis(t->tensor.dim())) + "\n";
            for (const auto &c : t->tensor.constraints) out += render_constraint(c) + "\n";
        } else if (const auto *r = std::get_if<RowDecl>(&decl)) {
            out += "row " + r->id + " table " + std::to_string(r->table) + " subject " + r->subject
                 + (r->single_tensor ? " tensor" : " solutions");
            for (const auto &t : r->tensors) out += " " + t;
            out += "\n";
            for (const auto &v : r->values) {
                out += "values " + v.param;
                for (const auto &x : v.values) out += " " + x.str();
                out += "\n";
            }
            for (const auto &c : r->claims) {
                const std::size_t n = c.value.dim() / 2;
                auto names = default_basis(n, "e");
                for (auto &f : default_basis(n, "f")) names.push_back(f);
                out += "claim " + names[c.left] + " " + names[c.right] + " = " + render_element(c.value, names) + "\n";
            }
        }
    }
    return out;
}

} // namespace dsl

inline Document parse(std::string_view source) { return dsl::Parser(source).parse(); }
inline std::string render(const Document &doc) { return dsl::render(doc); }

} // namespace dendra
