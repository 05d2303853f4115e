#pragma once

// Table fixtures and the harness that re-derives every row and diffs it
// against the claimed products.

#include "dendra/double.hpp"
#include "dendra/dsl.hpp"
#include "dendra/solver.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dendra {

struct TableRow {
    std::string id;
    int table = 0;
    std::variant<Algebra, DendriformStructure> subject;
    std::vector<std::pair<std::string, Tensor2>> solutions;
    std::vector<ValueSpec> values;
    std::vector<Claim> claims;

    bool over_dendriform() const { return std::holds_alternative<DendriformStructure>(subject); }
    std::size_t dim() const
    {
        return std::visit([](const auto &s) { return s.dim(); }, subject);
    }
    const std::string &subject_name() const
    {
        return std::visit([](const auto &s) -> const std::string & { return s.name(); }, subject);
    }
};

inline TableRow resolve_row(const Document &doc, const RowDecl &decl)
{
    TableRow row;
    row.id = decl.id;
    row.table = decl.table;
    const bool wants_dendriform = decl.table == 3 || decl.table == 4 || decl.table == 7 || decl.table == 8;
    if (wants_dendriform) {
        const auto *d = doc.dendriform(decl.subject);
        if (!d) throw Error("row " + decl.id + ": table " + std::to_string(decl.table) + " needs a dendriform subject");
        row.subject = d->structure;
    } else {
        const auto *a = doc.algebra(decl.subject);
        if (!a) throw Error("row " + decl.id + ": table " + std::to_string(decl.table) + " needs an algebra subject");
        row.subject = a->algebra;
    }
    const bool single = decl.table % 2 == 0;
    if (single != decl.single_tensor)
        throw Error("row " + decl.id + ": table " + std::to_string(decl.table)
                    + (single ? " rows name one tensor" : " rows list solution families"));
    for (const auto &t : decl.tensors) {
        const auto *td = doc.tensor(t);
        if (!td) throw Error("row " + decl.id + ": unknown tensor '" + t + "'");
        row.solutions.emplace_back(t, td->tensor);
    }
    if (!single && !decl.claims.empty()) throw Error("row " + decl.id + ": only tables 2, 4, 6, 8 carry products");
    row.values = decl.values;
    row.claims = decl.claims;
    return row;
}

struct Catalog {
    std::vector<TableRow> rows;
    std::vector<Document> documents;
};

inline std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::filesystem::path> fixture_files(const std::filesystem::path &dir)
{
    std::vector<std::filesystem::path> out;
    for (int t = 1; t <= 8; ++t) {
        auto p = dir / ("table" + std::to_string(t) + ".dsl");
        if (std::filesystem::exists(p)) out.push_back(p);
    }
    return out;
}

inline Catalog load_catalog(const std::vector<Document> &docs)
{
    Catalog cat;
    cat.documents = docs;
    for (const auto &doc : cat.documents)
        for (const auto *r : doc.rows()) cat.rows.push_back(resolve_row(doc, *r));
    return cat;
}

inline Catalog load_catalog(const std::filesystem::path &dir)
{
    std::vector<Document> docs;
    for (const auto &p : fixture_files(dir)) {
        try {
            docs.push_back(parse(read_file(p)));
        } catch (const ParseError &e) {
            throw e.in(p.filename().string());
        }
    }
    return load_catalog(docs);
}

#ifdef DENDRA_FIXTURE_DIR
inline Catalog load_catalog() { return load_catalog(std::filesystem::path(DENDRA_FIXTURE_DIR)); }
#endif

// ---------------------------------------------------------------------------
// Reports

struct DiffEntry {
    std::string key;
    std::string derived;
    std::string claimed;
    bool match = false;
    std::string note;
};

// Matches under the adopted reading of r against one alternative.
struct ConventionProbe {
    std::string alternative;
    std::size_t adopted = 0, other = 0, total = 0;
};

struct DiffReport {
    std::string row_id;
    int table = 0;
    std::string subject;
    std::vector<CheckResult> residual_checks;
    std::vector<DiffEntry> table_diff;
    std::vector<std::string> extra_products;
    std::vector<std::string> notes;
    std::optional<ConventionProbe> probe;

    bool hard_pass() const { return all_pass(residual_checks); }
    std::size_t failed_checks() const
    {
        std::size_t k = 0;
        for (const auto &c : residual_checks) k += !c.pass;
        return k;
    }
    std::size_t matches() const
    {
        std::size_t k = 0;
        for (const auto &d : table_diff) k += d.match;
        return k;
    }
};

struct CatalogSummary {
    std::size_t rows = 0, rows_passing = 0, checks = 0, checks_failed = 0, entries = 0, matched = 0;
    double match_rate() const { return entries ? static_cast<double>(matched) / static_cast<double>(entries) : 1.0; }
};

inline CatalogSummary summarize(const std::vector<DiffReport> &reports)
{
    CatalogSummary s;
    for (const auto &r : reports) {
        ++s.rows;
        s.rows_passing += r.hard_pass();
        s.checks += r.residual_checks.size();
        s.checks_failed += r.failed_checks();
        s.entries += r.table_diff.size();
        s.matched += r.matches();
    }
    return s;
}

namespace detail {

struct Specialized {
    std::vector<Constraint> kept;
    std::vector<std::string> contradicted;
};

inline Fraction substitute_all(Fraction f, const std::map<std::string, Rational> &values)
{
    for (const auto &[var, v] : values) f = f.substitute(var, Fraction(v));
    return f;
}

inline Specialized specialize(const std::vector<Constraint> &cs, const std::map<std::string, Rational> &values)
{
    Specialized out;
    if (values.empty()) {
        out.kept = cs;
        return out;
    }
    for (const auto &c : cs) {
        const Fraction l = substitute_all(c.lhs(), values);
        if (c.kind() == ConstraintKind::nonzero) {
            if (l.is_zero()) out.contradicted.push_back(c.str());
            else if (!l.is_polynomial() || !l.as_polynomial().is_constant()) out.kept.push_back(Constraint::nonzero(l));
            continue;
        }
        const Fraction r = substitute_all(c.rhs(), values);
        const Fraction diff = l - r;
        if (diff.is_polynomial() && diff.as_polynomial().is_constant()) {
            if (!diff.is_zero()) out.contradicted.push_back(c.str());
            continue;
        }
        out.kept.push_back(Constraint::equality(l, r));
    }
    return out;
}

inline std::map<std::string, Scalar> as_scalars(const std::map<std::string, Rational> &values)
{
    std::map<std::string, Scalar> m;
    for (const auto &[k, v] : values) m.emplace(k, Scalar(v));
    return m;
}

inline std::string value_tag(const std::map<std::string, Rational> &values)
{
    if (values.empty()) return {};
    std::string out = "[";
    bool first = true;
    for (const auto &[k, v] : values) {
        out += (first ? "" : ",") + k + "=" + v.str();
        first = false;
    }
    return out + "]";
}

// Cartesian product of the row's value lists; a single empty map when the
// row carries none.
inline std::vector<std::map<std::string, Rational>> value_cases(const std::vector<ValueSpec> &specs)
{
    std::vector<std::map<std::string, Rational>> cases{{}};
    for (const auto &s : specs) {
        std::vector<std::map<std::string, Rational>> next;
        for (const auto &c : cases)
            for (const auto &v : s.values) {
                auto m = c;
                m[s.param] = v;
                next.push_back(std::move(m));
            }
        cases = std::move(next);
    }
    return cases;
}

inline std::string render_fractions(const std::vector<Fraction> &coeffs, const std::vector<std::string> &names)
{
    std::string out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const Fraction &c = coeffs[k];
        if (c.is_zero()) continue;
        std::string term;
        if (c.is_polynomial()) {
            const Scalar s = c.as_polynomial();
            if (s == Scalar(1)) term = names[k];
            else if (s == Scalar(-1)) term = "-" + names[k];
            else if (s.terms().size() == 1) term = s.str() + "*" + names[k];
            else term = "(" + s.str() + ")*" + names[k];
        } else {
            term = c.str() + "*" + names[k];
        }
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out.empty() ? "0" : out;
}

inline std::vector<Fraction> reduced(const Element &x, const ConstraintSet &cs)
{
    std::vector<Fraction> out;
    for (std::size_t k = 0; k < x.dim(); ++k) out.push_back(cs.reduce(x[k]));
    return out;
}

inline Element product_row(const StructureConstants &t, std::size_t u, std::size_t v)
{
    Element e = Element::zero(t.dim());
    for (std::size_t k = 0; k < t.dim(); ++k) e[k] = t(u, v, k);
    return e;
}

inline Element specialize_claim(Element value, const std::map<std::string, Scalar> &b)
{
    for (std::size_t k = 0; k < value.dim(); ++k) value[k] = value[k].substitute(b);
    return value;
}

inline std::size_t count_matches(const StructureConstants &t, const std::vector<Claim> &claims, const ConstraintSet &cs,
                                 const std::map<std::string, Scalar> &b)
{
    std::size_t k = 0;
    for (const auto &c : claims) {
        const Element diff = product_row(t, c.left, c.right) - specialize_claim(c.value, b);
        bool ok = true;
        for (std::size_t i = 0; i < diff.dim() && ok; ++i) ok = cs.reduce(diff[i]).is_zero();
        k += ok;
    }
    return k;
}

inline Algebra specialize_algebra(const Algebra &a, const std::map<std::string, Scalar> &b, std::vector<Constraint> cs)
{
    StructureConstants c = a.constants();
    for (auto &v : c) v = v.substitute(b);
    return Algebra(a.name(), std::move(c), std::move(cs));
}

inline Tensor2 specialize_tensor(const Tensor2 &r, const std::map<std::string, Scalar> &b, std::vector<Constraint> cs)
{
    Tensor2 out = r;
    for (auto &v : out.a) v = v.substitute(b);
    out.constraints = std::move(cs);
    return out;
}

} // namespace detail

// Runs every applicable check and the entry-by-entry comparison. A mismatch
// or a failed check is recorded, never thrown.
inline DiffReport verify_row(const TableRow &row)
{
    DiffReport rep;
    rep.row_id = row.id;
    rep.table = row.table;
    rep.subject = row.subject_name();
    const std::size_t n = row.dim();
    std::vector<std::string> names = default_basis(n, "e");
    for (auto &f : default_basis(n, "f")) names.push_back(f);

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> claim_count;
    for (const auto &c : row.claims) ++claim_count[{c.left, c.right}];

    for (const auto &values : detail::value_cases(row.values)) {
        const std::string tag = detail::value_tag(values);
        const auto bind = detail::as_scalars(values);
        auto add = [&](CheckResult c) {
            c.name += tag;
            rep.residual_checks.push_back(std::move(c));
        };
        auto probe = [&](const char *alternative, const StructureConstants &adopted, const StructureConstants &other,
                         const ConstraintSet &cs) {
            if (!rep.probe) rep.probe = ConventionProbe{alternative, 0, 0, 0};
            rep.probe->adopted += detail::count_matches(adopted, row.claims, cs, bind);
            rep.probe->other += detail::count_matches(other, row.claims, cs, bind);
            rep.probe->total += row.claims.size();
        };
        auto guarded = [&](const std::string &name, auto &&fn) {
            try {
                fn();
            } catch (const Error &e) {
                add({name, false, e.what()});
            }
        };

        // Subject, specialized to this value case.
        std::optional<Algebra> alg;
        std::optional<DendriformStructure> den;
        std::vector<Constraint> subject_cs;
        {
            const auto &base_cs = std::visit([](const auto &s) -> const std::vector<Constraint> & { return s.constraints(); },
                                             row.subject);
            auto sp = detail::specialize(base_cs, values);
            for (const auto &c : sp.contradicted) add({"structure-conditions", false, c + " fails"});
            subject_cs = sp.kept;
        }
        if (const auto *a = std::get_if<Algebra>(&row.subject)) {
            alg = detail::specialize_algebra(*a, bind, subject_cs);
        } else {
            const auto &d = std::get<DendriformStructure>(row.subject);
            DendriformStructure s = d.specialized(bind);
            s = DendriformStructure(s.name(), s.succ(), s.prec(), subject_cs);
            if (d.parent()) s.set_parent(*d.parent());
            den = std::move(s);
        }

        guarded("structure", [&] {
            const ConstraintSet cs(subject_cs);
            if (alg) {
                add(residual_check("associativity", associativity_residual(alg->constants()), cs));
            } else {
                const auto ax = dendriform_axiom_residuals(*den);
                add(residual_check("dendriform (x<y)<z", ax.prec_prec, cs));
                add(residual_check("dendriform (x>y)<z", ax.succ_prec, cs));
                add(residual_check("dendriform x>(y>z)", ax.succ_succ, cs));
                if (den->parent()) add(residual_check("sum-algebra", compatibility_residual(*den, *den->parent()), cs));
                add(residual_check("sum-associativity", associativity_residual(den->star()), cs));
            }
        });

        for (const auto &[tname, tensor] : row.solutions) {
            auto sp = detail::specialize(tensor.constraints, values);
            if (!sp.contradicted.empty()) {
                rep.notes.push_back(tname + tag + ": not claimed here (" + sp.contradicted.front() + " fails)");
                continue;
            }
            const Tensor2 r = detail::specialize_tensor(tensor, bind, sp.kept);
            const std::string suffix = row.solutions.size() > 1 || row.table % 2 == 1 ? "[" + tname + "]" : "";
            guarded("constraints" + suffix, [&] {
                const std::vector<Constraint> all = detail::merged(subject_cs, r.constraints);
                const ConstraintSet cs(all);
                const auto contradicted = cs.contradicted_conditions();
                add(bool_check("side-conditions" + suffix, contradicted.empty(), "consistent",
                               contradicted.empty() ? "" : contradicted.front() + " is forced to fail"));

                if (row.table == 1 || row.table == 5) {
                    add(residual_check("aybe-residual" + suffix, aybe_residual(*alg, r).t, cs));
                    return;
                }
                if (row.table == 3 || row.table == 7) {
                    add(residual_check("deq-residual" + suffix, deq_residual(*den, r).t, cs));
                    return;
                }

                DoubleAlgebra d;
                BilinearFormMatrix form, expected(natural_symmetric_form(n));
                if (row.table == 2 || row.table == 6) {
                    add(bool_check("antisymmetric", is_antisymmetric(Tensor2(r.a, all)), "r + sigma(r) = 0",
                                   "r + sigma(r) does not vanish"));
                    add(residual_check("aybe-residual", aybe_residual(*alg, r).t, cs));
                    d = frobenius_double_unchecked(*alg, r);
                    form = natural_symmetric_form(n);
                    add(residual_check("double-associativity", associativity_residual(d.product), cs));
                    add(residual_check("invariance", invariance_residual(d, form), cs));
                    add(residual_check("closure", closure_residual(d), cs));
                    add(residual_check("base-block", base_block_residual(d, alg->constants()), cs));
                    const auto bi = bialgebra_residuals(*alg, bialgebra_coboundary_unchecked(*alg, r));
                    add(residual_check("bialgebra-derivation", bi.derivation, cs));
                    add(residual_check("bialgebra-exchange", bi.exchange, cs));
                    add(residual_check("bialgebra-dual-associativity", bi.dual_associativity, cs));
                    const DoubleAlgebra second = frobenius_double_unchecked(*alg, r, PairingSlot::second);
                    probe("second-slot", d.product, second.product, cs);
                } else {
                    add(bool_check("symmetric", is_symmetric(Tensor2(r.a, all)), "r = sigma(r)", "r - sigma(r) does not vanish"));
                    add(residual_check("deq-residual", deq_residual(*den, r).t, cs));
                    d = connes_double_unchecked(*den, r);
                    form = natural_antisymmetric_form(n);
                    expected = natural_antisymmetric_form(n);
                    add(residual_check("double-associativity", associativity_residual(d.product), cs));
                    add(residual_check("connes-cocycle", connes_cocycle_residual(d, form), cs));
                    add(residual_check("dual-split-sum", split_sum_residual(d, true), cs));
                    add(residual_check("base-block", base_block_residual(d, den->star()), cs));
                    Tensor2 flipped = r;
                    for (auto &v : flipped.a) v = -v;
                    const DoubleAlgebra plus = connes_double_unchecked(*den, flipped);
                    probe("plus-r", d.product, plus.product, cs);
                }
                BilinearFormMatrix reference{Matrix(2 * n), expected.flavor};
                for (std::size_t i = 0; i < n; ++i) {
                    reference.gram(i, n + i) = Scalar(expected.flavor == FormFlavor::symmetric ? 1 : -1);
                    reference.gram(n + i, i) = Scalar(1);
                }
                add(bool_check("gram", gram_is(form, reference), "matches the natural pairing", "unexpected Gram matrix"));
                add(bool_check("nondegenerate", nondegeneracy_check(form), "det != 0", "det = 0"));

                // Table comparison.
                for (const auto &c : row.claims) {
                    DiffEntry e;
                    e.key = names[c.left] + "*" + names[c.right] + tag;
                    const Element derived = detail::product_row(d.product, c.left, c.right);
                    const auto dv = detail::reduced(derived, cs);
                    const auto pv = detail::reduced(detail::specialize_claim(c.value, bind), cs);
                    e.derived = detail::render_fractions(dv, names);
                    e.claimed = detail::render_fractions(pv, names);
                    e.match = true;
                    for (std::size_t k = 0; k < dv.size() && e.match; ++k) e.match = (dv[k] - pv[k]).is_zero();
                    if (claim_count[{c.left, c.right}] > 1) e.note = "key listed more than once";
                    rep.table_diff.push_back(std::move(e));
                }
                for (std::size_t u = 0; u < 2 * n; ++u)
                    for (std::size_t v = 0; v < 2 * n; ++v) {
                        if (claim_count.count({u, v})) continue;
                        const auto dv = detail::reduced(detail::product_row(d.product, u, v), cs);
                        if (std::all_of(dv.begin(), dv.end(), [](const Fraction &f) { return f.is_zero(); })) continue;
                        rep.extra_products.push_back(names[u] + "*" + names[v] + tag + " = " + detail::render_fractions(dv, names));
                    }
            });
        }
    }
    return rep;
}

inline std::vector<DiffReport> verify_all(const Catalog &cat, std::optional<int> table = std::nullopt)
{
    std::vector<DiffReport> out;
    for (const auto &row : cat.rows)
        if (!table || row.table == *table) out.push_back(verify_row(row));
    return out;
}

// ---------------------------------------------------------------------------
// Text report

inline std::string percent(std::size_t num, std::size_t den)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", den ? 100.0 * static_cast<double>(num) / static_cast<double>(den) : 100.0);
    return buf;
}

inline std::string check_line(const CheckResult &c, const std::string &prefix = {})
{
    return "CHECK " + prefix + c.name + " " + (c.pass ? "PASS" : "FAIL") + (c.detail.empty() ? "" : " " + c.detail);
}

inline std::string render_report(const DiffReport &r)
{
    std::string out = "ROW " + r.row_id + " table " + std::to_string(r.table) + " subject " + r.subject + "\n";
    for (const auto &c : r.residual_checks) out += check_line(c, r.row_id + "/") + "\n";
    for (const auto &d : r.table_diff) {
        out += "DIFF " + d.key + (d.match ? " MATCH" : " MISMATCH") + " derived: " + d.derived;
        if (!d.match) out += " claimed: " + d.claimed;
        if (!d.note.empty()) out += " (" + d.note + ")";
        out += "\n";
    }
    for (const auto &e : r.extra_products) out += "EXTRA " + e + "\n";
    for (const auto &n : r.notes) out += "NOTE " + n + "\n";
    if (r.probe)
        out += "PROBE adopted " + std::to_string(r.probe->adopted) + "/" + std::to_string(r.probe->total) + " "
             + r.probe->alternative + " " + std::to_string(r.probe->other) + "/" + std::to_string(r.probe->total) + "\n";
    return out;
}

inline std::string render_summary(const CatalogSummary &s)
{
    return "SUMMARY rows " + std::to_string(s.rows) + " passing " + std::to_string(s.rows_passing) + " checks "
         + std::to_string(s.checks) + " failed " + std::to_string(s.checks_failed) + " entries " + std::to_string(s.entries)
         + " matched " + std::to_string(s.matched) + " (" + percent(s.matched, s.entries) + ")\n";
}

} // namespace dendra
