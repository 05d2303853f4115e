// Batch front end: load DSL documents, run a check, print CHECK lines or JSON.

#include "dendra/catalog.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

using namespace dendra;
using json = nlohmann::json;

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct Report {
    std::vector<std::string> lines;
    json data = json::object();
    std::size_t failures = 0;

    void check(const CheckResult &c)
    {
        lines.push_back(check_line(c));
        data["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        failures += !c.pass;
    }
    void line(const std::string &tag, const std::string &text, const char *key, json value)
    {
        lines.push_back(tag + " " + text);
        data[key].push_back(std::move(value));
    }
};

json to_json(const DiffReport &r)
{
    json j{{"row_id", r.row_id}, {"table", r.table}, {"subject", r.subject}, {"hard_pass", r.hard_pass()}};
    j["checks"] = json::array();
    for (const auto &c : r.residual_checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["table_diff"] = json::array();
    for (const auto &d : r.table_diff)
        j["table_diff"].push_back(
            {{"key", d.key}, {"derived", d.derived}, {"claimed", d.claimed}, {"match", d.match}, {"note", d.note}});
    j["extra_products"] = r.extra_products;
    j["notes"] = r.notes;
    if (r.probe)
        j["probe"] = {{"alternative", r.probe->alternative},
                      {"adopted", r.probe->adopted},
                      {"other", r.probe->other},
                      {"total", r.probe->total}};
    return j;
}

// Names are looked up in the first document that defines all of them.
struct Sources {
    std::vector<Document> docs;

    const Document &holding(const std::vector<std::string> &names) const
    {
        for (const auto &d : docs) {
            bool all = true;
            for (const auto &n : names) all = all && (d.algebra(n) || d.dendriform(n) || d.tensor(n));
            if (all) return d;
        }
        std::string list;
        for (const auto &n : names) list += (list.empty() ? "" : ", ") + n;
        throw UsageError("no document defines " + list);
    }
    const Algebra &algebra(const Document &d, const std::string &name) const
    {
        if (const auto *a = d.algebra(name)) return a->algebra;
        throw UsageError("'" + name + "' is not an algebra");
    }
    const DendriformStructure &dendriform(const Document &d, const std::string &name) const
    {
        if (const auto *s = d.dendriform(name)) return s->structure;
        throw UsageError("'" + name + "' is not a dendriform structure");
    }
    const Tensor2 &tensor(const Document &d, const std::string &name) const
    {
        if (const auto *t = d.tensor(name)) return t->tensor;
        throw UsageError("'" + name + "' is not a tensor");
    }
};

std::vector<Rational> parse_grid(const std::string &spec)
{
    std::vector<Rational> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (auto dots = item.find(".."); dots != std::string::npos) {
            const long lo = std::stol(item.substr(0, dots)), hi = std::stol(item.substr(dots + 2));
            for (auto &v : integer_range(lo, hi)) out.push_back(v);
        } else {
            out.push_back(Rational::parse(item));
        }
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

void need(const std::vector<std::string> &args, std::size_t count, const std::string &usage)
{
    if (args.size() != count) throw UsageError("usage: dendra " + usage);
}

void print_products(Report &rep, const DoubleAlgebra &d)
{
    const ConstraintSet cs(d.constraints);
    const auto names = d.basis_names();
    for (std::size_t u = 0; u < d.dim(); ++u)
        for (std::size_t v = 0; v < d.dim(); ++v) {
            const auto coeffs = detail::reduced(detail::product_row(d.product, u, v), cs);
            if (std::all_of(coeffs.begin(), coeffs.end(), [](const Fraction &f) { return f.is_zero(); })) continue;
            const std::string key = names[u] + "*" + names[v], value = detail::render_fractions(coeffs, names);
            rep.line("PRODUCT", key + " = " + value, "products", {{"key", key}, {"value", value}});
        }
}

void run_double(Report &rep, const Sources &src, const std::vector<std::string> &args)
{
    need(args, 4, "double frobenius|connes NAME TENSOR");
    const Document &doc = src.holding({args[2], args[3]});
    const Tensor2 &r = src.tensor(doc, args[3]);
    const bool frob = args[1] == "frobenius";
    if (!frob && args[1] != "connes") throw UsageError("unknown double kind '" + args[1] + "'");
    std::optional<std::pair<DoubleAlgebra, BilinearFormMatrix>> built;
    try {
        built = frob ? frobenius_double(src.algebra(doc, args[2]), r) : connes_double(src.dendriform(doc, args[2]), r);
    } catch (const PreconditionError &e) {
        rep.check({"precondition", false, e.what()});
        return;
    }
    const auto &[d, form] = *built;
    const ConstraintSet cs(d.constraints);
    const std::size_t n = d.n;
    rep.check(residual_check("associativity", associativity_residual(d.product), cs));
    if (frob) {
        rep.check(residual_check("invariance", invariance_residual(d, form), cs));
        rep.check(residual_check("closure", closure_residual(d), cs));
    } else {
        rep.check(residual_check("connes-cocycle", connes_cocycle_residual(d, form), cs));
        rep.check(residual_check("dual-split-sum", split_sum_residual(d, true), cs));
    }
    rep.check(bool_check("gram", gram_is(form, frob ? natural_symmetric_form(n) : natural_antisymmetric_form(n)),
                         "matches the natural pairing", "unexpected Gram matrix"));
    rep.check(bool_check("nondegenerate", nondegeneracy_check(form), "det != 0", "det = 0"));
    print_products(rep, d);
}

void run_aybe(Report &rep, const Sources &src, const std::vector<std::string> &args, const std::string &grid)
{
    if (args.size() < 3) throw UsageError("usage: dendra aybe residual|verify|scan ALGEBRA ...");
    const std::string &mode = args[1];
    if (mode == "scan") {
        if (grid.empty()) throw UsageError("aybe scan needs --grid");
        std::vector<std::string> names(args.begin() + 2, args.end());
        const Document &doc = src.holding(names);
        const Algebra &alg = src.algebra(doc, args[2]);
        const auto res = grid_scan(extract_aybe_system(alg), parse_grid(grid));
        std::vector<const Tensor2 *> families;
        for (std::size_t i = 3; i < args.size(); ++i) families.push_back(&src.tensor(doc, args[i]));
        std::size_t disagreements = 0;
        std::string first_bad;
        for (const auto &p : res.points) {
            std::string text;
            for (const auto &u : res.unknowns) text += (text.empty() ? "" : " ") + u + "=" + p.assignment.at(u).str();
            if (p.satisfies) {
                json pt = json::object();
                for (const auto &u : res.unknowns) pt[u] = p.assignment.at(u).str();
                rep.line("POINT", text, "points", pt);
            }
            if (families.empty()) continue;
            const Matrix m = point_matrix(p.assignment, alg.dim());
            bool inside = false;
            for (const auto *f : families) inside = inside || family_contains(*f, m);
            if (inside != p.satisfies && disagreements++ == 0) first_bad = text;
        }
        rep.lines.push_back("SCAN " + std::to_string(res.points.size()) + " points, "
                            + std::to_string(res.satisfying_count()) + " satisfying");
        rep.data["scanned"] = res.points.size();
        rep.data["satisfying"] = res.satisfying_count();
        if (!families.empty())
            rep.check(bool_check("family-coverage", disagreements == 0, "solutions are exactly the listed families",
                                 std::to_string(disagreements) + " points disagree, first " + first_bad));
        return;
    }
    need(args, 4, "aybe residual|verify ALGEBRA TENSOR");
    const Document &doc = src.holding({args[2], args[3]});
    const Algebra &alg = src.algebra(doc, args[2]);
    const Tensor2 &r = src.tensor(doc, args[3]);
    const ConstraintSet cs(detail::merged(alg.constraints(), r.constraints));
    const Tensor3 res = aybe_residual(alg, r);
    if (mode == "residual") {
        for (const auto &[pos, value] : surviving_entries(res.t, cs)) {
            const std::string idx = index_text(res.t.index_of(pos));
            rep.line("RESIDUAL", idx + " = " + value.str(), "residual", {{"index", idx}, {"value", value.str()}});
        }
    } else if (mode != "verify") {
        throw UsageError("unknown aybe mode '" + mode + "'");
    }
    rep.check(residual_check("aybe-residual", res.t, cs));
}

int run(const std::vector<std::string> &args, const Sources &src, const std::string &grid, std::optional<int> table,
        bool as_json)
{
    Report rep;
    const std::string &cmd = args.at(0);
    if (cmd == "check-assoc") {
        need(args, 2, "check-assoc ALGEBRA");
        const Document &doc = src.holding({args[1]});
        const Algebra &alg = src.algebra(doc, args[1]);
        rep.check(residual_check("associativity", associativity_residual(alg), ConstraintSet(alg.constraints())));
    } else if (cmd == "aybe") {
        run_aybe(rep, src, args, grid);
    } else if (cmd == "dendriform") {
        need(args, 3, "dendriform check NAME");
        if (args[1] != "check") throw UsageError("unknown dendriform mode '" + args[1] + "'");
        const auto &d = src.dendriform(src.holding({args[2]}), args[2]);
        const ConstraintSet cs(d.constraints());
        const auto ax = dendriform_axiom_residuals(d);
        rep.check(residual_check("dendriform (x<y)<z", ax.prec_prec, cs));
        rep.check(residual_check("dendriform (x>y)<z", ax.succ_prec, cs));
        rep.check(residual_check("dendriform x>(y>z)", ax.succ_succ, cs));
        if (d.parent()) rep.check(residual_check("sum-algebra", compatibility_residual(d, *d.parent()), cs));
    } else if (cmd == "deq") {
        need(args, 4, "deq verify DENDRIFORM TENSOR");
        if (args[1] != "verify") throw UsageError("unknown deq mode '" + args[1] + "'");
        const Document &doc = src.holding({args[2], args[3]});
        const auto &d = src.dendriform(doc, args[2]);
        const Tensor2 &r = src.tensor(doc, args[3]);
        rep.check(residual_check("deq-residual", deq_residual(d, r).t,
                                 ConstraintSet(detail::merged(d.constraints(), r.constraints))));
    } else if (cmd == "double") {
        run_double(rep, src, args);
    } else if (cmd == "tables") {
        need(args, 2, "tables verify [--table N]");
        if (args[1] != "verify") throw UsageError("unknown tables mode '" + args[1] + "'");
        const auto reports = verify_all(load_catalog(src.docs), table);
        rep.data["rows"] = json::array();
        for (const auto &r : reports) {
            std::istringstream text(render_report(r));
            for (std::string l; std::getline(text, l);) rep.lines.push_back(l);
            rep.failures += r.failed_checks();
            rep.data["rows"].push_back(to_json(r));
        }
        const auto s = summarize(reports);
        std::string line = render_summary(s);
        line.pop_back();
        rep.lines.push_back(line);
        rep.data["summary"] = {{"rows", s.rows},       {"rows_passing", s.rows_passing}, {"checks", s.checks},
                               {"checks_failed", s.checks_failed}, {"entries", s.entries}, {"matched", s.matched},
                               {"match_rate", s.match_rate()}};
    } else if (cmd == "render") {
        need(args, 1, "render");
        for (const auto &d : src.docs) rep.lines.push_back(render(d));
        rep.data["documents"] = rep.lines;
    } else {
        throw UsageError("unknown command '" + cmd + "'");
    }

    const int status = rep.failures ? 1 : 0;
    if (as_json) {
        rep.data["command"] = args;
        rep.data["failures"] = rep.failures;
        rep.data["status"] = status;
        std::cout << rep.data.dump(2) << "\n";
    } else {
        for (const auto &l : rep.lines) std::cout << l << "\n";
    }
    return status;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact checks for associative algebras, r-matrices, dendriform structures and their doubles"};
    std::vector<std::string> files, args;
    std::string grid;
    std::optional<int> table;
    bool as_json = false;
    app.add_option("-f,--file", files, "DSL document (repeatable); defaults to the bundled table fixtures")
        ->allow_extra_args(false);
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--grid", grid, "scan values, e.g. -2..2 or -1,0,1/2");
    app.add_option("--table", table, "restrict tables verify to one table")->check(CLI::Range(1, 8));
    app.add_option("command", args, "check-assoc | aybe | dendriform | deq | double | tables | render")->required();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        Sources src;
        if (files.empty()) {
            const char *env = std::getenv("DENDRA_TABLES");
            std::filesystem::path dir = env ? env : DENDRA_FIXTURE_DIR;
            src.docs = load_catalog(dir).documents;
        } else {
            for (const auto &f : files) {
                try {
                    src.docs.push_back(parse(read_file(f)));
                } catch (const ParseError &e) {
                    throw e.in(f);
                }
            }
        }
        return run(args, src, grid, table, as_json);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
