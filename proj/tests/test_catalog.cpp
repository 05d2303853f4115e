#include "support.hpp"

#include <dendra/catalog.hpp>

#include <catch_amalgamated.hpp>

using namespace dendra;

namespace {

const Catalog &catalog()
{
    static const Catalog cat = load_catalog();
    return cat;
}

const TableRow &row(const std::string &id)
{
    for (const auto &r : catalog().rows)
        if (r.id == id) return r;
    throw std::runtime_error("no row " + id);
}

const CheckResult *find_check(const DiffReport &rep, const std::string &name)
{
    for (const auto &c : rep.residual_checks)
        if (c.name == name) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("fixtures load")
{
    const Catalog &cat = catalog();
    std::map<int, std::size_t> per_table;
    for (const auto &r : cat.rows) ++per_table[r.table];
    CHECK(per_table == std::map<int, std::size_t>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 7}, {6, 7}, {7, 30}, {8, 46}});
    CHECK(cat.documents.size() == 8);
    CHECK(row("T5.A2").solutions.size() == 2);
    CHECK(row("T8.D7_3").over_dendriform());
    CHECK(row("T8.D7_3").dim() == 2);
}

TEST_CASE("malformed rows are rejected")
{
    // a dendriform table over a plain algebra
    CHECK_THROWS_AS(load_catalog({parse("algebra A dim 1\ntensor r over A = 0\nrow R table 3 subject A solutions r")}), Error);
    // a product table listing several families
    CHECK_THROWS_AS(load_catalog({parse("algebra A dim 1\ntensor r over A = 0\nrow R table 2 subject A solutions r")}), Error);
    CHECK_THROWS(parse("algebra A dim 1\nrow R table 2 subject A tensor missing"));
}

TEST_CASE("Table 1 A1 row")
{
    const DiffReport rep = verify_row(row("T1.A1"));
    CHECK(rep.hard_pass());
    const auto *c = find_check(rep, "aybe-residual[A1dim1_r]");
    REQUIRE(c);
    CHECK(c->pass);
    CHECK(rep.table_diff.empty());
}

TEST_CASE("Table 6 A5 row")
{
    const DiffReport rep = verify_row(row("T6.A5"));
    CHECK(rep.hard_pass());
    REQUIRE(rep.table_diff.size() == 16);
    for (const auto &d : rep.table_diff) {
        CHECK(d.match);
        CHECK(d.derived == "0");
    }
    CHECK(rep.extra_products.empty());
}

TEST_CASE("Table 8 D7_3 row")
{
    const DiffReport rep = verify_row(row("T8.D7_3"));
    CHECK(rep.hard_pass());
    REQUIRE(rep.table_diff.size() == 8);
    CHECK(rep.matches() == 8);
    CHECK(rep.table_diff[2].key == "f1*f1");
    CHECK(rep.table_diff[2].derived == "-a11*f1");
    REQUIRE(rep.probe);
    CHECK(rep.probe->adopted == 8);
    CHECK(rep.probe->total == 8);
}

TEST_CASE("a wrong claim is reported with both values")
{
    Document doc = parse(read_file(std::filesystem::path(DENDRA_FIXTURE_DIR) / "table2.dsl")
                         + "row X table 2 subject A2dim1 tensor rzero\nclaim e1 e1 = e1\nclaim e1 f1 = 2*f1\n");
    const Catalog cat = load_catalog({doc});
    const TableRow *x = nullptr;
    for (const auto &r : cat.rows)
        if (r.id == "X") x = &r;
    REQUIRE(x);
    const DiffReport rep = verify_row(*x);
    CHECK(rep.hard_pass());
    REQUIRE(rep.table_diff.size() == 2);
    CHECK(rep.table_diff[0].match);
    CHECK_FALSE(rep.table_diff[1].match);
    CHECK(rep.table_diff[1].derived == "f1");
    CHECK(rep.table_diff[1].claimed == "2*f1");
    // f1 * e1 = f1 is derived but not claimed
    CHECK(rep.extra_products.size() == 1);
    CHECK(render_report(rep).find("DIFF e1*f1 MISMATCH derived: f1 claimed: 2*f1") != std::string::npos);
}

TEST_CASE("every claim appears once in the diff")
{
    for (const auto &r : catalog().rows) {
        if (r.claims.empty()) continue;
        const DiffReport rep = verify_row(r);
        const std::size_t cases = detail::value_cases(r.values).size();
        INFO(r.id);
        CHECK(rep.table_diff.size() == r.claims.size() * cases);
    }
}

TEST_CASE("value expansion")
{
    const DiffReport rep = verify_row(row("T3.D2_1"));
    CHECK(find_check(rep, "deq-residual[D2_1dim1_r][lam=0]"));
    CHECK(find_check(rep, "deq-residual[D2_1dim1_r][lam=1]"));
    CHECK(rep.hard_pass());
    CHECK(detail::value_cases({}).size() == 1);
    CHECK(detail::value_cases({{"p", {1, 2}}, {"q", {0, 1, 2}}}).size() == 6);
    CHECK(detail::value_tag({{"lam", Rational(1, 2)}}) == "[lam=1/2]");
}

TEST_CASE("empty catalog")
{
    const Catalog cat = load_catalog(std::vector<Document>{});
    CHECK(verify_all(cat).empty());
    const CatalogSummary s = summarize({});
    CHECK(s.rows == 0);
    CHECK(s.match_rate() == 1.0);
}

TEST_CASE("verify_all is deterministic and ordered")
{
    const auto a = verify_all(catalog()), b = verify_all(catalog());
    REQUIRE(a.size() == catalog().rows.size());
    std::string ta, tb;
    for (const auto &r : a) ta += render_report(r);
    for (const auto &r : b) tb += render_report(r);
    CHECK(ta == tb);
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].table <= a[i].table);

    const auto six = verify_all(catalog(), 6);
    CHECK(six.size() == 7);
    for (const auto &r : six) CHECK(r.table == 6);
}

TEST_CASE("summary counts")
{
    const auto reports = verify_all(catalog(), 6);
    const CatalogSummary s = summarize(reports);
    CHECK(s.rows == 7);
    std::size_t entries = 0;
    for (const auto &r : reports) entries += r.table_diff.size();
    CHECK(s.entries == entries);
    CHECK(render_summary(s).rfind("SUMMARY rows 7 ", 0) == 0);
}
