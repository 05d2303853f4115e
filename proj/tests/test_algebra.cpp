#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace dendra;
using test::el;
using test::v;

namespace {

// (e_i e_j) e_k - e_i (e_j e_k) expanded straight from the constants.
Scalar brute_associator(const StructureConstants &c, std::size_t i, std::size_t j, std::size_t k, std::size_t m)
{
    const std::size_t n = c.dim();
    Scalar s;
    for (std::size_t p = 0; p < n; ++p) s += c(i, j, p) * c(p, k, m) - c(j, k, p) * c(i, p, m);
    return s;
}

const std::vector<std::string> table5 = {"A1", "A2", "A3", "A4", "A5", "A6", "A7"};

} // namespace

TEST_CASE("multiply")
{
    const Algebra &a1 = test::fixture_algebra(5, "A1");
    const Algebra &a2 = test::fixture_algebra(5, "A2");
    CHECK(multiply(a1, a1.basis(0), a1.basis(0)) == a1.basis(1));
    CHECK(multiply(a1, a1.zero(), el({v("x"), v("y")})) == a1.zero());
    CHECK(multiply(a2, a2.basis(1), a2.basis(0)) == a2.zero());
    CHECK(multiply(a2, el({v("x"), 0}), el({0, v("y")})) == el({0, v("x") * v("y")}));
    CHECK_THROWS_AS(multiply(a2, Element::zero(1), a2.basis(0)), Error);
}

TEST_CASE("associativity residual")
{
    CHECK(test::all_vanish(associativity_residual(test::fixture_algebra(5, "A5"))));
    CHECK(test::all_vanish(associativity_residual(test::fixture_algebra(5, "A1"))));

    Algebra bent = test::fixture_algebra(5, "A1");
    bent.set_product(1, 1, bent.basis(0));
    const auto res = associativity_residual(bent);
    CHECK_FALSE(test::all_vanish(res));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t m = 0; m < 2; ++m) CHECK(res(i, j, k, m) == brute_associator(bent.constants(), i, j, k, m));
    // (e1 e1) e2 - e1 (e1 e2) = e2 e2 = e1
    CHECK(res(0, 0, 1, 0) == Scalar(1));
}

TEST_CASE("every classified algebra is associative")
{
    for (const auto &name : table5) CHECK(test::all_vanish(associativity_residual(test::fixture_algebra(5, name))));
    for (const auto &name : {"A1dim1", "A2dim1"}) CHECK(test::all_vanish(associativity_residual(test::fixture_algebra(1, name))));
}

TEST_CASE("multiplication operators")
{
    const Algebra &a2d1 = test::fixture_algebra(1, "A2dim1");
    CHECK(left_matrix(a2d1, a2d1.basis(0)).entries == test::matrix({{1}}));
    const Algebra &a2 = test::fixture_algebra(5, "A2");
    CHECK(all_zero(left_matrix(a2, a2.zero()).entries));
    const Algebra &a3 = test::fixture_algebra(5, "A3");
    CHECK(right_matrix(a3, a3.basis(0)).entries == identity_matrix(2));
    CHECK(dual_right_matrix(a2d1, a2d1.basis(0)).entries == test::matrix({{1}}));
    CHECK(dual_left_matrix(a3, a3.basis(0)).entries == transpose(left_matrix(a3, a3.basis(0)).entries));
    CHECK(dual_left_matrix(a2, a2.basis(0)).entries == identity_matrix(2));
    CHECK(dual_left_matrix(a2, a2.basis(0)).meaning == OperatorKind::dual_left);
}

TEST_CASE("operators are linear in the defining element")
{
    test::RandomScalar gen(11);
    for (const auto &name : table5) {
        const Algebra &a = test::fixture_algebra(5, name);
        for (int trial = 0; trial < 20; ++trial) {
            const Scalar alpha = gen(), beta = gen();
            const Element x = el({gen(), gen()}), y = el({gen(), gen()});
            const Element comb = el({alpha * x[0] + beta * y[0], alpha * x[1] + beta * y[1]});
            const Matrix lx = left_matrix(a, x).entries, ly = left_matrix(a, y).entries;
            const Matrix rx = right_matrix(a, x).entries, ry = right_matrix(a, y).entries;
            Matrix l_expected(2), r_expected(2);
            for (std::size_t k = 0; k < 4; ++k) {
                l_expected.at_flat(k) = alpha * lx.at_flat(k) + beta * ly.at_flat(k);
                r_expected.at_flat(k) = alpha * rx.at_flat(k) + beta * ry.at_flat(k);
            }
            REQUIRE(left_matrix(a, comb).entries == l_expected);
            REQUIRE(right_matrix(a, comb).entries == r_expected);
        }
    }
}

TEST_CASE("associativity agrees with the operator criterion")
{
    auto operator_criterion = [](const Algebra &a) {
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) {
                const Element ij = multiply(a, a.basis(i), a.basis(j));
                if (!(left_matrix(a, ij).entries == left_matrix(a, a.basis(i)).entries * left_matrix(a, a.basis(j)).entries))
                    return false;
                if (!(right_matrix(a, ij).entries == right_matrix(a, a.basis(j)).entries * right_matrix(a, a.basis(i)).entries))
                    return false;
            }
        return true;
    };
    for (const auto &name : table5) {
        Algebra a = test::fixture_algebra(5, name);
        CHECK(operator_criterion(a));
        a.set_product(1, 0, a.basis(0) + multiply(a, a.basis(1), a.basis(0)));
        CHECK(operator_criterion(a) == test::all_vanish(associativity_residual(a)));
    }
}

TEST_CASE("dual operators are transposes")
{
    test::RandomScalar gen(3);
    for (const auto &name : table5) {
        const Algebra &a = test::fixture_algebra(5, name);
        const Element x = el({gen(), gen()});
        CHECK(dual_left_matrix(a, x).entries == transpose(left_matrix(a, x).entries));
        CHECK(dual_right_matrix(a, x).entries == transpose(right_matrix(a, x).entries));
    }
}

TEST_CASE("element rendering")
{
    const auto names = default_basis(2);
    CHECK(render_element(el({1, -1}), names) == "e1 - e2");
    CHECK(render_element(el({0, 0}), names) == "0");
    CHECK(render_element(el({v("a12"), v("a") + v("b")}), names) == "a12*e1 + (a + b)*e2");
}
