#pragma once

#include "dendra/catalog.hpp"

#include <random>

namespace test {

using namespace dendra;

inline Scalar v(const std::string &name) { return Scalar::var(name); }

inline Element el(std::initializer_list<Scalar> coeffs) { return Element{std::vector<Scalar>(coeffs)}; }

inline const Document &fixture(int table)
{
    static std::map<int, Document> cache;
    auto it = cache.find(table);
    if (it == cache.end()) {
        const auto path = std::filesystem::path(DENDRA_FIXTURE_DIR) / ("table" + std::to_string(table) + ".dsl");
        it = cache.emplace(table, parse(read_file(path))).first;
    }
    return it->second;
}

inline const Algebra &fixture_algebra(int table, const std::string &name)
{
    const auto *a = fixture(table).algebra(name);
    if (!a) throw Error("no algebra " + name + " in table " + std::to_string(table));
    return a->algebra;
}

inline const DendriformStructure &fixture_dendriform(int table, const std::string &name)
{
    const auto *d = fixture(table).dendriform(name);
    if (!d) throw Error("no dendriform " + name + " in table " + std::to_string(table));
    return d->structure;
}

inline const Tensor2 &fixture_tensor(int table, const std::string &name)
{
    const auto *t = fixture(table).tensor(name);
    if (!t) throw Error("no tensor " + name + " in table " + std::to_string(table));
    return t->tensor;
}

inline Algebra algebra_from(const std::string &src, const std::string &name)
{
    return parse(src).algebra(name)->algebra;
}

inline DendriformStructure dendriform_from(const std::string &src, const std::string &name)
{
    return parse(src).dendriform(name)->structure;
}

inline Tensor2 tensor_from(const std::string &src, const std::string &name) { return parse(src).tensor(name)->tensor; }

inline Matrix matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
{
    Matrix m(rows.size());
    std::size_t i = 0;
    for (const auto &row : rows) {
        std::size_t j = 0;
        for (const auto &x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

// Small random polynomials over a, b, c.
struct RandomScalar {
    std::mt19937 gen;
    explicit RandomScalar(unsigned seed) : gen(seed) {}

    Rational coeff()
    {
        std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
        return Rational(num(gen), den(gen));
    }
    Scalar operator()()
    {
        static const char *names[] = {"a", "b", "c"};
        std::uniform_int_distribution<int> terms(0, 4), exp(0, 2);
        Scalar s;
        const int k = terms(gen);
        for (int t = 0; t < k; ++t) {
            Scalar m(coeff());
            for (const char *n : names) m = m * Scalar::var(n).pow(exp(gen));
            s = s + m;
        }
        return s;
    }
};

inline bool all_vanish(const auto &cube)
{
    for (const auto &x : cube)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace test
