#include <doctest.h>

#include <random>

#include "pmf/linalg.hpp"
#include "pmf/poly.hpp"

using namespace pmf;

namespace {

Matrix<QQ> random_q(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3)
{
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix<QQ> m(r, c, 0);
    for (auto& x : m.a) x = d(rng);
    return m;
}

// Faddeev-LeVerrier, used only as an independent oracle for charpoly.
QPoly faddeev(const Matrix<QQ>& a)
{
    QQ f;
    std::size_t n = a.rows;
    QPoly c(n + 1, 0);
    c[n] = 1;
    Matrix<QQ> m = zeros(f, n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<QQ> am = multiply(f, a, m);
        for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
        m = am;
        Matrix<QQ> t = multiply(f, a, m);
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += t(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

}  // namespace

TEST_CASE("rank and nullspace over Q and F_p")
{
    std::mt19937 rng(3);
    QQ q;
    for (int t = 0; t < 20; ++t) {
        auto a = random_q(rng, 4, 3), b = random_q(rng, 3, 6);
        auto m = multiply(q, a, b);  // rank <= 3
        auto r = rank(q, m);
        CHECK(r <= 3);
        auto ns = nullspace(q, m);
        CHECK(ns.rows + r == m.cols);
        for (std::size_t i = 0; i < ns.rows; ++i)
            for (std::size_t k = 0; k < m.rows; ++k) {
                Rational s = 0;
                for (std::size_t j = 0; j < m.cols; ++j) s += m(k, j) * ns(i, j);
                CHECK(s == 0);
            }
        Fp f(5);
        auto mp = reduce_matrix(f, m);
        CHECK(rank(f, mp) <= r);
    }
}

TEST_CASE("solve")
{
    QQ q;
    Matrix<QQ> m(2, 2, 0);
    m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 2; m(1, 1) = 4;
    CHECK(!solve(q, m, {1, 1}));
    auto x = solve(q, m, {1, 2});
    REQUIRE(x);
    CHECK((*x)[0] + 2 * (*x)[1] == 1);
}

TEST_CASE("charpoly agrees with Faddeev-LeVerrier")
{
    std::mt19937 rng(11);
    QQ q;
    for (int t = 0; t < 10; ++t) {
        auto a = random_q(rng, 6, 6, -4, 4);
        if (t % 3 == 0)
            for (std::size_t j = 0; j < 6; ++j) a(1, j) = 0;  // force pivot search
        CHECK(charpoly(q, a) == faddeev(a));
    }
}

TEST_CASE("charpoly over F_p matches reduction")
{
    std::mt19937 rng(5);
    QQ q;
    Fp f(13);
    auto a = random_q(rng, 7, 7);
    auto cq = charpoly(q, a);
    auto cp = charpoly(f, reduce_matrix(f, a));
    for (std::size_t i = 0; i < cq.size(); ++i) CHECK(residue(cq[i], 13) == cp[i]);
}

TEST_CASE("polynomial utilities")
{
    // (x-1)(x+2)(x^2+1)
    QPoly f = poly_mul(poly_mul({-1, 1}, {2, 1}), {1, 0, 1});
    auto roots = integer_roots(f);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].first == -2);
    CHECK(roots[1].first == 1);
    CHECK(poly_squarefree(f));
    CHECK(!poly_squarefree(poly_mul(f, {-1, 1})));
    auto degs = fp_factor_degrees(poly_reduce(f, 7), 7);  // x^2+1 irreducible mod 7
    CHECK(degs == std::vector<int>{1, 1, 2});
    CHECK(poly_eval(f, 2) == Rational(1 * 4 * 5));
}

TEST_CASE("irreducibility by degree patterns")
{
    CHECK(irreducibility_by_patterns({-2, 0, 0, 0, 1}).irreducible);         // x^4 - 2
    CHECK(!irreducibility_by_patterns({4, 0, 0, 0, 1}).irreducible);          // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
    CHECK(irreducibility_by_patterns({1, 1, 1, 1, 1, 1, 1}).irreducible);     // 7th cyclotomic
}
