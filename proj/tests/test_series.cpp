#include <doctest.h>

#include <random>

#include "pmf/series.hpp"

using namespace pmf;

namespace {

// Divisor sum sigma_k(n).
Integer sigma(long n, unsigned k)
{
    Integer s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += ipow(Integer(d), k);
    return s;
}

TruncatedSeries eisenstein(long k, Rational c, long prec)
{
    std::map<long, Rational> m{{0, 1}};
    for (long n = 1; n < prec; ++n) m[n] = c * Rational(sigma(n, k - 1));
    return series_from_integer_exponents(Ring::integers(), m, prec);
}

TruncatedSeries random_series(std::mt19937& rng, long prec)
{
    std::uniform_int_distribution<int> d(-5, 5);
    TruncatedSeries s(Ring::integers(), prec);
    for (long e = 0; e < prec; e += 1 + rng() % 3) s.set(e, d(rng));
    return s;
}

}  // namespace

TEST_CASE("eta leading terms")
{
    auto e = eta(2 * kDenom + 1);
    CHECK(e.coeff(1) == 1);
    CHECK(eta(3 * kDenom).coeff(25) == -1);
    CHECK(eta(3 * kDenom).coeff(49) == -1);
    CHECK_THROWS_AS(eta(0), std::invalid_argument);
}

TEST_CASE("eta pentagonal and product expansions agree")
{
    CHECK(eta(40 * kDenom) == eta_product(40 * kDenom));
}

TEST_CASE("eta^24 against Eisenstein discriminant")
{
    long prec = 12;
    auto delta = series_pow(eta(prec * kDenom), 24);
    CHECK(delta.coeff(2 * kDenom) == -24);
    auto e4 = eisenstein(4, 240, prec);
    auto e6 = eisenstein(6, -504, prec);
    auto d2 = series_scale(series_sub(series_pow(e4, 3), series_pow(e6, 2)), Rational(1, 1728));
    for (long n = 1; n < prec; ++n) CHECK(delta.coeff(n * kDenom) == d2.coeff(n * kDenom));
}

TEST_CASE("multiplication and inverses")
{
    auto a = series_from_integer_exponents(Ring::integers(), {{0, 1}, {1, 1}}, 5);
    auto b = series_from_integer_exponents(Ring::integers(), {{0, 1}, {1, -1}}, 5);
    auto c = series_mul(a, b);
    CHECK(c.coeff(0) == 1);
    CHECK(c.coeff(kDenom) == 0);
    CHECK(c.coeff(2 * kDenom) == -1);
    auto e = eta(10 * kDenom);
    auto one = series_mul(series_pow(e, -6), series_pow(e, 6));
    CHECK(one.coeff(0) == 1);
    CHECK(one.coeffs().size() == 1);
    // Inversion loses twice the valuation; each further product loses |valuation|.
    CHECK(series_inverse(e).precision() == 10 * kDenom - 2);
    CHECK(series_pow(e, -6).precision() == 10 * kDenom - 2 - 5);
    CHECK_THROWS_AS(series_inverse(series_from_integer_exponents(Ring::integers(), {{0, 2}}, 3)), std::domain_error);
}

TEST_CASE("ring mismatch is rejected")
{
    auto a = eta(30);
    auto b = reduce_mod_p(a, 5);
    CHECK_THROWS_AS(series_mul(a, b), RingMismatch);
}

TEST_CASE("reduce_mod_p")
{
    auto s = series_from_integer_exponents(Ring::rationals(), {{1, 5}, {2, 1}}, 4);
    auto r = reduce_mod_p(s, 5);
    CHECK(r.coeff(kDenom) == 0);
    CHECK(r.coeff(2 * kDenom) == 1);
    auto h = series_from_integer_exponents(Ring::rationals(), {{1, Rational(1, 2)}}, 4);
    CHECK(reduce_mod_p(h, 5).coeff(kDenom) == 3);
    auto bad = series_from_integer_exponents(Ring::rationals(), {{1, Rational(1, 5)}}, 4);
    CHECK_THROWS_AS(reduce_mod_p(bad, 5), NonReducible);
}

TEST_CASE("ring axioms and reduction homomorphism on random series")
{
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        long prec = 10 * kDenom;
        auto a = random_series(rng, prec), b = random_series(rng, prec), c = random_series(rng, prec);
        CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
        CHECK(series_mul(a, series_add(b, c)) == series_add(series_mul(a, b), series_mul(a, c)));
        CHECK(reduce_mod_p(series_mul(a, b), 7) == series_mul(reduce_mod_p(a, 7), reduce_mod_p(b, 7)));
    }
}

TEST_CASE("precision bookkeeping agrees with higher-precision recomputation")
{
    for (long e : {-6L, -1L, 3L, 8L}) {
        auto lo = series_pow(eta(6 * kDenom), e);
        auto hi = series_pow(eta(30 * kDenom), e);
        for (long n = lo.valuation(); n < lo.precision(); ++n) CHECK(lo.coeff(n) == hi.coeff(n));
    }
}

TEST_CASE("series json round trip")
{
    auto s = series_pow(eta(5 * kDenom), -6);
    CHECK(series_from_json(to_json(s)) == s);
}

TEST_CASE("theta: leading term, triple product, substitution")
{
    auto t = theta_d(1, 20 * kDenom);
    CHECK(t.q_valuation() == 3);
    CHECK(t.coeff(3, 1) == 1);
    CHECK(t.coeff(3, -1) == -1);
    CHECK(t.has_declared_symmetry());
    CHECK(theta_d(1, 20 * kDenom) == theta_product(20 * kDenom));
    CHECK(theta_d(2, 20 * kDenom) == twovar_substitute_zeta(theta_d(1, 20 * kDenom), 2));
}

TEST_CASE("eta^-6 times ten thetas has the expected q-valuation")
{
    // Orders: -6/24 + 10 * 3/24 = 1.
    long prec = 4 * kDenom;
    auto s = twovar_mul(theta_d(1, prec), series_pow(eta(prec + 12), -6));
    for (int i = 1; i < 10; ++i) s = twovar_mul(s, theta_d(1, prec));
    CHECK(s.q_valuation() == kDenom);
}
