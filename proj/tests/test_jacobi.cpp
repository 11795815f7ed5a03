#include <doctest.h>

#include "pmf/jacobi.hpp"

using namespace pmf;

namespace {

// All nonincreasing tuples of the given length with sum of squares 2m.
void all_tuples(long rem, long cap, std::size_t slots, std::vector<long>& cur, std::vector<std::vector<long>>& out)
{
    if (slots == 0) {
        if (rem == 0) out.push_back(cur);
        return;
    }
    for (long d = std::min(cap, rem); d >= 1; --d) {
        if (d * d > rem) continue;
        cur.push_back(d);
        all_tuples(rem - d * d, d, slots - 1, cur, out);
        cur.pop_back();
    }
}

bool proportional(const JacobiFormQExp& a, const JacobiFormQExp& b)
{
    if (a.coeffs().size() != b.coeffs().size() || a.is_zero()) return false;
    Rational ratio = b.coeffs().begin()->second / a.coeffs().begin()->second;
    for (const auto& [k, v] : a.coeffs())
        if (b.class_coeff(k.D, k.r0) != v * ratio) return false;
    return true;
}

}  // namespace

TEST_CASE("theta block admissibility")
{
    ThetaBlockSpec nine{-6, std::vector<long>(9, 1)};
    CHECK(!nine.admissible());
    CHECK_THROWS_AS(theta_block(nine, 10), std::invalid_argument);
    ThetaBlockSpec ten{-6, std::vector<long>(10, 1)};
    CHECK(ten.admissible());
    CHECK(ten.twice_weight() == 4);
    CHECK(ten.twice_index() == 10);
}

TEST_CASE("ten thetas of d=1 are rejected by expansion and by the order function")
{
    ThetaBlockSpec ten{-6, std::vector<long>(10, 1)};
    auto res = theta_block(ten, 40);
    CHECK(!res.form);
    CHECK(res.rejection.find("not holomorphic") != std::string::npos);
    CHECK(theta_block_min_order(ten) < 0);
}

TEST_CASE("order-function screen agrees with direct expansion")
{
    int checked = 0;
    for (long m = 5; m <= 40; ++m) {
        std::vector<std::vector<long>> tuples;
        std::vector<long> cur;
        all_tuples(2 * m, 2 * m, 10, cur, tuples);
        for (const auto& t : tuples) {
            ThetaBlockSpec s{-6, t};
            Rational o = theta_block_min_order(s);
            auto res = theta_block(s, 4 * m + 1);
            CHECK_MESSAGE((o > 0) == res.form.has_value(), s.to_string());
            if (o == 0) CHECK(res.rejection.find("not a cusp form") != std::string::npos);
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("index 37 has a single weight-2 cusp theta block")
{
    auto blocks = enumerate_cusp_theta_blocks(37);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].thetas == std::vector<long>{5, 4, 3, 3, 2, 2, 2, 1, 1, 1});
    auto res = theta_block(blocks[0], 200);
    REQUIRE(res.form);
    CHECK(res.form->weight() == 2);
    CHECK(res.form->index() == 37);
    CHECK(!res.form->is_zero());
    auto dim = dim_jacobi_cusp(2, 37);
    CHECK(dim.value == 1);
    CHECK(span_rank({*res.form}, Ring::rationals()).rank <= static_cast<std::size_t>(*dim.value));
    // Integer coefficients and the weight-2 symmetry c(n,-r) = c(n,r).
    for (long n = 1; n < 5; ++n)
        for (long r = -20; r <= 20; ++r) {
            if (4 * n * 37 - r * r >= 200) continue;
            CHECK(res.form->coeff(n, r) == res.form->coeff(n, -r));
            CHECK(res.form->coeff(n, r).get_den() == 1);
        }
}

TEST_CASE("Jacobi Hecke operator has the elliptic eigenvalues")
{
    auto is_eigen = [](const JacobiFormQExp& f, long l, long lambda) {
        auto g = jacobi_hecke(f, l);
        CHECK(!g.is_zero());
        CHECK(g == jacobi_scale(f.truncate(g.disc_bound()), lambda));
    };
    // phi_{10,1} corresponds to Delta E6 = q - 528 q^2 - 4284 q^3 + ...
    auto phi = jacobi_cusp_basis(10, 1, 200)[0];
    is_eigen(phi, 2, -528);
    is_eigen(phi, 3, -4284);
    // Index 37, weight 2: the newform of 37a1 (a_2 = -2, a_3 = -3, a_5 = -2).
    auto f = *theta_block({-6, {5, 4, 3, 3, 2, 2, 2, 1, 1, 1}}, 1300).form;
    is_eigen(f, 2, -2);
    is_eigen(f, 3, -3);
    is_eigen(f, 5, -2);
    CHECK_THROWS_AS(jacobi_hecke(f, 37), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_hecke(f, 4), std::invalid_argument);
}

TEST_CASE("theta blocks modulo p agree with reduction")
{
    ThetaBlockSpec s{-6, {5, 4, 3, 3, 2, 2, 2, 1, 1, 1}};
    auto z = theta_block(s, 300).form;
    auto p = theta_block(s, 300, Ring::prime_field(5)).form;
    REQUIRE(z);
    REQUIRE(p);
    CHECK(reduce_mod_p(*z, 5) == *p);
}

TEST_CASE("weak generators")
{
    auto a = phi_m2_1(3), b = phi_0_1(3);
    CHECK(a.coeff(0, 2) == 1);
    CHECK(a.coeff(0, 0) == -2);
    CHECK(a.coeff(0, -2) == 1);
    CHECK(b.coeff(0, 2) == 1);
    CHECK(b.coeff(0, 0) == 10);
    CHECK(b.coeff(0, -2) == 1);
    // Both are weak Jacobi forms of index 1: classes are respected.
    CHECK_NOTHROW(jacobi_from_series(a, -2, 1, 8));
    CHECK_NOTHROW(jacobi_from_series(b, 0, 1, 8));
}

TEST_CASE("phi_{10,1} from the generator basis equals eta^18 theta^2")
{
    auto basis = jacobi_cusp_basis(10, 1, 60);
    REQUIRE(basis.size() == 1);
    auto tb = theta_block({18, {1, 1}}, 60).form;
    REQUIRE(tb);
    CHECK(proportional(basis[0], *tb));
}

TEST_CASE("dimension formula agrees with the generator construction")
{
    for (int k = 4; k <= 16; k += 2)
        for (long m = 1; m <= 3; ++m) {
            long disc = 4 * m * 4;
            auto basis = jacobi_cusp_basis(k, m, disc);
            auto d = dim_jacobi_cusp(k, m);
            CHECK(d.provenance == "formula");
            CHECK_MESSAGE(static_cast<long>(basis.size()) == *d.value, "k=" << k << " m=" << m);
        }
    CHECK(dim_jacobi_cusp(4, 1).value == 0);
    CHECK(dim_jacobi_cusp(10, 1).value == 1);
    CHECK(dim_jacobi_cusp(2, 731).value == 18);
    CHECK(dim_jacobi_cusp(2, 731).provenance == "fixture");
    CHECK_THROWS_AS(dim_jacobi_cusp(3, 5), std::invalid_argument);
}

TEST_CASE("span_rank basics")
{
    auto phi = *theta_block({18, {1, 1}}, 60).form;
    CHECK(span_rank({phi, jacobi_scale(phi, 2)}, Ring::rationals()).rank == 1);
    CHECK(span_rank({phi, jacobi_scale(phi, 2)}, Ring::rationals()).lower_bound);
    CHECK(span_rank({}, Ring::rationals()).rank == 0);
    auto basis = jacobi_cusp_basis(16, 2, 60);
    auto r = span_rank(basis, Ring::rationals(), 5);
    CHECK(r.rank == basis.size());
    CHECK(*r.rank_mod_p <= r.rank);
    std::vector<JacobiFormQExp> red;
    for (const auto& f : basis) red.push_back(reduce_mod_p(f, 5));
    CHECK(span_rank(red, Ring::prime_field(5)).rank == *r.rank_mod_p);
}

TEST_CASE("content normalization")
{
    JacobiFormQExp f(2, 1, Ring::rationals(), 20);
    f.set_class(3, 1, 10);
    f.set_class(4, 0, 15);
    f.set_class(7, 1, 5);
    auto g = content_normalize(f);
    CHECK(g.class_coeff(3, 1) == 2);
    CHECK(g.class_coeff(4, 0) == 3);
    CHECK(g.class_coeff(7, 1) == 1);
    CHECK(content_normalize(g) == g);
    JacobiFormQExp h(2, 1, Ring::rationals(), 20);
    h.set_class(3, 1, Rational(1, 2));
    h.set_class(4, 0, Rational(3, 2));
    auto hn = content_normalize(h);
    CHECK(hn.class_coeff(3, 1) == 1);
    CHECK(hn.class_coeff(4, 0) == 3);
    CHECK_THROWS_AS(content_normalize(JacobiFormQExp(2, 1, Ring::rationals(), 20)), std::invalid_argument);
}

TEST_CASE("Jacobi json round trip")
{
    auto f = *theta_block({-6, {5, 4, 3, 3, 2, 2, 2, 1, 1, 1}}, 150).form;
    CHECK(jacobi_from_json(to_json(f)) == f);
}
