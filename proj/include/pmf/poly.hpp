#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmf/ring.hpp"

namespace pmf {

// Dense univariate polynomials, coefficient i multiplies x^i.
using QPoly = std::vector<Rational>;
using FpPoly = std::vector<std::uint64_t>;

void trim(QPoly& f);
void trim(FpPoly& f);
int degree(const QPoly& f);
int degree(const FpPoly& f);

QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_derivative(const QPoly& f);
Rational poly_eval(const QPoly& f, const Rational& x);
// Division with remainder; throws on zero divisor.
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly poly_gcd(QPoly a, QPoly b);  // monic
bool poly_squarefree(const QPoly& f);
std::string poly_to_string(const QPoly& f, const std::string& var = "x");

FpPoly poly_reduce(const QPoly& f, std::uint64_t p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
void fp_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r, std::uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p);  // monic
bool fp_squarefree(const FpPoly& f, std::uint64_t p);
// Degrees of the irreducible factors of a squarefree f over F_p (distinct-degree
// factorization), sorted ascending.
std::vector<int> fp_factor_degrees(const FpPoly& f, std::uint64_t p);

// Integer roots of a polynomial with rational coefficients and their multiplicities.
std::vector<std::pair<Integer, int>> integer_roots(const QPoly& f);

struct IrreducibilityWitness {
    bool irreducible = false;
    // Primes used and the factor-degree pattern observed at each.
    std::vector<std::pair<std::uint64_t, std::vector<int>>> patterns;
};

// Proves irreducibility over Q of a monic integral squarefree polynomial by
// intersecting the sets of subfactor degrees allowed by mod-p patterns.
// A false result means the test did not succeed, not that f is reducible.
IrreducibilityWitness irreducibility_by_patterns(const QPoly& f, int max_primes = 40);

}  // namespace pmf
