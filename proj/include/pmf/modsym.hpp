#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmf/arith.hpp"
#include "pmf/linalg.hpp"

namespace pmf {

// Weight-2 modular symbols for Gamma_0(N) from the Manin presentation on P^1(Z/N),
// optionally in the quotient by x = sign * x^* (sign in {-1, 0, +1}).
struct ModSymSpace {
    long level = 1;
    int sign = 0;
    std::vector<std::pair<long, long>> p1;  // normalized representatives (c : d)
    std::vector<int> lookup;                // (c mod N) * N + (d mod N) -> index, -1 if not primitive
    std::vector<std::map<std::size_t, Rational>> image;  // each Manin symbol in the quotient basis
    std::vector<std::size_t> generators;    // p1 index of each basis element
    std::size_t dimension() const { return generators.size(); }

    int index_of(long c, long d) const;
    // Coordinates of the Manin symbol (c : d).
    std::vector<Rational> manin(long c, long d) const;
    // Coordinates of {oo, a/m}.
    std::vector<Rational> symbol_oo_to(long a, long m) const;
};

ModSymSpace modular_symbols(long N, int sign = 0);

// Column j is T_l applied to basis element j (Heilbronn-Merel matrices).
Matrix<QQ> hecke_on_symbols(const ModSymSpace& S, long ell);
// Boundary map to the free space on Gamma_0(N) cusp classes (signed when sign != 0).
Matrix<QQ> boundary_map(const ModSymSpace& S);
// Basis of the cuspidal subspace, one coordinate vector per row.
Matrix<QQ> cuspidal_basis(const ModSymSpace& S);
std::size_t number_of_cusps(long N);
// Genus of X_0(N) from the classical formula.
long genus_X0(long N);

struct EigenSymbol {
    long level = 0;
    int sign = 0;
    std::vector<Rational> functional;        // row vector: phi T_l = a_l phi
    std::vector<Rational> eigenvector;       // cuspidal T_l-eigenvector in coordinates
    std::map<long, long> eigenvalues;        // verified a_l
    std::vector<long> slicing_primes;
    Integer denominator = 1;                 // phi takes values in (1/denominator) Z on Manin symbols
    // [a/m] = phi({oo, a/m}).
    Rational value(const ModSymSpace& S, long a, long m) const;
};

// Projects onto the rational newform with the given a_l (good primes). Throws std::runtime_error
// if no such eigenform exists at this level or the data does not isolate a line.
EigenSymbol rational_eigen_symbol(const ModSymSpace& S, const std::map<long, long>& a, long verify_bound = 13);

struct PadicLValue {
    long p = 0;
    long precision = 0;       // w
    long layer = 0;           // n
    long twist = -1;          // Teichmueller exponent j
    std::uint64_t alpha = 0;  // unit root mod p^w
    std::uint64_t value = 0;  // L_p(f, omega^j, T = p) mod p^w
    std::optional<long> valuation;  // nullopt: valuation >= w
    std::string provenance;
};

nlohmann::json to_json(const PadicLValue& v);

// Evaluates the omega^j-branch at T = p from Mazur-Tate elements of layer n = w, stabilized
// by the unit root. Rejects p in {2, 3}, p | N and supersingular p.
PadicLValue padic_L_valuation(const EllipticCurveData& E, long p, long w = 2, long twist = -1);
// Same computation from a prepared eigen-symbol (sign must match the twist parity).
PadicLValue padic_L_valuation(const ModSymSpace& S, const EigenSymbol& phi, long a_p, long p, long w, long twist);

}  // namespace pmf
