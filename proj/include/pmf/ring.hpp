#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace pmf {

using Integer = mpz_class;
using Rational = mpq_class;

// Thrown when a rational with denominator divisible by p is reduced mod p.
class NonReducible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class RingMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Ring {
    enum class Kind { Integers, Rationals, PrimeField };
    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;

    static Ring integers() { return {Kind::Integers, 0}; }
    static Ring rationals() { return {Kind::Rationals, 0}; }
    static Ring prime_field(std::uint64_t p);

    bool is_field() const { return kind != Kind::Integers; }
    bool is_prime_field() const { return kind == Kind::PrimeField; }

    // Canonical representative of x in this ring. Over F_p the result is the
    // residue in [0, p). Throws if x does not belong to the ring.
    Rational normalize(const Rational& x) const;

    std::string name() const;
    static Ring parse(const std::string& s);

    bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Ring& o) const { return !(*this == o); }
};

void require_same_ring(const Ring& a, const Ring& b);

// Small modular arithmetic helpers for p < 2^63.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
bool is_prime(std::uint64_t n);

// Residue of x modulo p; throws NonReducible if p divides the denominator.
std::uint64_t residue(const Rational& x, std::uint64_t p);
std::uint64_t residue(const Integer& x, std::uint64_t p);
// Symmetric lift of a residue into (-p/2, p/2].
long long symmetric(std::uint64_t r, std::uint64_t p);

std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

Integer ipow(const Integer& b, unsigned long e);
Rational rpow(const Rational& b, long e);
// p-adic valuation of a nonzero rational.
long valuation(const Rational& x, unsigned long p);

}  // namespace pmf
