#include "pmf/ring.hpp"

namespace pmf {

Ring Ring::prime_field(std::uint64_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
    if (p >= (std::uint64_t(1) << 62)) throw std::invalid_argument("prime too large");
    return {Kind::PrimeField, p};
}

Rational Ring::normalize(const Rational& x) const
{
    switch (kind) {
    case Kind::Integers:
        if (x.get_den() != 1) throw std::invalid_argument("non-integral value " + to_string(x) + " in ZZ");
        return x;
    case Kind::Rationals:
        return x;
    case Kind::PrimeField:
        return Rational(static_cast<unsigned long>(residue(x, p)));
    }
    return x;
}

std::string Ring::name() const
{
    switch (kind) {
    case Kind::Integers: return "ZZ";
    case Kind::Rationals: return "QQ";
    case Kind::PrimeField: return "GF(" + std::to_string(p) + ")";
    }
    return "?";
}

Ring Ring::parse(const std::string& s)
{
    if (s == "ZZ") return integers();
    if (s == "QQ") return rationals();
    if (s.size() > 4 && s.compare(0, 3, "GF(") == 0 && s.back() == ')')
        return prime_field(std::stoull(s.substr(3, s.size() - 4)));
    throw std::invalid_argument("unknown ring: " + s);
}

void require_same_ring(const Ring& a, const Ring& b)
{
    if (a != b) throw RingMismatch("ring mismatch: " + a.name() + " vs " + b.name());
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("not invertible mod " + std::to_string(m));
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t residue(const Integer& x, std::uint64_t p)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), Integer(static_cast<unsigned long>(p)).get_mpz_t());
    return r.get_ui();
}

std::uint64_t residue(const Rational& x, std::uint64_t p)
{
    std::uint64_t d = residue(Integer(x.get_den()), p);
    if (d == 0) throw NonReducible("denominator of " + to_string(x) + " divisible by " + std::to_string(p));
    return mulmod(residue(Integer(x.get_num()), p), invmod(d, p), p);
}

long long symmetric(std::uint64_t r, std::uint64_t p)
{
    return r > p / 2 ? static_cast<long long>(r) - static_cast<long long>(p) : static_cast<long long>(r);
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return q;
}

Integer ipow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational rpow(const Rational& b, long e)
{
    if (e >= 0) return Rational(ipow(b.get_num(), e), ipow(b.get_den(), e));
    if (b == 0) throw std::domain_error("zero to a negative power");
    Rational r(ipow(b.get_den(), -e), ipow(b.get_num(), -e));
    r.canonicalize();
    return r;
}

long valuation(const Rational& x, unsigned long p)
{
    if (x == 0) throw std::domain_error("valuation of zero");
    Integer pp(p);
    auto val = [&](Integer n) {
        long v = 0;
        while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) { n /= pp; ++v; }
        return v;
    };
    return val(abs(Integer(x.get_num()))) - val(Integer(x.get_den()));
}

}  // namespace pmf
