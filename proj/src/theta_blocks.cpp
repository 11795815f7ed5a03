#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pmf/jacobi.hpp"

namespace pmf {

long ThetaBlockSpec::twice_index() const
{
    long s = 0;
    for (long d : thetas) s += d * d;
    return s;
}

bool ThetaBlockSpec::admissible() const
{
    for (long d : thetas)
        if (d < 1) return false;
    long l = static_cast<long>(thetas.size());
    // Integral weight, integral index and integral q-order (eta^c q-order c/24, theta 1/8).
    return twice_weight() % 2 == 0 && twice_index() % 2 == 0 && twice_index() > 0 && (eta_exponent + 3 * l) % 24 == 0;
}

std::string ThetaBlockSpec::to_string() const
{
    std::ostringstream os;
    os << "eta^" << eta_exponent << " theta[";
    for (std::size_t i = 0; i < thetas.size(); ++i) os << (i ? "," : "") << thetas[i];
    os << "]";
    return os.str();
}

Rational theta_block_min_order(const ThetaBlockSpec& spec)
{
    // ord(x) = (c + l)/24 + 1/2 sum B2({d_i x}), B2(t) = t^2 - t + 1/6, on [0, 1/2].
    std::set<Rational> breaks{Rational(0), Rational(1, 2)};
    for (long d : spec.thetas)
        for (long j = 1; 2 * j <= d; ++j) breaks.insert(Rational(j, d));
    std::vector<Rational> pts(breaks.begin(), breaks.end());
    Rational base(static_cast<long>(spec.eta_exponent + static_cast<long>(spec.thetas.size())), 24);
    auto ord = [&](const Rational& x, const std::vector<long>& fl) {
        Rational v = base;
        for (std::size_t i = 0; i < spec.thetas.size(); ++i) {
            Rational t = spec.thetas[i] * x - fl[i];
            v += (t * t - t + Rational(1, 6)) / 2;
        }
        return v;
    };
    std::optional<Rational> best;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const Rational &a = pts[s], &b = pts[s + 1];
        Rational mid = (a + b) / 2;
        std::vector<long> fl;
        for (long d : spec.thetas) {
            Rational y = d * mid;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
            fl.push_back(q.get_si());
        }
        // On (a,b) the order is quadratic: alpha x^2 + beta x + const.
        Rational alpha = 0, beta = 0;
        for (std::size_t i = 0; i < spec.thetas.size(); ++i) {
            long d = spec.thetas[i];
            alpha += Rational(d * d, 2);
            beta += Rational(-2 * d * fl[i] - d, 2);
        }
        std::vector<Rational> cand{a, b};
        if (alpha != 0) {
            Rational v = -beta / (2 * alpha);
            if (v > a && v < b) cand.push_back(v);
        }
        for (const auto& x : cand) {
            Rational o = ord(x, fl);
            if (!best || o < *best) best = o;
        }
    }
    return *best;
}

std::vector<ThetaBlockSpec> enumerate_cusp_theta_blocks(long m, long eta_exponent, std::size_t count, std::size_t limit)
{
    std::vector<ThetaBlockSpec> out;
    std::vector<long> cur;
    ThetaBlockSpec probe{eta_exponent, std::vector<long>(count, 1)};
    if ((probe.twice_weight()) % 2 || (eta_exponent + 3 * static_cast<long>(count)) % 24)
        throw std::invalid_argument("inadmissible theta-block family");
    bool done = false;
    // Depth-first over nonincreasing tuples; rem = remaining sum of squares.
    auto rec = [&](auto&& self, long rem, long cap, std::size_t slots) -> void {
        if (done) return;
        if (slots == 0) {
            if (rem != 0) return;
            ThetaBlockSpec s{eta_exponent, cur};
            if (theta_block_min_order(s) > 0) {
                out.push_back(s);
                if (limit && out.size() >= limit) done = true;
            }
            return;
        }
        long hi = std::min<long>(cap, static_cast<long>(std::sqrt(static_cast<double>(rem))) + 1);
        for (long d = hi; d >= 1; --d) {
            long left = rem - d * d;
            if (left < static_cast<long>(slots - 1)) continue;
            if (left > static_cast<long>(slots - 1) * d * d) break;
            cur.push_back(d);
            self(self, left, d, slots - 1);
            cur.pop_back();
        }
    };
    rec(rec, 2 * m, 2 * m, count);
    return out;
}

// ---- exact expansion ----

namespace {

std::vector<std::uint64_t> expansion_primes(std::size_t k)
{
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = (std::uint64_t(1) << 62) - 1; ps.size() < k; p -= 2)
        if (is_prime(p)) ps.push_back(p);
    return ps;
}

struct Grid {
    long rows = 0;    // q exponents 0..rows-1 relative to the block's q-order
    long R = 0;       // zeta exponent doubled ranges over [-R, R]
    std::vector<std::uint64_t> a;
    std::uint64_t& at(long i, long r2) { return a[i * (2 * R + 1) + (r2 + R)]; }
    std::uint64_t at(long i, long r2) const { return a[i * (2 * R + 1) + (r2 + R)]; }
};

Grid expand_mod(const ThetaBlockSpec& spec, long rows, long R, std::uint64_t p)
{
    Grid g{rows, R, std::vector<std::uint64_t>(rows * (2 * R + 1), 0)};
    Grid h = g;
    g.at(0, 0) = 1;
    long width = 2 * R + 1;
    for (long d : spec.thetas) {
        std::fill(h.a.begin(), h.a.end(), 0);
        // theta_d / q^(1/8) = sum_{n>=0} (-1)^n q^((n^2+n)/2) (zeta^((2n+1)d/2) - zeta^(-(2n+1)d/2))
        for (long n = 0; (n * n + n) / 2 < rows; ++n) {
            long e = (n * n + n) / 2;
            long s = (2 * n + 1) * d;
            bool neg = n % 2;
            for (long i = 0; i + e < rows; ++i) {
                const std::uint64_t* src = &g.a[i * width];
                std::uint64_t* dst = &h.a[(i + e) * width];
                for (long t = std::max(0L, s); t < width && t - s < width; ++t) {
                    std::uint64_t v = src[t - s];
                    if (!v) continue;
                    std::uint64_t& x = dst[t];
                    if (!neg) { x += v; if (x >= p) x -= p; }
                    else { x = x >= v ? x - v : x + p - v; }
                }
                for (long t = 0; t + s < width; ++t) {
                    std::uint64_t v = src[t + s];
                    if (!v) continue;
                    std::uint64_t& x = dst[t];
                    if (neg) { x += v; if (x >= p) x -= p; }
                    else { x = x >= v ? x - v : x + p - v; }
                }
            }
        }
        std::swap(g.a, h.a);
    }
    // prod (1-q^n)^c, applied one factor at a time.
    long c = spec.eta_exponent;
    for (long n = 1; n < rows; ++n) {
        for (long rep = 0; rep < std::labs(c); ++rep) {
            if (c < 0) {
                for (long i = n; i < rows; ++i) {
                    std::uint64_t* dst = &g.a[i * width];
                    const std::uint64_t* src = &g.a[(i - n) * width];
                    for (long t = 0; t < width; ++t) { std::uint64_t x = dst[t] + src[t]; dst[t] = x >= p ? x - p : x; }
                }
            } else {
                for (long i = rows - 1; i >= n; --i) {
                    std::uint64_t* dst = &g.a[i * width];
                    const std::uint64_t* src = &g.a[(i - n) * width];
                    for (long t = 0; t < width; ++t) dst[t] = dst[t] >= src[t] ? dst[t] - src[t] : dst[t] + p - src[t];
                }
            }
        }
    }
    return g;
}

// log2 of an upper bound for |coefficients| of the block up to q^(rows-1).
double coefficient_bound_log2(const ThetaBlockSpec& spec, long rows)
{
    std::vector<long double> b(rows, 0);
    b[0] = 1;
    for (std::size_t k = 0; k < spec.thetas.size(); ++k) {
        std::vector<long double> nb(rows, 0);
        for (long n = 0; (n * n + n) / 2 < rows; ++n) {
            long e = (n * n + n) / 2;
            for (long i = 0; i + e < rows; ++i) nb[i + e] += 2 * b[i];
        }
        b = nb;
    }
    long c = std::labs(spec.eta_exponent);
    for (long n = 1; n < rows; ++n)
        for (long rep = 0; rep < c; ++rep)
            for (long i = n; i < rows; ++i) b[i] += b[i - n];
    long double mx = 1;
    for (auto x : b) mx = std::max(mx, x);
    return static_cast<double>(std::log2(mx));
}

}  // namespace

ThetaBlockResult theta_block(const ThetaBlockSpec& spec, long disc_bound, Ring ring)
{
    if (!spec.admissible()) throw std::invalid_argument("inadmissible theta block " + spec.to_string());
    if (ring.kind == Ring::Kind::Rationals) ring = Ring::integers();
    long m = spec.twice_index() / 2;
    int k = static_cast<int>(spec.twice_weight() / 2);
    long shift = (spec.eta_exponent + 3 * static_cast<long>(spec.thetas.size())) / 24;
    long n_max = std::max(0L, (disc_bound - 1 + m * m) / (4 * m));
    long rows = n_max - shift + 1;
    if (rows <= 0) return {JacobiFormQExp(k, m, ring, disc_bound), ""};
    long R = 0;
    for (long d : spec.thetas) {
        long n = 0;
        while (((n + 1) * (n + 1) + (n + 1)) / 2 < rows) ++n;
        R += (2 * n + 1) * d;
    }
    std::vector<std::uint64_t> primes;
    if (ring.is_prime_field()) {
        primes = {ring.p};
    } else {
        double bits = coefficient_bound_log2(spec, rows) + 2;
        primes = expansion_primes(static_cast<std::size_t>(std::ceil(bits / 61.0)));
    }
    std::vector<Grid> grids;
    for (auto p : primes) grids.push_back(expand_mod(spec, rows, R, p));

    // CRT (Garner) to the symmetric integer representative.
    Integer M = 1;
    for (auto p : primes) M *= Integer(static_cast<unsigned long>(p));
    auto value = [&](long i, long r2) -> Rational {
        if (ring.is_prime_field()) return Rational(static_cast<unsigned long>(grids[0].at(i, r2)));
        Integer x = 0, mod = 1;
        for (std::size_t j = 0; j < primes.size(); ++j) {
            std::uint64_t p = primes[j];
            std::uint64_t xr = residue(x, p);
            std::uint64_t t = mulmod((grids[j].at(i, r2) + p - xr) % p, invmod(residue(mod, p), p), p);
            x += mod * Integer(static_cast<unsigned long>(t));
            mod *= Integer(static_cast<unsigned long>(p));
        }
        if (2 * x > M) x -= M;
        return Rational(x);
    };
    auto nonzero = [&](long i, long r2) {
        for (const auto& g : grids)
            if (g.at(i, r2)) return true;
        return false;
    };

    JacobiFormQExp f(k, m, ring, disc_bound);
    std::set<JacobiKey> assigned;
    for (long i = 0; i < rows; ++i) {
        long n = i + shift;
        for (long r2 = -R; r2 <= R; ++r2) {
            bool nz = nonzero(i, r2);
            if (r2 % 2) {
                if (nz) throw std::logic_error("odd zeta exponent in theta block expansion");
                continue;
            }
            long r = r2 / 2;
            long D = 4 * n * m - r * r;
            if (D >= disc_bound) continue;
            if (nz && D < 0)
                return {std::nullopt, "not holomorphic: nonzero coefficient at (n,r)=(" + std::to_string(n) + "," +
                                          std::to_string(r) + ") with 4nm-r^2=" + std::to_string(D)};
            if (nz && D == 0)
                return {std::nullopt, "not a cusp form: nonzero coefficient at (n,r)=(" + std::to_string(n) + "," +
                                          std::to_string(r) + ") with 4nm-r^2=0"};
            if (D <= 0) continue;
            Rational v = nz ? value(i, r2) : Rational(0);
            JacobiKey key{D, f.reduce_r(r)};
            if (!assigned.count(key)) {
                f.set_class(D, r, v);
                assigned.insert(key);
                assigned.insert({D, f.reduce_r(-r)});
            } else if (f.class_coeff(D, r) != v) {
                throw std::logic_error("class invariance violated in theta block at (n,r)=(" + std::to_string(n) + "," +
                                       std::to_string(r) + ")");
            }
        }
    }
    return {f, ""};
}

}  // namespace pmf
