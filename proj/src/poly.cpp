#include "pmf/poly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pmf {

void trim(QPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(FpPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const QPoly& f)
{
    QPoly g = f;
    trim(g);
    return static_cast<int>(g.size()) - 1;
}

int degree(const FpPoly& f)
{
    FpPoly g = f;
    trim(g);
    return static_cast<int>(g.size()) - 1;
}

QPoly poly_add(const QPoly& a, const QPoly& b)
{
    QPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    trim(c);
    return c;
}

QPoly poly_sub(const QPoly& a, const QPoly& b)
{
    QPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    trim(c);
    return c;
}

QPoly poly_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

QPoly poly_derivative(const QPoly& f)
{
    QPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    trim(d);
    return d;
}

Rational poly_eval(const QPoly& f, const Rational& x)
{
    Rational v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = v * x + f[i];
    return v;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r)
{
    QPoly d = b;
    trim(d);
    if (d.empty()) throw std::domain_error("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, 0);
    while (r.size() >= d.size()) {
        Rational c = r.back() / d.back();
        std::size_t shift = r.size() - d.size();
        q[shift] = c;
        for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= c * d[i];
        trim(r);
    }
    trim(q);
}

QPoly poly_gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

bool poly_squarefree(const QPoly& f)
{
    return degree(poly_gcd(f, poly_derivative(f))) == 0;
}

std::string poly_to_string(const QPoly& f, const std::string& var)
{
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        Rational c = f[i];
        if (!s.empty()) {
            s += c < 0 ? " - " : " + ";
            c = abs(c);
        } else if (c < 0 && i > 0 && c == -1) {
            s += "-";
            c = 1;
        }
        if (i == 0 || c != 1) s += c.get_str();
        if (i > 0) {
            if (i == 0 || c != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

FpPoly poly_reduce(const QPoly& f, std::uint64_t p)
{
    FpPoly g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = residue(f[i], p);
    trim(g);
    return g;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(c);
    return c;
}

void fp_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r, std::uint64_t p)
{
    FpPoly d = b;
    trim(d);
    if (d.empty()) throw std::domain_error("polynomial division by zero");
    std::uint64_t inv = invmod(d.back(), p);
    r = a;
    trim(r);
    q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, 0);
    while (r.size() >= d.size()) {
        std::uint64_t c = mulmod(r.back(), inv, p);
        std::size_t shift = r.size() - d.size();
        q[shift] = c;
        for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] = (r[shift + i] + p - mulmod(c, d[i], p)) % p;
        trim(r);
    }
    trim(q);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        FpPoly q, r;
        fp_divmod(a, b, q, r, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

static FpPoly fp_derivative(const FpPoly& f, std::uint64_t p)
{
    FpPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulmod(f[i], i % p, p));
    trim(d);
    return d;
}

bool fp_squarefree(const FpPoly& f, std::uint64_t p)
{
    FpPoly d = fp_derivative(f, p);
    if (d.empty()) return degree(f) <= 0;
    return degree(fp_gcd(f, d, p)) == 0;
}

static FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p)
{
    FpPoly q, r;
    fp_divmod(fp_mul(a, b, p), m, q, r, p);
    return r;
}

static FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint64_t p)
{
    FpPoly result{1};
    FpPoly q, r;
    fp_divmod(base, m, q, r, p);
    base = r;
    while (e) {
        if (e & 1) result = fp_mulmod(result, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

std::vector<int> fp_factor_degrees(const FpPoly& f0, std::uint64_t p)
{
    FpPoly f = f0;
    trim(f);
    if (degree(f) < 1) return {};
    std::uint64_t inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    std::vector<int> degs;
    FpPoly h{0, 1};  // x^(p^i) mod f
    for (int i = 1; 2 * i <= degree(f); ++i) {
        h = fp_powmod(h, p, f, p);
        FpPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        FpPoly g = fp_gcd(f, diff, p);
        int dg = degree(g);
        if (dg > 0) {
            for (int k = 0; k < dg / i; ++k) degs.push_back(i);
            FpPoly q, r;
            fp_divmod(f, g, q, r, p);
            f = q;
            FpPoly q2, r2;
            fp_divmod(h, f, q2, r2, p);
            h = r2;
        }
    }
    if (degree(f) > 0) degs.push_back(degree(f));
    std::sort(degs.begin(), degs.end());
    return degs;
}

std::vector<std::pair<Integer, int>> integer_roots(const QPoly& f0)
{
    QPoly f = f0;
    trim(f);
    std::vector<std::pair<Integer, int>> roots;
    if (f.empty()) throw std::invalid_argument("roots of zero polynomial");
    // Clear denominators.
    Integer l = 1;
    for (auto& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (auto& c : f) c *= l;
    int zero_mult = 0;
    while (f.size() > 1 && f[0] == 0) {
        f.erase(f.begin());
        ++zero_mult;
    }
    if (zero_mult) roots.push_back({0, zero_mult});
    if (f.size() <= 1) return roots;
    Integer c0 = abs(Integer(f[0].get_num()));
    // Candidates are divisors of the constant term; enumerate by trial up to sqrt.
    std::set<Integer> cand;
    for (Integer d = 1; d * d <= c0; ++d) {
        if (c0 % d == 0) {
            cand.insert(d);
            cand.insert(c0 / d);
        }
    }
    for (const auto& d : cand) {
        for (int s : {1, -1}) {
            Rational x(d * s);
            int mult = 0;
            while (poly_eval(f, x) == 0) {
                QPoly q, r;
                poly_divmod(f, {-x, 1}, q, r);
                f = q;
                ++mult;
            }
            if (mult) roots.push_back({d * s, mult});
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

IrreducibilityWitness irreducibility_by_patterns(const QPoly& f, int max_primes)
{
    IrreducibilityWitness w;
    int n = degree(f);
    if (n < 1) throw std::invalid_argument("irreducibility of a constant");
    for (const auto& c : f)
        if (c.get_den() != 1) throw std::invalid_argument("irreducibility test needs integral coefficients");
    if (n == 1) {
        w.irreducible = true;
        return w;
    }
    // allowed[d]: a factor of degree d over Q is still possible.
    std::vector<bool> allowed(n + 1, true);
    int used = 0;
    for (std::uint64_t p = 3; used < max_primes && p < 100000; p += 2) {
        if (!is_prime(p)) continue;
        FpPoly g = poly_reduce(f, p);
        if (degree(g) != n || !fp_squarefree(g, p)) continue;
        auto degs = fp_factor_degrees(g, p);
        std::vector<bool> sums(n + 1, false);
        sums[0] = true;
        for (int d : degs)
            for (int s = n; s >= d; --s)
                if (sums[s - d]) sums[s] = true;
        for (int d = 1; d < n; ++d) allowed[d] = allowed[d] && sums[d];
        w.patterns.push_back({p, degs});
        ++used;
        bool any = false;
        for (int d = 1; d < n; ++d) any = any || allowed[d];
        if (!any) {
            w.irreducible = true;
            return w;
        }
    }
    return w;
}

}  // namespace pmf
