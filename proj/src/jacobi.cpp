#include "pmf/jacobi.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pmf/linalg.hpp"

namespace pmf {

JacobiFormQExp::JacobiFormQExp(int weight, long index, Ring ring, long disc_bound)
    : weight_(weight), index_(index), ring_(ring), disc_bound_(disc_bound)
{
    if (index < 1) throw std::invalid_argument("Jacobi index must be positive");
}

long JacobiFormQExp::reduce_r(long r) const
{
    long m2 = 2 * index_;
    return ((r % m2) + m2) % m2;
}

bool JacobiFormQExp::valid_class(long D, long r) const
{
    long v = D + r * r;
    return v % (4 * index_) == 0;
}

long JacobiFormQExp::min_n(long D, long r0) const
{
    long r = std::min(reduce_r(r0), 2 * index_ - reduce_r(r0));
    if (!valid_class(D, r)) throw std::invalid_argument("discriminant not compatible with r mod 2m");
    return (D + r * r) / (4 * index_);
}

Rational JacobiFormQExp::class_coeff(long D, long r) const
{
    if (D >= disc_bound_)
        throw std::out_of_range("Jacobi coefficient with D=" + std::to_string(D) + " beyond disc_bound " +
                                std::to_string(disc_bound_));
    auto it = coeffs_.find({D, reduce_r(r)});
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational JacobiFormQExp::coeff(long n, long r) const
{
    return class_coeff(4 * n * index_ - r * r, r);
}

void JacobiFormQExp::set_class(long D, long r, const Rational& v)
{
    if (!valid_class(D, r)) throw std::invalid_argument("invalid Jacobi class");
    if (D >= disc_bound_) return;
    Rational x = ring_.normalize(v);
    Rational y = ring_.normalize(weight_ % 2 == 0 ? x : Rational(-x));
    JacobiKey k1{D, reduce_r(r)}, k2{D, reduce_r(-r)};
    if (k1 == k2 && x != y) throw std::logic_error("odd-weight class fixed by r -> -r must vanish");
    for (auto [k, val] : {std::pair{k1, x}, std::pair{k2, y}}) {
        if (val == 0)
            coeffs_.erase(k);
        else
            coeffs_[k] = val;
    }
}

JacobiFormQExp JacobiFormQExp::truncate(long disc_bound) const
{
    JacobiFormQExp f(weight_, index_, ring_, std::min(disc_bound, disc_bound_));
    for (const auto& [k, v] : coeffs_)
        if (k.D < f.disc_bound_) f.coeffs_.emplace(k, v);
    return f;
}

bool JacobiFormQExp::operator==(const JacobiFormQExp& o) const
{
    return weight_ == o.weight_ && index_ == o.index_ && ring_ == o.ring_ && disc_bound_ == o.disc_bound_ &&
           coeffs_ == o.coeffs_;
}

static void require_compatible(const JacobiFormQExp& a, const JacobiFormQExp& b)
{
    if (a.weight() != b.weight() || a.index() != b.index())
        throw std::invalid_argument("Jacobi forms of different weight or index");
    require_same_ring(a.ring(), b.ring());
}

JacobiFormQExp jacobi_scale(const JacobiFormQExp& f, const Rational& c)
{
    JacobiFormQExp g(f.weight(), f.index(), f.ring(), f.disc_bound());
    for (const auto& [k, v] : f.coeffs()) g.set_class(k.D, k.r0, v * c);
    return g;
}

JacobiFormQExp jacobi_add(const JacobiFormQExp& a, const JacobiFormQExp& b)
{
    require_compatible(a, b);
    JacobiFormQExp g(a.weight(), a.index(), a.ring(), std::min(a.disc_bound(), b.disc_bound()));
    std::set<JacobiKey> keys;
    for (const auto& [k, v] : a.coeffs()) keys.insert(k);
    for (const auto& [k, v] : b.coeffs()) keys.insert(k);
    for (const auto& k : keys)
        if (k.D < g.disc_bound()) g.set_class(k.D, k.r0, a.class_coeff(k.D, k.r0) + b.class_coeff(k.D, k.r0));
    return g;
}

JacobiFormQExp reduce_mod_p(const JacobiFormQExp& f, std::uint64_t p)
{
    JacobiFormQExp g(f.weight(), f.index(), Ring::prime_field(p), f.disc_bound());
    for (const auto& [k, v] : f.coeffs()) g.set_class(k.D, k.r0, v);
    return g;
}

JacobiFormQExp content_normalize(const JacobiFormQExp& f)
{
    if (f.is_zero()) throw std::invalid_argument("content of the zero form");
    if (f.ring().is_prime_field()) throw std::invalid_argument("content is undefined over F_p");
    Integer num = 0, den = 1;
    for (const auto& [k, v] : f.coeffs()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    }
    Rational c(den, num);
    c.canonicalize();
    JacobiFormQExp g(f.weight(), f.index(), Ring::integers(), f.disc_bound());
    for (const auto& [k, v] : f.coeffs()) g.set_class(k.D, k.r0, v * c);
    return g;
}

JacobiFormQExp jacobi_atkin_lehner(const JacobiFormQExp& f, long ell)
{
    const long m = f.index();
    if (ell <= 0 || m % ell != 0 || std::gcd(ell, m / ell) != 1)
        throw std::invalid_argument("jacobi_atkin_lehner: l must exactly divide the index");
    const long M = m / ell;
    long Minv = 0;
    if (ell > 1) {
        Minv = static_cast<long>(invmod(static_cast<std::uint64_t>(M % ell), static_cast<std::uint64_t>(ell)));
    }
    JacobiFormQExp g(f.weight(), m, f.ring(), f.disc_bound());
    for (const auto& [k, v] : f.coeffs()) {
        long t = ell > 1 ? (((-k.r0 % ell) + ell) % ell) * Minv % ell : 0;
        g.set_class(k.D, k.r0 + 2 * M * t, v);
    }
    return g;
}

namespace {

// Kronecker symbol (a / l) for a prime l.
int kronecker_prime(long a, long l)
{
    if (l == 2) {
        if (a % 2 == 0) return 0;
        long r = ((a % 8) + 8) % 8;
        return r == 1 || r == 7 ? 1 : -1;
    }
    long r = ((a % l) + l) % l;
    if (r == 0) return 0;
    return powmod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((l - 1) / 2), static_cast<std::uint64_t>(l)) == 1
               ? 1
               : -1;
}

}  // namespace

JacobiFormQExp jacobi_hecke(const JacobiFormQExp& f, long ell)
{
    const long m = f.index();
    if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell)) || m % ell == 0)
        throw std::invalid_argument("jacobi_hecke: l must be a prime not dividing the index");
    const long l2 = ell * ell, m2 = 2 * m;
    const long bound = (f.disc_bound() + l2 - 1) / l2;
    const int k = f.weight();
    const Rational mid = rpow(Rational(ell), k - 2), low = rpow(Rational(ell), 2 * k - 3);
    JacobiFormQExp g(k, m, f.ring(), bound);
    for (long D = 1; D < bound; ++D)
        for (long r = 0; r < m2; ++r) {
            if (!g.valid_class(D, r)) continue;
            Rational v = f.class_coeff(l2 * D, ell * r);
            if (int e = kronecker_prime(-D, ell)) v += e * mid * f.class_coeff(D, r);
            if (D % l2 == 0) {
                for (long s = 0; s < m2; ++s)
                    if ((ell * s - r) % m2 == 0 && g.valid_class(D / l2, s)) {
                        v += low * f.class_coeff(D / l2, s);
                        break;
                    }
            }
            // Classes (D, r) and (D, -r) are set together; only visit the first.
            if (g.reduce_r(-r) < r) continue;
            g.set_class(D, r, v);
        }
    return g;
}

nlohmann::json to_json(const JacobiFormQExp& f)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [k, v] : f.coeffs()) coeffs.push_back({k.D, k.r0, f.min_n(k.D, k.r0), to_string(v)});
    return {{"weight", f.weight()},
            {"index", f.index()},
            {"ring", f.ring().name()},
            {"disc_bound", f.disc_bound()},
            {"coeffs", coeffs}};
}

JacobiFormQExp jacobi_from_json(const nlohmann::json& j)
{
    JacobiFormQExp f(j.at("weight").get<int>(), j.at("index").get<long>(), Ring::parse(j.at("ring").get<std::string>()),
                     j.at("disc_bound").get<long>());
    for (const auto& e : j.at("coeffs")) f.set_class(e.at(0).get<long>(), e.at(1).get<long>(), parse_rational(e.at(3).get<std::string>()));
    return f;
}

// ---- span rank ----

namespace {

template <class F>
SpanRankResult greedy_rank(const F& f, const std::vector<JacobiFormQExp>& forms, const std::vector<JacobiKey>& cols)
{
    using T = typename F::T;
    SpanRankResult res;
    std::vector<std::vector<T>> rows;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        std::vector<T> v(cols.size(), f.zero());
        for (std::size_t c = 0; c < cols.size(); ++c) v[c] = f.from(forms[i].class_coeff(cols[c].D, cols[c].r0));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (f.is_zero(v[pivots[r]])) continue;
            T factor = v[pivots[r]];
            for (std::size_t c = 0; c < cols.size(); ++c)
                if (!f.is_zero(rows[r][c])) v[c] = f.sub(v[c], f.mul(factor, rows[r][c]));
        }
        std::size_t piv = 0;
        while (piv < cols.size() && f.is_zero(v[piv])) ++piv;
        if (piv == cols.size()) continue;
        T inv = f.inv(v[piv]);
        for (auto& x : v) x = f.mul(x, inv);
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        res.selected.push_back(i);
    }
    res.rank = rows.size();
    res.lower_bound = res.rank < forms.size();
    return res;
}

}  // namespace

SpanRankResult span_rank(const std::vector<JacobiFormQExp>& forms, Ring ring, std::optional<std::uint64_t> check_p)
{
    if (forms.empty()) return {};
    std::set<JacobiKey> keys;
    for (const auto& f : forms) {
        if (f.weight() != forms[0].weight() || f.index() != forms[0].index())
            throw std::invalid_argument("span_rank: inconsistent weight or index");
        for (const auto& [k, v] : f.coeffs()) keys.insert(k);
    }
    std::vector<JacobiKey> cols(keys.begin(), keys.end());
    SpanRankResult res;
    if (ring.is_prime_field())
        res = greedy_rank(Fp(ring.p), forms, cols);
    else
        res = greedy_rank(QQ{}, forms, cols);
    if (check_p) {
        std::vector<JacobiFormQExp> sel;
        for (auto i : res.selected) sel.push_back(forms[i]);
        res.rank_mod_p = greedy_rank(Fp(*check_p), sel, cols).rank;
    }
    return res;
}

// ---- dimensions ----

static long dim_cusp_level1(long k)
{
    if (k < 12 || k % 2) return 0;
    long d = k / 12;
    if (k % 12 == 2) d -= 1;
    return d;
}

DimensionResult dim_jacobi_cusp(int k, long m)
{
    if (k < 2 || k % 2) throw std::invalid_argument("dim_jacobi_cusp supports even k >= 2 only");
    if (m < 1) throw std::invalid_argument("index must be positive");
    if (k >= 4) {
        long d = 0;
        for (long j = 0; j <= m; ++j) d += dim_cusp_level1(k + 2 * j) - (j * j) / (4 * m);
        return {d, "formula"};
    }
    static const std::map<long, long> fixture{{37, 1}, {731, 18}};
    auto it = fixture.find(m);
    if (it != fixture.end()) return {it->second, "fixture"};
    return {std::nullopt, "unknown"};
}

// ---- generators ----

TruncatedSeries eisenstein_series(int k, long n_max)
{
    Rational c;
    if (k == 4)
        c = 240;
    else if (k == 6)
        c = -504;
    else
        throw std::invalid_argument("eisenstein_series supports k = 4, 6");
    std::map<long, Rational> m{{0, 1}};
    for (long n = 1; n <= n_max; ++n) {
        Integer s = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) s += ipow(Integer(d), k - 1);
        m[n] = c * Rational(s);
    }
    return series_from_integer_exponents(Ring::integers(), m, n_max + 1);
}

TwoVarSeries phi_m2_1(long n_max)
{
    long prec = (n_max + 1) * kDenom;
    auto t = theta_d(1, prec + 6);
    auto s = twovar_mul(twovar_mul(t, t), series_pow(eta(prec + 6 + 12), -6));
    return s.truncate(prec);
}

TwoVarSeries phi_0_1(long n_max)
{
    long prec = (n_max + 1) * kDenom;
    // 1/12 + sum_{n>=1} sum_{d|n} d (zeta^d - 2 + zeta^-d) q^n
    TwoVarSeries wp(Ring::rationals(), prec);
    wp.add_to(0, 0, Rational(1, 12));
    for (long n = 1; n <= n_max; ++n)
        for (long d = 1; d <= n; ++d) {
            if (n % d) continue;
            wp.add_to(n * kDenom, 2 * d, d);
            wp.add_to(n * kDenom, 0, -2 * d);
            wp.add_to(n * kDenom, -2 * d, d);
        }
    TwoVarSeries phi(Ring::rationals(), prec);
    auto base = phi_m2_1(n_max);
    for (const auto& [k, v] : base.coeffs()) phi.add_to(k.first, k.second, v);
    // prod (1 - q^n zeta)^2 (1 - q^n zeta^-1)^2 (1 - q^n)^-4
    TwoVarSeries prod(Ring::rationals(), prec);
    prod.add_to(0, 0, 1);
    for (long n = 1; n <= n_max; ++n) {
        for (long r2 : {2L, 2L, -2L, -2L}) {
            TwoVarSeries f(Ring::rationals(), prec);
            f.add_to(0, 0, 1);
            f.add_to(n * kDenom, r2, -1);
            prod = twovar_mul(prod, f);
        }
    }
    TruncatedSeries e(Ring::rationals(), prec);
    auto eta4 = series_pow(eta(prec + 8), -4);
    for (const auto& [k, v] : eta4.coeffs()) e.set(k, v);
    // prod (1-q^n)^-4 = q^(4/24) eta^-4.
    TwoVarSeries pe(Ring::rationals(), prec);
    for (const auto& [k, v] : e.coeffs()) pe.add_to(k + 4, 0, v);
    prod = twovar_mul(prod, pe);
    auto s = twovar_scale(twovar_add(twovar_mul(phi, wp), prod), 12);
    TwoVarSeries out(Ring::integers(), prec);
    for (const auto& [k, v] : s.coeffs()) out.add_to(k.first, k.second, v);
    return out;
}

JacobiFormQExp jacobi_from_series(const TwoVarSeries& s, int weight, long index, long disc_bound)
{
    long n_max = (disc_bound - 1 + index * index) / (4 * index);
    if (s.q_precision() < (n_max + 1) * kDenom)
        throw std::invalid_argument("series precision too small for the requested disc_bound");
    JacobiFormQExp f(weight, index, s.ring(), disc_bound);
    std::map<JacobiKey, Rational> seen;
    for (const auto& [k, v] : s.coeffs()) {
        if (k.first % kDenom || k.second % 2) throw std::invalid_argument("non-integral exponent in Jacobi expansion");
        long n = k.first / kDenom, r = k.second / 2;
        if (n > n_max) continue;
        long D = 4 * n * index - r * r;
        if (D >= disc_bound) continue;
        JacobiKey key{D, f.reduce_r(r)};
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, v);
            f.set_class(D, r, v);
        } else if (it->second != v) {
            throw std::logic_error("class invariance violated at (n,r)=(" + std::to_string(n) + "," + std::to_string(r) + ")");
        }
    }
    // Every representative inside the expansion must carry the class value, including zeros.
    for (const auto& [key, v] : f.coeffs()) {
        long rmax = 2 * index + 2;
        while (rmax * rmax <= 4 * n_max * index - key.D) ++rmax;
        for (long r = -rmax; r <= rmax; ++r) {
            if (f.reduce_r(r) != key.r0) continue;
            long num = key.D + r * r;
            if (num % (4 * index)) continue;
            long n = num / (4 * index);
            if (n > n_max) continue;
            if (s.coeff(n * kDenom, 2 * r) != v)
                throw std::logic_error("class invariance violated at (n,r)=(" + std::to_string(n) + "," + std::to_string(r) + ")");
        }
    }
    return f;
}

std::vector<JacobiFormQExp> jacobi_cusp_basis(int k, long m, long disc_bound)
{
    if (k % 2) throw std::invalid_argument("jacobi_cusp_basis supports even weight only");
    // Weak forms have D >= -m^2; the expansion must reach every class with D < disc_bound.
    long n_max = (disc_bound - 1 + m * m) / (4 * m);
    long prec = (n_max + 1) * kDenom;
    auto e4 = eisenstein_series(4, n_max), e6 = eisenstein_series(6, n_max);
    auto a = phi_m2_1(n_max), b = phi_0_1(n_max);
    std::vector<TwoVarSeries> apow{twovar_from_q(series_from_integer_exponents(Ring::integers(), {{0, 1}}, n_max + 1))};
    std::vector<TwoVarSeries> bpow{apow[0]};
    for (long c = 1; c <= m; ++c) {
        apow.push_back(twovar_mul(apow.back(), a).truncate(prec));
        bpow.push_back(twovar_mul(bpow.back(), b).truncate(prec));
    }
    std::vector<JacobiFormQExp> weak;
    for (long c = 0; c <= m; ++c) {
        long w = k + 2 * c;  // weight carried by E4^x E6^y
        if (w < 0) continue;
        for (long y = 0; 6 * y <= w; ++y) {
            if ((w - 6 * y) % 4) continue;
            long x = (w - 6 * y) / 4;
            auto q = series_mul(series_pow(e4, x), series_pow(e6, y));
            auto s = twovar_mul(twovar_mul(apow[c], bpow[m - c]), q).truncate(prec);
            weak.push_back(jacobi_from_series(s, k, m, disc_bound));
        }
    }
    if (weak.empty()) return {};
    std::set<JacobiKey> keyset;
    for (const auto& f : weak)
        for (const auto& [key, v] : f.coeffs()) keyset.insert(key);
    std::vector<JacobiKey> all(keyset.begin(), keyset.end()), bad, good;
    for (const auto& key : all) (key.D <= 0 ? bad : good).push_back(key);
    QQ q;
    // Combinations killing every class with D <= 0.
    Matrix<QQ> cond(bad.size(), weak.size(), 0);
    for (std::size_t i = 0; i < bad.size(); ++i)
        for (std::size_t j = 0; j < weak.size(); ++j) cond(i, j) = weak[j].class_coeff(bad[i].D, bad[i].r0);
    auto ker = bad.empty() ? identity(q, weak.size()) : nullspace(q, cond);
    Matrix<QQ> vals(ker.rows, good.size(), 0);
    for (std::size_t i = 0; i < ker.rows; ++i)
        for (std::size_t j = 0; j < weak.size(); ++j) {
            if (ker(i, j) == 0) continue;
            for (std::size_t c = 0; c < good.size(); ++c) vals(i, c) += ker(i, j) * weak[j].class_coeff(good[c].D, good[c].r0);
        }
    auto piv = rref(q, vals);
    std::vector<JacobiFormQExp> basis;
    for (std::size_t i = 0; i < piv.size(); ++i) {
        JacobiFormQExp f(k, m, Ring::rationals(), disc_bound);
        for (std::size_t c = 0; c < good.size(); ++c)
            if (vals(i, c) != 0) f.set_class(good[c].D, good[c].r0, vals(i, c));
        basis.push_back(content_normalize(f));
    }
    return basis;
}

}  // namespace pmf
