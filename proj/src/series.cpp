#include "pmf/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmf {

TruncatedSeries::TruncatedSeries(Ring ring, long precision) : ring_(ring), precision_(precision) {}

Rational TruncatedSeries::coeff(long num) const
{
    if (num >= precision_)
        throw std::out_of_range("coefficient at q^(" + std::to_string(num) + "/24) beyond precision");
    auto it = coeffs_.find(num);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::set(long num, const Rational& v)
{
    if (num >= precision_) return;
    Rational x = ring_.normalize(v);
    if (x == 0)
        coeffs_.erase(num);
    else
        coeffs_[num] = x;
}

void TruncatedSeries::add_to(long num, const Rational& v)
{
    if (num >= precision_ || v == 0) return;
    auto it = coeffs_.find(num);
    Rational x = ring_.normalize(it == coeffs_.end() ? v : it->second + v);
    if (x == 0) {
        if (it != coeffs_.end()) coeffs_.erase(it);
    } else if (it == coeffs_.end()) {
        coeffs_.emplace(num, x);
    } else {
        it->second = x;
    }
}

long TruncatedSeries::valuation() const
{
    return coeffs_.empty() ? precision_ : coeffs_.begin()->first;
}

TruncatedSeries TruncatedSeries::truncate(long precision) const
{
    TruncatedSeries s(ring_, std::min(precision, precision_));
    for (const auto& [e, c] : coeffs_)
        if (e < s.precision_) s.coeffs_.emplace(e, c);
    return s;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const
{
    return ring_ == o.ring_ && precision_ == o.precision_ && coeffs_ == o.coeffs_;
}

TruncatedSeries series_from_integer_exponents(Ring ring, const std::map<long, Rational>& c, long int_precision)
{
    TruncatedSeries s(ring, int_precision * kDenom);
    for (const auto& [e, v] : c) s.set(e * kDenom, v);
    return s;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b)
{
    require_same_ring(a.ring(), b.ring());
    TruncatedSeries s(a.ring(), std::min(a.precision(), b.precision()));
    for (const auto& [e, c] : a.coeffs()) s.add_to(e, c);
    for (const auto& [e, c] : b.coeffs()) s.add_to(e, c);
    return s;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return series_add(a, series_scale(b, -1));
}

TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c)
{
    TruncatedSeries s(a.ring(), a.precision());
    for (const auto& [e, v] : a.coeffs()) s.set(e, v * c);
    return s;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    require_same_ring(a.ring(), b.ring());
    long prec = std::min(a.precision() + b.valuation(), b.precision() + a.valuation());
    TruncatedSeries s(a.ring(), prec);
    for (const auto& [ea, ca] : a.coeffs()) {
        for (const auto& [eb, cb] : b.coeffs()) {
            if (ea + eb >= prec) break;
            s.add_to(ea + eb, ca * cb);
        }
    }
    return s;
}

static bool is_unit(const Ring& ring, const Rational& c)
{
    if (c == 0) return false;
    if (ring.kind == Ring::Kind::Integers) return c == 1 || c == -1;
    return true;
}

TruncatedSeries series_inverse(const TruncatedSeries& a)
{
    long v = a.valuation();
    if (v >= a.precision()) throw std::domain_error("inverse of a series that is zero to its precision");
    Rational c = a.coeff(v);
    if (!is_unit(a.ring(), c)) throw std::domain_error("leading coefficient " + to_string(c) + " is not a unit");
    Rational cinv = a.ring().normalize(1 / c);
    long rel = a.precision() - v;
    std::vector<std::pair<long, Rational>> tail;
    for (const auto& [e, x] : a.coeffs())
        if (e > v) tail.push_back({e - v, x});
    std::vector<Rational> b(rel, 0);
    b[0] = cinv;
    for (long k = 1; k < rel; ++k) {
        Rational acc = 0;
        for (const auto& [j, x] : tail) {
            if (j > k) break;
            if (b[k - j] != 0) acc += x * b[k - j];
        }
        if (acc != 0) b[k] = a.ring().normalize(-cinv * acc);
    }
    TruncatedSeries s(a.ring(), rel - v);
    for (long k = 0; k < rel; ++k)
        if (b[k] != 0) s.set(k - v, b[k]);
    return s;
}

TruncatedSeries series_pow(const TruncatedSeries& a, long e)
{
    if (e < 0) return series_pow(series_inverse(a), -e);
    long v = a.valuation();
    if (e == 0) {
        TruncatedSeries one(a.ring(), a.precision() - v);
        one.set(0, 1);
        return one;
    }
    TruncatedSeries base = a;
    std::optional<TruncatedSeries> result;
    while (e) {
        if (e & 1) result = result ? series_mul(*result, base) : base;
        e >>= 1;
        if (e) base = series_mul(base, base);
    }
    return *result;
}

TruncatedSeries reduce_mod_p(const TruncatedSeries& a, std::uint64_t p)
{
    TruncatedSeries s(Ring::prime_field(p), a.precision());
    for (const auto& [e, c] : a.coeffs()) s.set(e, c);
    return s;
}

TruncatedSeries eta(long precision)
{
    if (precision <= 0) throw std::invalid_argument("eta precision must be positive");
    TruncatedSeries s(Ring::integers(), precision);
    // Pentagonal numbers: q^((6k+1)^2/24) with sign (-1)^k.
    for (long k = 0;; ++k) {
        bool any = false;
        for (long kk : {k, -k - 1}) {
            long e = (6 * kk + 1) * (6 * kk + 1);
            if (e < precision) {
                s.set(e, (kk % 2 == 0) ? 1 : -1);
                any = true;
            }
        }
        if (!any) break;
    }
    return s;
}

TruncatedSeries eta_product(long precision)
{
    if (precision <= 0) throw std::invalid_argument("eta precision must be positive");
    TruncatedSeries s(Ring::integers(), precision);
    s.set(1, 1);
    for (long n = 1; kDenom * n + 1 < precision; ++n) {
        TruncatedSeries f(Ring::integers(), precision);
        f.set(0, 1);
        f.set(kDenom * n, -1);
        s = series_mul(s, f).truncate(precision);
    }
    return s;
}

nlohmann::json to_json(const TruncatedSeries& s)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [e, c] : s.coeffs()) coeffs.push_back({e, to_string(c)});
    return {{"ring", s.ring().name()}, {"denom", kDenom}, {"precision", s.precision()}, {"coeffs", coeffs}};
}

TruncatedSeries series_from_json(const nlohmann::json& j)
{
    if (j.at("denom").get<long>() != kDenom) throw std::invalid_argument("series denominator must be 24");
    TruncatedSeries s(Ring::parse(j.at("ring").get<std::string>()), j.at("precision").get<long>());
    for (const auto& e : j.at("coeffs")) s.set(e.at(0).get<long>(), parse_rational(e.at(1).get<std::string>()));
    return s;
}

// ---- two-variable series ----

TwoVarSeries::TwoVarSeries(Ring ring, long q_precision) : ring_(ring), q_precision_(q_precision) {}

Rational TwoVarSeries::coeff(long qnum, long r2) const
{
    if (qnum >= q_precision_) throw std::out_of_range("coefficient beyond q precision");
    auto it = coeffs_.find({qnum, r2});
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void TwoVarSeries::add_to(long qnum, long r2, const Rational& v)
{
    if (qnum >= q_precision_ || v == 0) return;
    auto it = coeffs_.find({qnum, r2});
    Rational x = ring_.normalize(it == coeffs_.end() ? v : it->second + v);
    if (x == 0) {
        if (it != coeffs_.end()) coeffs_.erase(it);
    } else if (it == coeffs_.end()) {
        coeffs_.emplace(Key{qnum, r2}, x);
    } else {
        it->second = x;
    }
}

long TwoVarSeries::q_valuation() const
{
    return coeffs_.empty() ? q_precision_ : coeffs_.begin()->first.first;
}

bool TwoVarSeries::has_declared_symmetry() const
{
    if (!symmetry_) return false;
    for (const auto& [k, v] : coeffs_) {
        Rational w = coeff(k.first, -k.second);
        if (ring_.normalize(w - *symmetry_ * v) != 0) return false;
    }
    return true;
}

TwoVarSeries TwoVarSeries::truncate(long q_precision) const
{
    TwoVarSeries s(ring_, std::min(q_precision, q_precision_));
    for (const auto& [k, v] : coeffs_)
        if (k.first < s.q_precision_) s.coeffs_.emplace(k, v);
    s.symmetry_ = symmetry_;
    return s;
}

bool TwoVarSeries::operator==(const TwoVarSeries& o) const
{
    return ring_ == o.ring_ && q_precision_ == o.q_precision_ && coeffs_ == o.coeffs_;
}

TwoVarSeries twovar_mul(const TwoVarSeries& a, const TwoVarSeries& b)
{
    require_same_ring(a.ring(), b.ring());
    long prec = std::min(a.q_precision() + b.q_valuation(), b.q_precision() + a.q_valuation());
    TwoVarSeries s(a.ring(), prec);
    for (const auto& [ka, ca] : a.coeffs()) {
        for (const auto& [kb, cb] : b.coeffs()) {
            if (ka.first + kb.first >= prec) break;
            s.add_to(ka.first + kb.first, ka.second + kb.second, ca * cb);
        }
    }
    if (a.declared_symmetry() && b.declared_symmetry()) s.declare_symmetry(*a.declared_symmetry() * *b.declared_symmetry());
    return s;
}

TwoVarSeries twovar_from_q(const TruncatedSeries& q)
{
    TwoVarSeries s(q.ring(), q.precision());
    for (const auto& [e, c] : q.coeffs()) s.add_to(e, 0, c);
    s.declare_symmetry(1);
    return s;
}

TwoVarSeries twovar_mul(const TwoVarSeries& a, const TruncatedSeries& b)
{
    return twovar_mul(a, twovar_from_q(b));
}

TwoVarSeries twovar_add(const TwoVarSeries& a, const TwoVarSeries& b)
{
    require_same_ring(a.ring(), b.ring());
    TwoVarSeries s(a.ring(), std::min(a.q_precision(), b.q_precision()));
    for (const auto& [k, c] : a.coeffs()) s.add_to(k.first, k.second, c);
    for (const auto& [k, c] : b.coeffs()) s.add_to(k.first, k.second, c);
    if (a.declared_symmetry() && a.declared_symmetry() == b.declared_symmetry()) s.declare_symmetry(*a.declared_symmetry());
    return s;
}

TwoVarSeries twovar_scale(const TwoVarSeries& a, const Rational& c)
{
    TwoVarSeries s(a.ring(), a.q_precision());
    for (const auto& [k, v] : a.coeffs()) s.add_to(k.first, k.second, v * c);
    if (a.declared_symmetry()) s.declare_symmetry(*a.declared_symmetry());
    return s;
}

TwoVarSeries twovar_substitute_zeta(const TwoVarSeries& a, long k)
{
    TwoVarSeries s(a.ring(), a.q_precision());
    for (const auto& [key, v] : a.coeffs()) s.add_to(key.first, key.second * k, v);
    if (a.declared_symmetry()) s.declare_symmetry(*a.declared_symmetry());
    return s;
}

TwoVarSeries reduce_mod_p(const TwoVarSeries& a, std::uint64_t p)
{
    TwoVarSeries s(Ring::prime_field(p), a.q_precision());
    for (const auto& [k, v] : a.coeffs()) s.add_to(k.first, k.second, v);
    if (a.declared_symmetry()) s.declare_symmetry(*a.declared_symmetry());
    return s;
}

TwoVarSeries theta_d(long d, long q_precision)
{
    if (d < 1) throw std::invalid_argument("theta_d needs d >= 1");
    TwoVarSeries s(Ring::integers(), q_precision);
    for (long n = 0;; ++n) {
        long e = 3 * (2 * n + 1) * (2 * n + 1);
        if (e >= q_precision) break;
        long sign = (n % 2 == 0) ? 1 : -1;
        // n and -n-1 give the same q power with opposite zeta powers and signs.
        s.add_to(e, (2 * n + 1) * d, sign);
        s.add_to(e, -(2 * n + 1) * d, -sign);
    }
    s.declare_symmetry(-1);
    return s;
}

TwoVarSeries theta_product(long q_precision)
{
    TwoVarSeries s(Ring::integers(), q_precision);
    s.add_to(3, 1, 1);
    s.add_to(3, -1, -1);
    for (long n = 1; kDenom * n + 3 < q_precision; ++n) {
        for (long r2 : {0L, 2L, -2L}) {
            TwoVarSeries f(Ring::integers(), q_precision);
            f.add_to(0, 0, 1);
            f.add_to(kDenom * n, r2, -1);
            s = twovar_mul(s, f).truncate(q_precision);
        }
    }
    return s;
}

nlohmann::json to_json(const TwoVarSeries& s)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [k, c] : s.coeffs()) coeffs.push_back({k.first, k.second, to_string(c)});
    return {{"ring", s.ring().name()}, {"qdenom", kDenom}, {"zdenom", 2}, {"precision", s.q_precision()}, {"coeffs", coeffs}};
}

}  // namespace pmf
