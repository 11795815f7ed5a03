#pragma once

#include <map>
#include <optional>
#include <utility>

#include <json.hpp>

#include "pmf/ring.hpp"

namespace pmf {

// Exponents are stored as numerators over kDenom.
constexpr long kDenom = 24;

// Power series in q with rational exponents of denominator 24, known up to an
// exclusive precision bound. Entries that are not stored are zero.
class TruncatedSeries {
public:
    TruncatedSeries(Ring ring, long precision);

    const Ring& ring() const { return ring_; }
    long precision() const { return precision_; }
    const std::map<long, Rational>& coeffs() const { return coeffs_; }

    // Coefficient of q^(num/24); throws if num >= precision.
    Rational coeff(long num) const;
    void set(long num, const Rational& v);
    void add_to(long num, const Rational& v);
    // Smallest exponent numerator with a nonzero coefficient, or precision if none.
    long valuation() const;
    TruncatedSeries truncate(long precision) const;

    bool operator==(const TruncatedSeries& o) const;

private:
    Ring ring_;
    long precision_;
    std::map<long, Rational> coeffs_;
};

TruncatedSeries series_from_integer_exponents(Ring ring, const std::map<long, Rational>& c, long int_precision);
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_inverse(const TruncatedSeries& a);
TruncatedSeries series_pow(const TruncatedSeries& a, long e);
TruncatedSeries reduce_mod_p(const TruncatedSeries& a, std::uint64_t p);

// q^(1/24) prod (1 - q^n), precision as numerator over 24.
TruncatedSeries eta(long precision);
// Same series from the product expansion; used as an independent check.
TruncatedSeries eta_product(long precision);

nlohmann::json to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j);

// Series in q and zeta. Keys are (q numerator over 24, zeta exponent doubled).
class TwoVarSeries {
public:
    using Key = std::pair<long, long>;

    TwoVarSeries(Ring ring, long q_precision);

    const Ring& ring() const { return ring_; }
    long q_precision() const { return q_precision_; }
    const std::map<Key, Rational>& coeffs() const { return coeffs_; }

    Rational coeff(long qnum, long r2) const;
    void add_to(long qnum, long r2, const Rational& v);
    long q_valuation() const;
    // Declares c(n,r) = sign * c(n,-r); checked by has_declared_symmetry.
    void declare_symmetry(int sign) { symmetry_ = sign; }
    std::optional<int> declared_symmetry() const { return symmetry_; }
    bool has_declared_symmetry() const;
    TwoVarSeries truncate(long q_precision) const;

    bool operator==(const TwoVarSeries& o) const;

private:
    Ring ring_;
    long q_precision_;
    std::map<Key, Rational> coeffs_;
    std::optional<int> symmetry_;
};

TwoVarSeries twovar_mul(const TwoVarSeries& a, const TwoVarSeries& b);
TwoVarSeries twovar_mul(const TwoVarSeries& a, const TruncatedSeries& b);
TwoVarSeries twovar_add(const TwoVarSeries& a, const TwoVarSeries& b);
TwoVarSeries twovar_scale(const TwoVarSeries& a, const Rational& c);
TwoVarSeries twovar_from_q(const TruncatedSeries& s);
// zeta -> zeta^k.
TwoVarSeries twovar_substitute_zeta(const TwoVarSeries& a, long k);
TwoVarSeries reduce_mod_p(const TwoVarSeries& a, std::uint64_t p);

// theta(tau, d z) = sum_n (-1)^n q^((2n+1)^2/8) zeta^((2n+1)d/2), q precision over 24.
TwoVarSeries theta_d(long d, long q_precision);
// q^(1/8)(zeta^(1/2) - zeta^(-1/2)) prod (1-q^n)(1-q^n zeta)(1-q^n zeta^-1).
TwoVarSeries theta_product(long q_precision);

nlohmann::json to_json(const TwoVarSeries& s);

}  // namespace pmf
