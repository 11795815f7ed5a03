#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmf/ring.hpp"
#include "pmf/series.hpp"

namespace pmf {

// Class of a Jacobi coefficient: discriminant D = 4nm - r^2 and r mod 2m.
struct JacobiKey {
    long D;
    long r0;
    auto operator<=>(const JacobiKey&) const = default;
};

// Jacobi form of weight k and index m given by its coefficients c(n,r) on
// all classes with D < disc_bound. Classes not stored are zero.
class JacobiFormQExp {
public:
    JacobiFormQExp(int weight, long index, Ring ring, long disc_bound);

    int weight() const { return weight_; }
    long index() const { return index_; }
    const Ring& ring() const { return ring_; }
    long disc_bound() const { return disc_bound_; }
    const std::map<JacobiKey, Rational>& coeffs() const { return coeffs_; }

    // c(n, r); throws std::out_of_range if 4nm - r^2 >= disc_bound.
    Rational coeff(long n, long r) const;
    Rational class_coeff(long D, long r) const;
    // Sets the class of (D, r) and its mirror (D, -r) with sign (-1)^k.
    void set_class(long D, long r, const Rational& v);

    long reduce_r(long r) const;
    // Smallest n attached to the class (D, r0), using the representative r of minimal |r|.
    long min_n(long D, long r0) const;
    bool valid_class(long D, long r) const;

    JacobiFormQExp truncate(long disc_bound) const;
    bool is_zero() const { return coeffs_.empty(); }

    bool operator==(const JacobiFormQExp& o) const;

private:
    int weight_;
    long index_;
    Ring ring_;
    long disc_bound_;
    std::map<JacobiKey, Rational> coeffs_;
};

JacobiFormQExp jacobi_scale(const JacobiFormQExp& f, const Rational& c);
JacobiFormQExp jacobi_add(const JacobiFormQExp& a, const JacobiFormQExp& b);
JacobiFormQExp reduce_mod_p(const JacobiFormQExp& f, std::uint64_t p);
// Multiplies by the positive rational making the coefficients coprime integers.
JacobiFormQExp content_normalize(const JacobiFormQExp& f);
// W_l for l || m: the class (D, r) moves to (D, r*) with r* = -r mod 2l and r* = r mod 2m/l.
JacobiFormQExp jacobi_atkin_lehner(const JacobiFormQExp& f, long ell);
// Index-preserving Hecke operator T_l for a prime l not dividing m, normalized so that it
// matches T_l on S_{2k-2}: c*(D, r) = c(l^2 D, l r) + (-D/l) l^(k-2) c(D, r) + l^(2k-3) c(D/l^2, r/l).
// The output disc_bound shrinks to ceil(disc_bound / l^2).
JacobiFormQExp jacobi_hecke(const JacobiFormQExp& f, long ell);

nlohmann::json to_json(const JacobiFormQExp& f);
JacobiFormQExp jacobi_from_json(const nlohmann::json& j);

// eta^eta_exponent * prod theta_{d_i}.
struct ThetaBlockSpec {
    long eta_exponent = -6;
    std::vector<long> thetas;

    long twice_weight() const { return static_cast<long>(thetas.size()) + eta_exponent; }
    long twice_index() const;
    bool admissible() const;
    std::string to_string() const;
};

// Minimum over x of the theta-block order function; the block is a holomorphic
// Jacobi form iff the minimum is >= 0 and a cusp form iff it is > 0.
Rational theta_block_min_order(const ThetaBlockSpec& spec);

struct ThetaBlockResult {
    std::optional<JacobiFormQExp> form;
    std::string rejection;  // set when form is empty
};

// Expands the block exactly on all classes with D < disc_bound and checks holomorphy
// and cuspidality. Over F_p the expansion is done modulo p.
ThetaBlockResult theta_block(const ThetaBlockSpec& spec, long disc_bound, Ring ring = Ring::integers());

// Nonincreasing tuples of length count with sum of squares 2m whose block with the
// given eta exponent passes the order-function cusp screen.
std::vector<ThetaBlockSpec> enumerate_cusp_theta_blocks(long m, long eta_exponent = -6, std::size_t count = 10,
                                                      std::size_t limit = 0);

struct SpanRankResult {
    std::size_t rank = 0;
    std::vector<std::size_t> selected;  // indices of a maximal independent subset
    bool lower_bound = false;           // true when the forms were not all independent
    std::optional<std::size_t> rank_mod_p;
};

SpanRankResult span_rank(const std::vector<JacobiFormQExp>& forms, Ring ring,
                         std::optional<std::uint64_t> check_p = std::nullopt);

struct DimensionResult {
    std::optional<long> value;
    std::string provenance;  // "formula", "fixture:..." or "unknown"
};

DimensionResult dim_jacobi_cusp(int k, long m);

// Basis of J^cusp_{k,m} (k even) built from E4, E6, phi_{-2,1}, phi_{0,1}, each form
// integral with content 1, echelonized on the class ordering.
std::vector<JacobiFormQExp> jacobi_cusp_basis(int k, long m, long disc_bound);

// Ring generators as two-variable series, to integral q-precision n_max + 1.
TwoVarSeries phi_m2_1(long n_max);
TwoVarSeries phi_0_1(long n_max);
TruncatedSeries eisenstein_series(int k, long n_max);

// Converts an expansion with integral q and zeta exponents into a Jacobi form
// on classes with D < disc_bound, checking the class invariance.
JacobiFormQExp jacobi_from_series(const TwoVarSeries& s, int weight, long index, long disc_bound);

}  // namespace pmf
