#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "pmf/jacobi.hpp"
#include "pmf/poly.hpp"
#include "pmf/ring.hpp"

namespace pmf {

// Index of the Fourier coefficient attached to q^n zeta^r xi^(N m), i.e. to the
// half-integral matrix [[n, r/2], [r/2, N m]].
struct ParaIndex {
    long n, r, m;
    auto operator<=>(const ParaIndex&) const = default;
    long disc(long N) const { return 4 * n * m * N - r * r; }
};

struct TruncationPolicy {
    long depth;    // Fourier-Jacobi slices m <= depth
    long det_max;  // 4nmN - r^2 <= det_max
    bool contains(const ParaIndex& canonical, long N) const
    {
        return canonical.m <= depth && canonical.disc(N) <= det_max;
    }
    bool operator==(const TruncationPolicy&) const = default;
};

struct Canonical {
    ParaIndex key;
    int sign = 1;              // a(T) = sign * a(key)
    bool forced_zero = false;  // a(T) = 0 for every form of this weight
};

// Canonical representative of (n, r, m) under T -> U^T T U, U in GL2(Z) with
// upper-right entry divisible by N, a(U^T T U) = det(U)^k a(T). The key minimizes m,
// then |r| (equivalently n), with 0 <= r <= N m.
Canonical canonicalize(const ParaIndex& t, long N, int k);

// Canonical keys in scope that are not forced to vanish, in ascending order.
std::vector<ParaIndex> canonical_indices(long N, int k, const TruncationPolicy& policy);

class ParamodularQExp {
public:
    ParamodularQExp(long level, int weight, Ring ring, TruncationPolicy policy);

    long level() const { return level_; }
    int weight() const { return weight_; }
    const Ring& ring() const { return ring_; }
    const TruncationPolicy& policy() const { return policy_; }
    const std::map<ParaIndex, Rational>& coeffs() const { return coeffs_; }

    // a(n, r, m) for any index; throws std::out_of_range if its canonical key is out of scope.
    Rational coeff(const ParaIndex& t) const;
    bool in_scope(const ParaIndex& t) const;
    // Sets the coefficient of a canonical key.
    void set(const ParaIndex& key, const Rational& v);
    // Fourier-Jacobi coefficient of index j N as a Jacobi form with disc_bound det_max + 1.
    JacobiFormQExp slice(long j) const;
    bool is_zero() const { return coeffs_.empty(); }

    bool operator==(const ParamodularQExp& o) const;

private:
    long level_;
    int weight_;
    Ring ring_;
    TruncationPolicy policy_;
    std::map<ParaIndex, Rational> coeffs_;
};

ParamodularQExp paramodular_from_function(long level, int weight, Ring ring, const TruncationPolicy& policy,
                                          const std::function<Rational(const ParaIndex&)>& fn);
ParamodularQExp para_add(const ParamodularQExp& a, const ParamodularQExp& b);
ParamodularQExp para_scale(const ParamodularQExp& a, const Rational& c);
ParamodularQExp restrict_policy(const ParamodularQExp& f, const TruncationPolicy& policy);
ParamodularQExp reduce_mod_p(const ParamodularQExp& f, std::uint64_t p);

nlohmann::json to_json(const ParamodularQExp& f);
ParamodularQExp paramodular_from_json(const nlohmann::json& j);

// a(n,r,m) = sum over delta | (n,r,m) of delta^(k-1) c(nm/delta^2, r/delta).
ParamodularQExp gritsenko_lift(const JacobiFormQExp& phi, const TruncationPolicy& policy);

enum class HeckeKind {
    T,        // T(l) = T_{l,2}: double coset of diag(1,1,l,l)
    T_l_1,    // double coset of diag(1,l,l^2,l)
    T_l_0,    // double coset of l * identity
    T_l_sq    // T(l^2): all cosets of similitude l^2
};

TruncationPolicy hecke_output_policy(long ell, HeckeKind kind, const TruncationPolicy& in);
// Fourier-coefficient action from explicit left coset representatives.
ParamodularQExp hecke_T(long ell, HeckeKind kind, const ParamodularQExp& F);
// Convenience wrapper using the index i in {0, 1, 2}.
ParamodularQExp hecke_T(long ell, int i, const ParamodularQExp& F);
// Number of left cosets in the double coset (for tests).
std::size_t hecke_coset_count(long ell, HeckeKind kind, long N);

// Image index of the Atkin-Lehner involution at ell | N: T -> V^T T V / ell.
ParaIndex atkin_lehner_index(const ParaIndex& t, long ell, long N);
// The output keeps det_max and shrinks the depth until every image stays in scope; when
// no depth survives it keeps the depth and shrinks det_max.
ParamodularQExp atkin_lehner(long ell, const ParamodularQExp& F);
ParamodularQExp fricke(const ParamodularQExp& F);

using SignVector = std::map<long, int>;
std::vector<long> prime_divisors(long N);
int fricke_sign(const SignVector& s);
// Projection (1/2^s) prod (1 + eps_l AL_l) applied to F.
ParamodularQExp symmetrize(const ParamodularQExp& F, const SignVector& signs);
ParamodularQExp symmetrize_fricke(const ParamodularQExp& F, int sign);

ParamodularQExp project_truncate(const ParamodularQExp& F, long d);
bool vanishing_test(const ParamodularQExp& F, long d);

// lambda with T F = lambda F on the common scope, if it exists.
std::optional<Rational> eigenvalue(const ParamodularQExp& F, const ParamodularQExp& TF);

struct HeckeEigenvalues {
    std::optional<Rational> l0, l1, l2;
};

struct HeckeEigenSystem {
    int weight;
    long level;
    std::map<long, HeckeEigenvalues> lambda;
};

struct SpinEulerFactor {
    long ell;
    int weight;
    QPoly coeffs;  // c0..c4
};

SpinEulerFactor spin_euler(const HeckeEigenSystem& ev, long ell);
SpinEulerFactor spin_euler_from_poly(const QPoly& q, long ell, int weight);
void check_spin_invariants(const SpinEulerFactor& f);
// lambda_{l,1} from the eigenvalues of T(l) and T(l^2).
Rational lambda_l1_from_T_l_sq(int k, long ell, const Rational& lambda_l, const Rational& lambda_l2);
// (1 - a T + l T^2)(1 - T)(1 - l T) mod p.
FpPoly sk_euler_mod_p(const Integer& a, long ell, std::uint64_t p);
// Same product over Z.
QPoly sk_euler(const Integer& a, long ell);

nlohmann::json to_json(const SpinEulerFactor& f);

}  // namespace pmf
