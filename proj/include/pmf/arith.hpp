#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmf/ring.hpp"

namespace pmf {

struct EllipticCurveData {
    std::array<Integer, 5> a{};  // a1, a2, a3, a4, a6
    long conductor = 0;
    std::optional<int> rank;
    std::optional<long> sha_analytic;
    int torsion_order = 1;
    std::string label;
    std::string provenance;  // where rank / Sha come from
};

struct Invariants {
    Integer b2, b4, b6, b8, c4, c6, disc;
};
Invariants invariants(const EllipticCurveData& E);
// Throws std::invalid_argument if the discriminant vanishes or, for squarefree N, the odd bad
// primes of the model disagree with the conductor.
void validate(const EllipticCurveData& E);

// a_l = l + 1 - #E(F_l) by enumeration; throws std::domain_error at bad primes.
long count_points_elliptic(const EllipticCurveData& E, long ell);
// #E~(F_l) including the singular point, valid at every l.
long count_points_reduction(const EllipticCurveData& E, long ell);

enum class ReductionType { Good, Split, Nonsplit, Additive };
std::string to_string(ReductionType t);

struct BadReduction {
    ReductionType type;
    long a_ell;
    int w;  // Atkin-Lehner sign, -a_l in weight 2
};
// For l || N. Additive reduction throws std::domain_error.
BadReduction bad_reduction_data(const EllipticCurveData& E, long ell);

// a_l for all primes l <= bound (good primes by counting, bad ones by the reduction type).
std::map<long, long> ap_table(const EllipticCurveData& E, long bound);

// y^2 + h(x) y = f(x), genus 2, integer coefficients low to high.
struct HyperellipticCurveData {
    std::vector<Integer> f, h;
    long conductor = 0;
    std::optional<long> torsion_p;
    std::string label;
};

enum class CountStrategy { Enumerate, Character };

// Number of points on the smooth model over F_{l^e} (e = 1, 2).
long count_points_genus2(const HyperellipticCurveData& C, long ell, int e, CountStrategy s);
bool good_reduction_genus2(const HyperellipticCurveData& C, long ell);

struct Genus2Local {
    long ell;
    long N1, N2;
    long t;  // linear trace: L(T) = 1 - t T + s T^2 - l t T^3 + l^2 T^4
    long s;
    std::vector<Integer> L() const;
};
// Throws std::domain_error at bad primes or if the two strategies disagree.
Genus2Local genus2_local(const HyperellipticCurveData& C, long ell);

struct ScreenResult {
    bool pass = false;
    std::map<int, std::optional<long>> witness;  // i -> probe l with a_l != l^i + l^(1-i) mod p
};
// Screens the mod-p trace against chi^i + chi^(1-i) for i = 1, 2.
ScreenResult irreducibility_screen(const std::map<long, long>& a, long p, const std::vector<long>& probes);

struct SelmerBudget {
    Integer order;
    bool theorem_applicable;  // the bound equals p exactly
    std::string provenance;
};
// #H^1_f = p^rank * #Sha[p]; requires rank and Sha with provenance.
SelmerBudget selmer_budget(const EllipticCurveData& E, long p, long sha_p_order = 1);

nlohmann::json to_json(const EllipticCurveData& E);
EllipticCurveData elliptic_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HyperellipticCurveData& C);
HyperellipticCurveData hyperelliptic_from_json(const nlohmann::json& j);

std::vector<long> primes_up_to(long n);

}  // namespace pmf
