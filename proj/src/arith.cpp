#include "pmf/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pmf/poly.hpp"

namespace pmf {

std::vector<long> primes_up_to(long n)
{
    std::vector<long> out;
    for (long q = 2; q <= n; ++q)
        if (is_prime(static_cast<std::uint64_t>(q))) out.push_back(q);
    return out;
}

namespace {

// F_{l^e} for e in {1, 2}: u + v t with t^2 = -A t - B.
struct GF {
    long p;
    int e;
    long A = 0, B = 0;
    using El = std::pair<long, long>;

    GF(long prime, int degree) : p(prime), e(degree)
    {
        if (e == 1) return;
        for (long a = 0; a < p; ++a)
            for (long b = 1; b < p; ++b) {
                bool root = false;
                for (long x = 0; x < p && !root; ++x) root = (x * x + a * x + b) % p == 0;
                if (!root) {
                    A = a;
                    B = b;
                    return;
                }
            }
        throw std::logic_error("no irreducible quadratic");
    }
    long q() const { return e == 1 ? p : p * p; }
    long md(long x) const { return ((x % p) + p) % p; }
    El el(long i) const { return {i % p, e == 1 ? 0 : i / p}; }
    El add(El x, El y) const { return {md(x.first + y.first), md(x.second + y.second)}; }
    El neg(El x) const { return {md(-x.first), md(-x.second)}; }
    El mul(El x, El y) const
    {
        long c0 = x.first * y.first % p, c1 = (x.first * y.second + x.second * y.first) % p;
        long c2 = x.second * y.second % p;
        return {md(c0 - B * c2), md(c1 - A * c2)};
    }
    El pw(El x, long n) const
    {
        El r{1, 0};
        while (n) {
            if (n & 1) r = mul(r, x);
            x = mul(x, x);
            n >>= 1;
        }
        return r;
    }
    bool zero(El x) const { return x.first == 0 && x.second == 0; }
    El inv(El x) const { return pw(x, q() - 2); }
    El from(const Integer& c) const { return {static_cast<long>(residue(c, p)), 0}; }
    El eval(const std::vector<Integer>& f, El x) const
    {
        El r{0, 0};
        for (auto it = f.rbegin(); it != f.rend(); ++it) r = add(mul(r, x), from(*it));
        return r;
    }
    // Trace to F_2 in characteristic 2.
    El trace2(El z) const { return e == 1 ? z : add(z, mul(z, z)); }
};

// Solutions y of y^2 + b y = c.
long quad_solutions(const GF& F, GF::El b, GF::El c, CountStrategy s)
{
    if (s == CountStrategy::Enumerate) {
        long n = 0;
        for (long i = 0; i < F.q(); ++i) {
            auto y = F.el(i);
            if (F.zero(F.add(F.mul(y, F.add(y, b)), F.neg(c)))) ++n;
        }
        return n;
    }
    if (F.p == 2) {
        if (F.zero(b)) return 1;
        auto z = F.mul(c, F.inv(F.mul(b, b)));
        return F.zero(F.trace2(z)) ? 2 : 0;
    }
    auto d = F.add(F.mul(b, b), F.mul({4 % F.p, 0}, c));
    if (F.zero(d)) return 1;
    auto chi = F.pw(d, (F.q() - 1) / 2);
    return chi == GF::El{1, 0} ? 2 : 0;
}

Integer coeff(const std::vector<Integer>& f, std::size_t i) { return i < f.size() ? f[i] : Integer(0); }

FpPoly to_fp(const std::vector<Integer>& f, std::uint64_t p)
{
    FpPoly g;
    for (const auto& c : f) g.push_back(residue(c, p));
    trim(g);
    return g;
}

FpPoly fp_add(FpPoly a, const FpPoly& b, std::uint64_t p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
}

FpPoly fp_deriv(const FpPoly& a, std::uint64_t p)
{
    FpPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * (i % p) % p);
    trim(d);
    return d;
}

std::uint64_t fp_at0(const FpPoly& a) { return a.empty() ? 0 : a[0]; }

}  // namespace

Invariants invariants(const EllipticCurveData& E)
{
    const auto& [a1, a2, a3, a4, a6] = E.a;
    Invariants I;
    I.b2 = a1 * a1 + 4 * a2;
    I.b4 = 2 * a4 + a1 * a3;
    I.b6 = a3 * a3 + 4 * a6;
    I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    I.c4 = I.b2 * I.b2 - 24 * I.b4;
    I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
    I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
    return I;
}

void validate(const EllipticCurveData& E)
{
    auto I = invariants(E);
    if (I.disc == 0) throw std::invalid_argument(E.label + ": singular Weierstrass equation");
    long N = E.conductor;
    if (N <= 0) throw std::invalid_argument(E.label + ": conductor missing");
    bool squarefree = true;
    for (long q : primes_up_to(static_cast<long>(std::sqrt(static_cast<double>(N))) + 1))
        if (N % (q * q) == 0) squarefree = false;
    if (!squarefree) return;
    long rest = N;
    for (long q = 2; q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        if (q != 2 && (I.disc % q != 0 || I.c4 % q == 0))
            throw std::invalid_argument(E.label + ": not multiplicative at " + std::to_string(q));
    }
    // Odd primes of bad reduction must divide N.
    Integer d = abs(I.disc);
    for (long q = 3; q <= 100000 && d > 1; q += 2) {
        if (d % q != 0) continue;
        while (d % q == 0) d /= q;
        if (N % q != 0) throw std::invalid_argument(E.label + ": bad prime " + std::to_string(q) + " not in N");
    }
}

long count_points_reduction(const EllipticCurveData& E, long ell)
{
    if (!is_prime(static_cast<std::uint64_t>(ell))) throw std::invalid_argument("count_points: not a prime");
    GF F(ell, 1);
    const auto& [a1, a2, a3, a4, a6] = E.a;
    long n = 1;  // point at infinity
    for (long x = 0; x < ell; ++x) {
        GF::El X{x, 0};
        auto b = F.add(F.mul(F.from(a1), X), F.from(a3));
        auto c = F.eval({a6, a4, a2, 1}, X);
        n += quad_solutions(F, b, c, CountStrategy::Character);
    }
    return n;
}

long count_points_elliptic(const EllipticCurveData& E, long ell)
{
    if (invariants(E).disc % ell == 0)
        throw std::domain_error("count_points_elliptic: bad prime " + std::to_string(ell));
    return ell + 1 - count_points_reduction(E, ell);
}

std::string to_string(ReductionType t)
{
    switch (t) {
    case ReductionType::Good: return "good";
    case ReductionType::Split: return "split";
    case ReductionType::Nonsplit: return "nonsplit";
    case ReductionType::Additive: return "additive";
    }
    return "?";
}

BadReduction bad_reduction_data(const EllipticCurveData& E, long ell)
{
    auto I = invariants(E);
    if (I.disc % ell != 0) throw std::invalid_argument("bad_reduction_data: good prime " + std::to_string(ell));
    if (I.c4 % ell == 0) throw std::domain_error("bad_reduction_data: additive reduction at " + std::to_string(ell));
    // Counting the nodal cubic gives l + 1 - a_l with a_l = +1 split, -1 nonsplit.
    long a = ell + 1 - count_points_reduction(E, ell);
    if (a != 1 && a != -1) throw std::logic_error("multiplicative reduction with a_l = " + std::to_string(a));
    if (ell != 2) {
        // Independent criterion: split iff -c6 is a square mod l.
        auto r = residue(Integer(-I.c6), static_cast<std::uint64_t>(ell));
        bool square = powmod(r, (ell - 1) / 2, ell) == 1;
        if (square != (a == 1)) throw std::logic_error("split criterion disagrees with the point count");
    }
    return {a == 1 ? ReductionType::Split : ReductionType::Nonsplit, a, static_cast<int>(-a)};
}

std::map<long, long> ap_table(const EllipticCurveData& E, long bound)
{
    std::map<long, long> out;
    auto I = invariants(E);
    for (long q : primes_up_to(bound)) {
        if (I.disc % q != 0)
            out[q] = count_points_elliptic(E, q);
        else if (E.conductor % q == 0 && E.conductor % (q * q) != 0)
            out[q] = bad_reduction_data(E, q).a_ell;
        else if (E.conductor % q != 0)
            throw std::invalid_argument("model is not minimal at " + std::to_string(q));
        else
            out[q] = 0;
    }
    return out;
}

bool good_reduction_genus2(const HyperellipticCurveData& C, long ell)
{
    auto p = static_cast<std::uint64_t>(ell);
    auto f = to_fp(C.f, p), h = to_fp(C.h, p);
    if (ell != 2) {
        auto F = fp_add(fp_mul(h, h, p), fp_mul({4 % p}, f, p), p);
        int d = degree(F);
        return (d == 5 || d == 6) && fp_squarefree(F, p);
    }
    // Characteristic 2: a singular point needs h(x) = 0 and f'^2 + h'^2 f = 0.
    auto crit = [&](const FpPoly& ff, const FpPoly& hh) {
        auto df = fp_deriv(ff, p), dh = fp_deriv(hh, p);
        return fp_add(fp_mul(df, df, p), fp_mul(fp_mul(dh, dh, p), ff, p), p);
    };
    if (h.empty()) return false;
    if (degree(fp_gcd(h, crit(f, h), p)) > 0) return false;
    // Chart at infinity: u^3 h(1/u), u^6 f(1/u), singular only over u = 0.
    FpPoly H(4, 0), Fi(7, 0);
    for (std::size_t i = 0; i < h.size() && i <= 3; ++i) H[3 - i] = h[i];
    for (std::size_t i = 0; i < f.size() && i <= 6; ++i) Fi[6 - i] = f[i];
    trim(H);
    trim(Fi);
    if (fp_at0(H) != 0) return true;
    return fp_at0(crit(Fi, H)) != 0;
}

long count_points_genus2(const HyperellipticCurveData& C, long ell, int e, CountStrategy s)
{
    if (C.f.size() > 7 || C.h.size() > 4) throw std::invalid_argument("genus-2 model needs deg f <= 6, deg h <= 3");
    GF F(ell, e);
    long n = 0;
    for (long i = 0; i < F.q(); ++i) {
        auto x = F.el(i);
        n += quad_solutions(F, F.eval(C.h, x), F.eval(C.f, x), s);
    }
    // Points at infinity of the weighted model: Y^2 + h_3 Y = f_6.
    n += quad_solutions(F, F.from(coeff(C.h, 3)), F.from(coeff(C.f, 6)), s);
    return n;
}

std::vector<Integer> Genus2Local::L() const
{
    return {1, -t, s, -ell * t, ell * ell};
}

Genus2Local genus2_local(const HyperellipticCurveData& C, long ell)
{
    if (!good_reduction_genus2(C, ell)) throw std::domain_error("genus2_local: bad prime " + std::to_string(ell));
    Genus2Local r;
    r.ell = ell;
    for (int e : {1, 2}) {
        long a = count_points_genus2(C, ell, e, CountStrategy::Enumerate);
        long b = count_points_genus2(C, ell, e, CountStrategy::Character);
        if (a != b) throw std::logic_error("genus-2 point count strategies disagree");
        (e == 1 ? r.N1 : r.N2) = a;
    }
    long c1 = r.N1 - ell - 1;
    r.t = -c1;
    long twice = r.N2 - ell * ell - 1 + c1 * c1;
    if (twice % 2) throw std::logic_error("non-integral s_l");
    r.s = twice / 2;
    return r;
}

ScreenResult irreducibility_screen(const std::map<long, long>& a, long p, const std::vector<long>& probes)
{
    if (probes.empty()) throw std::invalid_argument("irreducibility_screen: empty probe set");
    ScreenResult r;
    r.pass = true;
    for (int i : {1, 2}) {
        r.witness[i] = std::nullopt;
        for (long l : probes) {
            if (l % p == 0) throw std::invalid_argument("probe prime equals p");
            auto it = a.find(l);
            if (it == a.end()) throw std::invalid_argument("no a_l for probe " + std::to_string(l));
            // chi^i + chi^(1-i) evaluated at Frob_l: l^i + l^(1-i) = l + 1 for i = 1, l^2 + 1/l for i = 2.
            long lp = ((l % p) + p) % p;
            long inv = static_cast<long>(invmod(static_cast<std::uint64_t>(lp), static_cast<std::uint64_t>(p)));
            long target = i == 1 ? (lp + 1) % p : (lp * lp + inv) % p;
            if ((((it->second % p) + p) % p) != target) {
                r.witness[i] = l;
                break;
            }
        }
        if (!r.witness[i]) r.pass = false;
    }
    return r;
}

SelmerBudget selmer_budget(const EllipticCurveData& E, long p, long sha_p_order)
{
    if (!E.rank || !E.sha_analytic || E.provenance.empty())
        throw std::invalid_argument("selmer_budget: rank and Sha need provenance");
    if (sha_p_order < 1) throw std::invalid_argument("selmer_budget: bad Sha[p] order");
    if (*E.sha_analytic % p != 0 && sha_p_order != 1)
        throw std::invalid_argument("selmer_budget: Sha[p] inconsistent with analytic Sha");
    SelmerBudget b;
    b.order = ipow(Integer(p), static_cast<unsigned long>(*E.rank)) * sha_p_order;
    b.theorem_applicable = b.order == p;
    b.provenance = E.provenance;
    return b;
}

nlohmann::json to_json(const EllipticCurveData& E)
{
    std::vector<std::string> a;
    for (const auto& c : E.a) a.push_back(c.get_str());
    nlohmann::json j{{"label", E.label}, {"ainvs", a}, {"conductor", E.conductor},
                     {"torsion_order", E.torsion_order}, {"provenance", E.provenance}};
    if (E.rank) j["rank"] = *E.rank;
    if (E.sha_analytic) j["sha_analytic"] = *E.sha_analytic;
    return j;
}

namespace {
template <class T>
T field(const nlohmann::json& j, const std::string& name, const std::string& path)
{
    if (!j.contains(name)) throw std::invalid_argument("missing field " + path + "." + name);
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("bad type for field " + path + "." + name);
    }
}

std::vector<Integer> integers(const nlohmann::json& j, const std::string& name, const std::string& path)
{
    std::vector<Integer> out;
    for (const auto& s : field<std::vector<std::string>>(j, name, path)) out.emplace_back(s);
    return out;
}
}  // namespace

EllipticCurveData elliptic_from_json(const nlohmann::json& j)
{
    EllipticCurveData E;
    E.label = field<std::string>(j, "label", "curve");
    auto a = integers(j, "ainvs", "curve");
    if (a.size() != 5) throw std::invalid_argument("curve.ainvs must have 5 entries");
    for (int i = 0; i < 5; ++i) E.a[i] = a[i];
    E.conductor = field<long>(j, "conductor", "curve");
    E.torsion_order = j.value("torsion_order", 1);
    E.provenance = j.value("provenance", std::string());
    if (j.contains("rank")) E.rank = j.at("rank").get<int>();
    if (j.contains("sha_analytic")) E.sha_analytic = j.at("sha_analytic").get<long>();
    validate(E);
    return E;
}

nlohmann::json to_json(const HyperellipticCurveData& C)
{
    std::vector<std::string> f, h;
    for (const auto& c : C.f) f.push_back(c.get_str());
    for (const auto& c : C.h) h.push_back(c.get_str());
    nlohmann::json j{{"label", C.label}, {"f", f}, {"h", h}, {"conductor", C.conductor}};
    if (C.torsion_p) j["torsion_p"] = *C.torsion_p;
    return j;
}

HyperellipticCurveData hyperelliptic_from_json(const nlohmann::json& j)
{
    HyperellipticCurveData C;
    C.label = field<std::string>(j, "label", "surface");
    C.f = integers(j, "f", "surface");
    C.h = integers(j, "h", "surface");
    C.conductor = field<long>(j, "conductor", "surface");
    if (j.contains("torsion_p")) C.torsion_p = j.at("torsion_p").get<long>();
    QPoly F;
    for (std::size_t i = 0; i < std::max(C.f.size(), 2 * C.h.size()); ++i) F.push_back(0);
    for (std::size_t i = 0; i < C.f.size(); ++i) F[i] += 4 * Rational(C.f[i]);
    for (std::size_t i = 0; i < C.h.size(); ++i)
        for (std::size_t k = 0; k < C.h.size(); ++k) F[i + k] += Rational(C.h[i] * C.h[k]);
    trim(F);
    if (degree(F) != 5 && degree(F) != 6) throw std::invalid_argument("surface: h^2 + 4f must have degree 5 or 6");
    if (!poly_squarefree(F)) throw std::invalid_argument("surface: h^2 + 4f is not squarefree");
    return C;
}

}  // namespace pmf
