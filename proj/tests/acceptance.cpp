// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance              standard tier
//   acceptance --extended   standard plus long-running checks (or PMF_EXTENDED=1)
//   acceptance --only 7     a single criterion

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "pmf/evidence.hpp"
#include "pmf/jrm.hpp"
#include "pmf/modp.hpp"
#include "pmf/modsym.hpp"

using namespace pmf;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

bool g_extended = false;
std::string g_fixtures = PMF_FIXTURE_DIR;

std::string str(const QPoly& q)
{
    return poly_to_string(q, "X");
}

// ---------------------------------------------------------------- shared data

EllipticCurveData curve731()
{
    return elliptic_from_json(nlohmann::json::parse(std::ifstream(g_fixtures + "/curve_731a1.json")));
}

HyperellipticCurveData surface731()
{
    return hyperelliptic_from_json(nlohmann::json::parse(std::ifstream(g_fixtures + "/surface_731.json")));
}

// Weight-2 index-731 theta blocks, shared by criteria 8 and 10 in the extended tier.
struct Index731 {
    std::vector<ThetaBlockSpec> specs;
    SpanRankResult rank5;
    std::vector<JacobiFormQExp> basis;  // selected blocks over Z, disc bound 3700
};

const Index731& index731()
{
    static std::optional<Index731> cache;
    if (cache) return *cache;
    Index731 d;
    d.specs = enumerate_cusp_theta_blocks(731);
    std::vector<JacobiFormQExp> red;
    for (const auto& s : d.specs) red.push_back(*theta_block(s, 400, Ring::prime_field(5)).form);
    d.rank5 = span_rank(red, Ring::prime_field(5));
    for (auto i : d.rank5.selected) d.basis.push_back(*theta_block(d.specs[i], 3700).form);
    cache = std::move(d);
    return *cache;
}

// ---------------------------------------------------------------- criteria

Outcome c1()
{
    Outcome o;
    Rational l2 = -1;
    // lambda_{2,1} from the quadratic coefficient: c2 = l (lambda_1 + (1 + l^2) l^(2k-6)) = 2.
    Rational l1 = lambda_l1_from_euler({1, 1, 2, 2, 4}, 2, 2);
    o.require(l1 == Rational(-1) / 4, "lambda_{2,1} = -1/4");
    HeckeEigenSystem ev{2, 731, {{2, {std::nullopt, l1, l2}}}};
    auto f = spin_euler(ev, 2);
    QPoly want{1, 1, 2, 2, 4};
    o.require(f.coeffs == want, "spin_euler = 1+X+2X^2+2X^3+4X^4, got " + str(f.coeffs));
    QPoly a{1, -1, 2}, b{1, 2, 2};
    o.require(poly_mul(a, b) == f.coeffs, "(1-X+2X^2)(1+2X+2X^2)");
    o.require(integer_roots(a).empty() && integer_roots(b).empty() && poly_squarefree(f.coeffs),
              "quadratic factors irreducible");
    // Independent oracle: the local L-factor of the surface at 2 from point counts.
    auto loc = genus2_local(surface731(), 2);
    QPoly L;
    for (const auto& c : loc.L()) L.push_back(Rational(c));
    o.require(L == f.coeffs, "surface L-factor at 2 equals the spin factor, got " + str(L));
    o.note("Q_2 = " + str(f.coeffs) + " = (1-X+2X^2)(1+2X+2X^2); matches the surface L-factor (N1=" +
           std::to_string(loc.N1) + ", N2=" + std::to_string(loc.N2) + ")");
    return o;
}

Outcome c2()
{
    Outcome o;
    long a5 = count_points_elliptic(curve731(), 5);
    o.require(((a5 % 5) + 5) % 5 == 4, "a_5 = -1 mod 5");
    auto sk = sk_euler_mod_p(Integer(-1), 5, 5);
    o.require(sk == FpPoly{1, 0, 4}, "sk_euler_mod_p(-1, 5, 5) = 1 - T^2");
    // Oracle: the integral product reduced mod 5.
    o.require(poly_reduce(sk_euler(Integer(a5), 5), 5) == sk, "reduction of the integral product");
    o.note("a_5 = " + std::to_string(a5) + "; 1 - T^2 over F_5");
    return o;
}

Outcome c3()
{
    Outcome o;
    std::mt19937 rng(2024);
    std::size_t n = 0;
    for (int k : {2, 3, 4, 10, 20})
        for (long l : {2L, 3L, 5L, 7L, 731L})
            for (int t = 0; t < 8; ++t) {
                Rational l1(static_cast<long>(rng() % 2001) - 1000, 1 + rng() % 16);
                Rational l2(static_cast<long>(rng() % 2001) - 1000, 1 + rng() % 16);
                l1.canonicalize();
                l2.canonicalize();
                HeckeEigenSystem ev{k, 1, {{l, {std::nullopt, l1, l2}}}};
                auto f = spin_euler(ev, l);
                Rational L(l);
                o.require(f.coeffs[3] == rpow(L, 2 * k - 3) * f.coeffs[1] && f.coeffs[4] == rpow(L, 4 * k - 6),
                          "c3 = l^(2k-3) c1, c4 = l^(4k-6)");
                ++n;
            }
    QPoly q{1, 1, 2, 2, 4};
    o.require(poly_eval(q, 1) == 10, "Q_2(1) = 10");
    o.require(poly_eval(q, Rational(1, 2)) == Rational(5, 2), "Q_2(1/2) = 5/2");
    o.note(std::to_string(n) + " random eigenvalue systems; Q_2(1) = 10, Q_2(1/2) = 5/2");
    return o;
}

Outcome c4()
{
    Outcome o;
    auto E = curve731();
    auto a = ap_table(E, 5);
    o.require(a.at(2) == 1 && a.at(3) == 1 && ((a.at(5) % 5) + 5) % 5 == 4, "a_2 = 1, a_3 = 1, a_5 = -1 mod 5");
    std::map<long, long> lam{{2, 4}, {3, 5}, {5, 5}};
    for (auto [l, v] : lam) o.require(1 + l + a.at(l) == v, "lambda_" + std::to_string(l) + "(g) via 1 + l + a_l");
    for (long l : {17L, 43L}) {
        auto b = bad_reduction_data(E, l);
        o.require(b.type == ReductionType::Nonsplit, "nonsplit at " + std::to_string(l));
        o.require((1 + b.w * l) % 5 != 0, "5 does not divide 1 + w l at " + std::to_string(l));
    }
    o.note("a = (1, 1, " + std::to_string(a.at(5)) + "), lambda(g) = (4, 5, 5), nonsplit at 17 and 43, 1+w*l = 18, 44");
    return o;
}

Outcome c5()
{
    Outcome o;
    auto C = surface731();
    auto a = ap_table(curve731(), 13);
    std::ostringstream ts;
    for (long l : {2L, 3L, 7L, 11L, 13L}) {
        for (int e : {1, 2})
            o.require(count_points_genus2(C, l, e, CountStrategy::Enumerate) ==
                          count_points_genus2(C, l, e, CountStrategy::Character),
                      "strategies agree at l = " + std::to_string(l));
        auto loc = genus2_local(C, l);
        o.require(((loc.t - 1 - l - a.at(l)) % 5 + 5) % 5 == 0, "t_l = 1 + l + a_l mod 5 at " + std::to_string(l));
        ts << " t_" << l << "=" << loc.t;
    }
    o.note("two counting strategies agree;" + ts.str());
    return o;
}

Outcome c6()
{
    Outcome o;
    auto S = modular_symbols(11, 1);
    auto C = cuspidal_basis(S);
    o.require(C.rows == 1, "dim S_2(11)^+ = 1");
    auto T2 = hecke_on_symbols(S, 2);
    bool eig = true;
    for (std::size_t i = 0; i < S.dimension(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < S.dimension(); ++j) s += T2(i, j) * C(0, j);
        eig = eig && s == -2 * C(0, i);
    }
    o.require(eig, "T_2 eigenvalue -2 at level 11");
    auto E = curve731();
    auto a = ap_table(E, 13);
    auto S731 = modular_symbols(731, 1);
    auto phi = rational_eigen_symbol(S731, a);
    o.require(phi.eigenvalues == a, "eigen-projection at 731 matches a_l, l <= 13");
    o.note("level 11: dim 1, a_2 = -2; level 731: plus space dim " + std::to_string(S731.dimension()) +
           ", slicing primes used: " + std::to_string(phi.slicing_primes.size()));
    return o;
}

Outcome c7()
{
    Outcome o;
    auto E = curve731();
    auto v2 = padic_L_valuation(E, 5, 2, -1);
    auto v3 = padic_L_valuation(E, 5, 3, -1);
    o.require(v2.valuation == 1, "valuation 1 at w = 2");
    o.require(v3.valuation == 1, "valuation 1 at w = 3");
    o.require(v3.value % 25 == v2.value, "values agree mod 25");
    o.note("L_p mod 25 = " + std::to_string(v2.value) + ", mod 125 = " + std::to_string(v3.value) + ", valuation 1");
    return o;
}

Outcome c8()
{
    Outcome o;
    long prec = 50 * kDenom;
    o.require(theta_d(1, prec) == theta_product(prec), "Jacobi triple product to q^50");
    o.require(eta(prec) == eta_product(prec), "Euler pentagonal identity to q^50");
    auto dim = dim_jacobi_cusp(2, 731);
    o.require(dim.value == 18, "dim J^cusp_{2,731} = 18 fixture");
    if (!g_extended) {
        o.note("identities hold to q^50; theta-block rank at index 731 runs in the extended tier");
        return o;
    }
    const auto& d = index731();
    o.require(d.rank5.rank >= 18, "span_rank >= 18");
    o.require(d.rank5.rank <= static_cast<std::size_t>(*dim.value), "rank bounded by the dimension");
    o.note(std::to_string(d.specs.size()) + " cusp theta blocks, rank mod 5 = " + std::to_string(d.rank5.rank) +
           " (so rational rank = 18)");
    return o;
}

std::vector<JacobiBasis> generator_bases(int k, long N, long d, long det)
{
    std::vector<JacobiBasis> out;
    for (long j = 1; j <= d; ++j) out.push_back({j * N, jacobi_cusp_basis(k, j * N, det + 1), 0, "generators"});
    return out;
}

Outcome c9()
{
    Outcome o;
    std::size_t instances = 0;
    for (auto [k, N] : std::vector<std::pair<int, long>>{{20, 1}, {10, 2}, {12, 2}, {12, 3}}) {
        long d = 3, det = 120;
        JRMParams p;
        p.weight = k;
        p.level = N;
        p.depth = d;
        p.det_max = det;
        p.fricke = 1;
        auto bases = generator_bases(k, N, d, det);
        auto sys = assemble_system(p, bases);
        auto space = solve_jrm(p, bases);
        for (const auto& phi : bases[0].forms) {
            auto x = slice_coordinates(gritsenko_lift(phi, {d, det}), p, bases);
            o.require(residual(sys, x) == 0, "Gritsenko containment at level " + std::to_string(N));
        }
        o.require(space.dimension() >= bases[0].forms.size(), "JRM dimension >= number of lifts");
        ++instances;
    }
    // Planted-rank property suite: issue iff known_dim - rank + codim < product_dim.
    std::mt19937 rng(99);
    std::size_t issued = 0, trials = 0;
    for (std::uint64_t p : {5ULL, 7ULL, 11ULL})
        for (int t = 0; t < 40; ++t) {
            std::size_t r = 1 + rng() % 6, extra = rng() % 3, cols = 12 + rng() % 10;
            std::vector<std::vector<std::uint64_t>> base(r, std::vector<std::uint64_t>(cols));
            for (auto& row : base)
                for (auto& v : row) v = rng() % p;
            auto K = base;
            for (std::size_t e = 0; e < extra; ++e) {
                std::vector<std::uint64_t> row(cols, 0);
                for (const auto& b : base) {
                    auto c = rng() % p;
                    for (std::size_t j = 0; j < cols; ++j) row[j] = (row[j] + c * b[j]) % p;
                }
                K.push_back(row);
            }
            std::vector<std::size_t> forced(cols);
            for (std::size_t j = 0; j < cols; ++j) forced[j] = j;
            Fp f(p);
            Matrix<Fp> A(K.size(), cols, 0);
            for (std::size_t i = 0; i < K.size(); ++i)
                for (std::size_t j = 0; j < cols; ++j) A(i, j) = K[i][j];
            std::size_t rk = rank(f, A);
            std::size_t codim = rng() % 3, wdim = 1 + rng() % 6;
            bool expect = K.size() - rk + codim < wdim;
            auto c = product_obstruction_certificate(K, forced, p, wdim, codim, "planted", "synthetic", 1);
            o.require(c.has_value() == expect, "certificate issued iff the inequality holds");
            if (c) {
                ++issued;
                auto j = to_json(*c);
                o.require(verify_certificate(j).ok, "re-verification");
                o.require(to_json(vanishing_from_json(j)).dump() == j.dump(), "bit-exact round trip");
                auto bad = j;
                bad["rank"] = j["rank"].get<std::size_t>() + 1;
                o.require(!verify_certificate(bad).ok, "tampered certificate rejected");
            }
            ++trials;
        }
    o.note(std::to_string(instances) + " JRM instances contain their lifts; " + std::to_string(issued) + "/" +
           std::to_string(trials) + " planted certificates issued and re-verified");
    if (g_extended) {
        o.require(false, "dim JRM_5^+(k=2, N=731, det_max=1462) = 19 not reproduced");
        o.require(false, "dim JRM_4^-(k=2, N=1462, det_max=5848) = 2 not reproduced");
        o.note("no weight-2 cusp bases of index 731j (j >= 2) are constructible here; dims 19 and 2 are not attempted");
    }
    return o;
}

Outcome c10()
{
    Outcome o;
    // Standard tier: synthetic pairs f = c g + p h on the weight-20 Maass space of level 1.
    TruncationPolicy pol{4, 192};
    std::vector<ParamodularQExp> lifts;
    for (const auto& phi : jacobi_cusp_basis(20, 1, pol.det_max + 1)) lifts.push_back(gritsenko_lift(phi, pol));
    std::mt19937 rng(7);
    std::size_t issued = 0, rejected = 0, sliced = 0, primes = 0;
    for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL, 41ULL, 43ULL}) {
        Fp fp(p);
        ++primes;
        auto M = truncated_hecke_matrix(fp, lifts, 2, HeckeKind::T);
        // Eigen-slice when T(2) has a root mod p; otherwise fall back to a basis element.
        ParamodularQExp g = lifts[0];
        for (std::uint64_t lam = 0; lam < p; ++lam) {
            auto V = eigenspace_slice(fp, M, lam);
            if (V.rows == 0) continue;
            std::vector<std::uint64_t> v(V.a.begin(), V.a.begin() + static_cast<long>(V.cols));
            g = para_scale(lifts[0], 0);
            for (std::size_t i = 0; i < v.size(); ++i)
                g = para_add(g, para_scale(lifts[i], Rational(static_cast<long>(v[i]))));
            // The eigenvector lifts to an integral form that is an eigenform mod p.
            auto Tg = reduce_mod_p(hecke_T(2, HeckeKind::T, g), p);
            auto ev = eigenvalue(reduce_mod_p(restrict_policy(g, Tg.policy()), p), Tg);
            o.require(ev && residue(*ev, p) == lam, "sliced vector is a T(2)-eigenvector mod p");
            ++sliced;
            break;
        }
        auto content = [](const ParamodularQExp& F) {
            Integer c = 0;
            for (const auto& [k, v] : F.coeffs()) c = gcd(c, Integer(v.get_num()));
            return c;
        };
        Integer cg = content(g);
        if (cg != 1) g = para_scale(g, Rational(1) / Rational(cg));
        for (int t = 0; t < 3; ++t) {
            long c = 1 + static_cast<long>(rng() % (p - 1));
            auto h = para_add(para_scale(lifts[0], static_cast<long>(rng() % 9) - 4),
                              para_scale(lifts[1], static_cast<long>(rng() % 9) - 4));
            auto f = para_add(para_scale(g, c), para_scale(h, Rational(static_cast<long>(p))));
            if (content(f) != 1) continue;
            auto K = std::vector<std::vector<std::uint64_t>>(3, std::vector<std::uint64_t>(10));
            for (auto& row : K)
                for (auto& x : row) x = rng() % p;
            auto tail = product_obstruction_certificate(K, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, p, 3, 0, "planted",
                                                        "tail", 3);
            if (!tail) continue;
            auto cert = congruence_certificate(f, g, p, 2, *tail);
            o.require(cert.beta == (p - static_cast<std::uint64_t>(c)) % p, "beta = -c mod p");
            o.require(verify_certificate(to_json(cert)).ok, "congruence certificate re-verifies");
            ++issued;
        }
        // Negative control: f and g independent mod p.
        auto other = para_add(g, lifts[1]);
        if (content(other) == 1) {
            bool threw = false;
            try {
                auto K = std::vector<std::vector<std::uint64_t>>(3, std::vector<std::uint64_t>(10, 1));
                auto tail = product_obstruction_certificate(K, {0}, p, 3, 0, "planted", "tail", 3);
                congruence_certificate(other, g, p, 2, *tail);
            } catch (const std::runtime_error&) {
                threw = true;
            }
            o.require(threw, "independent pair rejected");
            ++rejected;
        }
    }
    o.require(issued > 0 && rejected > 0, "pipeline exercised");
    o.note(std::to_string(sliced) + "/" + std::to_string(primes) + " primes eigen-sliced, " + std::to_string(issued) + " certificates issued, " +
           std::to_string(rejected) + " negative controls rejected");
    if (!g_extended) return o;

    // Extended tier: T(2) on the 18 Gritsenko lifts of level 731 through the Jacobi operator.
    const auto& d = index731();
    QQ q;
    auto J = jacobi_operator_matrix<QQ>(q, d.basis, [](const JacobiFormQExp& x) { return jacobi_hecke(x, 2); });
    auto cj = charpoly(q, J);
    // T(2) on a lift is T_2 on the Jacobi form plus 2 + 1.
    QPoly shift_back;  // charpoly of T(2) = cj(x - 3)
    {
        QPoly acc{0}, pw{1}, lin{-3, 1};
        for (const auto& c : cj) {
            acc = poly_add(acc, poly_mul(pw, QPoly{c}));
            pw = poly_mul(pw, lin);
        }
        shift_back = acc;
    }
    QPoly sext{101, -400, 566, -358, 112, -17, 1};
    QPoly oct{2174, -8612, 13465, -11046, 5286, -1530, 264, -25, 1};
    QPoly want = poly_mul(poly_mul(poly_mul(QPoly{-4, 1}, poly_mul(QPoly{-2, 1}, QPoly{-2, 1})), QPoly{-1, 1}),
                          poly_mul(sext, oct));
    o.require(shift_back == want, "charpoly of T(2) on the lifts");
    auto w = irreducibility_by_patterns(sext);
    auto w8 = irreducibility_by_patterns(oct);
    o.require(w.irreducible && w8.irreducible, "sextic and octic factors irreducible");
    Fp f5(5);
    auto V = eigenspace_slice(f5, reduce_matrix(f5, J), 1);
    o.note("charpoly of T(2) on the 18 lifts = (x-4)(x-2)^2(x-1)(sextic)(octic); lift part of the eigenvalue-4 "
           "space mod 5 has dim " + std::to_string(V.rows));
    // g: the rational eigenvector with lambda_2 = 4, then lambda_3 = 1 + 3 + a_3 = 5.
    auto K = eigenspace_slice(q, J, Rational(1));
    o.require(K.rows == 1, "unique lift with lambda_2 = 4");
    Integer den = 1;
    for (std::size_t i = 0; i < K.cols; ++i) den = lcm(den, Integer(K(0, i).get_den()));
    JacobiFormQExp phi(2, 731, Ring::integers(), d.basis[0].disc_bound());
    for (std::size_t i = 0; i < K.cols; ++i) phi = jacobi_add(phi, jacobi_scale(d.basis[i], K(0, i) * den));
    auto T3 = jacobi_hecke(phi, 3);
    o.require(T3 == jacobi_scale(phi.truncate(T3.disc_bound()), 1), "lambda_3(g) = 5");
    // The target eigenspace sits in the 19-dimensional space that also holds the non-lift form of level 731.
    o.require(false, "eigenvalue-4 eigenspace dims 2 then 1 need the non-lift level-731 form, which is not constructed");
    return o;
}

Outcome c11()
{
    Outcome o;
    auto run = [](const nlohmann::json& s, const nlohmann::json& c, const nlohmann::json& k, long p) {
        return run_checklist(ingest(s, c, k), p);
    };
    auto load = [](const std::string& n) { return nlohmann::json::parse(std::ifstream(g_fixtures + "/" + n)); };
    auto s = load("surface_731.json"), c = load("curve_731a1.json"), k = load("candidate_f731.json");
    auto fx = ingest(g_fixtures + "/surface_731.json", g_fixtures + "/curve_731a1.json",
                     g_fixtures + "/candidate_f731.json");
    auto r = run_checklist(fx, 5);
    o.require(r.verified(), "bundled fixtures: " + r.overall);
    auto vr = verify_report(to_json(r));
    o.require(vr.ok, "every witness re-verifies");
    o.require(to_json(run_checklist(fx, 5)).dump() == to_json(r).dump(), "deterministic report");
    o.require(!run(s, c, k, 3).verified(), "p = 3 fails closed");
    auto k2 = k;
    k2["hecke"]["2"]["lambda_l2"] = "0";
    o.require(run(s, c, k2, 5).overall == "failed at eigenvalue_congruence", "lambda_2 = 0 fails check 8");
    // Drop each top-level datum in turn. Torsion orders are descriptive and consumed by no check.
    std::size_t removed = 0;
    for (int which = 0; which < 3; ++which) {
        const auto& doc = which == 0 ? s : which == 1 ? c : k;
        for (const auto& [key, v] : doc.items()) {
            if (key == "torsion_p" || key == "torsion_order") continue;
            std::array<nlohmann::json, 3> docs{s, c, k};
            docs[which].erase(key);
            bool closed = false;
            try {
                closed = !run(docs[0], docs[1], docs[2], 5).verified();
            } catch (const std::invalid_argument&) {
                closed = true;  // schema error at ingest
            }
            o.require(closed, "removing " + key + " fails closed");
            ++removed;
        }
    }
    o.note("all hypotheses verified; " + std::to_string(removed) + " single-datum removals fail closed");
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance suite"};
    int only = 0;
    app.add_flag("--extended", g_extended, "also run the extended tier");
    app.add_option("--only", only, "run a single criterion");
    app.add_option("--fixtures", g_fixtures, "fixture directory")->capture_default_str();
    CLI11_PARSE(app, argc, argv);
    if (const char* e = std::getenv("PMF_EXTENDED"); e && std::string(e) == "1") g_extended = true;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"spin Euler factor at l = 2", c1},
        {"Saito-Kurokawa Euler factor mod 5", c2},
        {"spin Euler invariants and non-vanishing values", c3},
        {"arithmetic of 731a1", c4},
        {"genus-2 matching", c5},
        {"modular symbols at 11 and 731", c6},
        {"p-adic L valuation", c7},
        {"Jacobi layer", c8},
        {"Jacobi restriction and vanishing certificates", c9},
        {"congruence machinery", c10},
        {"evidence pipeline", c11},
    };
    std::cout << "tier: " << (g_extended ? "extended" : "standard") << "\n";
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i + 1) != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << " (" << std::fixed
             << std::setprecision(2) << secs << "s)";
        std::cout << line.str() << "\n";
        for (const auto& n : o.notes) std::cout << "        " << n << "\n";
        if (!o.pass) ++failures;
    }
    std::cout << failures << " criteria failed\n";
    return failures == 0 ? 0 : 1;
}
