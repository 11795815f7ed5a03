#include "pmf/evidence.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "pmf/modsym.hpp"
#include "pmf/paramodular.hpp"

namespace pmf {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unevaluable: return "unevaluable";
    }
    return "?";
}

Rational lambda_l1_from_euler(const QPoly& q, long ell, int weight)
{
    if (q.size() < 3) throw std::invalid_argument("Euler factor too short");
    Rational l(ell);
    return q[2] / l - (1 + l * l) * rpow(l, 2 * weight - 6);
}

// ------------------------------------------------------------------ fixtures --

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what)
{
    throw std::invalid_argument("fixture schema: " + path + ": " + what);
}

const json& need(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key)) schema_error(path + "." + key, "missing field");
    return j.at(key);
}

Rational rational_field(const json& j, const std::string& path)
{
    if (!j.is_string()) schema_error(path, "expected a rational as a string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
        schema_error(path, "not a rational");
    }
}

long residue_mod(const Rational& x, long p)
{
    return static_cast<long>(residue(x, static_cast<std::uint64_t>(p)));
}

json qpoly_json(const QPoly& q)
{
    auto a = json::array();
    for (const auto& c : q) a.push_back(to_string(c));
    return a;
}

QPoly qpoly_from(const json& j, const std::string& path)
{
    if (!j.is_array()) schema_error(path, "expected an array");
    QPoly q;
    for (std::size_t i = 0; i < j.size(); ++i) q.push_back(rational_field(j[i], path + "[" + std::to_string(i) + "]"));
    return q;
}

}  // namespace

json to_json(const CandidateData& c)
{
    json hecke = json::object(), euler = json::object(), att = json::object();
    for (const auto& [l, v] : c.lambda_l2) hecke[std::to_string(l)] = {{"lambda_l2", to_string(v)}};
    for (const auto& [l, q] : c.euler_factors) euler[std::to_string(l)] = qpoly_json(q);
    for (const auto& [k, a] : c.attestations) att[k] = {{"attested", a.attested}, {"source", a.source}};
    json j{{"label", c.label},   {"level", c.level},       {"weight", c.weight},         {"hecke", hecke},
           {"euler_factors", euler}, {"attestations", att}, {"provenance", c.provenance}};
    if (c.nonvanishing_ell) j["nonvanishing_ell"] = *c.nonvanishing_ell;
    return j;
}

CandidateData candidate_from_json(const json& j)
{
    CandidateData c;
    const std::string P = "candidate";
    auto get_str = [&](const std::string& k) {
        const auto& v = need(j, k, P);
        if (!v.is_string()) schema_error(P + "." + k, "expected a string");
        return v.get<std::string>();
    };
    auto get_int = [&](const std::string& k) {
        const auto& v = need(j, k, P);
        if (!v.is_number_integer()) schema_error(P + "." + k, "expected an integer");
        return v.get<long>();
    };
    c.label = get_str("label");
    c.level = get_int("level");
    c.weight = static_cast<int>(get_int("weight"));
    c.provenance = get_str("provenance");
    const auto& hecke = need(j, "hecke", P);
    if (!hecke.is_object()) schema_error(P + ".hecke", "expected an object");
    for (const auto& [k, v] : hecke.items()) {
        const std::string path = P + ".hecke." + k;
        c.lambda_l2[std::stol(k)] = rational_field(need(v, "lambda_l2", path), path + ".lambda_l2");
    }
    if (j.contains("euler_factors"))
        for (const auto& [k, v] : j.at("euler_factors").items())
            c.euler_factors[std::stol(k)] = qpoly_from(v, P + ".euler_factors." + k);
    if (j.contains("nonvanishing_ell")) c.nonvanishing_ell = j.at("nonvanishing_ell").get<long>();
    if (j.contains("attestations"))
        for (const auto& [k, v] : j.at("attestations").items()) {
            const std::string path = P + ".attestations." + k;
            Attestation a;
            const auto& at = need(v, "attested", path);
            if (!at.is_boolean()) schema_error(path + ".attested", "expected a boolean");
            a.attested = at.get<bool>();
            const auto& src = need(v, "source", path);
            if (!src.is_string()) schema_error(path + ".source", "expected a string");
            a.source = src.get<std::string>();
            c.attestations[k] = a;
        }
    return c;
}

FixtureSet ingest(const json& surface, const json& curve, const json& candidate)
{
    for (auto [doc, role] : {std::pair{&surface, "surface"}, {&curve, "curve"}, {&candidate, "candidate"}}) {
        const auto& pv = need(*doc, "provenance", role);
        if (!pv.is_string() || pv.get<std::string>().empty())
            schema_error(std::string(role) + ".provenance", "expected a non-empty string");
    }
    FixtureSet fx;
    fx.surface = hyperelliptic_from_json(surface);
    fx.curve = elliptic_from_json(curve);
    fx.candidate = candidate_from_json(candidate);
    fx.hashes["surface"] = sha256_hex(surface.dump());
    fx.hashes["curve"] = sha256_hex(curve.dump());
    fx.hashes["candidate"] = sha256_hex(candidate.dump());
    return fx;
}

FixtureSet ingest(const std::string& surface_path, const std::string& curve_path, const std::string& candidate_path)
{
    auto read = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open fixture " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto parse = [](const std::string& bytes, const std::string& path) {
        try {
            return json::parse(bytes);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("fixture " + path + " is not valid JSON: " + e.what());
        }
    };
    std::string s = read(surface_path), c = read(curve_path), k = read(candidate_path);
    auto fx = ingest(parse(s, surface_path), parse(c, curve_path), parse(k, candidate_path));
    fx.hashes["surface"] = sha256_hex(s);
    fx.hashes["curve"] = sha256_hex(c);
    fx.hashes["candidate"] = sha256_hex(k);
    return fx;
}

// ------------------------------------------------------------------ checks --

namespace {

std::vector<long> prime_factors(long N)
{
    std::vector<long> out;
    for (long q = 2; q * q <= N; ++q)
        if (N % q == 0) {
            out.push_back(q);
            while (N % q == 0) N /= q;
        }
    if (N > 1) out.push_back(N);
    return out;
}

long modp(long x, long p) { return ((x % p) + p) % p; }

struct Ctx {
    const FixtureSet& fx;
    long p;
    const RunOptions& opt;
    std::map<long, long> a;  // a_l of the curve at probes and bad primes
};

using CheckFn = std::function<Verdict(Ctx&, json&, std::string&)>;

Verdict check_tame(Ctx& c, json& w, std::string& d)
{
    w = json::array();
    bool ok = true;
    for (long l : prime_factors(c.fx.curve.conductor)) {
        auto b = bad_reduction_data(c.fx.curve, l);
        long v = 1 + b.w * l;
        w.push_back({{"ell", l}, {"w", b.w}, {"value", v}});
        if (modp(v, c.p) == 0) {
            ok = false;
            d = "p divides 1 + w l at l = " + std::to_string(l);
        }
    }
    return ok ? Verdict::Pass : Verdict::Fail;
}

Verdict check_irreducible(Ctx& c, json& w, std::string& d)
{
    auto r = irreducibility_screen(c.a, c.p, c.opt.probes);
    json a = json::object();
    for (long l : c.opt.probes) a[std::to_string(l)] = c.a.at(l);
    json wit = json::object();
    for (const auto& [i, l] : r.witness) wit[std::to_string(i)] = l ? json(*l) : json(nullptr);
    w = {{"a", a}, {"probes", c.opt.probes}, {"witness", wit}};
    if (!r.pass) d = "trace agrees with a reducible shape on every probe";
    return r.pass ? Verdict::Pass : Verdict::Fail;
}

Verdict check_ramified(Ctx& c, json& w, std::string& d)
{
    w = json::array();
    auto I = invariants(c.fx.curve);
    bool ok = true;
    for (long l : prime_factors(c.fx.curve.conductor)) {
        auto b = bad_reduction_data(c.fx.curve, l);
        long v = valuation(Rational(I.disc), static_cast<unsigned long>(l));
        w.push_back({{"ell", l}, {"type", to_string(b.type)}, {"v_disc", v}});
        // Tate curve: the mod-p representation is ramified at l iff p does not divide v_l(disc).
        if (v % c.p == 0) {
            ok = false;
            d = "unramified at " + std::to_string(l);
        }
    }
    return ok ? Verdict::Pass : Verdict::Fail;
}

Verdict check_matching(Ctx& c, json& w, std::string& d)
{
    w = json::array();
    bool ok = true;
    for (long l : c.opt.probes) {
        auto loc = genus2_local(c.fx.surface, l);
        w.push_back({{"ell", l}, {"t", loc.t}, {"N1", loc.N1}, {"N2", loc.N2}, {"a", c.a.at(l)}});
        if (modp(loc.t - 1 - l - c.a.at(l), c.p) != 0) {
            ok = false;
            d = "t_l differs from 1 + l + a_l mod p at l = " + std::to_string(l);
        }
    }
    return ok ? Verdict::Pass : Verdict::Fail;
}

Verdict check_deformation_ring(Ctx& c, json& w, std::string& d)
{
    auto it = c.fx.candidate.attestations.find("residual_deformation_ring");
    if (it == c.fx.candidate.attestations.end()) {
        d = "no attestation supplied";
        return Verdict::Unevaluable;
    }
    w = {{"attested", it->second.attested}, {"source", it->second.source}};
    if (!it->second.attested || it->second.source.empty()) {
        d = "attestation is negative or lacks a source";
        return Verdict::Fail;
    }
    return Verdict::Pass;
}

Verdict check_selmer(Ctx& c, json& w, std::string& d)
{
    auto b = selmer_budget(c.fx.curve, c.p);
    w = {{"rank", *c.fx.curve.rank},
         {"sha_p_order", 1},
         {"sha_analytic", *c.fx.curve.sha_analytic},
         {"order", b.order.get_str()},
         {"provenance", b.provenance}};
    if (!b.theorem_applicable) d = "#H^1_f = " + b.order.get_str() + " != p";
    return b.theorem_applicable ? Verdict::Pass : Verdict::Fail;
}

Verdict check_padic(Ctx& c, json& w, std::string& d)
{
    auto v = padic_L_valuation(c.fx.curve, c.p, c.opt.padic_precision, -1);
    w = to_json(v);
    if (!v.valuation) {
        d = "valuation at least the working precision";
        return Verdict::Fail;
    }
    if (*v.valuation > 1) d = "valuation " + std::to_string(*v.valuation) + " > 1";
    return *v.valuation <= 1 ? Verdict::Pass : Verdict::Fail;
}

Verdict check_eigen_congruence(Ctx& c, json& w, std::string& d)
{
    if (c.fx.candidate.lambda_l2.empty()) {
        d = "candidate has no Hecke eigenvalues";
        return Verdict::Unevaluable;
    }
    w = json::array();
    bool ok = true;
    for (const auto& [l, lam] : c.fx.candidate.lambda_l2) {
        long al = c.a.count(l) ? c.a.at(l) : ap_table(c.fx.curve, l).at(l);
        w.push_back({{"ell", l}, {"lambda", to_string(lam)}, {"a", al}});
        if (modp(residue_mod(lam, c.p) - 1 - l - al, c.p) != 0) {
            ok = false;
            d = "lambda_l differs from 1 + l + a_l mod p at l = " + std::to_string(l);
        }
    }
    return ok ? Verdict::Pass : Verdict::Fail;
}

// Squarefree with nonzero constant term, degree >= 1.
bool distinct_roots_mod_p(const FpPoly& f, long p)
{
    return degree(f) >= 1 && f[0] != 0 && fp_squarefree(f, static_cast<std::uint64_t>(p));
}

Verdict check_distinct_roots(Ctx& c, json& w, std::string& d)
{
    const auto& cand = c.fx.candidate;
    auto ef = cand.euler_factors.find(c.p);
    if (ef != cand.euler_factors.end()) {
        bool sf = poly_squarefree(ef->second);
        w = {{"method", "squarefree over Q"}, {"Q", qpoly_json(ef->second)}};
        if (!sf) d = "Q_p has a repeated root";
        return sf ? Verdict::Pass : Verdict::Fail;
    }
    auto lam = cand.lambda_l2.find(c.p);
    if (lam == cand.lambda_l2.end()) {
        d = "neither Q_p nor lambda_p supplied";
        return Verdict::Unevaluable;
    }
    long ap = c.a.count(c.p) ? c.a.at(c.p) : count_points_elliptic(c.fx.curve, c.p);
    auto sk = sk_euler_mod_p(Integer(ap), c.p, static_cast<std::uint64_t>(c.p));
    auto lin = sk.size() > 1 ? sk[1] : 0;
    long cand_lin = modp(-residue_mod(lam->second, c.p), c.p);
    w = {{"method", "mod-p comparison with the Saito-Kurokawa factor"},
         {"a_p", ap},
         {"sk_mod_p", sk},
         {"lambda_p", to_string(lam->second)}};
    if (static_cast<long>(lin) != cand_lin) {
        d = "linear term of Q_p mod p does not match the lift";
        return Verdict::Fail;
    }
    if (!distinct_roots_mod_p(sk, c.p)) {
        d = "reduction has a repeated root";
        return Verdict::Fail;
    }
    return Verdict::Pass;
}

Verdict check_nonvanishing(Ctx& c, json& w, std::string& d)
{
    const auto& cand = c.fx.candidate;
    if (!cand.nonvanishing_ell) {
        d = "no prime supplied";
        return Verdict::Unevaluable;
    }
    long l = *cand.nonvanishing_ell;
    auto ef = cand.euler_factors.find(l);
    auto lam = cand.lambda_l2.find(l);
    if (ef == cand.euler_factors.end() || lam == cand.lambda_l2.end()) {
        d = "Euler factor or lambda missing at l = " + std::to_string(l);
        return Verdict::Unevaluable;
    }
    auto Q = spin_euler_from_poly(ef->second, l, cand.weight);
    // The factor must be the spin polynomial of the supplied eigenvalues.
    Rational l1 = lambda_l1_from_euler(Q.coeffs, l, cand.weight);
    HeckeEigenSystem ev{cand.weight, cand.level, {{l, {std::nullopt, l1, lam->second}}}};
    auto R = spin_euler(ev, l);
    Rational q1 = poly_eval(Q.coeffs, 1), ql = poly_eval(Q.coeffs, Rational(1, l));
    w = {{"ell", l}, {"weight", cand.weight}, {"Q", qpoly_json(Q.coeffs)}, {"lambda_l2", to_string(lam->second)},
         {"lambda_l1", to_string(l1)}, {"Q(1)", to_string(q1)},    {"Q(1/l)", to_string(ql)}};
    if (R.coeffs != Q.coeffs) {
        d = "Euler factor is not the spin polynomial of the eigenvalues";
        return Verdict::Fail;
    }
    if (q1 == 0 || ql == 0) {
        d = "Q_l vanishes at 1 or 1/l";
        return Verdict::Fail;
    }
    return Verdict::Pass;
}

Verdict check_gates(Ctx& c, json& w, std::string& d)
{
    long ap = c.p <= 3 || c.fx.curve.conductor % c.p == 0 ? 0 : count_points_elliptic(c.fx.curve, c.p);
    w = {{"p", c.p}, {"N", c.fx.curve.conductor}, {"a_p", ap}};
    if (c.p == 2 || c.p == 3) d = "p in {2, 3} is excluded";
    else if (c.fx.curve.conductor % c.p == 0) d = "p divides N";
    else if (modp(ap, c.p) == 0) d = "p is not ordinary";
    return d.empty() ? Verdict::Pass : Verdict::Fail;
}

struct CheckSpec {
    int id;
    const char* name;
    const char* hypothesis;
    CheckFn fn;
    bool attested;
};

const std::vector<CheckSpec>& check_specs()
{
    static const std::vector<CheckSpec> specs{
        {1, "tame", "p does not divide 1 + w_l l for every l | N", check_tame, false},
        {2, "residual_irreducibility", "the mod-p trace is not chi^i + chi^(1-i) for i = 1, 2", check_irreducible, false},
        {3, "residual_ramification", "the residual representation is ramified at every l | N", check_ramified, false},
        {4, "newform_matching", "t_l = 1 + l + a_l(f) mod p on the probe primes", check_matching, false},
        {5, "deformation_ring", "R_rho = O (no congruence prime), externally attested", check_deformation_ring, true},
        {6, "selmer_budget", "#H^1_f(Q, residual rep) = p", check_selmer, false},
        {7, "padic_L_valuation", "val_p L_p(f, omega^-1, T = p) <= 1", check_padic, false},
        {8, "eigenvalue_congruence", "lambda_l(F) = 1 + l + a_l(f) mod p", check_eigen_congruence, false},
        {9, "distinct_roots", "Q_p(F) has pairwise distinct roots", check_distinct_roots, false},
        {10, "nonvanishing", "Q_l(1) != 0 and Q_l(1/l) != 0", check_nonvanishing, false},
        {11, "gates", "p not in {2, 3}, p does not divide N, p ordinary", check_gates, false},
    };
    return specs;
}

}  // namespace

EvidenceReport run_checklist(const FixtureSet& fx, long p, const RunOptions& opt)
{
    EvidenceReport r;
    r.hashes = fx.hashes;
    r.inputs = {{"surface", fx.surface.label}, {"curve", fx.curve.label}, {"candidate", fx.candidate.label},
                {"p", p},                      {"N", fx.curve.conductor}, {"probes", opt.probes},
                {"padic_precision", opt.padic_precision}};
    Ctx ctx{fx, p, opt, {}};
    std::string data_error;
    try {
        std::vector<long> need = opt.probes;
        for (long l : prime_factors(fx.curve.conductor)) need.push_back(l);
        for (long l : need) ctx.a[l] = ap_table(fx.curve, l).at(l);
        if (fx.candidate.level != fx.curve.conductor || fx.surface.conductor != fx.curve.conductor)
            data_error = "fixture levels disagree";
    } catch (const std::exception& e) {
        data_error = e.what();
    }
    for (const auto& s : check_specs()) {
        Check c;
        c.id = s.id;
        c.name = s.name;
        c.hypothesis = s.hypothesis;
        c.attested = s.attested;
        if (!data_error.empty()) {
            c.verdict = Verdict::Unevaluable;
            c.detail = data_error;
        } else {
            try {
                c.verdict = s.fn(ctx, c.witness, c.detail);
            } catch (const std::exception& e) {
                c.verdict = Verdict::Unevaluable;
                c.detail = e.what();
            }
        }
        r.checks.push_back(std::move(c));
    }
    r.overall = "all hypotheses verified";
    for (const auto& c : r.checks)
        if (c.verdict != Verdict::Pass) {
            r.overall = "failed at " + c.name;
            break;
        }
    return r;
}

json to_json(const EvidenceReport& r)
{
    auto checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"id", c.id},
                          {"name", c.name},
                          {"hypothesis", c.hypothesis},
                          {"verdict", to_string(c.verdict)},
                          {"attested", c.attested},
                          {"witness", c.witness},
                          {"detail", c.detail}});
    return {{"schema", kReportSchema}, {"version", kLibraryVersion}, {"inputs", r.inputs},
            {"checks", checks},        {"overall", r.overall},       {"fixture_hashes", r.hashes}};
}

// ------------------------------------------------------------------ re-verification --

namespace {

bool reverify(const std::string& name, const json& w, long p, long N, std::string& why)
{
    auto fail = [&](const std::string& s) {
        why = s;
        return false;
    };
    if (name == "tame") {
        for (const auto& e : w) {
            long l = e.at("ell"), s = e.at("w"), v = e.at("value");
            if (v != 1 + s * l || modp(v, p) == 0 || (s != 1 && s != -1) || N % l != 0) return fail("tame witness");
        }
        return true;
    }
    if (name == "residual_irreducibility") {
        std::map<long, long> a;
        for (const auto& [k, v] : w.at("a").items()) a[std::stol(k)] = v.get<long>();
        return irreducibility_screen(a, p, w.at("probes").get<std::vector<long>>()).pass || fail("screen fails");
    }
    if (name == "residual_ramification") {
        for (const auto& e : w) {
            auto t = e.at("type").get<std::string>();
            if ((t != "split" && t != "nonsplit") || e.at("v_disc").get<long>() % p == 0) return fail("ramification");
        }
        return true;
    }
    if (name == "newform_matching") {
        for (const auto& e : w) {
            long l = e.at("ell"), t = e.at("t"), a = e.at("a"), n1 = e.at("N1");
            if (t != l + 1 - n1 || modp(t - 1 - l - a, p) != 0) return fail("matching at " + std::to_string(l));
        }
        return true;
    }
    if (name == "deformation_ring")
        return (w.at("attested").get<bool>() && !w.at("source").get<std::string>().empty()) || fail("attestation");
    if (name == "selmer_budget") {
        Integer order = ipow(Integer(p), w.at("rank").get<unsigned long>()) * w.at("sha_p_order").get<long>();
        return (order == Integer(w.at("order").get<std::string>()) && order == p) || fail("selmer order");
    }
    if (name == "padic_L_valuation") {
        long v = w.at("valuation"), val = 0, prec = w.at("precision");
        Integer x = w.at("value").get<std::uint64_t>();
        if (x == 0 || x >= ipow(Integer(p), static_cast<unsigned long>(prec))) return fail("value out of range");
        while (x % p == 0) {
            x /= p;
            ++val;
        }
        return (val == v && v <= 1 && w.at("twist").get<long>() == -1) || fail("valuation");
    }
    if (name == "eigenvalue_congruence") {
        for (const auto& e : w) {
            Rational lam = parse_rational(e.at("lambda").get<std::string>());
            long l = e.at("ell"), a = e.at("a");
            if (modp(residue_mod(lam, p) - 1 - l - a, p) != 0) return fail("eigenvalue congruence");
        }
        return true;
    }
    if (name == "distinct_roots") {
        if (w.at("method") == "squarefree over Q") return poly_squarefree(qpoly_from(w.at("Q"), "Q")) || fail("repeated");
        auto sk = sk_euler_mod_p(Integer(w.at("a_p").get<long>()), p, static_cast<std::uint64_t>(p));
        if (sk != w.at("sk_mod_p").get<FpPoly>()) return fail("sk factor mismatch");
        long lin = sk.size() > 1 ? static_cast<long>(sk[1]) : 0;
        Rational lam = parse_rational(w.at("lambda_p").get<std::string>());
        return (lin == modp(-residue_mod(lam, p), p) && distinct_roots_mod_p(sk, p)) || fail("mod-p comparison");
    }
    if (name == "nonvanishing") {
        long l = w.at("ell");
        auto Q = qpoly_from(w.at("Q"), "Q");
        Rational l1 = parse_rational(w.at("lambda_l1").get<std::string>());
        Rational l2 = parse_rational(w.at("lambda_l2").get<std::string>());
        HeckeEigenSystem ev{w.at("weight").get<int>(), N, {{l, {std::nullopt, l1, l2}}}};
        auto R = spin_euler(ev, l);
        return (R.coeffs == Q && poly_eval(Q, 1) != 0 && poly_eval(Q, Rational(1, l)) != 0) || fail("nonvanishing");
    }
    if (name == "gates") {
        long a = w.at("a_p");
        return (p != 2 && p != 3 && N % p != 0 && modp(a, p) != 0 && a * a <= 4 * p) || fail("gates");
    }
    return fail("unknown check " + name);
}

}  // namespace

ReportCheck verify_report(const json& report)
{
    ReportCheck rc;
    try {
        if (report.at("schema").get<int>() != kReportSchema) rc.problems.push_back("unsupported report schema");
        long p = report.at("inputs").at("p");
        long N = report.at("inputs").at("N");
        bool all = true;
        std::string first_fail;
        const auto& checks = report.at("checks");
        if (checks.size() != check_specs().size()) rc.problems.push_back("incomplete checklist");
        for (const auto& c : checks) {
            auto name = c.at("name").get<std::string>();
            if (c.at("verdict") != "pass") {
                if (all) first_fail = name;
                all = false;
                continue;
            }
            std::string why;
            bool ok = false;
            try {
                ok = reverify(name, c.at("witness"), p, N, why);
            } catch (const std::exception& e) {
                why = e.what();
            }
            if (!ok) rc.problems.push_back(name + ": " + why);
        }
        std::string expect = all ? "all hypotheses verified" : "failed at " + first_fail;
        if (report.at("overall") != expect) rc.problems.push_back("overall verdict is not the conjunction of checks");
    } catch (const std::exception& e) {
        rc.problems.push_back(std::string("malformed report: ") + e.what());
    }
    rc.ok = rc.problems.empty();
    return rc;
}

}  // namespace pmf
