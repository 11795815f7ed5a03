#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pmf/evidence.hpp"
#include "pmf/jrm.hpp"
#include "pmf/modp.hpp"
#include "pmf/modsym.hpp"

using namespace pmf;
using nlohmann::json;

namespace {

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void emit(const json& j, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << j.dump(2) << "\n";
}

std::vector<Rational> parse_rationals(const std::string& csv)
{
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    return out;
}

HeckeKind parse_kind(const std::string& s)
{
    if (s == "T") return HeckeKind::T;
    if (s == "T1") return HeckeKind::T_l_1;
    if (s == "T0") return HeckeKind::T_l_0;
    if (s == "Tsq") return HeckeKind::T_l_sq;
    throw std::invalid_argument("unknown Hecke kind " + s + " (T, T1, T0, Tsq)");
}

SignVector parse_signs(const std::string& s)
{
    // "17:+,43:-"
    SignVector v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto c = tok.find(':');
        if (c == std::string::npos) throw std::invalid_argument("signs must look like 17:+,43:-");
        char sg = tok.at(c + 1);
        v[std::stol(tok.substr(0, c))] = sg == '-' ? -1 : 1;
    }
    return v;
}

json poly_json(const QPoly& q)
{
    auto a = json::array();
    for (const auto& c : q) a.push_back(to_string(c));
    return a;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Paramodular forms toolkit"};
    app.require_subcommand(1);
    std::string out;
    int exit_code = 0;

    // ---------------------------------------------------------------- para
    auto* para = app.add_subcommand("para", "Paramodular Fourier expansions")->require_subcommand(1);

    std::string jac_file;
    long depth = 1, det_max = 1;
    auto* grit = para->add_subcommand("grit", "Gritsenko lift of a Jacobi form");
    grit->add_option("--jacobi", jac_file, "Jacobi form JSON")->required();
    grit->add_option("--depth", depth)->required();
    grit->add_option("--detmax", det_max)->required();
    grit->add_option("-o,--out", out);
    grit->callback([&] {
        emit(to_json(gritsenko_lift(jacobi_from_json(read_json(jac_file)), {depth, det_max})), out);
    });

    std::string form_file, kind = "T";
    long ell = 2;
    auto* hecke = para->add_subcommand("hecke", "Hecke operator on a truncated expansion");
    hecke->add_option("--form", form_file)->required();
    hecke->add_option("--ell", ell)->required();
    hecke->add_option("--kind", kind, "T, T1, T0 or Tsq")->capture_default_str();
    hecke->add_option("-o,--out", out);
    hecke->callback([&] {
        auto F = paramodular_from_json(read_json(form_file));
        emit(to_json(hecke_T(ell, parse_kind(kind), F)), out);
    });

    auto* al = para->add_subcommand("al", "Atkin-Lehner involution W_l (l = level gives Fricke)");
    al->add_option("--form", form_file)->required();
    al->add_option("--ell", ell)->required();
    al->add_option("-o,--out", out);
    al->callback([&] {
        auto F = paramodular_from_json(read_json(form_file));
        emit(to_json(ell == F.level() ? fricke(F) : atkin_lehner(ell, F)), out);
    });

    int weight = 2;
    std::string l1s, l2s, poly;
    auto* euler = para->add_subcommand("euler", "Spin Euler factor from T(l) and T_1(l^2) eigenvalues, or a polynomial");
    euler->add_option("--weight,-k", weight)->capture_default_str();
    euler->add_option("--ell", ell)->required();
    euler->add_option("--l1", l1s, "eigenvalue lambda_{l,1}");
    euler->add_option("--l2", l2s, "eigenvalue of T(l)");
    euler->add_option("--poly", poly, "c0,c1,c2,c3,c4");
    euler->callback([&] {
        SpinEulerFactor f;
        if (!poly.empty()) {
            f = spin_euler_from_poly(parse_rationals(poly), ell, weight);
        } else {
            if (l1s.empty() || l2s.empty()) throw std::invalid_argument("give --l1 and --l2, or --poly");
            HeckeEigenSystem ev{weight, 0, {{ell, {std::nullopt, parse_rational(l1s), parse_rational(l2s)}}}};
            f = spin_euler(ev, ell);
        }
        auto j = to_json(f);
        j["polynomial"] = poly_to_string(f.coeffs, "X");
        j["Q(1)"] = to_string(poly_eval(f.coeffs, 1));
        j["Q(1/l)"] = to_string(poly_eval(f.coeffs, Rational(1, ell)));
        emit(j, "");
    });

    long a_val = 0, modulus = 0;
    auto* sk = para->add_subcommand("sk-euler", "Saito-Kurokawa Euler factor (1 - aT + lT^2)(1 - T)(1 - lT)");
    sk->add_option("-a", a_val)->required();
    sk->add_option("--ell", ell)->required();
    sk->add_option("--mod", modulus, "reduce modulo a prime");
    sk->callback([&] {
        json j{{"a", a_val}, {"ell", ell}};
        if (modulus) {
            j["p"] = modulus;
            j["coeffs"] = sk_euler_mod_p(Integer(a_val), ell, static_cast<std::uint64_t>(modulus));
        } else {
            auto q = sk_euler(Integer(a_val), ell);
            j["coeffs"] = poly_json(q);
            j["polynomial"] = poly_to_string(q, "T");
        }
        emit(j, "");
    });

    // ---------------------------------------------------------------- jacobi
    auto* jac = app.add_subcommand("jacobi", "Jacobi forms")->require_subcommand(1);
    std::vector<long> thetas;
    long eta = -6, disc_bound = 50, index = 1;
    std::string ring_name = "ZZ";
    auto* tb = jac->add_subcommand("theta-block", "Expand eta^e prod theta_d");
    tb->add_option("--thetas", thetas)->required()->delimiter(',');
    tb->add_option("--eta", eta)->capture_default_str();
    tb->add_option("--disc-bound", disc_bound)->capture_default_str();
    tb->add_option("--ring", ring_name)->capture_default_str();
    tb->add_option("-o,--out", out);
    tb->callback([&] {
        ThetaBlockSpec spec{eta, thetas};
        auto r = theta_block(spec, disc_bound, Ring::parse(ring_name));
        if (!r.form) throw std::runtime_error("rejected: " + r.rejection);
        emit(to_json(*r.form), out);
    });

    std::vector<std::string> form_files;
    auto* span = jac->add_subcommand("span", "Rank of a list of Jacobi forms");
    span->add_option("forms", form_files)->required();
    span->add_option("--ring", ring_name)->capture_default_str();
    span->callback([&] {
        std::vector<JacobiFormQExp> forms;
        for (const auto& f : form_files) forms.push_back(jacobi_from_json(read_json(f)));
        auto r = span_rank(forms, Ring::parse(ring_name));
        emit({{"rank", r.rank}, {"selected", r.selected}, {"lower_bound", r.lower_bound}}, "");
    });

    auto* dim = jac->add_subcommand("dim", "dim J^cusp_{k,m}");
    dim->add_option("-k,--weight", weight)->required();
    dim->add_option("-m,--index", index)->required();
    dim->callback([&] {
        auto d = dim_jacobi_cusp(weight, index);
        emit({{"weight", weight}, {"index", index}, {"dim", d.value ? json(*d.value) : json(nullptr)},
              {"provenance", d.provenance}},
             "");
    });

    // ---------------------------------------------------------------- jrm
    auto* jrm = app.add_subcommand("jrm", "Jacobi restriction method")->require_subcommand(1);
    long level = 1, mod_p = 0;
    std::string signs;
    int fricke_sign = 0;
    std::vector<std::string> basis_files;
    auto* solve = jrm->add_subcommand("solve", "Solve the restriction system");
    solve->add_option("--weight", weight)->required();
    solve->add_option("--level", level)->required();
    solve->add_option("--depth", depth)->required();
    solve->add_option("--detmax", det_max)->required();
    solve->add_option("--signs", signs, "Atkin-Lehner signs, e.g. 17:+,43:-");
    solve->add_option("--fricke", fricke_sign, "Fricke sign +1 or -1");
    solve->add_option("--mod", mod_p, "solve over F_p");
    solve->add_option("--basis", basis_files,
                      "JSON file per slice: {index, determinacy_bound, provenance, forms:[...]}; default: ring generators");
    solve->add_option("-o,--out", out);
    solve->callback([&] {
        JRMParams p;
        p.weight = weight;
        p.level = level;
        p.depth = depth;
        p.det_max = det_max;
        if (!signs.empty()) p.signs = parse_signs(signs);
        if (fricke_sign) p.fricke = fricke_sign;
        if (mod_p) p.ring = Ring::prime_field(static_cast<std::uint64_t>(mod_p));
        std::vector<JacobiBasis> bases;
        if (!basis_files.empty()) {
            for (const auto& f : basis_files) {
                auto j = read_json(f);
                JacobiBasis b;
                b.index = j.at("index");
                b.determinacy_bound = j.value("determinacy_bound", 0L);
                b.provenance = j.value("provenance", f);
                for (const auto& x : j.at("forms")) b.forms.push_back(jacobi_from_json(x));
                bases.push_back(std::move(b));
            }
        } else {
            for (long j = 1; j <= depth; ++j)
                bases.push_back({j * level, jacobi_cusp_basis(weight, j * level, det_max + 1), 0, "generators"});
        }
        auto space = solve_jrm(p, bases);
        std::cerr << "dimension " << space.dimension() << "\n";
        emit(to_json(space), out);
    });

    // ---------------------------------------------------------------- certify
    auto* cert = app.add_subcommand("certify", "Mod-p certificates")->require_subcommand(1);
    std::string input;
    auto* vanish = cert->add_subcommand("vanish", "Product-obstruction vanishing certificate");
    vanish->add_option("input", input,
                       "JSON {p, known_rows, forced_columns, product_dim, codim_bound, codim_provenance, claim, depth}")
        ->required();
    vanish->add_option("-o,--out", out);
    vanish->callback([&] {
        auto j = read_json(input);
        auto c = product_obstruction_certificate(
            j.at("known_rows").get<std::vector<std::vector<std::uint64_t>>>(),
            j.at("forced_columns").get<std::vector<std::size_t>>(), j.at("p").get<std::uint64_t>(),
            j.at("product_dim").get<std::size_t>(), j.at("codim_bound").get<std::size_t>(),
            j.at("codim_provenance").get<std::string>(), j.value("claim", std::string()), j.value("depth", 1L));
        if (!c) {
            std::cerr << "no certificate: inequality does not hold\n";
            exit_code = 1;
            return;
        }
        emit(to_json(*c), out);
    });

    auto* cong = cert->add_subcommand("congruence", "Congruence certificate f = -beta g mod p");
    cong->add_option("input", input, "JSON {f, g, p, depth, tail}")->required();
    cong->add_option("-o,--out", out);
    cong->callback([&] {
        auto j = read_json(input);
        auto c = congruence_certificate(paramodular_from_json(j.at("f")), paramodular_from_json(j.at("g")),
                                        j.at("p").get<std::uint64_t>(), j.at("depth").get<long>(),
                                        vanishing_from_json(j.at("tail")));
        emit(to_json(c), out);
    });

    auto* ver = cert->add_subcommand("verify", "Re-verify a certificate or evidence report");
    ver->add_option("file", input)->required();
    ver->callback([&] {
        auto j = read_json(input);
        if (j.contains("checks")) {
            auto r = verify_report(j);
            for (const auto& p : r.problems) std::cout << "problem: " << p << "\n";
            std::cout << (r.ok ? "ok" : "FAILED") << "\n";
            exit_code = r.ok ? 0 : 1;
        } else {
            auto r = verify_certificate(j);
            std::cout << (r.ok ? "ok" : "FAILED") << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
            exit_code = r.ok ? 0 : 1;
        }
    });

    // ---------------------------------------------------------------- arith
    auto* arith = app.add_subcommand("arith", "Arithmetic side")->require_subcommand(1);
    std::string curve_file, surface_file;
    long bound = 50, prime = 5, prec = 2, twist = -1, sha_p = 1;
    auto* ap = arith->add_subcommand("ap", "a_l of an elliptic curve");
    ap->add_option("--curve", curve_file)->required();
    ap->add_option("--bound", bound)->capture_default_str();
    ap->callback([&] {
        auto E = elliptic_from_json(read_json(curve_file));
        json a = json::object(), bad = json::object();
        for (const auto& [l, v] : ap_table(E, bound)) a[std::to_string(l)] = v;
        for (long l : prime_divisors(E.conductor)) {
            try {
                auto b = bad_reduction_data(E, l);
                bad[std::to_string(l)] = {{"type", to_string(b.type)}, {"w", b.w}};
            } catch (const std::exception& e) {
                bad[std::to_string(l)] = {{"error", e.what()}};
            }
        }
        emit({{"label", E.label}, {"a", a}, {"bad", bad}}, "");
    });

    auto* g2 = arith->add_subcommand("genus2", "Local data of a genus-2 curve");
    std::vector<long> ells{2, 3, 7, 11, 13};
    g2->add_option("--surface", surface_file)->required();
    g2->add_option("--ell", ells)->delimiter(',')->capture_default_str();
    g2->add_option("--curve", curve_file, "compare t_l with 1 + l + a_l mod --p");
    g2->add_option("-p", prime)->capture_default_str();
    g2->callback([&] {
        auto C = hyperelliptic_from_json(read_json(surface_file));
        std::optional<EllipticCurveData> E;
        if (!curve_file.empty()) E = elliptic_from_json(read_json(curve_file));
        auto rows = json::array();
        for (long l : ells) {
            auto loc = genus2_local(C, l);
            auto L = json::array();
            for (const auto& c : loc.L()) L.push_back(c.get_str());
            json r{{"ell", l}, {"N1", loc.N1}, {"N2", loc.N2}, {"t", loc.t}, {"s", loc.s}, {"L", L}};
            if (E) {
                long a = ap_table(*E, l).at(l);
                r["a"] = a;
                r["match"] = ((loc.t - 1 - l - a) % prime + prime) % prime == 0;
            }
            rows.push_back(r);
        }
        emit(rows, "");
    });

    auto* padic = arith->add_subcommand("padicL", "Valuation of L_p(f, omega^j, T = p)");
    padic->add_option("--curve", curve_file)->required();
    padic->add_option("-p", prime)->capture_default_str();
    padic->add_option("--prec", prec)->capture_default_str();
    padic->add_option("--twist", twist)->capture_default_str();
    padic->callback([&] { emit(to_json(padic_L_valuation(elliptic_from_json(read_json(curve_file)), prime, prec, twist)), ""); });

    auto* selmer = arith->add_subcommand("selmer", "Selmer order bookkeeping");
    selmer->add_option("--curve", curve_file)->required();
    selmer->add_option("-p", prime)->capture_default_str();
    selmer->add_option("--sha-p", sha_p, "order of Sha[p]")->capture_default_str();
    selmer->callback([&] {
        auto b = selmer_budget(elliptic_from_json(read_json(curve_file)), prime, sha_p);
        emit({{"order", b.order.get_str()}, {"equals_p", b.theorem_applicable}, {"provenance", b.provenance}}, "");
    });

    // ---------------------------------------------------------------- evidence
    auto* ev = app.add_subcommand("evidence", "Hypothesis checklist")->require_subcommand(1);
    std::string cand_file;
    std::vector<long> probes{2, 3, 7, 11, 13};
    auto* run = ev->add_subcommand("run", "Run the checklist and write a report");
    run->add_option("--surface", surface_file)->required();
    run->add_option("--curve", curve_file)->required();
    run->add_option("--candidate", cand_file)->required();
    run->add_option("-p", prime)->required();
    run->add_option("--probes", probes)->delimiter(',')->capture_default_str();
    run->add_option("--prec", prec, "p-adic working precision")->capture_default_str();
    run->add_option("-o,--out", out);
    run->callback([&] {
        auto fx = ingest(surface_file, curve_file, cand_file);
        RunOptions opt;
        opt.probes = probes;
        opt.padic_precision = prec;
        auto r = run_checklist(fx, prime, opt);
        for (const auto& c : r.checks)
            std::cerr << (c.verdict == Verdict::Pass ? "PASS " : c.verdict == Verdict::Fail ? "FAIL " : "UNEV ") << c.id
                      << " " << c.name << (c.attested ? " [attested]" : "") << (c.detail.empty() ? "" : ": " + c.detail)
                      << "\n";
        std::cerr << r.overall << "\n";
        emit(to_json(r), out);
        exit_code = r.verified() ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
