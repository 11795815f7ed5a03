#include <doctest.h>

#include <fstream>

#include "pmf/evidence.hpp"

using namespace pmf;
using nlohmann::json;

namespace {

json load(const std::string& name)
{
    std::ifstream in(std::string(PMF_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    return json::parse(in);
}

struct Docs {
    json surface = load("surface_731.json");
    json curve = load("curve_731a1.json");
    json candidate = load("candidate_f731.json");
    FixtureSet ingest() const { return pmf::ingest(surface, curve, candidate); }
};

const Check& by_name(const EvidenceReport& r, const std::string& name)
{
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::logic_error("no check " + name);
}

}  // namespace

TEST_CASE("sha256")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("full 731 fixture set verifies")
{
    std::string d = PMF_FIXTURE_DIR;
    auto fx = ingest(d + "/surface_731.json", d + "/curve_731a1.json", d + "/candidate_f731.json");
    auto r = run_checklist(fx, 5);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.verdict == Verdict::Pass, c.name << ": " << c.detail);
    CHECK(r.checks.size() == 11);
    CHECK(r.verified());
    CHECK(r.overall == "all hypotheses verified");
    CHECK(by_name(r, "deformation_ring").attested);
    CHECK(by_name(r, "distinct_roots").witness["method"] != "squarefree over Q");
    CHECK(by_name(r, "padic_L_valuation").witness["valuation"] == 1);
    auto j = to_json(r);
    auto v = verify_report(j);
    for (const auto& p : v.problems) MESSAGE(p);
    CHECK(v.ok);
    CHECK(j["fixture_hashes"]["curve"].get<std::string>().size() == 64);

    // Determinism.
    CHECK(to_json(run_checklist(fx, 5)).dump() == j.dump());

    // Tampered witness.
    auto t = j;
    for (auto& c : t["checks"])
        if (c["name"] == "newform_matching") c["witness"][0]["a"] = 4;
    CHECK(!verify_report(t).ok);
    auto u = j;
    u["overall"] = "failed at tame";
    CHECK(!verify_report(u).ok);
}

TEST_CASE("p = 3 fails the gate")
{
    Docs d;
    auto r = run_checklist(d.ingest(), 3);
    CHECK(!r.verified());
    CHECK(by_name(r, "gates").verdict == Verdict::Fail);
    CHECK(verify_report(to_json(r)).ok);
}

TEST_CASE("wrong eigenvalue fails the congruence check")
{
    Docs d;
    d.candidate["hecke"]["2"]["lambda_l2"] = "0";
    auto r = run_checklist(d.ingest(), 5);
    CHECK(by_name(r, "eigenvalue_congruence").verdict == Verdict::Fail);
    CHECK(r.overall == "failed at eigenvalue_congruence");
}

TEST_CASE("perturbations fail closed")
{
    Docs base;
    auto run = [](const Docs& d) { return run_checklist(d.ingest(), 5); };
    {
        Docs d = base;
        d.candidate.erase("attestations");
        auto r = run(d);
        CHECK(by_name(r, "deformation_ring").verdict == Verdict::Unevaluable);
        CHECK(!r.verified());
    }
    {
        Docs d = base;
        d.candidate["attestations"]["residual_deformation_ring"]["attested"] = false;
        CHECK(!run(d).verified());
    }
    {
        Docs d = base;
        d.candidate.erase("nonvanishing_ell");
        CHECK(by_name(run(d), "nonvanishing").verdict == Verdict::Unevaluable);
    }
    {
        Docs d = base;
        d.candidate["hecke"].erase("5");
        auto r = run(d);
        CHECK(by_name(r, "distinct_roots").verdict == Verdict::Unevaluable);
        CHECK(!r.verified());
    }
    {
        Docs d = base;
        d.candidate["euler_factors"]["2"][3] = "3";
        CHECK(by_name(run(d), "nonvanishing").verdict != Verdict::Pass);
    }
    {
        Docs d = base;
        d.curve.erase("rank");
        auto r = run(d);
        CHECK(by_name(r, "selmer_budget").verdict == Verdict::Unevaluable);
        CHECK(!r.verified());
    }
    {
        Docs d = base;
        d.curve.erase("provenance");
        CHECK_THROWS_WITH(run(d), doctest::Contains("curve.provenance"));
    }
    {
        Docs d = base;
        d.candidate["level"] = 730;
        auto r = run(d);
        CHECK(!r.verified());
        for (const auto& c : r.checks) CHECK(c.verdict == Verdict::Unevaluable);
    }
    // Each top-level optional datum of the candidate.
    for (const char* key : {"hecke", "euler_factors", "nonvanishing_ell", "attestations"}) {
        Docs d = base;
        d.candidate.erase(key);
        bool failed = false;
        try {
            failed = !run(d).verified();
        } catch (const std::invalid_argument&) {
            failed = true;
        }
        CHECK_MESSAGE(failed, key);
    }
}

TEST_CASE("fixture ingest errors and round trip")
{
    Docs d;
    auto fx = d.ingest();
    CHECK(fx.curve.label == "731a1");
    CHECK(fx.curve.conductor == 731);
    CHECK(to_json(candidate_from_json(to_json(fx.candidate))) == to_json(fx.candidate));
    CHECK(candidate_from_json(to_json(fx.candidate)).lambda_l2.at(2) == -1);
    auto c = d.candidate;
    c.erase("weight");
    CHECK_THROWS_WITH_AS(candidate_from_json(c), doctest::Contains("candidate.weight"), std::invalid_argument);
    c = d.candidate;
    c["hecke"]["2"].erase("lambda_l2");
    CHECK_THROWS_WITH_AS(candidate_from_json(c), doctest::Contains("candidate.hecke.2.lambda_l2"), std::invalid_argument);
    auto s = d.surface;
    s.erase("h");
    CHECK_THROWS_WITH_AS(hyperelliptic_from_json(s), doctest::Contains("surface.h"), std::invalid_argument);
    CHECK_THROWS_AS(ingest(std::string("/nonexistent"), std::string("/nonexistent"), std::string("/nonexistent")), std::invalid_argument);
}

TEST_CASE("lambda_l1 from the Euler factor")
{
    QPoly q{1, 1, 2, 2, 4};
    CHECK(lambda_l1_from_euler(q, 2, 2) == Rational(-1) / 4);
}
