#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmf/arith.hpp"
#include "pmf/poly.hpp"

namespace pmf {

constexpr int kReportSchema = 1;
constexpr const char* kLibraryVersion = "0.1.0";

struct Attestation {
    bool attested = false;
    std::string source;
};

// Hecke data of the candidate Siegel eigenform.
struct CandidateData {
    std::string label;
    long level = 0;
    int weight = 2;
    std::map<long, Rational> lambda_l2;       // eigenvalue of T(l)
    std::map<long, QPoly> euler_factors;      // spin factors Q_l, c0..c4
    std::optional<long> nonvanishing_ell;
    std::map<std::string, Attestation> attestations;
    std::string provenance;
};

nlohmann::json to_json(const CandidateData& c);
CandidateData candidate_from_json(const nlohmann::json& j);

struct FixtureSet {
    HyperellipticCurveData surface;
    EllipticCurveData curve;
    CandidateData candidate;
    std::map<std::string, std::string> hashes;  // role -> sha256 of the ingested bytes
};

std::string sha256_hex(const std::string& bytes);
// Reads and validates the three fixtures; schema errors name the offending field.
FixtureSet ingest(const std::string& surface_path, const std::string& curve_path, const std::string& candidate_path);
// Same from parsed documents (hashes are taken over the compact dump).
FixtureSet ingest(const nlohmann::json& surface, const nlohmann::json& curve, const nlohmann::json& candidate);

enum class Verdict { Pass, Fail, Unevaluable };
std::string to_string(Verdict v);

struct Check {
    int id = 0;
    std::string name;
    std::string hypothesis;
    Verdict verdict = Verdict::Unevaluable;
    bool attested = false;
    nlohmann::json witness;
    std::string detail;
};

struct RunOptions {
    std::vector<long> probes{2, 3, 7, 11, 13};
    long padic_precision = 2;
};

struct EvidenceReport {
    nlohmann::json inputs;
    std::vector<Check> checks;
    std::string overall;
    std::map<std::string, std::string> hashes;
    bool verified() const { return overall == "all hypotheses verified"; }
};

EvidenceReport run_checklist(const FixtureSet& fx, long p, const RunOptions& opt = {});
nlohmann::json to_json(const EvidenceReport& r);

struct ReportCheck {
    bool ok = false;
    std::vector<std::string> problems;
};
// Re-checks every passing witness from the report alone.
ReportCheck verify_report(const nlohmann::json& report);

// lambda_{l,1} recovered from the quadratic coefficient of a spin factor.
Rational lambda_l1_from_euler(const QPoly& q, long ell, int weight);

}  // namespace pmf
