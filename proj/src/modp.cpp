#include "pmf/modp.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmf {

namespace {

void require_prime(std::uint64_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

bool integral(const Rational& x) { return x.get_den() == 1; }

ModPSpace echelon_space(const std::vector<std::vector<Rational>>& vectors, std::uint64_t p,
                        std::vector<ParaIndex> index_set, std::vector<std::string> provenance)
{
    require_prime(p);
    ModPSpace s;
    s.p = p;
    s.index_set = std::move(index_set);
    s.provenance = std::move(provenance);
    s.input_count = vectors.size();
    if (vectors.empty()) return s;
    const std::size_t n = vectors[0].size();
    QQ q;
    Fp f(p);
    auto A = zeros(q, vectors.size(), n);
    auto B = zeros(f, vectors.size(), n);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != n) throw std::invalid_argument("reduce_space: vectors of unequal length");
        for (std::size_t j = 0; j < n; ++j) {
            if (!integral(vectors[i][j])) throw std::invalid_argument("reduce_space: non-integral input");
            A(i, j) = vectors[i][j];
            B(i, j) = f.from(vectors[i][j]);
        }
    }
    s.rational_rank = rank(q, A);
    s.pivots = rref(f, B);
    for (std::size_t i = 0; i < s.pivots.size(); ++i)
        s.rows.emplace_back(B.a.begin() + i * n, B.a.begin() + (i + 1) * n);
    s.rank_drop = s.rows.size() < s.rational_rank;
    return s;
}

std::size_t fp_rank(const std::vector<std::vector<std::uint64_t>>& rows, std::size_t cols, std::uint64_t p)
{
    Fp f(p);
    auto M = zeros(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j] % p;
    return rank(f, M);
}

std::vector<std::vector<std::uint64_t>> dense(const SparseMatrix& m)
{
    std::vector<std::vector<std::uint64_t>> d(m.rows, std::vector<std::uint64_t>(m.cols, 0));
    for (auto [i, j, v] : m.entries) {
        if (i >= m.rows || j >= m.cols) throw std::invalid_argument("sparse entry out of range");
        d[i][j] = v;
    }
    return d;
}

nlohmann::json index_json(const std::vector<ParaIndex>& idx)
{
    auto a = nlohmann::json::array();
    for (const auto& t : idx) a.push_back({t.n, t.r, t.m});
    return a;
}

std::vector<ParaIndex> index_from_json(const nlohmann::json& j)
{
    std::vector<ParaIndex> out;
    for (const auto& t : j) out.push_back({t.at(0).get<long>(), t.at(1).get<long>(), t.at(2).get<long>()});
    return out;
}

std::vector<std::uint64_t> residues_on(const ParamodularQExp& F, const std::vector<ParaIndex>& idx, std::uint64_t p)
{
    std::vector<std::uint64_t> out;
    out.reserve(idx.size());
    for (const auto& t : idx) out.push_back(residue(F.coeff(t), p));
    return out;
}

void require_content_one(const ParamodularQExp& F, const char* name)
{
    if (F.ring().is_prime_field()) throw std::invalid_argument(std::string(name) + " must be given over Z or Q");
    Integer g = 0;
    for (const auto& [k, v] : F.coeffs()) {
        if (!integral(v)) throw std::invalid_argument(std::string(name) + " is not integral");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    if (g != 1) throw std::invalid_argument(std::string(name) + " does not have content 1");
}

}  // namespace

ModPSpace reduce_space(const std::vector<ParamodularQExp>& forms, std::uint64_t p, std::vector<std::string> provenance)
{
    if (forms.empty()) return echelon_space({}, p, {}, std::move(provenance));
    TruncationPolicy pol = forms[0].policy();
    for (const auto& F : forms) {
        if (F.level() != forms[0].level() || F.weight() != forms[0].weight())
            throw std::invalid_argument("reduce_space: forms of different level or weight");
        if (F.ring().is_prime_field()) throw std::invalid_argument("reduce_space: expects integral forms");
        pol.depth = std::min(pol.depth, F.policy().depth);
        pol.det_max = std::min(pol.det_max, F.policy().det_max);
    }
    auto idx = canonical_indices(forms[0].level(), forms[0].weight(), pol);
    std::vector<std::vector<Rational>> vecs;
    for (const auto& F : forms) {
        std::vector<Rational> v;
        v.reserve(idx.size());
        for (const auto& t : idx) v.push_back(F.coeff(t));
        vecs.push_back(std::move(v));
    }
    return echelon_space(vecs, p, std::move(idx), std::move(provenance));
}

ModPSpace reduce_space(const std::vector<std::vector<Rational>>& vectors, std::uint64_t p,
                       std::vector<ParaIndex> index_set, std::vector<std::string> provenance)
{
    if (!index_set.empty() && !vectors.empty() && index_set.size() != vectors[0].size())
        throw std::invalid_argument("reduce_space: index set does not match vector length");
    return echelon_space(vectors, p, std::move(index_set), std::move(provenance));
}

nlohmann::json to_json(const SparseMatrix& m)
{
    auto e = nlohmann::json::array();
    for (auto [i, j, v] : m.entries) e.push_back({i, j, v});
    return {{"rows", m.rows}, {"cols", m.cols}, {"entries", e}};
}

SparseMatrix sparse_from_json(const nlohmann::json& j)
{
    SparseMatrix m;
    m.rows = j.at("rows").get<std::size_t>();
    m.cols = j.at("cols").get<std::size_t>();
    for (const auto& e : j.at("entries"))
        m.entries.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<std::uint64_t>());
    return m;
}

std::optional<VanishingCertificate> product_obstruction_certificate(
    const std::vector<std::vector<std::uint64_t>>& known_rows, const std::vector<std::size_t>& forced_columns,
    std::uint64_t p, std::size_t product_dim, std::size_t codim_bound, const std::string& codim_provenance,
    const std::string& claim, long depth)
{
    require_prime(p);
    if (codim_provenance.empty()) throw std::invalid_argument("codimension bound needs a provenance");
    VanishingCertificate c;
    c.p = p;
    c.claim = claim;
    c.depth = depth;
    c.known_dim = known_rows.size();
    c.codim_bound = codim_bound;
    c.codim_provenance = codim_provenance;
    c.product_dim = product_dim;
    c.obstruction.rows = known_rows.size();
    c.obstruction.cols = forced_columns.size();
    std::vector<std::vector<std::uint64_t>> M;
    for (std::size_t i = 0; i < known_rows.size(); ++i) {
        std::vector<std::uint64_t> row;
        for (std::size_t j = 0; j < forced_columns.size(); ++j) {
            if (forced_columns[j] >= known_rows[i].size()) throw std::invalid_argument("forced column out of range");
            auto v = known_rows[i][forced_columns[j]] % p;
            row.push_back(v);
            if (v) c.obstruction.entries.emplace_back(i, j, v);
        }
        M.push_back(std::move(row));
    }
    c.rank = fp_rank(M, forced_columns.size(), p);
    if (c.known_dim - c.rank + c.codim_bound >= c.product_dim) return std::nullopt;
    return c;
}

VerifyResult verify(const VanishingCertificate& c)
{
    if (!is_prime(c.p)) return {false, "modulus is not prime"};
    if (c.codim_provenance.empty()) return {false, "codimension bound lacks provenance"};
    if (c.obstruction.rows != c.known_dim) return {false, "obstruction matrix has the wrong number of rows"};
    for (auto [i, j, v] : c.obstruction.entries)
        if (v >= c.p || i >= c.obstruction.rows || j >= c.obstruction.cols) return {false, "malformed entry"};
    auto r = fp_rank(dense(c.obstruction), c.obstruction.cols, c.p);
    if (r != c.rank) return {false, "recorded rank " + std::to_string(c.rank) + " but recomputed " + std::to_string(r)};
    if (c.known_dim - r + c.codim_bound >= c.product_dim)
        return {false, "no contradiction: dim K - rank M + codim >= dim W"};
    return {true, "dim K - rank M + codim = " + std::to_string(c.known_dim - r + c.codim_bound) + " < dim W = " +
                      std::to_string(c.product_dim)};
}

CongruenceCertificate congruence_certificate(const ParamodularQExp& f, const ParamodularQExp& g, std::uint64_t p,
                                             long d, const VanishingCertificate& tail)
{
    require_prime(p);
    require_content_one(f, "f");
    require_content_one(g, "g");
    if (f.level() != g.level() || f.weight() != g.weight()) throw std::invalid_argument("f and g are not comparable");
    if (tail.p != p) throw std::invalid_argument("tail certificate is for another prime");
    if (tail.depth != d + 1) throw std::invalid_argument("tail certificate must cover depth d + 1");
    auto tv = verify(tail);
    if (!tv.ok) throw std::invalid_argument("tail certificate does not verify: " + tv.detail);
    TruncationPolicy pol{d, std::min(f.policy().det_max, g.policy().det_max)};
    if (d > f.policy().depth || d > g.policy().depth) throw std::invalid_argument("forms are not known to depth d");
    CongruenceCertificate c;
    c.p = p;
    c.depth = d;
    c.index_set = canonical_indices(f.level(), f.weight(), pol);
    c.f = residues_on(f, c.index_set, p);
    c.g = residues_on(g, c.index_set, p);
    c.tail = tail;
    auto first = std::find_if(c.g.begin(), c.g.end(), [](std::uint64_t x) { return x != 0; });
    if (first == c.g.end()) throw std::runtime_error("g vanishes mod p on the (d) index set");
    std::size_t i = first - c.g.begin();
    Fp F(p);
    c.beta = F.neg(F.mul(c.f[i], F.inv(c.g[i])));
    if (c.beta == 0) throw std::runtime_error("beta = 0: f vanishes where g does not");
    for (std::size_t j = 0; j < c.f.size(); ++j)
        if (F.add(c.f[j], F.mul(c.beta, c.g[j])) != 0)
            throw std::runtime_error("f + beta g does not vanish at " + std::to_string(c.index_set[j].n) + "," +
                                     std::to_string(c.index_set[j].r) + "," + std::to_string(c.index_set[j].m));
    return c;
}

VerifyResult verify(const CongruenceCertificate& c)
{
    if (!is_prime(c.p)) return {false, "modulus is not prime"};
    if (c.beta == 0 || c.beta >= c.p) return {false, "invalid beta"};
    if (c.f.size() != c.index_set.size() || c.g.size() != c.index_set.size()) return {false, "length mismatch"};
    for (const auto& t : c.index_set)
        if (t.m > c.depth) return {false, "index outside the (d) truncation"};
    if (std::all_of(c.g.begin(), c.g.end(), [](std::uint64_t x) { return x == 0; })) return {false, "g vanishes"};
    Fp F(c.p);
    for (std::size_t j = 0; j < c.f.size(); ++j)
        if (F.add(c.f[j] % c.p, F.mul(c.beta, c.g[j] % c.p)) != 0) return {false, "f + beta g is nonzero"};
    if (c.tail.p != c.p || c.tail.depth != c.depth + 1) return {false, "tail does not cover depth d + 1"};
    auto tv = verify(c.tail);
    if (!tv.ok) return {false, "tail: " + tv.detail};
    return {true, "f = -beta g mod p through depth " + std::to_string(c.depth) + "; " + tv.detail};
}

nlohmann::json to_json(const VanishingCertificate& c)
{
    return {{"schema", kCertificateSchema},
            {"type", "vanishing"},
            {"p", c.p},
            {"claim", c.claim},
            {"depth", c.depth},
            {"obstruction", to_json(c.obstruction)},
            {"rank", c.rank},
            {"known_dim", c.known_dim},
            {"codim_bound", c.codim_bound},
            {"codim_provenance", c.codim_provenance},
            {"product_dim", c.product_dim}};
}

nlohmann::json to_json(const CongruenceCertificate& c)
{
    return {{"schema", kCertificateSchema},
            {"type", "congruence"},
            {"p", c.p},
            {"depth", c.depth},
            {"beta", c.beta},
            {"index_set", index_json(c.index_set)},
            {"f", c.f},
            {"g", c.g},
            {"tail", to_json(c.tail)}};
}

namespace {
void check_schema(const nlohmann::json& j, const char* type)
{
    if (j.at("schema").get<int>() != kCertificateSchema) throw std::invalid_argument("unsupported certificate schema");
    if (j.at("type").get<std::string>() != type) throw std::invalid_argument(std::string("expected ") + type);
}
}  // namespace

VanishingCertificate vanishing_from_json(const nlohmann::json& j)
{
    check_schema(j, "vanishing");
    VanishingCertificate c;
    c.p = j.at("p").get<std::uint64_t>();
    c.claim = j.at("claim").get<std::string>();
    c.depth = j.at("depth").get<long>();
    c.obstruction = sparse_from_json(j.at("obstruction"));
    c.rank = j.at("rank").get<std::size_t>();
    c.known_dim = j.at("known_dim").get<std::size_t>();
    c.codim_bound = j.at("codim_bound").get<std::size_t>();
    c.codim_provenance = j.at("codim_provenance").get<std::string>();
    c.product_dim = j.at("product_dim").get<std::size_t>();
    return c;
}

CongruenceCertificate congruence_from_json(const nlohmann::json& j)
{
    check_schema(j, "congruence");
    CongruenceCertificate c;
    c.p = j.at("p").get<std::uint64_t>();
    c.depth = j.at("depth").get<long>();
    c.beta = j.at("beta").get<std::uint64_t>();
    c.index_set = index_from_json(j.at("index_set"));
    c.f = j.at("f").get<std::vector<std::uint64_t>>();
    c.g = j.at("g").get<std::vector<std::uint64_t>>();
    c.tail = vanishing_from_json(j.at("tail"));
    return c;
}

VerifyResult verify_certificate(const nlohmann::json& doc)
{
    try {
        auto type = doc.at("type").get<std::string>();
        if (type == "vanishing") return verify(vanishing_from_json(doc));
        if (type == "congruence") return verify(congruence_from_json(doc));
        return {false, "unknown certificate type " + type};
    } catch (const std::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    }
}

}  // namespace pmf
