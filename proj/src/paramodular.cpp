#include "pmf/paramodular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pmf {

namespace {

using i128 = __int128;

long isqrt(long x)
{
    if (x < 0) return -1;
    long s = static_cast<long>(std::sqrt(static_cast<long double>(x)));
    while (s > 0 && s * s > x) --s;
    while ((s + 1) * (s + 1) <= x) ++s;
    return s;
}

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long ext_gcd(long a, long b, long& x, long& y)
{
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Reduces r modulo 2M into (-M, M].
long reduce_sym(long r, long M)
{
    long t = ((r % (2 * M)) + 2 * M) % (2 * M);
    return t > M ? t - 2 * M : t;
}

bool squarefree(long N)
{
    for (long p = 2; p * p <= N; ++p)
        if (N % (p * p) == 0) return false;
    return true;
}

}  // namespace

Canonical canonicalize(const ParaIndex& t, long N, int k)
{
    long D = t.disc(N);
    if (D <= 0 || t.m <= 0 || t.n <= 0) throw std::invalid_argument("canonicalize: index is not positive definite");
    // Q(u, v) = n N u^2 + r u v + m v^2 over (N u, v) primitive.
    auto Q = [&](long u, long v) {
        return static_cast<long>(static_cast<i128>(t.n) * N * u * u + static_cast<i128>(t.r) * u * v +
                                 static_cast<i128>(t.m) * v * v);
    };
    long best = t.m;
    std::vector<std::pair<long, long>> minimal;
    long U = isqrt(4 * t.m * best / D) + 1;
    for (long u = -U; u <= U; ++u) {
        long disc = 4 * t.m * best - D * u * u;
        if (disc < 0) continue;
        long s = isqrt(disc);
        long vlo = floor_div(-t.r * u - s, 2 * t.m) - 1, vhi = floor_div(-t.r * u + s, 2 * t.m) + 1;
        for (long v = vlo; v <= vhi; ++v) {
            if (u == 0 && v == 0) continue;
            if (std::gcd(N * u, v) != 1) continue;
            long q = Q(u, v);
            if (q < best) {
                best = q;
                minimal.clear();
            }
            if (q == best) minimal.emplace_back(u, v);
        }
    }
    long Nm = N * best;
    std::optional<ParaIndex> key;
    std::set<int> signs;
    int odd = (k % 2 != 0) ? -1 : 1;
    for (auto [u, v] : minimal) {
        long a, nc;
        ext_gcd(v, N * u, a, nc);  // a v + nc N u = 1
        long c = -nc;
        long r2 = static_cast<long>(2 * static_cast<i128>(t.n) * a * N * u + static_cast<i128>(t.r) * (a * v + c * N * u) +
                                    2 * static_cast<i128>(N) * t.m * c * v);
        r2 = reduce_sym(r2, Nm);
        std::vector<std::pair<long, int>> cands;
        if (r2 >= 0) cands.emplace_back(r2, 1);
        if (r2 <= 0 || r2 == Nm) cands.emplace_back(r2 == Nm ? Nm : -r2, odd);
        for (auto [rr, sg] : cands) {
            ParaIndex kk{(D + rr * rr) / (4 * Nm), rr, best};
            if (!key || kk < *key) {
                key = kk;
                signs.clear();
            }
            if (kk == *key) signs.insert(sg);
        }
    }
    Canonical out;
    out.key = *key;
    out.forced_zero = signs.size() > 1;
    out.sign = out.forced_zero ? 1 : *signs.begin();
    return out;
}

std::vector<ParaIndex> canonical_indices(long N, int k, const TruncationPolicy& policy)
{
    std::vector<ParaIndex> out;
    for (long m = 1; m <= policy.depth; ++m)
        for (long r = 0; r <= N * m; ++r)
            for (long n = (r * r) / (4 * N * m) + 1;; ++n) {
                ParaIndex t{n, r, m};
                if (t.disc(N) > policy.det_max) break;
                auto c = canonicalize(t, N, k);
                if (c.key == t && !c.forced_zero) out.push_back(t);
            }
    std::sort(out.begin(), out.end());
    return out;
}

ParamodularQExp::ParamodularQExp(long level, int weight, Ring ring, TruncationPolicy policy)
    : level_(level), weight_(weight), ring_(ring), policy_(policy)
{
    if (level < 1 || !squarefree(level)) throw std::invalid_argument("paramodular level must be squarefree");
    if (weight < 1) throw std::invalid_argument("paramodular weight must be positive");
    if (policy.depth < 1 || policy.det_max < 1) throw std::invalid_argument("empty truncation policy");
}

bool ParamodularQExp::in_scope(const ParaIndex& t) const
{
    if (t.disc(level_) <= 0) return true;
    return policy_.contains(canonicalize(t, level_, weight_).key, level_);
}

Rational ParamodularQExp::coeff(const ParaIndex& t) const
{
    if (t.disc(level_) <= 0) return 0;
    auto c = canonicalize(t, level_, weight_);
    if (!policy_.contains(c.key, level_)) throw std::out_of_range("paramodular coefficient out of scope");
    if (c.forced_zero) return 0;
    auto it = coeffs_.find(c.key);
    if (it == coeffs_.end()) return 0;
    return ring_.normalize(c.sign * it->second);
}

void ParamodularQExp::set(const ParaIndex& key, const Rational& v)
{
    auto c = canonicalize(key, level_, weight_);
    if (!(c.key == key)) throw std::invalid_argument("set: index is not canonical");
    if (!policy_.contains(key, level_)) throw std::out_of_range("set: index out of scope");
    Rational x = ring_.normalize(v);
    if (c.forced_zero && x != 0) throw std::invalid_argument("set: coefficient is forced to vanish");
    if (x == 0)
        coeffs_.erase(key);
    else
        coeffs_[key] = x;
}

JacobiFormQExp ParamodularQExp::slice(long j) const
{
    if (j < 1 || j > policy_.depth) throw std::out_of_range("slice outside the truncation depth");
    long M = j * level_;
    JacobiFormQExp out(weight_, M, ring_, policy_.det_max + 1);
    for (long D = 1; D <= policy_.det_max; ++D)
        for (long r0 = 0; r0 <= M; ++r0) {
            if ((D + r0 * r0) % (4 * M) != 0) continue;
            Rational v = coeff({(D + r0 * r0) / (4 * M), r0, j});
            if (v != 0) out.set_class(D, r0, v);
        }
    return out;
}

bool ParamodularQExp::operator==(const ParamodularQExp& o) const
{
    return level_ == o.level_ && weight_ == o.weight_ && ring_ == o.ring_ && policy_ == o.policy_ && coeffs_ == o.coeffs_;
}

ParamodularQExp paramodular_from_function(long level, int weight, Ring ring, const TruncationPolicy& policy,
                                          const std::function<Rational(const ParaIndex&)>& fn)
{
    ParamodularQExp F(level, weight, ring, policy);
    for (const auto& t : canonical_indices(level, weight, policy)) {
        Rational v = fn(t);
        if (v != 0) F.set(t, v);
    }
    return F;
}

namespace {

void require_compatible(const ParamodularQExp& a, const ParamodularQExp& b)
{
    require_same_ring(a.ring(), b.ring());
    if (a.level() != b.level() || a.weight() != b.weight()) throw std::invalid_argument("paramodular level/weight mismatch");
}

}  // namespace

ParamodularQExp restrict_policy(const ParamodularQExp& f, const TruncationPolicy& policy)
{
    if (policy.depth > f.policy().depth || policy.det_max > f.policy().det_max)
        throw std::invalid_argument("restrict_policy: target policy is larger");
    ParamodularQExp out(f.level(), f.weight(), f.ring(), policy);
    for (const auto& [k, v] : f.coeffs())
        if (policy.contains(k, f.level())) out.set(k, v);
    return out;
}

ParamodularQExp para_add(const ParamodularQExp& a, const ParamodularQExp& b)
{
    require_compatible(a, b);
    TruncationPolicy p{std::min(a.policy().depth, b.policy().depth), std::min(a.policy().det_max, b.policy().det_max)};
    ParamodularQExp out = restrict_policy(a, p);
    for (const auto& [k, v] : b.coeffs())
        if (p.contains(k, a.level())) {
            auto it = out.coeffs().find(k);
            out.set(k, (it == out.coeffs().end() ? Rational(0) : it->second) + v);
        }
    return out;
}

ParamodularQExp para_scale(const ParamodularQExp& a, const Rational& c)
{
    ParamodularQExp out(a.level(), a.weight(), a.ring(), a.policy());
    for (const auto& [k, v] : a.coeffs()) out.set(k, v * c);
    return out;
}

ParamodularQExp reduce_mod_p(const ParamodularQExp& f, std::uint64_t p)
{
    ParamodularQExp out(f.level(), f.weight(), Ring::prime_field(p), f.policy());
    for (const auto& [k, v] : f.coeffs()) out.set(k, v);
    return out;
}

nlohmann::json to_json(const ParamodularQExp& f)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [k, v] : f.coeffs()) coeffs.push_back({k.n, k.r, k.m, to_string(v)});
    return {{"level", f.level()},
            {"weight", f.weight()},
            {"ring", f.ring().name()},
            {"policy", {{"d", f.policy().depth}, {"det_max", f.policy().det_max}}},
            {"coeffs", coeffs}};
}

ParamodularQExp paramodular_from_json(const nlohmann::json& j)
{
    TruncationPolicy p{j.at("policy").at("d").get<long>(), j.at("policy").at("det_max").get<long>()};
    ParamodularQExp f(j.at("level").get<long>(), j.at("weight").get<int>(), Ring::parse(j.at("ring").get<std::string>()), p);
    for (const auto& e : j.at("coeffs"))
        f.set({e.at(0).get<long>(), e.at(1).get<long>(), e.at(2).get<long>()}, parse_rational(e.at(3).get<std::string>()));
    return f;
}

ParamodularQExp gritsenko_lift(const JacobiFormQExp& phi, const TruncationPolicy& policy)
{
    long N = phi.index();
    int k = phi.weight();
    if (phi.disc_bound() <= policy.det_max)
        throw std::invalid_argument("gritsenko_lift: Jacobi form disc_bound must exceed det_max");
    for (const auto& [key, v] : phi.coeffs())
        if (key.D <= 0) throw std::invalid_argument("gritsenko_lift: Jacobi form is not cuspidal");
    auto F = paramodular_from_function(N, k, phi.ring(), policy, [&](const ParaIndex& t) {
        Rational s = 0;
        long g = std::gcd(std::gcd(t.n, std::abs(t.r)), t.m);
        for (long d = 1; d <= g; ++d) {
            if (g % d != 0) continue;
            s += rpow(Rational(d), k - 1) * phi.coeff(t.n * t.m / (d * d), t.r / d);
        }
        return s;
    });
    // Lifts are Fricke eigenforms with sign (-1)^k.
    int eps = (k % 2 == 0) ? 1 : -1;
    for (const auto& [key, v] : F.coeffs()) {
        ParaIndex img{key.m, -key.r, key.n};
        if (F.in_scope(img) && F.coeff(img) != F.ring().normalize(eps * v))
            throw std::runtime_error("gritsenko_lift: Fricke symmetry violated");
    }
    return F;
}

// ---------------------------------------------------------------- Hecke --

namespace {

struct RPart {
    long i, j, t;
};

struct Coset {
    long a, b, d;
    int rank;  // rank mod ell of the full 4x4 representative
    std::vector<RPart> R;
};

int rank_mod(std::vector<std::vector<long>> M, long p)
{
    int rank = 0;
    std::size_t rows = M.size(), cols = M[0].size();
    for (auto& row : M)
        for (auto& x : row) x = ((x % p) + p) % p;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
        std::size_t piv = rank;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[rank]);
        long inv = static_cast<long>(invmod(M[rank][c], p));
        for (auto& x : M[rank]) x = x * inv % p;
        for (std::size_t r = 0; r < rows; ++r)
            if (r != static_cast<std::size_t>(rank) && M[r][c] != 0) {
                long f = M[r][c];
                for (std::size_t cc = 0; cc < cols; ++cc) M[r][cc] = ((M[r][cc] - f * M[rank][cc]) % p + p) % p;
            }
        ++rank;
    }
    return rank;
}

long mu_of(long ell, HeckeKind kind) { return kind == HeckeKind::T ? ell : ell * ell; }

std::vector<Coset> cosets(long ell, HeckeKind kind, long N)
{
    if (!is_prime(static_cast<std::uint64_t>(ell))) throw std::invalid_argument("Hecke operator needs a prime");
    if (N % ell == 0) throw std::invalid_argument("Hecke operators at primes dividing the level are unsupported");
    long mu = mu_of(ell, kind);
    long Ninv = static_cast<long>(invmod(static_cast<std::uint64_t>(N % ell), static_cast<std::uint64_t>(ell)));
    std::vector<long> divs;
    for (long x = 1; x <= mu; x *= ell) divs.push_back(x);
    std::vector<Coset> out;
    for (long a : divs)
        for (long d : divs)
            for (long b = 0; b < d; ++b) {
                if ((mu * b) % (a * d) != 0) continue;
                Coset c{a, b, d, 0, {}};
                std::map<int, std::vector<RPart>> by_rank;
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j) {
                        if ((i * b + j * d) % a != 0) continue;
                        for (long t = 0; t < d; ++t) {
                            std::vector<std::vector<long>> M = {
                                {mu / a, 0, i, (i * b + j * d) / a},
                                {-(mu * b) / (a * d), mu / d, j, t * Ninv},
                                {0, 0, a, b},
                                {0, 0, 0, d}};
                            by_rank[rank_mod(M, ell)].push_back({i, j, t});
                        }
                    }
                for (auto& [rk, R] : by_rank) {
                    bool keep = false;
                    switch (kind) {
                    case HeckeKind::T:
                    case HeckeKind::T_l_sq: keep = true; break;
                    case HeckeKind::T_l_1: keep = rk == 1; break;
                    case HeckeKind::T_l_0: keep = rk == 0; break;
                    }
                    if (!keep) continue;
                    Coset cc = c;
                    cc.rank = rk;
                    cc.R = std::move(R);
                    out.push_back(std::move(cc));
                }
            }
    return out;
}

}  // namespace

std::size_t hecke_coset_count(long ell, HeckeKind kind, long N)
{
    std::size_t n = 0;
    for (const auto& c : cosets(ell, kind, N)) n += c.R.size();
    return n;
}

TruncationPolicy hecke_output_policy(long ell, HeckeKind kind, const TruncationPolicy& in)
{
    long mu = mu_of(ell, kind);
    TruncationPolicy out{in.depth / mu, in.det_max / (mu * mu)};
    if (out.depth < 1 || out.det_max < 1) throw std::invalid_argument("Hecke output policy is empty");
    return out;
}

ParamodularQExp hecke_T(long ell, HeckeKind kind, const ParamodularQExp& F)
{
    long N = F.level();
    int k = F.weight();
    if (F.ring().is_prime_field() && F.ring().p == static_cast<std::uint64_t>(ell))
        throw std::invalid_argument("Hecke operator at the characteristic is unsupported");
    long mu = mu_of(ell, kind);
    auto cs = cosets(ell, kind, N);
    auto pol = hecke_output_policy(ell, kind, F.policy());
    Rational sim = rpow(Rational(mu), 2 * k - 3);
    // Characters take values in the mu^2-th roots of unity; the total is rational, so it
    // equals its Galois average sum_j c_j c_L(j) / phi(L) with Ramanujan sums c_L.
    const long Lc = mu * mu;
    std::vector<Rational> ram(Lc);
    {
        long phi = 0;
        for (long u = 1; u <= Lc; ++u)
            if (std::gcd(u, Lc) == 1) ++phi;
        for (long j = 0; j < Lc; ++j) {
            long c = 0;
            for (long e = 1; e <= Lc; ++e) {
                if (Lc % e != 0 || j % e != 0) continue;
                // mobius(Lc / e)
                long q = Lc / e, mob = 1;
                for (long p = 2; p <= q; ++p)
                    if (q % p == 0) {
                        q /= p;
                        if (q % p == 0) {
                            mob = 0;
                            break;
                        }
                        mob = -mob;
                    }
                c += e * mob;
            }
            ram[j] = Rational(c, phi);
        }
    }
    // T(l) keeps whole R-groups, whose character sums are |R| or 0.
    const bool groups = kind == HeckeKind::T;
    // T_{l,1} does not preserve integrality.
    Ring ring = F.ring().kind == Ring::Kind::Integers ? Ring::rationals() : F.ring();
    std::vector<long> hist(Lc);
    return paramodular_from_function(N, k, ring, pol, [&](const ParaIndex& W) {
        Rational total = 0;
        for (const auto& c : cs) {
            const long a = c.a, b = c.b, d = c.d;
            i128 nn = static_cast<i128>(a) * a * W.n + static_cast<i128>(a) * b * W.r + static_cast<i128>(b) * b * N * W.m;
            i128 rr = static_cast<i128>(a) * d * W.r + 2 * static_cast<i128>(b) * d * N * W.m;
            i128 mm = static_cast<i128>(d) * d * W.m;
            if (nn % mu != 0 || rr % mu != 0 || mm % mu != 0) continue;
            long nT = static_cast<long>(nn / mu), rT = static_cast<long>(rr / mu), mT = static_cast<long>(mm / mu);
            Rational v = F.coeff({nT, rT, mT});
            if (v == 0) continue;
            // theta_R = num / (a d) for each R.
            long L = a * d;
            long scale = Lc / L;
            Rational charsum = 0;
            bool trivial = true;
            std::fill(hist.begin(), hist.end(), 0);
            for (const auto& R : c.R) {
                i128 th = static_cast<i128>(nT) * R.i * d + static_cast<i128>(rT) * R.j * d +
                          static_cast<i128>(mT) * (R.t * a - N * R.j * b);
                long res = static_cast<long>(((th % L) + L) % L);
                if (res != 0) trivial = false;
                if (groups && !trivial) break;
                ++hist[res * scale];
            }
            if (groups) {
                if (!trivial) continue;
                charsum = static_cast<long>(c.R.size());
            } else {
                for (long j = 0; j < Lc; ++j)
                    if (hist[j]) charsum += hist[j] * ram[j];
            }
            if (charsum == 0) continue;
            total += v * charsum / rpow(Rational(L), k);
        }
        return Rational(total * sim);
    });
}

ParamodularQExp hecke_T(long ell, int i, const ParamodularQExp& F)
{
    switch (i) {
    case 0: return hecke_T(ell, HeckeKind::T_l_0, F);
    case 1: return hecke_T(ell, HeckeKind::T_l_1, F);
    case 2: return hecke_T(ell, HeckeKind::T, F);
    default: throw std::invalid_argument("Hecke index must be 0, 1 or 2");
    }
}

// --------------------------------------------------------- Atkin-Lehner --

ParaIndex atkin_lehner_index(const ParaIndex& t, long ell, long N)
{
    if (ell < 1 || N % ell != 0) throw std::invalid_argument("atkin_lehner: ell must divide the level");
    long M = N / ell;
    if (std::gcd(ell, M) != 1) throw std::invalid_argument("atkin_lehner: level must be squarefree");
    // V = [[ell a, N b], [c, ell d]] with ell a d - M b c = 1, taking b = d = 1.
    long x, y;
    ext_gcd(ell, M, x, y);  // ell x + M y = 1
    long a = x, b = 1, c = -y, d = 1;
    i128 n2 = static_cast<i128>(t.n) * ell * a * a + static_cast<i128>(t.r) * a * c + static_cast<i128>(M) * t.m * c * c;
    i128 r2 = 2 * static_cast<i128>(t.n) * a * N * b + static_cast<i128>(t.r) * (static_cast<i128>(ell) * a * d + static_cast<i128>(M) * c * b) +
              2 * static_cast<i128>(N) * t.m * c * d;
    i128 m2 = static_cast<i128>(t.n) * M * b * b + static_cast<i128>(t.r) * b * d + static_cast<i128>(t.m) * ell * d * d;
    return {static_cast<long>(n2), static_cast<long>(r2), static_cast<long>(m2)};
}

namespace {

template <class Map>
ParamodularQExp apply_index_map(const ParamodularQExp& F, Map img)
{
    long N = F.level();
    int k = F.weight();
    // Output scope: keep det_max and cut the depth below the first key whose image leaves
    // the input scope; if no depth survives, keep the depth and cut det_max instead.
    auto keys = canonical_indices(N, k, F.policy());
    long depth = F.policy().depth, det = F.policy().det_max;
    for (const auto& t : keys)
        if (!F.in_scope(img(t))) {
            depth = std::min(depth, t.m - 1);
            det = std::min(det, t.disc(N) - 1);
        }
    TruncationPolicy pol{depth, F.policy().det_max};
    if (depth < 1) pol = {F.policy().depth, det};
    if (pol.det_max < 1) throw std::invalid_argument("involution output policy is empty");
    ParamodularQExp out(N, k, F.ring(), pol);
    for (const auto& t : keys)
        if (pol.contains(t, N)) {
            Rational v = F.coeff(img(t));
            if (v != 0) out.set(t, v);
        }
    return out;
}

}  // namespace

ParamodularQExp atkin_lehner(long ell, const ParamodularQExp& F)
{
    long N = F.level();
    return apply_index_map(F, [&](const ParaIndex& t) { return atkin_lehner_index(t, ell, N); });
}

ParamodularQExp fricke(const ParamodularQExp& F)
{
    return apply_index_map(F, [](const ParaIndex& t) { return ParaIndex{t.m, -t.r, t.n}; });
}

std::vector<long> prime_divisors(long N)
{
    std::vector<long> out;
    for (long p = 2; p * p <= N; ++p)
        if (N % p == 0) {
            out.push_back(p);
            while (N % p == 0) N /= p;
        }
    if (N > 1) out.push_back(N);
    return out;
}

int fricke_sign(const SignVector& s)
{
    int e = 1;
    for (const auto& [l, v] : s) e *= v;
    return e;
}

ParamodularQExp symmetrize(const ParamodularQExp& F, const SignVector& signs)
{
    auto primes = prime_divisors(F.level());
    if (signs.size() != primes.size()) throw std::invalid_argument("sign vector must cover the primes of the level");
    ParamodularQExp G = F;
    for (long l : primes) {
        auto it = signs.find(l);
        if (it == signs.end() || (it->second != 1 && it->second != -1))
            throw std::invalid_argument("sign vector must map each prime of the level to +-1");
        G = para_scale(para_add(G, para_scale(atkin_lehner(l, G), it->second)), Rational(1, 2));
    }
    return G;
}

ParamodularQExp symmetrize_fricke(const ParamodularQExp& F, int sign)
{
    if (sign != 1 && sign != -1) throw std::invalid_argument("Fricke sign must be +-1");
    return para_scale(para_add(F, para_scale(fricke(F), sign)), Rational(1, 2));
}

ParamodularQExp project_truncate(const ParamodularQExp& F, long d)
{
    if (d < 1 || d > F.policy().depth) throw std::out_of_range("project_truncate: depth out of policy");
    return restrict_policy(F, {d, F.policy().det_max});
}

bool vanishing_test(const ParamodularQExp& F, long d)
{
    if (d < 1 || d > F.policy().depth + 1) throw std::out_of_range("vanishing_test: depth out of policy");
    for (const auto& [k, v] : F.coeffs())
        if (k.m <= d - 1) return false;
    return true;
}

std::optional<Rational> eigenvalue(const ParamodularQExp& F, const ParamodularQExp& TF)
{
    if (F.ring().is_prime_field() || TF.ring().is_prime_field()) require_same_ring(F.ring(), TF.ring());
    if (F.level() != TF.level() || F.weight() != TF.weight()) throw std::invalid_argument("paramodular level/weight mismatch");
    std::optional<Rational> lam;
    // Both sides restricted to the TF scope.
    for (const auto& t : canonical_indices(F.level(), F.weight(), TF.policy())) {
        Rational f = F.coeff(t), g = TF.coeff(t);
        if (f == 0) {
            if (g != 0) return std::nullopt;
            continue;
        }
        Rational l = F.ring().is_prime_field()
                         ? F.ring().normalize(g * Rational(static_cast<long>(invmod(residue(f, F.ring().p), F.ring().p))))
                         : Rational(g / f);
        if (lam && *lam != l) return std::nullopt;
        lam = l;
    }
    return lam;
}

// ---------------------------------------------------------- Euler data --

void check_spin_invariants(const SpinEulerFactor& f)
{
    const auto& c = f.coeffs;
    if (c.size() != 5 || c[0] != 1) throw std::runtime_error("spin Euler factor must have degree 4 and constant term 1");
    Rational l(f.ell);
    if (c[3] != rpow(l, 2 * f.weight - 3) * c[1] || c[4] != rpow(l, 4 * f.weight - 6))
        throw std::runtime_error("spin Euler factor violates c3 = l^(2k-3) c1, c4 = l^(4k-6)");
}

SpinEulerFactor spin_euler(const HeckeEigenSystem& ev, long ell)
{
    auto it = ev.lambda.find(ell);
    if (it == ev.lambda.end() || !it->second.l1 || !it->second.l2)
        throw std::invalid_argument("spin_euler: missing eigenvalues at this prime");
    int k = ev.weight;
    Rational l(ell);
    Rational l0 = rpow(l, 2 * k - 6);
    if (it->second.l0 && *it->second.l0 != l0) throw std::invalid_argument("spin_euler: lambda_{l,0} must equal l^(2k-6)");
    const Rational& l1 = *it->second.l1;
    const Rational& l2 = *it->second.l2;
    SpinEulerFactor f{ell, k, {1, -l2, l * (l1 + (1 + l * l) * l0), -l * l * l * l2 * l0, rpow(l, 6) * l0 * l0}};
    check_spin_invariants(f);
    return f;
}

SpinEulerFactor spin_euler_from_poly(const QPoly& q, long ell, int weight)
{
    SpinEulerFactor f{ell, weight, q};
    f.coeffs.resize(std::max<std::size_t>(q.size(), 5));
    check_spin_invariants(f);
    return f;
}

Rational lambda_l1_from_T_l_sq(int k, long ell, const Rational& lambda_l, const Rational& lambda_l2)
{
    Rational l(ell);
    return (lambda_l * lambda_l - lambda_l2 - rpow(l, 2 * k - 4)) / l - (1 + l * l) * rpow(l, 2 * k - 6);
}

QPoly sk_euler(const Integer& a, long ell)
{
    QPoly f = poly_mul(poly_mul(QPoly{1, Rational(-a), Rational(ell)}, QPoly{1, -1}), QPoly{1, Rational(-ell)});
    trim(f);
    return f;
}

FpPoly sk_euler_mod_p(const Integer& a, long ell, std::uint64_t p)
{
    return poly_reduce(sk_euler(a, ell), p);
}

nlohmann::json to_json(const SpinEulerFactor& f)
{
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : f.coeffs) c.push_back(to_string(x));
    return {{"ell", f.ell}, {"weight", f.weight}, {"coeffs", c}};
}

}  // namespace pmf
