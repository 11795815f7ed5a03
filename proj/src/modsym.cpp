#include "pmf/modsym.hpp"

#include <numeric>
#include <stdexcept>

namespace pmf {

namespace {

long md(long x, long n) { return ((x % n) + n) % n; }

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

// Union-find with signs: x_i = sgn_i * x_parent_i.
struct SignedDSU {
    std::vector<std::size_t> parent;
    std::vector<int> sgn;
    std::vector<bool> zero;
    explicit SignedDSU(std::size_t n) : parent(n), sgn(n, 1), zero(n, false)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<std::size_t, int> find(std::size_t i)
    {
        if (parent[i] == i) return {i, 1};
        auto [r, s] = find(parent[i]);
        parent[i] = r;
        sgn[i] *= s;
        return {r, sgn[i]};
    }
    // Imposes x_i = s * x_j.
    void unite(std::size_t i, std::size_t j, int s)
    {
        auto [ri, si] = find(i);
        auto [rj, sj] = find(j);
        if (ri == rj) {
            if (si != s * sj) zero[ri] = true;
            return;
        }
        // x_ri = si x_i = si s x_j = si s sj x_rj
        parent[ri] = rj;
        sgn[ri] = si * s * sj;
        if (zero[ri]) zero[rj] = true;
    }
};

struct CuspRep {
    long p, q, s;
};

CuspRep make_cusp(long p, long q)
{
    if (q < 0) {
        p = -p;
        q = -q;
    }
    long g = std::gcd(std::abs(p), q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    if (q == 0) return {1, 0, 1};
    long x, y;
    ext_gcd(md(p, q), q, x, y);
    return {p, q, q == 1 ? 0 : md(x, q)};
}

bool cusps_equivalent(const CuspRep& a, const CuspRep& b, long N)
{
    long g = std::gcd(a.q * b.q, N);
    if (g == 0) g = N;
    return md(a.s * b.q - b.s * a.q, g) == 0;
}

class CuspClasses {
public:
    CuspClasses(long N, int sign) : N_(N), sign_(sign) {}
    // Index and sign of the class of p/q; sign 0 means the class is zero.
    std::pair<std::size_t, int> classify(long p, long q)
    {
        auto c = make_cusp(p, q);
        auto m = make_cusp(-p, q);
        for (std::size_t i = 0; i < reps_.size(); ++i) {
            if (cusps_equivalent(c, reps_[i], N_)) return {i, zero_[i] ? 0 : 1};
            if (sign_ != 0 && cusps_equivalent(m, reps_[i], N_)) return {i, zero_[i] ? 0 : sign_};
        }
        reps_.push_back(c);
        zero_.push_back(sign_ == -1 && cusps_equivalent(c, m, N_));
        return {reps_.size() - 1, zero_.back() ? 0 : 1};
    }
    std::size_t size() const { return reps_.size(); }

private:
    long N_;
    int sign_;
    std::vector<CuspRep> reps_;
    std::vector<bool> zero_;
};

// Matrix in SL2(Z) with bottom row congruent to (c, d) mod N.
std::array<long, 4> lift_to_sl2(long c, long d, long N)
{
    if (N == 1) return {1, 0, 0, 1};
    long cc = c == 0 ? N : c;
    long dd = d;
    while (std::gcd(cc, dd) != 1) dd += N;
    long x, y;
    ext_gcd(dd, cc, x, y);  // x dd + y cc = 1
    return {x, -y, cc, dd};
}

void add_to(std::vector<Rational>& v, const std::map<std::size_t, Rational>& s, const Rational& c)
{
    for (const auto& [k, x] : s) v[k] += c * x;
}

}  // namespace

int ModSymSpace::index_of(long c, long d) const
{
    return lookup[md(c, level) * level + md(d, level)];
}

std::vector<Rational> ModSymSpace::manin(long c, long d) const
{
    std::vector<Rational> v(dimension(), Rational(0));
    int i = index_of(c, d);
    if (i < 0) throw std::invalid_argument("manin: not an element of P^1(Z/N)");
    add_to(v, image[i], 1);
    return v;
}

std::vector<Rational> ModSymSpace::symbol_oo_to(long a, long m) const
{
    if (m <= 0) throw std::invalid_argument("symbol_oo_to: denominator must be positive");
    // Continued fraction of a/m; {oo, a/m} = sum_j ((-1)^(j-1) q_j : q_(j-1)).
    long g = std::gcd(std::abs(a), m);
    a /= g;
    m /= g;
    std::vector<Rational> v(dimension(), Rational(0));
    long num = a, den = m;
    long q_prev = 0, q_prev2 = 1;  // q_{-1}, q_{-2}
    int j = 0;
    while (true) {
        long t = num >= 0 ? num / den : -((-num + den - 1) / den);  // floor
        long qj = t * q_prev + q_prev2;
        long c = (j % 2 == 0) ? -qj : qj;
        add_to(v, image[index_of(c, q_prev)], 1);
        q_prev2 = q_prev;
        q_prev = qj;
        long r = num - t * den;
        if (r == 0) break;
        num = den;
        den = r;
        ++j;
    }
    return v;
}

ModSymSpace modular_symbols(long N, int sign)
{
    if (N < 1) throw std::invalid_argument("modular_symbols: N >= 1");
    if (sign < -1 || sign > 1) throw std::invalid_argument("modular_symbols: sign in {-1, 0, 1}");
    ModSymSpace S;
    S.level = N;
    S.sign = sign;
    S.lookup.assign(N * N, -1);
    std::vector<long> units;
    for (long u = 1; u <= N; ++u)
        if (std::gcd(u, N) == 1) units.push_back(u % N);
    for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
            if (std::gcd(std::gcd(c, d), N) != 1 || S.lookup[c * N + d] >= 0) continue;
            int k = static_cast<int>(S.p1.size());
            S.p1.push_back({c, d});
            for (long u : units) S.lookup[(u * c % N) * N + (u * d % N)] = k;
        }
    const std::size_t n = S.p1.size();
    SignedDSU dsu(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [c, d] = S.p1[i];
        dsu.unite(i, S.index_of(d, -c), -1);
        if (sign != 0) dsu.unite(i, S.index_of(-c, d), sign);
    }
    std::vector<std::size_t> roots;
    std::vector<long> col(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto [r, s] = dsu.find(i);
        if (r == i && !dsu.zero[i]) {
            col[i] = static_cast<long>(roots.size());
            roots.push_back(i);
        }
    }
    // Three-term relations over the root classes.
    std::vector<std::map<std::size_t, long>> rels;
    for (std::size_t i = 0; i < n; ++i) {
        auto [c, d] = S.p1[i];
        std::map<std::size_t, long> row;
        for (int idx : {static_cast<int>(i), S.index_of(d, -c - d), S.index_of(-c - d, c)}) {
            auto [r, s] = dsu.find(idx);
            if (dsu.zero[r]) continue;
            row[col[r]] += s;
        }
        for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
        if (!row.empty()) rels.push_back(std::move(row));
    }
    // Independent rows found mod a large prime, then exact echelon form over Q.
    const std::size_t m = roots.size();
    Fp big(2305843009213693951ULL);
    std::vector<std::size_t> chosen;
    {
        std::vector<std::vector<std::uint64_t>> ech;
        std::vector<std::size_t> piv;
        for (std::size_t r = 0; r < rels.size() && ech.size() < m; ++r) {
            std::vector<std::uint64_t> v(m, 0);
            for (auto [k, x] : rels[r]) v[k] = big.from(Rational(x));
            for (std::size_t e = 0; e < ech.size(); ++e)
                if (v[piv[e]]) {
                    auto f = v[piv[e]];
                    for (std::size_t j = 0; j < m; ++j)
                        if (ech[e][j]) v[j] = big.sub(v[j], big.mul(f, ech[e][j]));
                }
            std::size_t p = 0;
            while (p < m && v[p] == 0) ++p;
            if (p == m) continue;
            auto inv = big.inv(v[p]);
            for (auto& x : v) x = big.mul(x, inv);
            ech.push_back(std::move(v));
            piv.push_back(p);
            chosen.push_back(r);
        }
    }
    QQ q;
    auto R = zeros(q, chosen.size(), m);
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (auto [k, x] : rels[chosen[i]]) R(i, k) = x;
    auto pivots = rref(q, R);
    if (pivots.size() != chosen.size()) throw std::logic_error("modular_symbols: modular rank exceeds rational rank");
    std::vector<long> pivot_row(m, -1);
    for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = static_cast<long>(i);
    // Every relation must lie in the row space.
    for (const auto& rel : rels) {
        std::map<std::size_t, Rational> v;
        for (auto [k, x] : rel) v[k] += x;
        std::map<std::size_t, Rational> res = v;
        for (auto [k, x] : v)
            if (pivot_row[k] >= 0)
                for (std::size_t j = 0; j < m; ++j)
                    if (R(pivot_row[k], j) != 0) res[j] -= x * R(pivot_row[k], j);
        for (const auto& [k, x] : res)
            if (x != 0) throw std::logic_error("modular_symbols: relation outside the computed span");
    }
    std::vector<long> free_index(m, -1);
    for (std::size_t j = 0; j < m; ++j)
        if (pivot_row[j] < 0) {
            free_index[j] = static_cast<long>(S.generators.size());
            S.generators.push_back(roots[j]);
        }
    std::vector<std::map<std::size_t, Rational>> root_image(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (free_index[j] >= 0) {
            root_image[j][free_index[j]] = 1;
            continue;
        }
        for (std::size_t f = 0; f < m; ++f)
            if (free_index[f] >= 0 && R(pivot_row[j], f) != 0) root_image[j][free_index[f]] = -R(pivot_row[j], f);
    }
    S.image.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [r, s] = dsu.find(i);
        if (dsu.zero[r]) continue;
        for (const auto& [k, x] : root_image[col[r]]) S.image[i][k] = s * x;
    }
    return S;
}

Matrix<QQ> hecke_on_symbols(const ModSymSpace& S, long ell)
{
    if (!is_prime(static_cast<std::uint64_t>(ell))) throw std::invalid_argument("hecke_on_symbols: l must be prime");
    QQ q;
    const std::size_t n = S.dimension();
    auto T = zeros(q, n, n);
    // Heilbronn-Merel set: ad - bc = l, a > b >= 0, d > c >= 0.
    std::vector<std::array<long, 4>> H;
    for (long a = 1; a <= ell; ++a)
        for (long d = 1; d <= ell; ++d)
            for (long b = 0; b < a; ++b)
                for (long c = 0; c < d; ++c)
                    if (a * d - b * c == ell) H.push_back({a, b, c, d});
    const long N = S.level;
    for (std::size_t j = 0; j < n; ++j) {
        auto [c, d] = S.p1[S.generators[j]];
        std::vector<Rational> v(n, Rational(0));
        for (const auto& h : H) {
            long c2 = md(c * h[0] + d * h[2], N), d2 = md(c * h[1] + d * h[3], N);
            int idx = S.index_of(c2, d2);
            if (idx < 0) continue;
            add_to(v, S.image[idx], 1);
        }
        for (std::size_t i = 0; i < n; ++i) T(i, j) = v[i];
    }
    return T;
}

Matrix<QQ> boundary_map(const ModSymSpace& S)
{
    CuspClasses classes(S.level, S.sign);
    std::vector<std::map<std::size_t, long>> cols(S.dimension());
    for (std::size_t j = 0; j < S.dimension(); ++j) {
        auto [c, d] = S.p1[S.generators[j]];
        auto g = lift_to_sl2(c, d, S.level);
        auto [i1, s1] = classes.classify(g[0], g[2]);  // g(oo) = a/c
        auto [i0, s0] = classes.classify(g[1], g[3]);  // g(0) = b/d
        cols[j][i1] += s1;
        cols[j][i0] -= s0;
    }
    QQ q;
    auto B = zeros(q, classes.size(), S.dimension());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (auto [i, x] : cols[j]) B(i, j) = x;
    return B;
}

Matrix<QQ> cuspidal_basis(const ModSymSpace& S)
{
    return nullspace(QQ{}, boundary_map(S));
}

std::size_t number_of_cusps(long N)
{
    std::size_t n = 0;
    for (long d = 1; d <= N; ++d) {
        if (N % d) continue;
        long g = std::gcd(d, N / d);
        long phi = 0;
        for (long u = 1; u <= g; ++u)
            if (std::gcd(u, g) == 1) ++phi;
        n += phi;
    }
    return n;
}

long genus_X0(long N)
{
    Rational mu = N, nu2 = 1, nu3 = 1;
    long rest = N;
    for (long p = 2; p <= rest; ++p) {
        if (rest % p) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        mu *= Rational(p + 1, p);
        // Elliptic points: 1 + (-1/p), 1 + (-3/p) when p^2 does not divide N.
        auto leg = [&](long D) -> long {
            if (p == 2) return D == -1 ? 0 : -1;
            if (p == 3 && D == -3) return 0;
            long r = md(D, p);
            return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
        };
        if (e >= 2) throw std::invalid_argument("genus_X0: squarefree N only");
        nu2 *= 1 + leg(-1);
        nu3 *= 1 + leg(-3);
    }
    Rational g = 1 + mu / 12 - nu2 / 4 - nu3 / 3 - Rational(static_cast<long>(number_of_cusps(N))) / 2;
    if (g.get_den() != 1) throw std::logic_error("genus_X0: non-integral genus (N must be squarefree)");
    return g.get_num().get_si();
}

Rational EigenSymbol::value(const ModSymSpace& S, long a, long m) const
{
    auto v = S.symbol_oo_to(a, m);
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += functional[i] * v[i];
    return s;
}

EigenSymbol rational_eigen_symbol(const ModSymSpace& S, const std::map<long, long>& a, long verify_bound)
{
    QQ q;
    const std::size_t n = S.dimension();
    EigenSymbol e;
    e.level = S.level;
    e.sign = S.sign;
    std::vector<Matrix<QQ>> Ts;
    Matrix<QQ> left(0, n, Rational(0)), right(0, n, Rational(0));
    auto append = [&](Matrix<QQ>& acc, const Matrix<QQ>& X) {
        Matrix<QQ> out(acc.rows + X.rows, n, Rational(0));
        std::copy(acc.a.begin(), acc.a.end(), out.a.begin());
        std::copy(X.a.begin(), X.a.end(), out.a.begin() + acc.a.size());
        acc = std::move(out);
    };
    std::size_t kdim = n;
    for (const auto& [ell, al] : a) {
        if (S.level % ell == 0) continue;
        auto T = hecke_on_symbols(S, ell);
        for (std::size_t i = 0; i < n; ++i) T(i, i) -= al;
        append(right, T);
        append(left, transpose(T));
        e.slicing_primes.push_back(ell);
        kdim = n - rank(q, right);
        if (kdim <= 1) break;
    }
    if (kdim == 0) throw std::runtime_error("rational_eigen_symbol: no eigenform with this a-data at level " +
                                            std::to_string(S.level));
    if (kdim > 1) throw std::runtime_error("rational_eigen_symbol: a-data does not isolate a line");
    auto L = nullspace(q, left), R = nullspace(q, right);
    if (L.rows != 1 || R.rows != 1) throw std::logic_error("left and right eigenspaces differ in dimension");
    e.functional.assign(L.a.begin(), L.a.end());
    e.eigenvector.assign(R.a.begin(), R.a.end());
    auto B = boundary_map(S);
    for (std::size_t i = 0; i < B.rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) s += B(i, j) * e.eigenvector[j];
        if (s != 0) throw std::runtime_error("rational_eigen_symbol: eigenvector is not cuspidal");
    }
    // Primitive integral normalization on all Manin symbols.
    Integer num = 0, den = 1;
    for (const auto& img : S.image) {
        Rational s = 0;
        for (const auto& [k, x] : img) s += x * e.functional[k];
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), s.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s.get_den_mpz_t());
    }
    if (num == 0) throw std::logic_error("eigen functional vanishes on all Manin symbols");
    Rational scale(den, num);
    scale.canonicalize();
    for (auto& x : e.functional) x *= scale;
    e.denominator = 1;
    // Verify eigenvalues up to the bound, including U_l at l | N.
    for (long ell : primes_up_to(verify_bound)) {
        auto T = hecke_on_symbols(S, ell);
        std::vector<Rational> phiT(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) phiT[j] += e.functional[i] * T(i, j);
        std::size_t piv = 0;
        while (piv < n && e.functional[piv] == 0) ++piv;
        Rational lambda = phiT[piv] / e.functional[piv];
        for (std::size_t j = 0; j < n; ++j)
            if (phiT[j] != lambda * e.functional[j]) throw std::runtime_error("eigen functional is not a T_l eigenvector");
        if (lambda.get_den() != 1) throw std::runtime_error("non-integral eigenvalue");
        long lv = lambda.get_num().get_si();
        auto it = a.find(ell);
        if (it != a.end() && it->second != lv)
            throw std::runtime_error("eigenvalue mismatch at l = " + std::to_string(ell) + ": symbols give " +
                                     std::to_string(lv) + ", data " + std::to_string(it->second));
        e.eigenvalues[ell] = lv;
    }
    return e;
}

nlohmann::json to_json(const PadicLValue& v)
{
    nlohmann::json j{{"p", v.p},         {"precision", v.precision}, {"layer", v.layer}, {"twist", v.twist},
                     {"alpha", v.alpha}, {"value", v.value},         {"provenance", v.provenance}};
    if (v.valuation)
        j["valuation"] = *v.valuation;
    else
        j["valuation_at_least"] = v.precision;
    return j;
}

PadicLValue padic_L_valuation(const ModSymSpace& S, const EigenSymbol& phi, long a_p, long p, long w, long twist)
{
    if (p == 2 || p == 3) throw std::invalid_argument("padic_L_valuation: p in {2, 3} is excluded");
    if (!is_prime(static_cast<std::uint64_t>(p)) || S.level % p == 0)
        throw std::invalid_argument("padic_L_valuation: p must be a good prime");
    if (w < 2) throw std::invalid_argument("padic_L_valuation: working precision w >= 2");
    if (md(a_p, p) == 0) throw std::domain_error("padic_L_valuation: supersingular prime");
    int parity = (twist % 2 == 0) ? 1 : -1;
    if (S.sign != parity) throw std::invalid_argument("padic_L_valuation: symbol sign does not match the twist");
    Integer M = ipow(Integer(p), static_cast<unsigned long>(w));
    auto mod = [&](Integer x) {
        x %= M;
        if (x < 0) x += M;
        return x;
    };
    auto inv = [&](const Integer& x) {
        Integer r;
        if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t())) throw std::logic_error("not a unit");
        return r;
    };
    auto pw = [&](Integer b, Integer e) {
        Integer r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), M.get_mpz_t());
        return r;
    };
    // Unit root of x^2 - a_p x + p by Newton iteration.
    Integer alpha = mod(Integer(a_p));
    for (long it = 0; it < 2 * w + 2; ++it) {
        Integer g = mod(alpha * alpha - a_p * alpha + p);
        Integer dg = mod(2 * alpha - a_p);
        alpha = mod(alpha - g * inv(dg));
    }
    if (mod(alpha * alpha - a_p * alpha + p) != 0) throw std::logic_error("unit root did not converge");
    const long n = w;
    Integer pn = ipow(Integer(p), static_cast<unsigned long>(n));
    Integer pn1 = pn / p;
    Integer ia = inv(alpha);
    Integer ian = pw(ia, n), ian1 = pw(ia, n + 1);
    Integer E = ipow(Integer(p), static_cast<unsigned long>(w - 1));
    Integer value = 0;
    const long pnl = pn.get_si();
    for (long a = 1; a < pnl; ++a) {
        if (a % p == 0) continue;
        Rational top = phi.value(S, a, pnl), low = phi.value(S, a, pn1.get_si());
        if (top.get_den() != 1 || low.get_den() != 1) throw std::logic_error("non-integral modular symbol");
        Integer mu = mod(ian * top.get_num() - ian1 * low.get_num());
        // omega^(j-1)(a) * a
        Integer om = pw(Integer(a), E);
        long e = twist - 1;
        Integer ch = e >= 0 ? pw(om, Integer(e)) : pw(inv(om), Integer(-e));
        value = mod(value + ch * a * mu);
    }
    PadicLValue r;
    r.p = p;
    r.precision = w;
    r.layer = n;
    r.twist = twist;
    r.alpha = alpha.get_ui();
    r.value = value.get_ui();
    if (value != 0) {
        long v = 0;
        Integer x = value;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        r.valuation = v;
    }
    r.provenance = "Mazur-Tate layer " + std::to_string(n) + ", sign " + std::to_string(S.sign) +
                   " symbols normalized primitive on Manin symbols (Manin constant assumed 1)";
    return r;
}

PadicLValue padic_L_valuation(const EllipticCurveData& E, long p, long w, long twist)
{
    if (p == 2 || p == 3) throw std::invalid_argument("padic_L_valuation: p in {2, 3} is excluded");
    if (E.conductor % p == 0) throw std::invalid_argument("padic_L_valuation: p divides the conductor");
    long a_p = count_points_elliptic(E, p);
    if (md(a_p, p) == 0) throw std::domain_error("padic_L_valuation: supersingular prime");
    auto S = modular_symbols(E.conductor, (twist % 2 == 0) ? 1 : -1);
    auto phi = rational_eigen_symbol(S, ap_table(E, 13));
    return padic_L_valuation(S, phi, a_p, p, w, twist);
}

}  // namespace pmf
