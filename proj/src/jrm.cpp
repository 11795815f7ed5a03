#include "pmf/jrm.hpp"

#include <algorithm>
#include <stdexcept>

#include "pmf/linalg.hpp"

namespace pmf {

namespace {

using Sparse = std::map<std::size_t, Rational>;

struct SlotTable {
    // (slice, D, r) with 0 <= r <= jN -> sparse row over the unknowns.
    std::vector<std::map<std::pair<long, long>, Sparse>> slices;

    const Sparse& at(long j, long D, long r) const
    {
        static const Sparse empty;
        const auto& s = slices.at(static_cast<std::size_t>(j - 1));
        auto it = s.find({D, r});
        return it == s.end() ? empty : it->second;
    }
};

void check_inputs(const JRMParams& p, const std::vector<JacobiBasis>& bases)
{
    if (p.depth < 1 || p.det_max < 1) throw std::invalid_argument("JRM: empty truncation");
    if (static_cast<long>(bases.size()) < p.depth) throw std::invalid_argument("JRM: missing Jacobi basis");
    if (p.signs && p.fricke) throw std::invalid_argument("JRM: give either a sign vector or a Fricke sign");
    if (p.signs) {
        auto primes = prime_divisors(p.level);
        if (p.signs->size() != primes.size()) throw std::invalid_argument("JRM: sign vector must cover the primes of N");
        for (long l : primes)
            if (!p.signs->count(l)) throw std::invalid_argument("JRM: sign vector must cover the primes of N");
    }
    for (long j = 1; j <= p.depth; ++j) {
        const auto& b = bases[static_cast<std::size_t>(j - 1)];
        if (b.index != j * p.level) throw std::invalid_argument("JRM: basis " + std::to_string(j) + " has the wrong index");
        if (p.det_max < b.determinacy_bound)
            throw std::invalid_argument("JRM: det_max below the determinacy bound of basis " + std::to_string(j));
        for (const auto& f : b.forms) {
            if (f.index() != b.index || f.weight() != p.weight) throw std::invalid_argument("JRM: basis form mismatch");
            if (f.disc_bound() <= p.det_max) throw std::invalid_argument("JRM: basis precision below det_max");
        }
    }
}

Ring work_ring(const Ring& r) { return r.is_prime_field() ? r : Ring::rationals(); }

SlotTable build_slots(const JRMParams& p, const std::vector<JacobiBasis>& bases, std::vector<std::size_t>& offsets)
{
    Ring ring = work_ring(p.ring);
    SlotTable t;
    offsets.assign(1, 0);
    for (long j = 1; j <= p.depth; ++j) {
        const auto& b = bases[static_cast<std::size_t>(j - 1)];
        std::size_t off = offsets.back();
        long M = j * p.level;
        std::map<std::pair<long, long>, Sparse> s;
        for (std::size_t i = 0; i < b.forms.size(); ++i)
            for (const auto& [key, v] : b.forms[i].coeffs()) {
                if (key.D > p.det_max) continue;
                long r = key.r0 <= M ? key.r0 : 2 * M - key.r0;
                if (r != key.r0) continue;  // mirror class, same slot
                Rational x = ring.normalize(v);
                if (x != 0) s[{key.D, r}][off + i] = x;
            }
        t.slices.push_back(std::move(s));
        offsets.push_back(off + b.forms.size());
    }
    return t;
}

Sparse combine(const Sparse& a, const Sparse& b, const Rational& cb, const Ring& ring)
{
    Sparse out = a;
    for (const auto& [k, v] : b) {
        Rational x = ring.normalize(out[k] + cb * v);
        if (x == 0)
            out.erase(k);
        else
            out[k] = x;
    }
    return out;
}

template <class F>
Matrix<F> to_matrix(const F& f, const std::vector<Sparse>& rows, std::size_t cols)
{
    auto m = zeros(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, v] : rows[i]) m(i, c) = f.from(v);
    return m;
}

// Incremental echelon form: keeps at most #unknowns rows.
template <class F>
std::vector<std::vector<typename F::T>> echelon(const F& f, const std::vector<Sparse>& rows, std::size_t cols)
{
    using T = typename F::T;
    std::vector<std::vector<T>> basis;
    std::vector<std::size_t> piv;
    for (const auto& sr : rows) {
        std::vector<T> v(cols, f.zero());
        for (const auto& [c, x] : sr) v[c] = f.from(x);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (f.is_zero(v[piv[i]])) continue;
            T c = v[piv[i]];
            for (std::size_t k = 0; k < cols; ++k)
                if (!f.is_zero(basis[i][k])) v[k] = f.sub(v[k], f.mul(c, basis[i][k]));
        }
        std::size_t p = 0;
        while (p < cols && f.is_zero(v[p])) ++p;
        if (p == cols) continue;
        T inv = f.inv(v[p]);
        for (auto& x : v) x = f.mul(x, inv);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (f.is_zero(basis[i][p])) continue;
            T c = basis[i][p];
            for (std::size_t k = 0; k < cols; ++k)
                if (!f.is_zero(v[k])) basis[i][k] = f.sub(basis[i][k], f.mul(c, v[k]));
        }
        basis.push_back(std::move(v));
        piv.push_back(p);
        if (basis.size() == cols) break;
    }
    return basis;
}

template <class F>
std::vector<std::vector<Rational>> nullspace_of(const F& f, const std::vector<Sparse>& rows, std::size_t cols)
{
    auto ech = echelon(f, rows, cols);
    auto m = zeros(f, ech.size(), cols);
    for (std::size_t i = 0; i < ech.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = ech[i][c];
    auto ns = nullspace(f, m);
    std::vector<std::vector<Rational>> out(ns.rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < ns.rows; ++i)
        for (std::size_t c = 0; c < cols; ++c) out[i][c] = f.lift(ns(i, c));
    return out;
}

Rational dot(const Sparse& row, const std::vector<Rational>& x, const Ring& ring)
{
    Rational s = 0;
    for (const auto& [c, v] : row) s += v * x.at(c);
    return ring.normalize(s);
}

}  // namespace

JRMSystem assemble_system(const JRMParams& p, const std::vector<JacobiBasis>& bases)
{
    check_inputs(p, bases);
    JRMSystem sys;
    sys.params = p;
    Ring ring = work_ring(p.ring);
    SlotTable slots = build_slots(p, bases, sys.offsets);
    const long N = p.level;
    const int k = p.weight;
    auto push = [&](Sparse row) {
        if (!row.empty()) sys.rows.push_back(std::move(row));
    };
    // Index equivalences that leave the slice or the Jacobi class.
    for (long j = 1; j <= p.depth; ++j) {
        long M = j * N;
        for (long r = 0; r <= M; ++r)
            for (long n = (r * r) / (4 * M) + 1;; ++n) {
                long D = 4 * n * M - r * r;
                if (D > p.det_max) break;
                auto c = canonicalize({n, r, j}, N, k);
                const Sparse& L = slots.at(j, D, r);
                if (c.forced_zero) {
                    push(L);
                    continue;
                }
                if (c.key == ParaIndex{n, r, j}) continue;
                push(combine(L, slots.at(c.key.m, D, c.key.r), Rational(-c.sign), ring));
            }
    }
    // Sector conditions on canonical keys whose images stay in scope.
    TruncationPolicy pol{p.depth, p.det_max};
    auto keys = canonical_indices(N, k, pol);
    auto impose = [&](const ParaIndex& key, const ParaIndex& image, int eps) {
        auto c = canonicalize(image, N, k);
        if (!pol.contains(c.key, N)) return;
        const Sparse& L = slots.at(key.m, key.disc(N), key.r);
        if (c.forced_zero) {
            push(L);
            return;
        }
        push(combine(L, slots.at(c.key.m, c.key.disc(N), c.key.r), Rational(-eps * c.sign), ring));
    };
    for (const auto& key : keys) {
        if (p.signs)
            for (const auto& [l, eps] : *p.signs) impose(key, atkin_lehner_index(key, l, N), eps);
        if (p.fricke) impose(key, {key.m, -key.r, key.n}, *p.fricke);
    }
    return sys;
}

std::size_t residual(const JRMSystem& sys, const std::vector<Rational>& x)
{
    if (x.size() != sys.unknowns()) throw std::invalid_argument("residual: vector length mismatch");
    Ring ring = work_ring(sys.params.ring);
    std::size_t bad = 0;
    for (const auto& row : sys.rows)
        if (dot(row, x, ring) != 0) ++bad;
    return bad;
}

JRMSpace solve_jrm(const JRMParams& p, const std::vector<JacobiBasis>& bases)
{
    JRMSystem sys = assemble_system(p, bases);
    JRMSpace space;
    space.params = p;
    std::size_t n = sys.unknowns();
    if (p.ring.is_prime_field())
        space.coords = nullspace_of(Fp(p.ring.p), sys.rows, n);
    else
        space.coords = nullspace_of(QQ{}, sys.rows, n);
    // Coefficient vectors on the canonical keys.
    std::vector<std::size_t> offsets;
    SlotTable slots = build_slots(p, bases, offsets);
    Ring ring = work_ring(p.ring);
    space.index_set = canonical_indices(p.level, p.weight, {p.depth, p.det_max});
    for (const auto& c : space.coords) {
        std::vector<Rational> v;
        v.reserve(space.index_set.size());
        for (const auto& key : space.index_set) v.push_back(dot(slots.at(key.m, key.disc(p.level), key.r), c, ring));
        space.basis.push_back(std::move(v));
    }
    return space;
}

std::vector<Rational> slice_coordinates(const ParamodularQExp& F, const JRMParams& p, const std::vector<JacobiBasis>& bases)
{
    check_inputs(p, bases);
    if (F.policy().depth < p.depth || F.policy().det_max < p.det_max)
        throw std::invalid_argument("slice_coordinates: form truncation too small");
    std::vector<Rational> out;
    for (long j = 1; j <= p.depth; ++j) {
        const auto& b = bases[static_cast<std::size_t>(j - 1)];
        auto phi = F.slice(j);
        long M = j * p.level;
        std::vector<std::pair<long, long>> classes;
        for (long r = 0; r <= M; ++r)
            for (long n = (r * r) / (4 * M) + 1; 4 * n * M - r * r <= p.det_max; ++n) classes.emplace_back(4 * n * M - r * r, r);
        auto run = [&](const auto& f) {
            auto m = zeros(f, classes.size(), b.forms.size());
            std::vector<typename std::decay_t<decltype(f)>::T> rhs;
            for (std::size_t i = 0; i < classes.size(); ++i) {
                for (std::size_t c = 0; c < b.forms.size(); ++c) m(i, c) = f.from(b.forms[c].class_coeff(classes[i].first, classes[i].second));
                rhs.push_back(f.from(phi.class_coeff(classes[i].first, classes[i].second)));
            }
            auto x = solve(f, m, rhs);
            if (!x) throw std::runtime_error("slice " + std::to_string(j) + " is not in the span of its basis");
            for (const auto& v : *x) out.push_back(f.lift(v));
        };
        if (p.ring.is_prime_field())
            run(Fp(p.ring.p));
        else
            run(QQ{});
    }
    return out;
}

ParamodularQExp space_form(const JRMSpace& space, std::size_t i)
{
    const auto& p = space.params;
    ParamodularQExp F(p.level, p.weight, work_ring(p.ring), {p.depth, p.det_max});
    const auto& v = space.basis.at(i);
    for (std::size_t c = 0; c < space.index_set.size(); ++c)
        if (v[c] != 0) F.set(space.index_set[c], v[c]);
    return F;
}

IdentifyResult identify_and_extend(const JRMSpace& space, const std::map<ParaIndex, Rational>& partial)
{
    const auto& p = space.params;
    std::map<ParaIndex, std::size_t> pos;
    for (std::size_t i = 0; i < space.index_set.size(); ++i) pos[space.index_set[i]] = i;
    TruncationPolicy pol{p.depth, p.det_max};
    auto run = [&](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::T;
        const std::size_t dim = space.dimension();
        auto m = zeros(f, partial.size(), dim);
        std::vector<T> rhs;
        std::size_t row = 0;
        for (const auto& [t, val] : partial) {
            auto c = canonicalize(t, p.level, p.weight);
            if (!pol.contains(c.key, p.level)) throw std::invalid_argument("identify_and_extend: index outside the space");
            if (!c.forced_zero) {
                std::size_t col = pos.at(c.key);
                for (std::size_t b = 0; b < dim; ++b) m(row, b) = f.from(c.sign * space.basis[b][col]);
            }
            rhs.push_back(f.from(val));
            ++row;
        }
        auto w = solve(f, m, rhs);
        if (!w) throw std::runtime_error("identify_and_extend: partial data is not in the space");
        IdentifyResult res;
        res.ambiguity = dim - rank(f, m);
        if (res.ambiguity > 0) return res;
        std::vector<Rational> comb, full(space.index_set.size(), Rational(0));
        for (std::size_t b = 0; b < dim; ++b) {
            comb.push_back(f.lift((*w)[b]));
            for (std::size_t c = 0; c < full.size(); ++c) full[c] += comb.back() * space.basis[b][c];
        }
        Ring ring = work_ring(p.ring);
        for (auto& x : full) x = ring.normalize(x);
        res.combination = comb;
        res.coefficients = full;
        return res;
    };
    if (p.ring.is_prime_field()) return run(Fp(p.ring.p));
    return run(QQ{});
}

nlohmann::json to_json(const JRMSpace& s)
{
    const auto& p = s.params;
    nlohmann::json params = {{"weight", p.weight}, {"level", p.level}, {"depth", p.depth}, {"det_max", p.det_max},
                             {"ring", p.ring.name()}};
    if (p.signs) {
        nlohmann::json sv = nlohmann::json::object();
        for (const auto& [l, e] : *p.signs) sv[std::to_string(l)] = e;
        params["signs"] = sv;
    }
    if (p.fricke) params["fricke"] = *p.fricke;
    nlohmann::json idx = nlohmann::json::array();
    for (const auto& t : s.index_set) idx.push_back({t.n, t.r, t.m});
    // Sparse basis rows: [[column, value], ...].
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& v : s.basis) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c] != 0) row.push_back({c, to_string(v[c])});
        basis.push_back(row);
    }
    return {{"params", params}, {"dimension", s.dimension()}, {"index_set", idx}, {"basis", basis}};
}

}  // namespace pmf
