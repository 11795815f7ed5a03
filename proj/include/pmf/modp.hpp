#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmf/linalg.hpp"
#include "pmf/paramodular.hpp"

namespace pmf {

struct ModPSpace {
    std::uint64_t p = 0;
    std::vector<ParaIndex> index_set;                // serialization ordering
    std::vector<std::vector<std::uint64_t>> rows;    // reduced echelon form, full row rank
    std::vector<std::size_t> pivots;
    std::vector<std::string> provenance;
    std::size_t input_count = 0;
    std::size_t rational_rank = 0;
    bool rank_drop = false;  // the integral span is not saturated at p
    std::size_t dimension() const { return rows.size(); }
};

// Reduces integral forms (common level/weight; scope = the smallest policy) modulo p.
ModPSpace reduce_space(const std::vector<ParamodularQExp>& forms, std::uint64_t p,
                       std::vector<std::string> provenance = {});
// Same for explicit integral coefficient vectors.
ModPSpace reduce_space(const std::vector<std::vector<Rational>>& vectors, std::uint64_t p,
                       std::vector<ParaIndex> index_set = {}, std::vector<std::string> provenance = {});

// Row convention: M(i, j) is the coefficient of basis_j in op(basis_i).
// Images are identified on the output scope of op; throws if an image leaves the span.
template <class F>
Matrix<F> operator_matrix(const F& f, const std::vector<ParamodularQExp>& basis,
                          const std::function<ParamodularQExp(const ParamodularQExp&)>& op);
template <class F>
Matrix<F> truncated_hecke_matrix(const F& f, const std::vector<ParamodularQExp>& basis, long ell, HeckeKind kind)
{
    return operator_matrix(f, basis, [&](const ParamodularQExp& x) { return hecke_T(ell, kind, x); });
}
// Same for Jacobi forms (e.g. an Atkin-Lehner involution on a Jacobi space).
template <class F>
Matrix<F> jacobi_operator_matrix(const F& f, const std::vector<JacobiFormQExp>& basis,
                                 const std::function<JacobiFormQExp(const JacobiFormQExp&)>& op);

// Row vectors v with v M = lambda v.
template <class F>
Matrix<F> eigenspace_slice(const F& f, const Matrix<F>& M, const typename F::T& lambda)
{
    auto A = M;
    for (std::size_t i = 0; i < A.rows; ++i) A(i, i) = f.sub(A(i, i), lambda);
    return left_kernel(f, A);
}

// Matrix C of M restricted to the invariant row space B: B M = C B. Throws if B is not invariant.
template <class F>
Matrix<F> restrict_operator(const F& f, const Matrix<F>& M, const Matrix<F>& B);

// ---------------------------------------------------------------- certificates --

constexpr int kCertificateSchema = 1;

struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>> entries;
};

nlohmann::json to_json(const SparseMatrix& m);
SparseMatrix sparse_from_json(const nlohmann::json& j);

// The known subspace K (rows over F_p) restricted to the coefficients forced to vanish on
// every product h * lift. Elements of K vanishing there form a space of dimension
// dim K - rank M, so dim W <= dim K - rank M + codim, contradicting dim W when smaller.
struct VanishingCertificate {
    std::uint64_t p = 0;
    std::string claim;
    long depth = 0;  // the certified space is the (depth) space of the sector
    SparseMatrix obstruction;  // M: dim K x #forced columns
    std::size_t rank = 0;
    std::size_t known_dim = 0;
    std::size_t codim_bound = 0;
    std::string codim_provenance;
    std::size_t product_dim = 0;  // dim W
};

std::optional<VanishingCertificate> product_obstruction_certificate(
    const std::vector<std::vector<std::uint64_t>>& known_rows, const std::vector<std::size_t>& forced_columns,
    std::uint64_t p, std::size_t product_dim, std::size_t codim_bound, const std::string& codim_provenance,
    const std::string& claim, long depth);

struct CongruenceCertificate {
    std::uint64_t p = 0;
    long depth = 0;
    std::uint64_t beta = 0;
    std::vector<ParaIndex> index_set;
    std::vector<std::uint64_t> f, g;  // residues on index_set
    VanishingCertificate tail;
};

// Finds beta with f[d] + beta g[d] = 0 mod p. f and g must be integral with content 1; tail must
// certify the (d+1) space. Throws std::runtime_error when no beta exists.
CongruenceCertificate congruence_certificate(const ParamodularQExp& f, const ParamodularQExp& g, std::uint64_t p,
                                             long d, const VanishingCertificate& tail);

nlohmann::json to_json(const VanishingCertificate& c);
nlohmann::json to_json(const CongruenceCertificate& c);
VanishingCertificate vanishing_from_json(const nlohmann::json& j);
CongruenceCertificate congruence_from_json(const nlohmann::json& j);

struct VerifyResult {
    bool ok = false;
    std::string detail;
};

// Re-checks a certificate document from its embedded witness data only.
VerifyResult verify_certificate(const nlohmann::json& doc);
VerifyResult verify(const VanishingCertificate& c);
VerifyResult verify(const CongruenceCertificate& c);

// ---------------------------------------------------------------- templates --

template <class F>
Matrix<F> operator_matrix(const F& f, const std::vector<ParamodularQExp>& basis,
                          const std::function<ParamodularQExp(const ParamodularQExp&)>& op)
{
    const std::size_t n = basis.size();
    auto M = zeros(f, n, n);
    if (n == 0) return M;
    std::vector<ParamodularQExp> images;
    for (const auto& b : basis) images.push_back(op(b));
    const auto& pol = images[0].policy();
    auto keys = canonical_indices(basis[0].level(), basis[0].weight(), pol);
    auto A = zeros(f, keys.size(), n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < keys.size(); ++r) A(r, c) = f.from(basis[c].coeff(keys[r]));
    if (rank(f, A) != n) throw std::runtime_error("operator_matrix: basis is dependent on the output scope");
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<typename F::T> rhs;
        for (const auto& k : keys) rhs.push_back(f.from(images[i].coeff(k)));
        auto x = solve(f, A, rhs);
        if (!x) throw std::runtime_error("operator_matrix: image is not in the span of the basis");
        for (std::size_t j = 0; j < n; ++j) M(i, j) = (*x)[j];
    }
    return M;
}

template <class F>
Matrix<F> jacobi_operator_matrix(const F& f, const std::vector<JacobiFormQExp>& basis,
                                 const std::function<JacobiFormQExp(const JacobiFormQExp&)>& op)
{
    const std::size_t n = basis.size();
    auto M = zeros(f, n, n);
    if (n == 0) return M;
    std::vector<JacobiFormQExp> images;
    for (const auto& b : basis) images.push_back(op(b));
    // Compare on the classes every form and image knows.
    long bound = basis[0].disc_bound();
    for (const auto& b : basis) bound = std::min(bound, b.disc_bound());
    for (const auto& b : images) bound = std::min(bound, b.disc_bound());
    std::set<JacobiKey> ks;
    for (const auto* v : {&basis, static_cast<const std::vector<JacobiFormQExp>*>(&images)})
        for (const auto& b : *v)
            for (const auto& [k, c] : b.coeffs())
                if (k.D < bound) ks.insert(k);
    std::vector<JacobiKey> keys(ks.begin(), ks.end());
    auto A = zeros(f, keys.size(), n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < keys.size(); ++r) A(r, c) = f.from(basis[c].class_coeff(keys[r].D, keys[r].r0));
    if (rank(f, A) != n) throw std::runtime_error("jacobi_operator_matrix: basis is dependent");
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<typename F::T> rhs;
        for (const auto& k : keys) rhs.push_back(f.from(images[i].class_coeff(k.D, k.r0)));
        auto x = solve(f, A, rhs);
        if (!x) throw std::runtime_error("jacobi_operator_matrix: image is not in the span of the basis");
        for (std::size_t j = 0; j < n; ++j) M(i, j) = (*x)[j];
    }
    return M;
}

template <class F>
Matrix<F> restrict_operator(const F& f, const Matrix<F>& M, const Matrix<F>& B)
{
    auto BM = multiply(f, B, M);
    auto Bt = transpose(B);
    auto C = zeros(f, B.rows, B.rows);
    for (std::size_t i = 0; i < B.rows; ++i) {
        std::vector<typename F::T> rhs(BM.cols);
        for (std::size_t c = 0; c < BM.cols; ++c) rhs[c] = BM(i, c);
        auto x = solve(f, Bt, rhs);
        if (!x) throw std::runtime_error("restrict_operator: subspace is not invariant");
        for (std::size_t j = 0; j < B.rows; ++j) C(i, j) = (*x)[j];
    }
    return C;
}

}  // namespace pmf
