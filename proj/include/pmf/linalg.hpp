#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pmf/ring.hpp"

namespace pmf {

struct QQ {
    using T = Rational;
    T zero() const { return 0; }
    T one() const { return 1; }
    bool is_zero(const T& a) const { return a == 0; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const
    {
        if (a == 0) throw std::domain_error("division by zero");
        return 1 / a;
    }
    T from(const Rational& x) const { return x; }
    Rational lift(const T& a) const { return a; }
};

struct Fp {
    using T = std::uint64_t;
    std::uint64_t p;
    explicit Fp(std::uint64_t prime) : p(prime) {}
    T zero() const { return 0; }
    T one() const { return 1; }
    bool is_zero(T a) const { return a == 0; }
    T add(T a, T b) const { T s = a + b; return s >= p ? s - p : s; }
    T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
    T mul(T a, T b) const { return mulmod(a, b, p); }
    T neg(T a) const { return a ? p - a : 0; }
    T inv(T a) const { return invmod(a, p); }
    T from(const Rational& x) const { return residue(x, p); }
    Rational lift(T a) const { return Rational(static_cast<unsigned long>(a)); }
};

template <class F>
struct Matrix {
    using T = typename F::T;
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const T& z) : rows(r), cols(c), a(r * c, z) {}

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class F>
Matrix<F> zeros(const F& f, std::size_t r, std::size_t c)
{
    return Matrix<F>(r, c, f.zero());
}

template <class F>
Matrix<F> identity(const F& f, std::size_t n)
{
    auto m = zeros(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& m)
{
    Matrix<F> t(m.cols, m.rows, m.a.empty() ? typename F::T{} : m.a[0]);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

template <class F>
Matrix<F> multiply(const F& f, const Matrix<F>& x, const Matrix<F>& y)
{
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    auto z = zeros(f, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (f.is_zero(x(i, k))) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z(i, j) = f.add(z(i, j), f.mul(x(i, k), y(k, j)));
        }
    return z;
}

// In-place reduced row echelon form with left-to-right pivot order.
// Returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Matrix<F>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && f.is_zero(m(piv, c))) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
        auto inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<F> m)
{
    return rref(f, m).size();
}

// Basis of {x : m x = 0}, one vector per row of the result.
template <class F>
Matrix<F> nullspace(const F& f, Matrix<F> m)
{
    auto piv = rref(f, m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::size_t k = m.cols - piv.size();
    auto out = zeros(f, k, m.cols);
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_piv[c]) continue;
        out(row, c) = f.one();
        for (std::size_t i = 0; i < piv.size(); ++i) out(row, piv[i]) = f.neg(m(i, c));
        ++row;
    }
    return out;
}

// Basis of {y : y m = 0}.
template <class F>
Matrix<F> left_kernel(const F& f, const Matrix<F>& m)
{
    return nullspace(f, transpose(m));
}

// Some x with m x = b, or nullopt if inconsistent.
template <class F>
std::optional<std::vector<typename F::T>> solve(const F& f, const Matrix<F>& m,
                                                const std::vector<typename F::T>& b)
{
    if (b.size() != m.rows) throw std::invalid_argument("rhs length mismatch");
    auto aug = zeros(f, m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    auto piv = rref(f, aug);
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    std::vector<typename F::T> x(m.cols, f.zero());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols);
    return x;
}

// Characteristic polynomial det(x I - m), coefficients low to high.
template <class F>
std::vector<typename F::T> charpoly(const F& f, Matrix<F> h)
{
    using T = typename F::T;
    const std::size_t n = h.rows;
    if (h.cols != n) throw std::invalid_argument("charpoly of non-square matrix");
    // Reduce to upper Hessenberg form by similarity transforms.
    for (std::size_t c = 0; c + 2 <= n; ++c) {
        std::size_t piv = c + 1;
        while (piv < n && f.is_zero(h(piv, c))) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
        }
        T inv = f.inv(h(c + 1, c));
        for (std::size_t i = c + 2; i < n; ++i) {
            if (f.is_zero(h(i, c))) continue;
            T u = f.mul(h(i, c), inv);
            for (std::size_t j = 0; j < n; ++j) h(i, j) = f.sub(h(i, j), f.mul(u, h(c + 1, j)));
            for (std::size_t j = 0; j < n; ++j) h(j, c + 1) = f.add(h(j, c + 1), f.mul(u, h(j, i)));
        }
    }
    // p_k = charpoly of the leading k x k block.
    std::vector<std::vector<T>> p(n + 1);
    p[0] = {f.one()};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<T> q(k + 1, f.zero());
        for (std::size_t i = 0; i < k; ++i) {
            q[i + 1] = f.add(q[i + 1], p[k - 1][i]);
            q[i] = f.sub(q[i], f.mul(h(k - 1, k - 1), p[k - 1][i]));
        }
        T prod = f.one();
        for (std::size_t i = 1; i < k; ++i) {
            prod = f.mul(prod, h(k - i, k - i - 1));
            T coef = f.mul(prod, h(k - i - 1, k - 1));
            for (std::size_t j = 0; j < p[k - i - 1].size(); ++j)
                q[j] = f.sub(q[j], f.mul(coef, p[k - i - 1][j]));
        }
        p[k] = std::move(q);
    }
    return p[n];
}

template <class F>
Matrix<F> reduce_matrix(const F& f, const Matrix<QQ>& m)
{
    auto out = zeros(f, m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = f.from(m.a[i]);
    return out;
}

}  // namespace pmf
