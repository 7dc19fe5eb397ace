#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace ggc {

using Rational = boost::multiprecision::cpp_rational;

/// Integers modulo a prime P. Used to run the linear pipeline on
/// elementary abelian groups so it can be compared with enumeration.
template <std::uint32_t P> class Zp {
  public:
    static_assert(P >= 2, "modulus must be at least 2");
    Zp() = default;
    Zp(long long x) : v_(static_cast<std::uint32_t>(((x % static_cast<long long>(P)) + P) % P)) {}

    std::uint32_t value() const { return v_; }

    friend Zp operator+(Zp a, Zp b) { return Zp(static_cast<long long>(a.v_) + b.v_); }
    friend Zp operator-(Zp a, Zp b) { return Zp(static_cast<long long>(a.v_) - b.v_); }
    friend Zp operator*(Zp a, Zp b) { return Zp(static_cast<long long>(a.v_) * b.v_); }
    friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
    Zp operator-() const { return Zp(-static_cast<long long>(v_)); }
    Zp &operator+=(Zp b) { return *this = *this + b; }
    Zp &operator-=(Zp b) { return *this = *this - b; }
    Zp &operator*=(Zp b) { return *this = *this * b; }
    friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
    friend bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }
    friend std::ostream &operator<<(std::ostream &os, Zp a) { return os << a.v_; }

    Zp inverse() const {
        if (v_ == 0)
            throw PreconditionFailed("Zp: inverse of zero");
        std::uint64_t base = v_, exp = P - 2, acc = 1;
        while (exp) {
            if (exp & 1)
                acc = acc * base % P;
            base = base * base % P;
            exp >>= 1;
        }
        return Zp(static_cast<long long>(acc));
    }

  private:
    std::uint32_t v_ = 0;
};

template <class F> inline bool is_zero(const F &x) { return x == F(0); }

/// Dense row-major matrix over an exact field.
template <class F> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<F> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols)
            throw InvalidInput("matrix: data size does not match shape");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = F(1);
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix from_rows(const std::vector<std::vector<F>> &rows, std::size_t cols_if_empty = 0) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows[0].size() : cols_if_empty;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw InvalidInput("matrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_)
            throw InvalidInput("matrix product: shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F &x = a(i, k);
                if (is_zero(x))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix &b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto &x : m.data_)
            x = F(0) - x;
        return m;
    }

    std::vector<F> apply(const std::vector<F> &x) const {
        if (x.size() != cols_)
            throw InvalidInput("matrix apply: length mismatch");
        std::vector<F> y(rows_, F(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero(x[j]))
                    y[i] += (*this)(i, j) * x[j];
        return y;
    }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(j, i) = (*this)(i, j);
        return m;
    }

    std::vector<F> column(std::size_t j) const {
        std::vector<F> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    static Matrix from_columns(const std::vector<std::vector<F>> &cols, std::size_t rows_if_empty) {
        Matrix m(cols.empty() ? rows_if_empty : cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_)
                throw InvalidInput("matrix: ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    /// [A | B]
    Matrix hstack(const Matrix &b) const {
        if (rows_ != b.rows_)
            throw InvalidInput("hstack: row mismatch");
        Matrix m(rows_, cols_ + b.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j)
                m(i, cols_ + j) = b(i, j);
        }
        return m;
    }
    /// [A ; B]
    Matrix vstack(const Matrix &b) const {
        if (cols_ != b.cols_)
            throw InvalidInput("vstack: column mismatch");
        Matrix m(rows_ + b.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(rows_ + i, j) = b(i, j);
        return m;
    }

    /// Kronecker product, entry (i*p + k, j*q + l) = a(i,j) * b(k,l).
    Matrix kron(const Matrix &b) const {
        Matrix m(rows_ * b.rows_, cols_ * b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        m(i * b.rows_ + k, j * b.cols_ + l) = (*this)(i, j) * b(k, l);
        return m;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && is_zero((*this)(p, c)))
                ++p;
            if (p == rows_)
                continue;
            swap_rows(p, r);
            const F inv = F(1) / (*this)(r, c);
            for (std::size_t j = c; j < cols_; ++j)
                (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || is_zero((*this)(i, c)))
                    continue;
                const F f = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    /// Basis of the null space, as columns of a cols x k matrix.
    Matrix kernel_basis() const {
        Matrix m = *this;
        const auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots)
            is_pivot[p] = true;
        std::vector<std::vector<F>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free])
                continue;
            std::vector<F> v(cols_, F(0));
            v[free] = F(1);
            for (std::size_t i = 0; i < pivots.size(); ++i)
                v[pivots[i]] = F(0) - m(i, free);
            basis.push_back(std::move(v));
        }
        return from_columns(basis, cols_);
    }

    /// Some X with A X = B, if one exists.
    std::optional<Matrix> solve(const Matrix &b) const {
        if (b.rows_ != rows_)
            throw InvalidInput("solve: row mismatch");
        Matrix aug = hstack(b);
        auto pivots = aug.rref();
        Matrix x(cols_, b.cols_);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (pivots[i] >= cols_)
                return std::nullopt;
            for (std::size_t j = 0; j < b.cols_; ++j)
                x(pivots[i], j) = aug(i, cols_ + j);
        }
        return x;
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_)
            return std::nullopt;
        auto x = solve(identity(rows_));
        if (!x || rank() != rows_)
            return std::nullopt;
        return x;
    }

  private:
    void check_same(const Matrix &b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw InvalidInput("matrix: shape mismatch");
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

/// Column indices (of a basis) that extend the column span of `a` to the
/// whole space, chosen greedily among unit vectors in ascending order.
template <class F> std::vector<std::size_t> complement_units(const Matrix<F> &a) {
    const std::size_t n = a.rows();
    Matrix<F> span = a;
    std::size_t r = span.rank();
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < n && r < n; ++i) {
        Matrix<F> u(n, 1);
        u(i, 0) = F(1);
        Matrix<F> trial = span.hstack(u);
        const auto tr = trial.rank();
        if (tr > r) {
            span = std::move(trial);
            r = tr;
            picked.push_back(i);
        }
    }
    return picked;
}

inline std::string to_string(const Rational &q) { return q.str(); }

inline Rational parse_rational(const std::string &s) {
    try {
        return Rational(s);
    } catch (const std::exception &) {
        throw InvalidInput("cannot parse rational '" + s + "'");
    }
}

} // namespace ggc
