#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace k3b {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
    domain,     // mathematically invalid input (singular lattice, non-prime p, ...)
    limit,      // an enumeration bound or budget was exceeded
    parse,      // malformed textual input
    internal,   // a self-check failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

Integer parse_integer(std::string_view text);

// Floor division and nonnegative remainder, for any sign of b != 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
Integer gcd(const Integer& a, const Integer& b);
bool is_prime(const Integer& n);

// Legendre symbol (a|p) for an odd prime p; 0 when p divides a.
int legendre(const Integer& a, const Integer& p);

// Modular inverse of a modulo m (m > 1); throws if not invertible.
Integer mod_inverse(const Integer& a, const Integer& m);

// Extended gcd: returns g = gcd(a, b) >= 0 with g = a*x + b*y.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y);

// Number of distinct prime factors (trial division; n >= 1).
unsigned distinct_prime_count(const Integer& n);

// Reduce r into [0, m) for rational r and positive integer m.
Rational mod_rational(const Rational& r, const Integer& m);

Integer pow_ui(const Integer& base, unsigned long exp);

unsigned long to_ulong(const Integer& n, const char* what);
long to_long(const Integer& n, const char* what);

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    bool is_symmetric() const;
    bool is_square() const noexcept { return rows_ == cols_; }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

// Inverse of a unimodular matrix (|det| = 1), exact.
IntMatrix unimodular_inverse(const IntMatrix& m);

// Block-diagonal concatenation.
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

// x^T M y for integer vectors.
Integer bilinear(const IntMatrix& m, const std::vector<Integer>& x, const std::vector<Integer>& y);
Rational bilinear(const IntMatrix& m, const std::vector<Rational>& x, const std::vector<Rational>& y);

}  // namespace k3b
