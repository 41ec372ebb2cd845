#include "k3b/integer.hpp"

#include <sstream>

namespace k3b {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

Integer parse_integer(std::string_view text) {
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size())
        fail(ErrorKind::parse, "not a decimal integer: '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            fail(ErrorKind::parse, "not a decimal integer: '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    return Integer(s, 10);
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer isqrt(const Integer& n) {
    if (sgn(n) < 0)
        fail(ErrorKind::domain, "isqrt of negative number");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Integer& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

bool is_prime(const Integer& n) { return sgn(n) > 0 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

int legendre(const Integer& a, const Integer& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(ErrorKind::domain, "not invertible modulo " + m.get_str());
    return r;
}

Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    Integer g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

unsigned distinct_prime_count(const Integer& n) {
    if (n < 1)
        fail(ErrorKind::domain, "prime factor count needs n >= 1");
    Integer m = n;
    unsigned count = 0;
    for (Integer f = 2; f * f <= m; ++f) {
        if (mpz_divisible_p(m.get_mpz_t(), f.get_mpz_t())) {
            ++count;
            while (mpz_divisible_p(m.get_mpz_t(), f.get_mpz_t()))
                m /= f;
        }
    }
    if (m > 1)
        ++count;
    return count;
}

Rational mod_rational(const Rational& r, const Integer& m) {
    // r = n/d; floor(r/m) * m subtracted
    Integer n = r.get_num();
    Integer d = r.get_den();
    Integer q = floor_div(n, d * m);
    Rational out = r - Rational(q * m);
    out.canonicalize();
    return out;
}

Integer pow_ui(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

unsigned long to_ulong(const Integer& n, const char* what) {
    if (sgn(n) < 0 || !n.fits_ulong_p())
        fail(ErrorKind::domain, std::string(what) + " out of range: " + n.get_str());
    return n.get_ui();
}

long to_long(const Integer& n, const char* what) {
    if (!n.fits_slong_p())
        fail(ErrorKind::domain, std::string(what) + " out of range: " + n.get_str());
    return n.get_si();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_)
            fail(ErrorKind::parse, "ragged matrix literal");
        for (long v : row)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_symmetric() const {
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (sgn(k) == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (sgn(k) == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = -(*this)(i, c);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
        fail(ErrorKind::internal, "matrix shape mismatch in product");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (sgn(aik) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? "," : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

Integer determinant(const IntMatrix& m) {
    if (!m.is_square())
        fail(ErrorKind::domain, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && sgn(a(swap, k)) == 0)
                ++swap;
            if (swap == n)
                return 0;
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (!m.is_square())
        fail(ErrorKind::domain, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Rational> a(n * 2 * n);
    auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * 2 * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            at(i, j) = m(i, j);
        at(i, n + i) = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && sgn(at(piv, c)) == 0)
            ++piv;
        if (piv == n)
            fail(ErrorKind::domain, "matrix is singular");
        if (piv != c)
            for (std::size_t j = 0; j < 2 * n; ++j)
                std::swap(at(c, j), at(piv, j));
        Rational inv = 1 / at(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j)
            at(c, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(at(i, c)) == 0)
                continue;
            Rational f = at(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j)
                at(i, j) -= f * at(c, j);
        }
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = at(i, n + j);
            v.canonicalize();
            if (v.get_den() != 1)
                fail(ErrorKind::domain, "matrix is not unimodular");
            out(i, j) = v.get_num();
        }
    return out;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks)
        n += b.rows();
    IntMatrix out(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return out;
}

Integer bilinear(const IntMatrix& m, const std::vector<Integer>& x, const std::vector<Integer>& y) {
    Integer s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(x[i]) == 0)
            continue;
        Integer row = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            row += m(i, j) * y[j];
        s += x[i] * row;
    }
    return s;
}

Rational bilinear(const IntMatrix& m, const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(x[i]) == 0)
            continue;
        Rational row = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            row += m(i, j) * y[j];
        s += x[i] * row;
    }
    s.canonicalize();
    return s;
}

}  // namespace k3b
