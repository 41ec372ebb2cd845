#include "k3b/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace k3b {

GramLattice::GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric())
        fail(ErrorKind::domain, "Gram matrix is not symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        if (mpz_odd_p(gram_(i, i).get_mpz_t()))
            fail(ErrorKind::domain, "lattice is not even (odd diagonal entry)");
}

GramLattice GramLattice::transformed(const IntMatrix& basis) const {
    return GramLattice(basis * gram_ * basis.transpose());
}

GramLattice hyperbolic_plane() { return GramLattice(IntMatrix{{0, 1}, {1, 0}}); }

GramLattice e8_negative() {
    IntMatrix cartan{
        {2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
        {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
        {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 0, 0, 2},
    };
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            cartan(i, j) = -cartan(i, j);
    return GramLattice(cartan);
}

const GramLattice& lambda_prime() {
    static const GramLattice lp = [] {
        IntMatrix u = hyperbolic_plane().gram();
        IntMatrix e8 = e8_negative().gram();
        return GramLattice(block_diagonal({u, u, e8, e8}));
    }();
    return lp;
}

GramLattice lambda_prime_block(std::size_t m) {
    if (m > 20)
        fail(ErrorKind::domain, "toy rank must be at most 20");
    IntMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out(i, j) = lambda_prime()(i, j);
    return GramLattice(out);
}

namespace {

// Smallest nonzero |entry| in the block a[t.., t..]; false if the block is zero.
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0)
                continue;
            Integer v = abs(a(i, j));
            if (!found || v < best) {
                best = v;
                pr = i;
                pc = j;
                found = true;
                if (best == 1)
                    return true;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    IntMatrix a = m;
    IntMatrix left = IntMatrix::identity(r);
    IntMatrix right = IntMatrix::identity(c);
    IntMatrix rinv = IntMatrix::identity(c);

    auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
        a.add_row_multiple(dst, src, k);
        left.add_row_multiple(dst, src, k);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
        a.add_col_multiple(dst, src, k);
        right.add_col_multiple(dst, src, k);
        rinv.add_row_multiple(src, dst, -k);
    };
    auto row_swap = [&](std::size_t x, std::size_t y) {
        a.swap_rows(x, y);
        left.swap_rows(x, y);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        a.swap_cols(x, y);
        right.swap_cols(x, y);
        rinv.swap_rows(x, y);
    };

    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pr = t, pc = t;
        if (!find_pivot(a, t, pr, pc))
            break;
        row_swap(t, pr);
        col_swap(t, pc);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (sgn(a(i, t)) == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                row_add(i, t, -q);
                if (sgn(a(i, t)) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (sgn(a(t, j)) == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                col_add(j, t, -q);
                if (sgn(a(t, j)) != 0)
                    clean = false;
            }
            if (!clean) {
                // Bring the smallest remainder in row/column t to the pivot.
                std::size_t bi = t, bj = t;
                Integer best = abs(a(t, t));
                for (std::size_t i = t + 1; i < r; ++i)
                    if (sgn(a(i, t)) != 0 && abs(a(i, t)) < best) {
                        best = abs(a(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < c; ++j)
                    if (sgn(a(t, j)) != 0 && abs(a(t, j)) < best) {
                        best = abs(a(t, j));
                        bi = t;
                        bj = j;
                    }
                row_swap(t, bi);
                col_swap(t, bj);
                continue;
            }
            // Divisibility of the remaining block by the pivot.
            bool divisible = true;
            for (std::size_t i = t + 1; i < r && divisible; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        row_add(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (sgn(a(t, t)) < 0) {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    SmithDecomposition out;
    out.diag.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.diag[i] = a(i, i);
    out.left = std::move(left);
    out.right = std::move(right);
    out.right_inverse = std::move(rinv);
    return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        // gcd-eliminate column `col` below `row`
        for (;;) {
            std::size_t best = a.rows();
            for (std::size_t i = row; i < a.rows(); ++i)
                if (sgn(a(i, col)) != 0 && (best == a.rows() || abs(a(i, col)) < abs(a(best, col))))
                    best = i;
            if (best == a.rows())
                break;
            a.swap_rows(row, best);
            bool done = true;
            for (std::size_t i = row + 1; i < a.rows(); ++i) {
                if (sgn(a(i, col)) == 0)
                    continue;
                a.add_row_multiple(i, row, -floor_div(a(i, col), a(row, col)));
                if (sgn(a(i, col)) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (sgn(a(row, col)) == 0)
            continue;
        if (sgn(a(row, col)) < 0)
            a.negate_row(row);
        for (std::size_t i = 0; i < row; ++i)
            a.add_row_multiple(i, row, -floor_div(a(i, col), a(row, col)));
        pivots.push_back(col);
        ++row;
    }
    IntMatrix out(row, a.cols());
    for (std::size_t i = 0; i < row; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    SmithDecomposition snf = smith_normal_form(m);
    std::size_t rank = 0;
    for (const auto& d : snf.diag)
        if (sgn(d) != 0)
            ++rank;
    const std::size_t n = m.cols();
    IntMatrix basis(n - rank, n);
    for (std::size_t k = rank; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            basis(k - rank, i) = snf.right(i, k);
    return hermite_normal_form(basis);
}

Integer FiniteQuadForm::order() const {
    Integer o = 1;
    for (const auto& n : cyclic_orders)
        o *= n;
    return o;
}

Rational FiniteQuadForm::q_value(const std::vector<Integer>& a) const {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0)
            continue;
        s += Rational(a[i] * a[i]) * q_matrix[i][i];
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (sgn(a[j]) != 0)
                s += Rational(2 * a[i] * a[j]) * q_matrix[i][j];
    }
    return mod_rational(s, 2);
}

Rational FiniteQuadForm::b_value(const std::vector<Integer>& x, const std::vector<Integer>& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            if (sgn(x[i]) != 0 && sgn(y[j]) != 0)
                s += Rational(x[i] * y[j]) * q_matrix[i][j];
    return mod_rational(s, 1);
}

std::vector<Integer> FiniteQuadForm::coordinates_of(const std::vector<Rational>& x) const {
    std::vector<Integer> out(cyclic_orders.size());
    for (std::size_t i = 0; i < cyclic_orders.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            s += to_generator_coords(i, j) * x[j];
        s.canonicalize();
        if (s.get_den() != 1)
            fail(ErrorKind::domain, "vector is not in the dual lattice");
        out[i] = mod_floor(s.get_num(), cyclic_orders[i]);
    }
    return out;
}

FiniteQuadForm disc_form(const GramLattice& lattice) {
    const IntMatrix& g = lattice.gram();
    if (sgn(lattice.det()) == 0)
        fail(ErrorKind::domain, "singular lattice");
    const std::size_t n = lattice.rank();
    SmithDecomposition snf = smith_normal_form(g);

    FiniteQuadForm form;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (snf.diag[i] > 1)
            idx.push_back(i);
    const std::size_t k = idx.size();
    form.cyclic_orders.reserve(k);
    form.to_generator_coords = IntMatrix(k, n);
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t i = idx[a];
        form.cyclic_orders.push_back(snf.diag[i]);
        std::vector<Rational> gen(n);
        for (std::size_t r = 0; r < n; ++r) {
            gen[r] = Rational(snf.right(r, i), snf.diag[i]);
            gen[r].canonicalize();
        }
        form.generators.push_back(std::move(gen));
        for (std::size_t j = 0; j < n; ++j)
            form.to_generator_coords(a, j) = snf.diag[i] * snf.right_inverse(i, j);
    }
    form.q_matrix.assign(k, std::vector<Rational>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            form.q_matrix[a][b] = bilinear(g, form.generators[a], form.generators[b]);
            form.q_matrix[b][a] = form.q_matrix[a][b];
        }
    return form;
}

Sublattice kernel_sublattice_with_basis(const GramLattice& lattice, const std::vector<Integer>& f, const Integer& p) {
    const std::size_t n = lattice.rank();
    if (f.size() != n)
        fail(ErrorKind::domain, "functional length does not match lattice rank");
    if (!is_prime(p))
        fail(ErrorKind::domain, "modulus must be prime");
    std::size_t pivot = n;
    for (std::size_t j = 0; j < n; ++j)
        if (!mpz_divisible_p(f[j].get_mpz_t(), p.get_mpz_t())) {
            pivot = j;
            break;
        }
    if (pivot == n)
        fail(ErrorKind::domain, "trivial functional");
    const Integer inv = mod_inverse(mod_floor(f[pivot], p), p);
    IntMatrix basis(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == pivot) {
            basis(k, k) = p;
            continue;
        }
        basis(k, k) = 1;
        basis(k, pivot) = -mod_floor(f[k] * inv, p);
    }
    Sublattice out{lattice.transformed(basis), basis};
    return out;
}

GramLattice kernel_sublattice(const GramLattice& lattice, const std::vector<Integer>& f, const Integer& p) {
    return kernel_sublattice_with_basis(lattice, f, p).lattice;
}

bool operator<(const DiscAutomorphism& a, const DiscAutomorphism& b) {
    if (a.action.rows() != b.action.rows())
        return a.action.rows() < b.action.rows();
    for (std::size_t i = 0; i < a.action.rows(); ++i)
        for (std::size_t j = 0; j < a.action.cols(); ++j)
            if (a.action(i, j) != b.action(i, j))
                return a.action(i, j) < b.action(i, j);
    return false;
}

DiscAutomorphism normalize_action(const FiniteQuadForm& form, IntMatrix action) {
    for (std::size_t i = 0; i < action.rows(); ++i)
        for (std::size_t j = 0; j < action.cols(); ++j)
            action(i, j) = mod_floor(action(i, j), form.cyclic_orders[j]);
    return DiscAutomorphism{std::move(action)};
}

DiscAutomorphism compose(const FiniteQuadForm& form, const DiscAutomorphism& first, const DiscAutomorphism& second) {
    return normalize_action(form, first.action * second.action);
}

namespace {

void check_bound(const FiniteQuadForm& form, std::uint64_t bound) {
    if (form.order() > Integer(std::to_string(bound)))
        fail(ErrorKind::limit, "enumeration limit: discriminant group of order " + form.order().get_str() +
                                   " exceeds bound " + std::to_string(bound));
}

// Calls fn(coeffs) for every group element.
template <typename Fn>
void for_each_element(const FiniteQuadForm& form, Fn&& fn) {
    const std::size_t k = form.generator_count();
    std::vector<Integer> a(k, 0);
    for (;;) {
        fn(a);
        std::size_t i = 0;
        while (i < k) {
            ++a[i];
            if (a[i] < form.cyclic_orders[i])
                break;
            a[i] = 0;
            ++i;
        }
        if (i == k)
            break;
    }
}

}  // namespace

std::vector<DiscAutomorphism> disc_orthogonal_group(const FiniteQuadForm& form, std::uint64_t bound) {
    check_bound(form, bound);
    const std::size_t k = form.generator_count();
    std::vector<DiscAutomorphism> out;
    if (k == 0) {
        out.push_back(DiscAutomorphism{IntMatrix(0, 0)});
        return out;
    }
    if (k == 1) {
        const Integer& n = form.cyclic_orders[0];
        const Rational q = form.q_matrix[0][0];
        for (Integer u = 1; u < n; ++u) {
            if (gcd(u, n) != 1)
                continue;
            Rational diff = Rational(u * u - 1) * q;
            if (sgn(mod_rational(diff, 2)) == 0) {
                IntMatrix m(1, 1);
                m(0, 0) = u;
                out.push_back(DiscAutomorphism{m});
            }
        }
        return out;
    }
    if (k > 2)
        fail(ErrorKind::domain, "discriminant orthogonal group supports at most 2 generators");

    const Integer& n1 = form.cyclic_orders[0];
    const Integer& n2 = form.cyclic_orders[1];
    const Rational q1 = mod_rational(form.q_matrix[0][0], 2);
    const Rational q2 = mod_rational(form.q_matrix[1][1], 2);
    const Rational b12 = mod_rational(form.q_matrix[0][1], 1);

    std::vector<std::vector<Integer>> first, second;
    for_each_element(form, [&](const std::vector<Integer>& x) {
        Rational qx = form.q_value(x);
        // n1 * x = 0 in the group
        bool kills = mpz_divisible_p(Integer(n1 * x[1]).get_mpz_t(), n2.get_mpz_t()) != 0;
        if (qx == q1 && kills)
            first.push_back(x);
        if (qx == q2)
            second.push_back(x);
    });
    for (const auto& x : first)
        for (const auto& y : second) {
            if (form.b_value(x, y) != b12)
                continue;
            // Surjective iff the 2x2 minors of [M; diag(n1, n2)] have gcd 1.
            Integer g = x[0] * y[1] - x[1] * y[0];
            g = gcd(g, x[0] * n2);
            g = gcd(g, x[1] * n1);
            g = gcd(g, y[0] * n2);
            g = gcd(g, y[1] * n1);
            g = gcd(g, n1 * n2);
            if (g != 1)
                continue;
            IntMatrix m(2, 2);
            m(0, 0) = x[0];
            m(0, 1) = x[1];
            m(1, 0) = y[0];
            m(1, 1) = y[1];
            out.push_back(DiscAutomorphism{m});
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> q_value_multiset(const FiniteQuadForm& form, std::uint64_t bound) {
    check_bound(form, bound);
    std::vector<Rational> out;
    for_each_element(form, [&](const std::vector<Integer>& x) { out.push_back(form.q_value(x)); });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace k3b
