#include <gtest/gtest.h>

#include <numeric>

#include <algorithm>

#include "k3b/lattice.hpp"
#include "test_util.hpp"

using namespace k3b;
using k3b::testing::random_even_lattice;
using k3b::testing::random_unimodular;
using k3b::testing::uniform;

namespace {

IntMatrix diagonal(const std::vector<Integer>& d, std::size_t rows, std::size_t cols) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

void expect_smith(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    EXPECT_EQ(s.left * m * s.right, diagonal(s.diag, m.rows(), m.cols()));
    EXPECT_EQ(abs(determinant(s.left)), 1);
    EXPECT_EQ(abs(determinant(s.right)), 1);
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
        if (s.diag[i] == 0)
            EXPECT_EQ(s.diag[i + 1], 0);
        else
            EXPECT_TRUE(mpz_divisible_p(s.diag[i + 1].get_mpz_t(), s.diag[i].get_mpz_t()));
    }
}

}  // namespace

TEST(Smith, IdentityAndHandReductions) {
    EXPECT_EQ(smith_normal_form(IntMatrix::identity(2)).diag, (std::vector<Integer>{1, 1}));
    // [[2,3],[3,-8]]: gcd of entries 1, det -25.
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 3}, {3, -8}}).diag, (std::vector<Integer>{1, 25}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{16, 1}, {1, -2}}).diag, (std::vector<Integer>{1, 33}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).diag, (std::vector<Integer>{2, 4}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).diag, (std::vector<Integer>{0, 0}));
}

TEST(Smith, RandomMatricesSatisfyDecomposition) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = uniform(rng, 1, 5), c = uniform(rng, 1, 5);
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = uniform(rng, -30, 30);
        expect_smith(m);
    }
}

TEST(Lattices, StandardBlocks) {
    EXPECT_EQ(hyperbolic_plane().gram(), (IntMatrix{{0, 1}, {1, 0}}));
    GramLattice e8 = e8_negative();
    EXPECT_EQ(e8.rank(), 8u);
    EXPECT_EQ(e8.det(), 1);
    for (std::size_t i = 0; i < 8; ++i)
        EXPECT_EQ(e8(i, i), -2);
    const GramLattice& lp = lambda_prime();
    EXPECT_EQ(lp.rank(), 20u);
    EXPECT_EQ(lp.det(), 1);
    EXPECT_TRUE(lp.gram().is_symmetric());
    EXPECT_EQ(lambda_prime_block(4).det(), 1);
    EXPECT_EQ(lambda_prime_block(12).det(), 1);
}

TEST(Hermite, RowSpanBasis) {
    IntMatrix h = hermite_normal_form(IntMatrix{{2, 4}, {1, 3}, {3, 7}});
    EXPECT_EQ(h, (IntMatrix{{1, 1}, {0, 2}}));
    IntMatrix k = integer_kernel(IntMatrix{{1, 2, 3}});
    ASSERT_EQ(k.rows(), 2u);
    for (std::size_t r = 0; r < 2; ++r)
        EXPECT_EQ(k(r, 0) + 2 * k(r, 1) + 3 * k(r, 2), 0);
}

TEST(DiscForm, RankOne) {
    for (long d : {1L, 2L, 5L}) {
        FiniteQuadForm f = disc_form(GramLattice(IntMatrix{{2 * d}}));
        ASSERT_EQ(f.cyclic_orders, (std::vector<Integer>{2 * d}));
        EXPECT_EQ(mod_rational(f.q_matrix[0][0], 2), Rational(1, 2 * d));
    }
}

TEST(DiscForm, M16AndThirtySeven) {
    FiniteQuadForm f = disc_form(GramLattice(IntMatrix{{16, 1}, {1, -2}}));
    ASSERT_EQ(f.cyclic_orders, (std::vector<Integer>{33}));
    // delta = (2, 1)/33 is a generator; q(delta) = delta M delta^T = 66/1089 = 2/33.
    std::vector<Integer> c = f.coordinates_of({Rational(2, 33), Rational(1, 33)});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(gcd(c[0], 33), 1);
    EXPECT_EQ(f.q_value(c), Rational(2, 33));
    EXPECT_EQ(disc_form(GramLattice(IntMatrix{{2, 1}, {1, -18}})).cyclic_orders, (std::vector<Integer>{37}));
}

TEST(DiscForm, SingularRejected) {
    EXPECT_THROW(disc_form(GramLattice(IntMatrix{{2, 2}, {2, 2}})), Error);
}

TEST(DiscForm, OrderEqualsDeterminant) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        GramLattice g = random_even_lattice(rng, uniform(rng, 1, 4), 6);
        FiniteQuadForm f = disc_form(g);
        EXPECT_EQ(f.order(), abs(g.det()));
        for (std::size_t i = 0; i < f.generator_count(); ++i) {
            // q(n g) = n^2 q(g) mod 2 on the generators.
            std::vector<Integer> e(f.generator_count(), Integer(0));
            e[i] = 1;
            Rational q1 = f.q_value(e);
            e[i] = 3;
            EXPECT_EQ(f.q_value(e), mod_rational(9 * q1, 2));
            e[i] = f.cyclic_orders[i];
            EXPECT_EQ(f.q_value(e), 0);
        }
        for (std::size_t i = 0; i + 1 < f.cyclic_orders.size(); ++i)
            EXPECT_TRUE(mpz_divisible_p(f.cyclic_orders[i + 1].get_mpz_t(), f.cyclic_orders[i].get_mpz_t()));
    }
}

TEST(DiscForm, BasisInvariance) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        GramLattice g = random_even_lattice(rng, uniform(rng, 2, 4), 5);
        if (abs(g.det()) > 10'000)
            continue;
        IntMatrix u = random_unimodular(rng, g.rank());
        FiniteQuadForm a = disc_form(g), b = disc_form(g.transformed(u));
        EXPECT_EQ(a.cyclic_orders, b.cyclic_orders);
        EXPECT_EQ(q_value_multiset(a), q_value_multiset(b));
    }
}

TEST(Kernel, Examples) {
    for (long d : {1L, 3L})
        for (long p : {2L, 3L, 5L}) {
            GramLattice k = kernel_sublattice(GramLattice(IntMatrix{{-2 * d}}), {Integer(1)}, Integer(p));
            EXPECT_EQ(k.gram(), (IntMatrix{{-2 * p * p * d}}));
        }
    GramLattice k = kernel_sublattice(hyperbolic_plane(), {Integer(1), Integer(0)}, Integer(2));
    EXPECT_EQ(k.gram(), (IntMatrix{{0, 2}, {2, 0}}));
    EXPECT_THROW(kernel_sublattice(hyperbolic_plane(), {Integer(2), Integer(4)}, Integer(2)), Error);
}

TEST(Kernel, DeterminantRatio) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        GramLattice g = random_even_lattice(rng, 5, 4);
        const long p = std::vector<long>{2, 3, 5, 7}[uniform(rng, 0, 3)];
        std::vector<Integer> f(5);
        do {
            for (auto& x : f)
                x = uniform(rng, 0, p - 1);
        } while (std::all_of(f.begin(), f.end(), [](const Integer& x) { return x == 0; }));
        Sublattice s = kernel_sublattice_with_basis(g, f, Integer(p));
        EXPECT_EQ(abs(s.lattice.det()), p * p * abs(g.det()));
        for (std::size_t r = 0; r < s.basis.rows(); ++r) {
            Integer v = 0;
            for (std::size_t j = 0; j < 5; ++j)
                v += f[j] * s.basis(r, j);
            EXPECT_EQ(mod_floor(v, p), 0);
        }
    }
}

TEST(DiscOrthogonal, CyclicGroups) {
    auto units = [](const GramLattice& g) {
        std::vector<Integer> out;
        for (const auto& a : disc_orthogonal_group(disc_form(g)))
            out.push_back(a.action(0, 0));
        std::sort(out.begin(), out.end());
        return out;
    };
    EXPECT_EQ(units(GramLattice(IntMatrix{{2, 1}, {1, -18}})), (std::vector<Integer>{1, 36}));
    EXPECT_EQ(units(GramLattice(IntMatrix{{16, 1}, {1, -2}})), (std::vector<Integer>{1, 10, 23, 32}));
    EXPECT_EQ(units(GramLattice(IntMatrix{{36, 1}, {1, -2}})), (std::vector<Integer>{1, 72}));
}

TEST(DiscOrthogonal, BoundEnforced) {
    EXPECT_THROW(disc_orthogonal_group(disc_form(GramLattice(IntMatrix{{2, 1}, {1, -18}})), 10), Error);
}

TEST(DiscOrthogonal, NonCyclicPreservesQ) {
    // U(n) has group (Z/n)^2 with q(x e + y f) = 2xy/n; O(q) is the diagonal
    // torus {diag(u, 1/u)} together with the swap, for n prime.
    for (long n : {2L, 3L, 5L, 7L}) {
        GramLattice g(IntMatrix{{0, n}, {n, 0}});
        FiniteQuadForm f = disc_form(g);
        auto group = disc_orthogonal_group(f);
        long units = 0;
        for (long u = 1; u < n; ++u)
            units += std::gcd(u, n) == 1;
        EXPECT_EQ(static_cast<long>(group.size()), 2 * std::max(units, 1L)) << n;
    }
    GramLattice u2u2(block_diagonal({IntMatrix{{0, 2}, {2, 0}}, IntMatrix{{0, 2}, {2, 0}}}));
    EXPECT_THROW(disc_orthogonal_group(disc_form(u2u2)), Error);
}
