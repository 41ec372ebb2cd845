#include <gtest/gtest.h>

#include <algorithm>

#include "k3b/brauer.hpp"
#include "test_util.hpp"

using namespace k3b;
using k3b::testing::uniform;

namespace {

Integer count_of(const CountTable& t, LemmaCase c) {
    for (const auto& row : t)
        if (row.lemma_case == c)
            return row.count;
    ADD_FAILURE() << "missing case " << to_string(c);
    return -1;
}

Integer total(const CountTable& t) {
    Integer s = 0;
    for (const auto& row : t)
        s += row.count;
    return s;
}

AlphaParam random_param(std::mt19937_64& rng, long p, long d, std::size_t m) {
    AlphaParam a{Integer(p), Integer(d), Integer(0), std::vector<Integer>(m)};
    do {
        a.i = uniform(rng, 0, p - 1);
        for (auto& x : a.lambda)
            x = uniform(rng, 0, p - 1);
    } while (a.i == 0 && std::all_of(a.lambda.begin(), a.lambda.end(), [](const Integer& x) { return x == 0; }));
    return a;
}

AlphaParam scaled(AlphaParam a, long u) {
    a.i = mod_floor(u * a.i, a.p);
    for (auto& x : a.lambda)
        x = mod_floor(u * x, a.p);
    return a;
}

// Brute quadric count over F_p^(2m): sum x_{2k} x_{2k+1}, with the last plane
// replaced by an anisotropic one for the nonsplit type.
Integer brute_quadric(long p, unsigned m, long value, FormType type) {
    long nonres = 2;
    if (p > 2)
        while (legendre(Integer(nonres), Integer(p)) != -1)
            ++nonres;
    const unsigned n = 2 * m;
    std::vector<long> x(n, 0);
    long count = 0;
    for (;;) {
        long q = 0;
        for (unsigned k = 0; k + 1 < m; ++k)
            q += x[2 * k] * x[2 * k + 1];
        long u = x[n - 2], v = x[n - 1];
        if (type == FormType::split)
            q += u * v;
        else if (p == 2)
            q += u * u + u * v + v * v;
        else
            q += u * u - nonres * v * v;
        if (((q - value) % p + p) % p == 0)
            ++count;
        unsigned i = 0;
        while (i < n && ++x[i] == p)
            x[i++] = 0;
        if (i == n)
            break;
    }
    return count;
}

}  // namespace

TEST(AlphaInvariants, Examples) {
    AlphaParam a{2, 1, 1, std::vector<Integer>(20, Integer(0))};
    ClassInvariants inv = alpha_invariants(a);
    EXPECT_EQ(inv.bh, Rational(1, 2));
    EXPECT_EQ(inv.c_alpha, 0);

    AlphaParam b{2, 1, 0, std::vector<Integer>(20, Integer(0))};
    b.lambda[0] = b.lambda[1] = 1;
    ClassInvariants ib = alpha_invariants(b);
    EXPECT_EQ(ib.lambda_sq, 2);
    EXPECT_EQ(ib.c_alpha, 1);

    AlphaParam zero{3, 1, 0, std::vector<Integer>(20, Integer(0))};
    EXPECT_THROW(alpha_invariants(zero), Error);
    EXPECT_THROW(classify(zero), Error);
}

TEST(AlphaInvariants, ScalingMultipliesByUnitSquare) {
    std::mt19937_64 rng(7);
    for (long p : {3L, 5L, 7L})
        for (int t = 0; t < 40; ++t) {
            AlphaParam a = random_param(rng, p, uniform(rng, 1, 6), 20);
            const long u = uniform(rng, 1, p - 1);
            Integer c = alpha_invariants(a).c_alpha, cu = alpha_invariants(scaled(a, u)).c_alpha;
            EXPECT_EQ(cu, mod_floor(u * u * c, p));
            EXPECT_EQ(alpha_invariants(a).bh, mod_rational(Rational(-a.i, p), 1));
        }
}

TEST(AlphaInvariants, DiscOrdersMultiplyToIndexSquare) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; ++t) {
        const long p = std::vector<long>{2, 3, 5}[t % 3];
        const long d = uniform(rng, 1, 6);
        ClassInvariants inv = alpha_invariants(random_param(rng, p, d, 20));
        Integer prod = 1;
        for (const auto& o : inv.disc_orders)
            prod *= o;
        EXPECT_EQ(prod, 2 * p * p * d);
    }
}

TEST(Classify, PrintedExamplesForDegreeTwo) {
    AlphaParam a{2, 1, 1, std::vector<Integer>(20, Integer(0))};
    ClassLabel l = classify(a);
    EXPECT_EQ(l.lemma_case, LemmaCase::A_ii);
    EXPECT_TRUE(l.k3_type);
    EXPECT_EQ(l.theta_tag, ThetaTag::even_theta);
    // lambda^2 = 4 from two hyperbolic pairs: still 0 mod 4.
    a.lambda[0] = a.lambda[1] = a.lambda[2] = a.lambda[3] = 1;
    EXPECT_EQ(classify(a).lemma_case, LemmaCase::A_ii);

    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        AlphaParam b = random_param(rng, 2, 1, 20);
        b.i = 0;
        if (std::all_of(b.lambda.begin(), b.lambda.end(), [](const Integer& x) { return x == 0; }))
            b.lambda[5] = 1;
        ClassLabel lb = classify(b);
        EXPECT_EQ(lb.lemma_case, LemmaCase::A_i);
        EXPECT_EQ(lb.theta_tag, ThetaTag::order_two_point);
    }
}

TEST(Classify, ThetaTagOnlyForDegreeTwoAndPTwo) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 80; ++t) {
        const long p = std::vector<long>{2, 3}[t % 2];
        const long d = uniform(rng, 1, 4);
        ClassLabel l = classify(random_param(rng, p, d, 20));
        EXPECT_EQ(l.theta_tag.has_value(), p == 2 && d == 1);
        EXPECT_EQ(l.k3_type, is_k3_type(Integer(p), l.lemma_case));
        EXPECT_EQ((l.lemma_case >= LemmaCase::B_i), d % p == 0);
    }
}

TEST(Classify, FastRulesMatchFirstPrinciplesForPTwo) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 1000; ++t) {
        AlphaParam a = random_param(rng, 2, uniform(rng, 1, 8), 20);
        ASSERT_EQ(classify_fast(a), classify_first_principles(a)) << "d=" << a.d << " i=" << a.i;
    }
}

// The p odd dictionary on (i, c_alpha) is derived empirically: every class at
// toy rank classifies the same way from first principles.
TEST(Classify, FastDictionaryForOddPrimesAtToyRank) {
    for (long p : {3L, 5L})
        for (long d : {1L, 2L, 3L, 5L, 6L}) {
            const std::size_t m = p == 3 ? 4 : 2;
            AlphaParam a{Integer(p), Integer(d), Integer(0), std::vector<Integer>(m, Integer(0))};
            std::vector<long> x(m + 1, 0);
            for (;;) {
                unsigned k = 0;
                while (k <= m && ++x[k] == p)
                    x[k++] = 0;
                if (k > m)
                    break;
                a.i = x[0];
                for (std::size_t j = 0; j < m; ++j)
                    a.lambda[j] = x[j + 1];
                ASSERT_EQ(classify_fast(a), classify_first_principles(a)) << p << " " << d;
            }
        }
}

TEST(Classify, FastDictionaryForOddPrimesAtFullRank) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 150; ++t) {
        const long p = t % 2 ? 3 : 5;
        AlphaParam a = random_param(rng, p, uniform(rng, 1, 10), 20);
        ASSERT_EQ(classify_fast(a), classify_first_principles(a));
    }
}

TEST(Classify, ScaleInvarianceExhaustiveAtToyRank) {
    for (long p : {3L, 5L})
        for (long d : {1L, 3L, 5L})
            for (std::size_t m : {2u, 4u}) {
                if (p == 5 && m == 4 && d != 1)
                    continue;
                AlphaParam a{Integer(p), Integer(d), Integer(0), std::vector<Integer>(m, Integer(0))};
                std::vector<long> x(m + 1, 0);
                for (;;) {
                    unsigned k = 0;
                    while (k <= m && ++x[k] == p)
                        x[k++] = 0;
                    if (k > m)
                        break;
                    a.i = x[0];
                    for (std::size_t j = 0; j < m; ++j)
                        a.lambda[j] = x[j + 1];
                    ClassLabel base = classify_first_principles(a);
                    for (long u = 2; u < p; ++u)
                        ASSERT_EQ(classify_first_principles(scaled(a, u)), base);
                }
            }
}

TEST(Classify, ScaleInvarianceRandomFullRank) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 500; ++t) {
        AlphaParam a = random_param(rng, 3, 1, 20);
        ASSERT_EQ(classify(a), classify(scaled(a, 2)));
    }
}

TEST(Counts, ClosedFormsDegreeTwo) {
    CountTable a = count_classes(2, 1);
    EXPECT_EQ(count_of(a, LemmaCase::A_i), 1048575);
    EXPECT_EQ(count_of(a, LemmaCase::A_ii), 524800);
    EXPECT_EQ(count_of(a, LemmaCase::A_iii), 523776);
    CountTable b = count_classes(2, 2);
    EXPECT_EQ(count_of(b, LemmaCase::B_i), 524799);
    EXPECT_EQ(count_of(b, LemmaCase::B_ii), 523776);
    EXPECT_EQ(count_of(b, LemmaCase::B_iii), 1048576);
}

TEST(Counts, ClosedFormsPThree) {
    const Integer t10 = pow_ui(3, 10), t20 = pow_ui(3, 20);
    CountTable a = count_classes(3, 1);
    EXPECT_EQ(count_of(a, LemmaCase::A_i), t10 * (t10 + 1) / 2);
    EXPECT_EQ(count_of(a, LemmaCase::A_i), Integer("1743421725"));
    EXPECT_EQ(count_of(a, LemmaCase::A_ii), t10 * (t10 - 1) / 2);
    EXPECT_EQ(count_of(a, LemmaCase::A_iii), (t20 - 1) / 2);
    EXPECT_EQ(count_of(count_classes(3, 3), LemmaCase::B_iv), t20);
}

TEST(Counts, TotalsAreSubgroupCounts) {
    for (long p : {2L, 3L, 5L, 7L})
        for (long d : {1L, p, 2 * p + (p == 2 ? 1 : 0)}) {
            const Integer expected = (pow_ui(p, 21) - 1) / (p - 1);
            EXPECT_EQ(total(count_classes(p, d)), expected) << p << " " << d;
        }
    EXPECT_THROW(count_classes(4, 1), Error);
}

TEST(Counts, BruteForceFullRankPTwo) {
    for (long d : {1L, 2L}) {
        CountTable b = brute_force_counts(2, d, 20), c = count_classes(2, d);
        ASSERT_EQ(b.size(), c.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            EXPECT_EQ(b[i].lemma_case, c[i].lemma_case);
            EXPECT_EQ(b[i].count, c[i].count);
        }
    }
}

TEST(Counts, BruteForceToyRanks) {
    for (long p : {2L, 3L, 5L})
        for (long d : {1L, 2L, 3L, 5L, 6L})
            for (std::size_t m : {2u, 4u}) {
                CountTable b = brute_force_counts(p, d, m);
                EXPECT_EQ(total(b), (pow_ui(p, m + 1) - 1) / (p - 1));
                CountTable pr = predicted_counts(p, d, m), c = count_classes(p, d, m);
                ASSERT_EQ(b.size(), pr.size());
                for (std::size_t i = 0; i < b.size(); ++i) {
                    EXPECT_EQ(b[i].count, pr[i].count) << p << " " << d << " " << m;
                    EXPECT_EQ(b[i].count, c[i].count) << p << " " << d << " " << m;
                }
            }
    EXPECT_EQ(total(brute_force_counts(3, 1, 4)), 121);
}

TEST(Counts, BudgetEnforced) {
    try {
        brute_force_counts(3, 1, 20);
        FAIL() << "expected a limit error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::limit);
    }
    EXPECT_THROW(brute_force_counts(2, 1, 20, 1000), Error);
}

TEST(QuadricCount, Examples) {
    EXPECT_EQ(quadric_count(2, 1, 0, FormType::split), 3);
    EXPECT_EQ(quadric_count(2, 10, 0, FormType::split), 524800);
    EXPECT_EQ(quadric_count(3, 2, 1, FormType::split), brute_quadric(3, 2, 1, FormType::split));
}

TEST(QuadricCount, MatchesEnumeration) {
    for (long p : {2L, 3L, 5L}) {
        const unsigned max_m = p == 2 ? 6 : (p == 3 ? 4 : 3);
        for (unsigned m = 1; m <= max_m; ++m)
            for (FormType type : {FormType::split, FormType::nonsplit}) {
                Integer sum = 0;
                for (long v = 0; v < p; ++v) {
                    Integer q = quadric_count(p, m, v, type);
                    EXPECT_EQ(q, brute_quadric(p, m, v, type)) << p << " " << m << " " << v;
                    sum += q;
                }
                EXPECT_EQ(sum, pow_ui(p, 2 * m));
            }
    }
}

TEST(Vanishing, Examples) {
    for (long c : {-3L, -1L, 0L, 2L}) {
        VanishingInvariants v = vanishing_invariants(2, 3, c);
        EXPECT_EQ(v.bh, Rational(1, 2));
        EXPECT_EQ(mod_rational(v.bsq.value, 1), mod_rational(Rational(c, 2), 1));
        EXPECT_EQ(v.bsq.quotient, Quotient::mod_Z);
        EXPECT_EQ(vanishing_invariants(3, 3, c).bh, 0);
    }
    VanishingInvariants w = vanishing_invariants(2, 4, 1);
    EXPECT_EQ(w.bh, 0);
    EXPECT_EQ(w.bsq.reduced(2), Rational(1, 2));
}
