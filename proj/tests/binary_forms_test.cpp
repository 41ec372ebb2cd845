#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "k3b/binary_forms.hpp"
#include "test_util.hpp"

using namespace k3b;
using k3b::testing::norm2;
using k3b::testing::random_indefinite_binary;
using k3b::testing::random_unimodular;
using k3b::testing::uniform;

namespace {

const GramLattice M16(IntMatrix{{16, 1}, {1, -2}});
const GramLattice P4(IntMatrix{{4, 1}, {1, -8}});
const GramLattice L37(IntMatrix{{2, 1}, {1, -18}});
const GramLattice P36(IntMatrix{{36, 1}, {1, -2}});

// Continued fraction of sqrt(D) by the (m, d, a) recurrence: period length and
// the fundamental solution of x^2 - D y^2 = 1 read off the convergents.
struct CfOracle {
    std::size_t period;
    Integer x, y;
};

CfOracle cf_oracle(long D) {
    const long a0 = static_cast<long>(isqrt(Integer(D)).get_si());
    long m = 0, d = 1, a = a0;
    std::vector<long> digits;
    do {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        digits.push_back(a);
    } while (a != 2 * a0);
    Integer p_prev = 1, p = a0, q_prev = 0, q = 1;
    for (std::size_t i = 0;; ++i) {
        if (p * p - D * q * q == 1)
            return {digits.size(), p, q};
        long ai = digits[i % digits.size()];
        Integer pn = ai * p + p_prev, qn = ai * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
}

bool is_reduced(const BinaryForm& f) {
    // 0 < B < sqrt(D) and sqrt(D) - B < 2|A| < sqrt(D) + B, squared out.
    const Integer D = f.discriminant();
    const Integer B = f.B(), A2 = 2 * abs(f.A());
    const bool upper = A2 - B <= 0 || (A2 - B) * (A2 - B) < D;
    return B > 0 && B * B < D && (A2 + B) * (A2 + B) > D && upper;
}

}  // namespace

TEST(BinaryForm, Coefficients) {
    BinaryForm f = BinaryForm::from_gram(L37);
    EXPECT_EQ(f.A(), 1);
    EXPECT_EQ(f.B(), 1);
    EXPECT_EQ(f.C(), -9);
    EXPECT_EQ(f.form_a(), 2);
    EXPECT_EQ(f.form_b(), 2);
    EXPECT_EQ(f.form_c(), -18);
    EXPECT_EQ(f.discriminant(), 37);
    EXPECT_EQ(f.gram(), L37);
}

TEST(ReduceCycle, SquareDiscriminantBranch) {
    auto u = reduce_cycle(hyperbolic_plane());
    ASSERT_FALSE(u.empty());
    bool has_zero = std::any_of(u.begin(), u.end(), [](const ReducedStep& s) { return s.form.A() == 0 && s.form.C() == 0; });
    EXPECT_TRUE(has_zero);
    for (const auto& step : reduce_cycle(GramLattice(IntMatrix{{2, 3}, {3, -8}}))) {
        EXPECT_EQ(step.form.A(), 0);
        EXPECT_EQ(step.form.B(), 5);
    }
}

// Every reduced form of a nonsquare discriminant, enumerated directly.
std::set<std::tuple<Integer, Integer, Integer>> all_reduced(long D) {
    std::set<std::tuple<Integer, Integer, Integer>> out;
    for (long B = 1; B * B < D; ++B) {
        if ((B - D) % 2 != 0)
            continue;
        for (long A = -D; A <= D; ++A) {
            if (A == 0 || (B * B - D) % (4 * A) != 0)
                continue;
            BinaryForm f(A, B, (B * B - D) / (4 * A));
            if (is_reduced(f))
                out.insert({f.A(), f.B(), f.C()});
        }
    }
    return out;
}

TEST(ReduceCycle, CyclesPartitionReducedForms) {
    for (long D : {13L, 21L, 33L, 37L, 40L, 60L, 73L, 85L, 136L, 229L}) {
        auto all = all_reduced(D);
        ASSERT_FALSE(all.empty());
        std::set<std::tuple<Integer, Integer, Integer>> covered;
        for (const auto& [a, b, c] : all) {
            if (covered.count({a, b, c}))
                continue;
            BinaryForm f(a, b, c);
            auto cycle = reduce_cycle(f.gram());
            EXPECT_EQ(cycle.front().form, f);
            for (const auto& step : cycle) {
                EXPECT_TRUE(is_reduced(step.form)) << D;
                EXPECT_EQ(f.transformed(step.transform), step.form);
                EXPECT_EQ(determinant(step.transform), 1);
                EXPECT_TRUE(all.count({step.form.A(), step.form.B(), step.form.C()}));
                EXPECT_TRUE(covered.insert({step.form.A(), step.form.B(), step.form.C()}).second) << D;
            }
        }
        EXPECT_EQ(covered, all) << D;
    }
    // h+(37) = 1: the principal cycle holds all six reduced forms.
    EXPECT_EQ(reduce_cycle(L37).size(), all_reduced(37).size());
    EXPECT_EQ(all_reduced(37).size(), 6u);
}

TEST(ReduceCycle, ReducesArbitraryForms) {
    for (const GramLattice& g : {L37, M16, P36, GramLattice(IntMatrix{{2, 1}, {1, -6}})}) {
        auto cycle = reduce_cycle(g);
        ASSERT_FALSE(cycle.empty());
        for (const auto& step : cycle) {
            EXPECT_TRUE(is_reduced(step.form));
            EXPECT_EQ(BinaryForm::from_gram(g).transformed(step.transform), step.form);
            EXPECT_EQ(abs(determinant(step.transform)), 1);
        }
    }
    EXPECT_EQ(cf_oracle(37).period, 1u);
    EXPECT_EQ(cf_oracle(33).period, 4u);
    EXPECT_EQ(cf_oracle(73).period, 7u);
}

TEST(ReduceCycle, RejectsDefiniteAndDegenerate) {
    EXPECT_THROW(reduce_cycle(GramLattice(IntMatrix{{2, 1}, {1, 2}})), Error);
    EXPECT_THROW(reduce_cycle(GramLattice(IntMatrix{{2, 2}, {2, 2}})), Error);
}

TEST(PellFundamental, MatchesContinuedFractionOracle) {
    for (long D : {2L, 3L, 7L, 13L, 33L, 37L, 61L, 73L, 94L, 109L, 151L, 397L}) {
        CfOracle o = cf_oracle(D);
        auto [x, y] = pell_fundamental(Integer(D));
        EXPECT_EQ(x, o.x) << D;
        EXPECT_EQ(y, o.y) << D;
    }
    EXPECT_EQ(pell_fundamental(Integer(37)), std::make_pair(Integer(73), Integer(12)));
}

TEST(PellFundamental, UnitFour) {
    for (long D : {5L, 12L, 13L, 21L, 37L, 148L, 132L}) {
        auto [t, u] = fundamental_unit4(Integer(D));
        EXPECT_EQ(t * t - D * u * u, 4);
        for (long v = 1; v < u; ++v)
            EXPECT_FALSE(is_square(D * v * v + 4)) << D << " " << v;
    }
    // t^2 - 148 u^2 = 4 from x^2 - 37 y^2 = 1.
    EXPECT_EQ(fundamental_unit4(Integer(148)), std::make_pair(Integer(146), Integer(12)));
}

TEST(Pell, PrintedCases) {
    PellResult r = pell_pm(Integer(1), Integer(8));
    ASSERT_TRUE(r.solvable);
    EXPECT_EQ(r.witness->r, 3);
    EXPECT_EQ(r.witness->s, 1);
    EXPECT_EQ(r.witness->sign, PellSign::plus);
    EXPECT_FALSE(pell_pm(Integer(25), Integer(8)).solvable);
    PellResult r9 = pell_pm(Integer(9), Integer(8));
    ASSERT_TRUE(r9.solvable);
    EXPECT_EQ(r9.witness->r, 1);
    EXPECT_EQ(r9.witness->s, 1);
    EXPECT_EQ(r9.witness->sign, PellSign::minus);
    // The printed pair (1, 3) does not solve D = 9.
    EXPECT_NE(abs(Integer(1 - 9 * 9)), 8);
    for (long ms = 4; ms <= 21; ++ms)
        EXPECT_FALSE(pell_pm(Integer(ms * ms), Integer(8)).solvable) << ms;
}

TEST(Pell, Errors) {
    EXPECT_THROW(pell_pm(Integer(5), Integer(0)), Error);
    EXPECT_THROW(pell_pm(Integer(-1), Integer(8)), Error);
}

TEST(Pell, AgreesWithBruteForce) {
    for (long D = 0; D <= 400; ++D)
        for (long N : {1L, 4L, 8L}) {
            PellResult r = pell_pm(Integer(D), Integer(N));
            for (PellSign sign : {PellSign::plus, PellSign::minus}) {
                const long target = sign == PellSign::plus ? N : -N;
                std::optional<long> brute;
                for (long s = 0; s <= 1000 && !brute; ++s) {
                    Integer r2 = Integer(D) * s * s + target;
                    if (r2 >= 0 && is_square(r2))
                        brute = s;
                }
                const auto& mine = sign == PellSign::plus ? r.plus : r.minus;
                if (brute) {
                    ASSERT_TRUE(mine.has_value()) << D << " " << target;
                    EXPECT_EQ(mine->s, *brute) << D << " " << target;
                }
                if (mine) {
                    EXPECT_EQ(mine->r * mine->r - D * mine->s * mine->s, target);
                    if (mine->s <= 1000) {
                        EXPECT_TRUE(brute.has_value()) << D << " " << target;
                    }
                }
            }
            EXPECT_EQ(r.solvable, r.plus.has_value() || r.minus.has_value());
            if (r.witness) {
                EXPECT_EQ(abs(r.witness->r * r.witness->r - D * r.witness->s * r.witness->s), N);
            }
        }
}

TEST(Isometry, PrintedWitnesses) {
    const IntMatrix u{{1, -2}, {-1, 3}};
    EXPECT_EQ(M16.transformed(u), P4);
    EXPECT_EQ(unimodular_inverse(u), (IntMatrix{{3, 2}, {1, 1}}));
    const GramLattice L18(IntMatrix{{18, 1}, {1, -2}});
    const IntMatrix v{{2, -5}, {-5, 13}};
    EXPECT_EQ(L18.transformed(v), L37);
    EXPECT_EQ(unimodular_inverse(v), (IntMatrix{{13, 5}, {5, 2}}));
    const IntMatrix s{{57, 272}, {136, 649}};
    const GramLattice P4b(IntMatrix{{4, 1}, {1, -18}});
    EXPECT_EQ(P36.transformed(s), P4b);
    auto w = is_isometric(P36, P4b);
    ASSERT_TRUE(w);
    EXPECT_EQ(P36.transformed(*w), P4b);
    auto x = GramLattice(IntMatrix{{2, 3}, {3, -8}}).transformed(IntMatrix{{1, 0}, {1, 1}});
    EXPECT_EQ(x.gram(), (IntMatrix{{2, 5}, {5, 0}}));
}

TEST(Isometry, NegativeAndIdentity) {
    EXPECT_FALSE(is_isometric(GramLattice(IntMatrix{{8, 3}, {3, -2}}), GramLattice(IntMatrix{{2, 3}, {3, -8}})));
    EXPECT_FALSE(is_isometric(GramLattice(IntMatrix{{24, 1}, {1, -2}}), GramLattice(IntMatrix{{6, 1}, {1, -8}})));
    auto w = is_isometric(L37, L37);
    ASSERT_TRUE(w);
    EXPECT_EQ(L37.transformed(*w), L37);
    EXPECT_THROW(is_isometric(GramLattice(IntMatrix{{2}}), GramLattice(IntMatrix{{2}})), Error);
}

TEST(Isometry, EquivalenceRelationOnRandomForms) {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 200; ++t) {
        GramLattice a = t % 4 == 3 ? GramLattice(IntMatrix{{2 * uniform(rng, 1, 9), 1}, {1, 2 * uniform(rng, 1, 9)}})
                                   : random_indefinite_binary(rng, 500);
        IntMatrix u = random_unimodular(rng, 2, 6, 4);
        GramLattice b = a.transformed(u);
        auto self = is_isometric(a, a);
        ASSERT_TRUE(self);
        EXPECT_EQ(a.transformed(*self), a);
        auto ab = is_isometric(a, b);
        ASSERT_TRUE(ab) << a.gram().str() << " " << b.gram().str();
        EXPECT_EQ(a.transformed(*ab), b);
        EXPECT_EQ(b.transformed(unimodular_inverse(*ab)), a);
        auto ba = is_isometric(b, a);
        ASSERT_TRUE(ba);
        EXPECT_EQ(b.transformed(*ba), a);
    }
}

TEST(Represents, PrintedCases) {
    EXPECT_FALSE(represents(GramLattice(IntMatrix{{2, 5}, {5, 0}}), Integer(-2)));
    EXPECT_FALSE(represents(GramLattice(IntMatrix{{6, 1}, {1, -8}}), Integer(-2)));
    auto w = represents(GramLattice(IntMatrix{{24, 1}, {1, -2}}), Integer(-2));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->first, 0);
    EXPECT_EQ(w->second, 1);
    // In the (e, h) basis the form is 14xy + 6y^2 = 2y(7x + 3y).
    for (long x = -300; x <= 300; ++x)
        for (long y = -300; y <= 300; ++y)
            ASSERT_NE(14 * x * y + 6 * y * y, -2);
}

TEST(Represents, AgreesWithBruteForce) {
    std::mt19937_64 rng(202);
    for (int t = 0; t < 100; ++t) {
        GramLattice g = random_indefinite_binary(rng, 500, 12);
        const long a = g(0, 0).get_si(), b = g(0, 1).get_si(), c = g(1, 1).get_si();
        std::map<long, bool> brute;  // value -> primitive witness seen
        for (long x = -200; x <= 200; ++x)
            for (long y = -200; y <= 200; ++y) {
                long v = a * x * x + 2 * b * x * y + c * y * y;
                if (v < -10 || v > 10 || (x == 0 && y == 0))
                    continue;
                bool prim = std::gcd(x, y) == 1;
                brute[v] = brute[v] || prim;
            }
        for (long n = -10; n <= 10; ++n) {
            if (n == 0)
                continue;
            auto w = represents(g, Integer(n));
            if (w) {
                EXPECT_EQ(norm2(g, w->first, w->second), n);
            }
            auto it = brute.find(n);
            if (it != brute.end()) {
                ASSERT_TRUE(w) << g.gram().str() << " n=" << n;
                if (it->second) {
                    EXPECT_EQ(gcd(w->first, w->second), 1) << g.gram().str() << " n=" << n;
                }
            }
        }
    }
}

TEST(Automorphisms, Generators) {
    auto gens = automorphism_generators(M16);
    for (const auto& g : gens.generators)
        EXPECT_TRUE(is_automorph(M16, g));
    const IntMatrix s{{19, 64}, {8, 27}};
    EXPECT_TRUE(is_automorph(M16, s));
    EXPECT_TRUE(in_automorphism_group(M16, gens, s));

    auto hyp = automorphism_generators(hyperbolic_plane());
    const IntMatrix swap{{0, 1}, {1, 0}};
    EXPECT_TRUE(in_automorphism_group(hyperbolic_plane(), hyp, swap));

    auto g37 = automorphism_generators(L37);
    ASSERT_TRUE(g37.fundamental);
    EXPECT_TRUE(is_automorph(L37, *g37.fundamental));
    EXPECT_NE(*g37.fundamental, IntMatrix::identity(2));
    EXPECT_EQ(determinant(*g37.fundamental), 1);
}

TEST(DiscAction, Examples) {
    EXPECT_EQ(disc_action(M16, IntMatrix{{19, 64}, {8, 27}}), 23);
    EXPECT_EQ(disc_action(M16, IntMatrix::identity(2)), 1);
    EXPECT_EQ(disc_action(M16, IntMatrix{{-1, 0}, {0, -1}}), 32);
    EXPECT_EQ(disc_action(L37, IntMatrix{{-1, 0}, {0, -1}}), 36);
    EXPECT_THROW(disc_action(GramLattice(IntMatrix{{0, 2}, {2, 0}}), IntMatrix::identity(2)), Error);
}

TEST(DiscAction, LandsInOrthogonalGroup) {
    std::mt19937_64 rng(303);
    int tested = 0;
    while (tested < 60) {
        GramLattice g = random_indefinite_binary(rng, 400);
        FiniteQuadForm f = disc_form(g);
        if (!f.is_cyclic() || f.order() == 1)
            continue;
        ++tested;
        std::set<Integer> units;
        for (const auto& a : disc_orthogonal_group(f))
            units.insert(a.action(0, 0));
        for (const auto& u : automorphism_generators(g).generators) {
            Integer act = disc_action(g, u);
            EXPECT_TRUE(units.count(act)) << g.gram().str() << " " << u.str() << " -> " << act;
        }
    }
}

TEST(Glue, PrintedCases) {
    EXPECT_TRUE(glue_uniqueness(M16));
    EXPECT_TRUE(glue_uniqueness(L37));
    EXPECT_TRUE(glue_uniqueness(P36));
}
