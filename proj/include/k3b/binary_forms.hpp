#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "k3b/lattice.hpp"

namespace k3b {

// Rank-2 even lattice with Gram [[g11, g12], [g12, g22]].
//
// Two coefficient conventions are in play:
//  - form coefficients (a, b, c) = (g11, 2*g12, g22) describe the norm
//    x^T G x = a x^2 + b xy + c y^2;
//  - the half form (A, B, C) = (g11/2, g12, g22/2) is integral because the
//    lattice is even and has discriminant B^2 - 4AC = -det(G). All reduction
//    theory below works with the half form, and "D" always means -det(G).
class BinaryForm {
public:
    BinaryForm(Integer A, Integer B, Integer C);
    static BinaryForm from_gram(const GramLattice& lattice);

    const Integer& A() const noexcept { return a_; }
    const Integer& B() const noexcept { return b_; }
    const Integer& C() const noexcept { return c_; }

    Integer form_a() const { return 2 * a_; }
    Integer form_b() const { return 2 * b_; }
    Integer form_c() const { return 2 * c_; }

    Integer discriminant() const { return b_ * b_ - 4 * a_ * c_; }
    GramLattice gram() const;
    // Half-form value, i.e. half the lattice norm.
    Integer value(const Integer& x, const Integer& y) const { return a_ * x * x + b_ * x * y + c_ * y * y; }

    // Gram of U G U^T expressed as a half form.
    BinaryForm transformed(const IntMatrix& u) const;

    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.a_ == b.a_ && a.b_ == b.b_ && a.c_ == b.c_;
    }

private:
    Integer a_, b_, c_;
};

// A reduced form together with U such that U * input * U^T = form.
struct ReducedStep {
    BinaryForm form;
    IntMatrix transform;
};

// One full period of reduced forms (nonsquare D > 0), or the canonical
// forms (0, m, c) with 0 <= c < m attached to the oriented isotropic lines
// (square D = m^2). Throws for definite or degenerate input.
std::vector<ReducedStep> reduce_cycle(const GramLattice& lattice);

// GL2(Z) witness U with U A U^T = B, verified before return.
std::optional<IntMatrix> is_isometric(const GramLattice& a, const GramLattice& b);
// SL2(Z) version.
std::optional<IntMatrix> properly_equivalent(const GramLattice& a, const GramLattice& b);

// Vector (x, y) with x^T G x = n, primitive whenever a primitive one exists.
std::optional<std::pair<Integer, Integer>> represents(const GramLattice& lattice, const Integer& n);

enum class PellSign { plus, minus };

struct PellWitness {
    Integer r, s;
    PellSign sign;
};

struct PellResult {
    bool solvable = false;
    std::optional<PellWitness> witness;  // minimal by (|s|, |r|), nonnegative entries
    std::optional<PellWitness> plus;     // minimal witness for +N
    std::optional<PellWitness> minus;    // minimal witness for -N
    Integer search_bound;                // largest s examined (nonsquare, non-convergent branch)
};

// Decides r^2 - D s^2 = +N and = -N.
PellResult pell_pm(const Integer& D, const Integer& N);

// Fundamental solution of x^2 - D y^2 = 1 for nonsquare D > 0 (continued fraction of sqrt D).
std::pair<Integer, Integer> pell_fundamental(const Integer& D);
// Minimal t, u > 0 with t^2 - D u^2 = 4, for nonsquare D > 0 with D = 0, 1 mod 4.
std::pair<Integer, Integer> fundamental_unit4(const Integer& D);

// Generators of O(L): -I, the fundamental proper automorph (omitted when D
// is a square), and an improper automorph when one exists.
struct AutomorphismGenerators {
    std::vector<IntMatrix> generators;
    std::optional<IntMatrix> fundamental;  // proper, infinite order
    std::optional<IntMatrix> improper;
};
AutomorphismGenerators automorphism_generators(const GramLattice& lattice);

// U G U^T == G for unimodular U.
bool is_automorph(const GramLattice& lattice, const IntMatrix& u);
// Membership of an automorph in the group generated by the generators above.
bool in_automorphism_group(const GramLattice& lattice, const AutomorphismGenerators& gens, const IntMatrix& u);

// Unit u with delta * U = u * delta on the cyclic discriminant group.
Integer disc_action(const GramLattice& lattice, const IntMatrix& u);
DiscAutomorphism disc_action_matrix(const GramLattice& lattice, const FiniteQuadForm& form, const IntMatrix& u);

// O(L) -> O(L^*/L) surjective.
bool glue_uniqueness(const GramLattice& lattice, std::uint64_t bound = default_disc_enum_bound);

}  // namespace k3b
