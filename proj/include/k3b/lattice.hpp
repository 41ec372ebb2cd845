#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "k3b/integer.hpp"

namespace k3b {

// Even, symmetric integer Gram matrix. Nondegeneracy is checked by the
// operations that need it, not by the constructor.
class GramLattice {
public:
    GramLattice() = default;
    explicit GramLattice(IntMatrix gram);

    std::size_t rank() const noexcept { return gram_.rows(); }
    const IntMatrix& gram() const noexcept { return gram_; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

    Integer det() const { return determinant(gram_); }
    Integer norm(const std::vector<Integer>& x) const { return bilinear(gram_, x, x); }

    // Gram matrix of the lattice spanned by the rows of `basis`: B G B^T.
    GramLattice transformed(const IntMatrix& basis) const;

    friend bool operator==(const GramLattice& a, const GramLattice& b) { return a.gram_ == b.gram_; }

private:
    IntMatrix gram_;
};

GramLattice hyperbolic_plane();
// Negated E8 Cartan matrix; chain 1-7 with node 8 attached to node 3.
GramLattice e8_negative();
// U + U + E8(-1) + E8(-1), rank 20, in the fixed block order.
const GramLattice& lambda_prime();
// Leading m x m block of lambda_prime().
GramLattice lambda_prime_block(std::size_t m);

struct SmithDecomposition {
    std::vector<Integer> diag;  // d_1 | d_2 | ... (nonnegative; zeros trail)
    IntMatrix left;             // unimodular
    IntMatrix right;            // unimodular
    IntMatrix right_inverse;
};

// left * m * right = diag(diag), with diag in divisibility order.
SmithDecomposition smith_normal_form(const IntMatrix& m);

// Row Hermite normal form of the row span of m (zero rows dropped). Pivots
// positive; entries above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

// Basis (as rows) of the integer kernel {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

// q-value modulus tags: q is read mod 2 on the diagonal, b mod 1 off it.
// Values are stored unreduced.
struct FiniteQuadForm {
    std::vector<Integer> cyclic_orders;               // invariant factors > 1
    std::vector<std::vector<Rational>> q_matrix;      // q(g_i) on diagonal, b(g_i, g_j) off it
    std::vector<std::vector<Rational>> generators;    // g_i as rational coordinates in the lattice basis
    IntMatrix to_generator_coords;                    // D * R^{-1} rows for the invariant factors > 1

    std::size_t generator_count() const noexcept { return cyclic_orders.size(); }
    Integer order() const;
    bool is_cyclic() const noexcept { return cyclic_orders.size() <= 1; }

    // q of sum_i a_i g_i, reduced into [0, 2).
    Rational q_value(const std::vector<Integer>& coeffs) const;
    // b of two elements, reduced into [0, 1).
    Rational b_value(const std::vector<Integer>& x, const std::vector<Integer>& y) const;

    // Coefficients (a_i mod n_i) of a dual vector given in lattice coordinates.
    std::vector<Integer> coordinates_of(const std::vector<Rational>& dual_vector) const;
};

// L^*/L with its induced form. Throws "singular lattice" for det = 0.
FiniteQuadForm disc_form(const GramLattice& lattice);

// Index-p sublattice {x : sum f_j x_j = 0 mod p}.
struct Sublattice {
    GramLattice lattice;
    IntMatrix basis;  // rows, in coordinates of the ambient lattice
};
Sublattice kernel_sublattice_with_basis(const GramLattice& lattice, const std::vector<Integer>& functional,
                                        const Integer& p);
GramLattice kernel_sublattice(const GramLattice& lattice, const std::vector<Integer>& functional, const Integer& p);

// Automorphism as a k x k matrix over the residue rings: row i holds the
// coordinates of the image of generator i (row vectors acted on the right).
// For cyclic groups this is the 1 x 1 unit multiplier.
struct DiscAutomorphism {
    IntMatrix action;
    friend bool operator==(const DiscAutomorphism& a, const DiscAutomorphism& b) { return a.action == b.action; }
    friend bool operator<(const DiscAutomorphism& a, const DiscAutomorphism& b);
};

constexpr std::uint64_t default_disc_enum_bound = 1'000'000;

std::vector<DiscAutomorphism> disc_orthogonal_group(const FiniteQuadForm& form,
                                                    std::uint64_t bound = default_disc_enum_bound);

// Reduce an action matrix entrywise: column j modulo n_j.
DiscAutomorphism normalize_action(const FiniteQuadForm& form, IntMatrix action);
DiscAutomorphism compose(const FiniteQuadForm& form, const DiscAutomorphism& first, const DiscAutomorphism& second);

// Multiset of q values over the whole group, sorted; used as an isomorphism invariant.
std::vector<Rational> q_value_multiset(const FiniteQuadForm& form, std::uint64_t bound = 10'000);

}  // namespace k3b
