#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k3b/lattice.hpp"

namespace k3b {

enum class LemmaCase { A_i, A_ii, A_iii, B_i, B_ii, B_iii, B_iv };
enum class ThetaTag { order_two_point, even_theta, odd_theta };

// Quotient in which a B^2 value is meaningful. representative_only means the
// value depends on the chosen B-field.
enum class Quotient { mod_Z, mod_inv_p_Z, representative_only };

struct TaggedRational {
    Rational value;  // unreduced
    Quotient quotient;
    // value reduced into [0, 1) or [0, 1/p); unchanged for representative_only
    Rational reduced(const Integer& p) const;
};

std::string to_string(LemmaCase c);
std::string to_string(ThetaTag t);
std::string to_string(Quotient q);
LemmaCase parse_lemma_case(const std::string& s);

// Class (i, lambda) on T(S) = Z t_S + Lambda'_m with t_S^2 = -2d. The model
// rank m is lambda.size(); 20 is the geometric case.
struct AlphaParam {
    Integer p;
    Integer d;
    Integer i;
    std::vector<Integer> lambda;
};

struct ClassInvariants {
    Rational bh;  // -i/p in [0, 1)
    Integer c_alpha;  // mod p, in [0, p)
    Rational lambda_sq;  // lambda^2 of the [0, p) lift
    TaggedRational bsq;
    std::vector<Integer> disc_orders;  // of the kernel lattice
    std::optional<bool> qr_flag;
};

struct ClassLabel {
    LemmaCase lemma_case;
    bool k3_type;
    std::optional<ThetaTag> theta_tag;
    friend bool operator==(const ClassLabel& a, const ClassLabel& b) {
        return a.lemma_case == b.lemma_case && a.k3_type == b.k3_type && a.theta_tag == b.theta_tag;
    }
};

GramLattice transcendental_model(const Integer& d, std::size_t m = 20);
// Functional (i, G' lambda) mod p on the model.
std::vector<Integer> alpha_functional(const AlphaParam& a);

ClassInvariants alpha_invariants(const AlphaParam& a);

// p = 2: closed rules on (d mod 2, bh, bsq). p > 2: kernel lattice and its
// discriminant form.
ClassLabel classify(const AlphaParam& a);
// Always via the kernel lattice.
ClassLabel classify_first_principles(const AlphaParam& a);
// Closed rules for every p; for p > 2 on (i, c_alpha) only.
ClassLabel classify_fast(const AlphaParam& a);

bool is_k3_type(const Integer& p, LemmaCase c);

struct CountRow {
    LemmaCase lemma_case;
    Integer count;
    bool k3_type;
};
using CountTable = std::vector<CountRow>;

// Closed-form sublattice counts; rank is the size of Lambda'_m and must give
// a unimodular block (2, 4, 12 or 20).
CountTable count_classes(const Integer& p, const Integer& d, std::size_t rank = 20);

constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 24;

// Exhaustive enumeration of nonzero (i, lambda), each class classified, then
// bucket sizes divided by p - 1.
CountTable brute_force_counts(const Integer& p, const Integer& d, std::size_t toy_rank,
                              std::uint64_t budget = default_enumeration_budget);

enum class FormType { split, nonsplit };
// Points of a nondegenerate quadratic form in 2m variables over F_p with Q = value.
Integer quadric_count(const Integer& p, unsigned long m, const Integer& value, FormType type);

// Counts predicted from quadric_count on the split form Lambda'_m mod p.
CountTable predicted_counts(const Integer& p, const Integer& d, std::size_t rank = 20);

struct VanishingInvariants {
    Rational bh;  // b/p in [0, 1)
    TaggedRational bsq;
};
VanishingInvariants vanishing_invariants(const Integer& p, const Integer& b, const Integer& c);

}  // namespace k3b
