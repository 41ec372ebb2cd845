#pragma once

#include <optional>
#include <vector>

#include "k3b/brauer.hpp"
#include "k3b/lattice.hpp"

namespace k3b {

// Pic(X) = [[2 p^2 d, b], [b, 2c]] on the basis (H, K).
struct SurfaceParams {
    Integer d, p, b, c;
};

GramLattice pic_x(const SurfaceParams& s);
Integer det_pic_x(const SurfaceParams& s);
Integer det_pic_s(const SurfaceParams& s);
// Throws unless d > 0, p prime and 4 p^2 d c - b^2 < 0.
void validate_signature(const SurfaceParams& s);

GramLattice kappa_pic(const SurfaceParams& s);

// Slice H^0 + U + H^4 + Z K' of the Mukai lattice, basis (e_r, u1, u2, e_s, K')
// with e_r.e_s = -1, u1.u2 = 1, K'^2 = 2c. H = u1 + p^2 d u2, K = b u2 + K'.
struct MukaiModel {
    IntMatrix gram;             // 5 x 5
    std::vector<Integer> v;     // (p, H, pd)
    std::vector<Integer> alpha; // image h
    std::vector<Integer> beta;  // v - p alpha
    std::vector<Integer> gamma; // image k
    IntMatrix quotient_basis;   // rows: basis of (M cap v^perp)/v, H-coordinate zero
};

MukaiModel mukai_model(const SurfaceParams& s);
// Gram of (h, k) computed from mukai_model.
GramLattice mukai_oracle_pic(const SurfaceParams& s);

bool det_compatible(const SurfaceParams& s);
bool alpha_x_equals_vanishing(const SurfaceParams& s);

// B_X = (1/p)(0, 1) in U + Lambda', evaluated on the image of H^0 + U + H^4
// in v^perp / v.
struct BxInvariants {
    Rational bh;
    Rational bsq;
    std::vector<Integer> tx_image;  // image of t_X in U coordinates
    Rational bx_dot_tx;             // B_X . image(t_X), integral
    Rational bx_dot_ts;             // B_X . t_S, of order p mod Z
};
BxInvariants bx_invariants(const Integer& p, const Integer& d = 1);

// d = 1, p = 2 only.
struct ThetaType {
    ThetaTag kind;
    bool equals_alpha_x;
    std::optional<bool> sum_even;  // parity of alpha_van + alpha_X when kind is order_two_point
};
ThetaType theta_type(const Integer& b, const Integer& c);

Integer fiber_degree(const Integer& d, const Integer& p);
Integer fm_count(const Integer& n);
bool fiber_consistency(const Integer& d, const Integer& p);

Integer transcendental_index(const SurfaceParams& s);

// Index-p overlattice of the rank-1 lattice (-2 p^2 d), as a discriminant form
// in t_S coordinates. Verified against disc_form of (-2d).
FiniteQuadForm overlattice_disc(const Integer& p, const Integer& d);

}  // namespace k3b
