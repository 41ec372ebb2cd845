#pragma once

#include <string>

#include "json.hpp"
#include "k3b/binary_forms.hpp"
#include "k3b/brauer.hpp"
#include "k3b/kappa.hpp"
#include "k3b/lattice.hpp"

namespace k3b {

using Json = nlohmann::ordered_json;

// Integers are written as decimal strings; parsing also accepts JSON numbers.
Json to_json(const Integer& n);
Integer integer_from_json(const Json& j);
// [num, den] as decimal strings.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json gram_to_json(const GramLattice& l);
GramLattice gram_from_json(const Json& j);
GramLattice gram_from_string(const std::string& text);

// {orders: [int], q: [[num, den], ...]} with q row-major over the generators.
Json disc_to_json(const FiniteQuadForm& f);
// Orders and q only; generators are not part of the schema.
FiniteQuadForm disc_from_json(const Json& j);

// {solvable, r, s, sign}
Json pell_to_json(const PellResult& r);
PellResult pell_from_json(const Json& j);

// [{case, count, k3_type}]
Json counts_to_json(const CountTable& t);
CountTable counts_from_json(const Json& j);

Json invariants_to_json(const ClassInvariants& inv);
Json label_to_json(const ClassLabel& l);
ClassLabel label_from_json(const Json& j);

Json theta_to_json(const ThetaType& t);

// {pic_S, det_X, det_S, alpha_eq_vanishing, theta, fiber_degree}
Json kappa_to_json(const SurfaceParams& s);

std::string format_matrix(const IntMatrix& m);
std::string format_rational(const Rational& r);

}  // namespace k3b
