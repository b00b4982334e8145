// Finite quadratic forms (discriminant forms) and the existence test for an
// even lattice with prescribed signature and discriminant form, decided per
// prime from the p-adic data. Everything is exact; Gauss sums are evaluated
// in cyclotomic integer arithmetic or by closed form.

#pragma once

#include <optional>
#include <vector>

#include "fano/lattice.hpp"

namespace fano {

// Nondegenerate finite quadratic form on generators g_i of the given orders:
// gram(i,i) = q(g_i) in Q/2Z (reduced to [0,2)),
// gram(i,j) = b(g_i,g_j) in Q/Z (reduced to [0,1)).
struct FiniteQuadraticForm {
  std::vector<Int> orders;
  MatQ gram;

  static FiniteQuadraticForm from_discriminant(const DiscriminantGroup& d);
  static FiniteQuadraticForm trivial() { return {{}, MatQ(0, 0)}; }

  Int group_order() const;
  FiniteQuadraticForm negated() const;

  Rat q_of(const VecZ& coeffs) const;  // q(sum c_i g_i) mod 2Z
  Rat b_of(const VecZ& x, const VecZ& y) const;  // mod Z
};

// Standard indecomposable pieces of a finite quadratic form.
struct FormPiece {
  enum Kind { odd_cyclic, two_odd, two_even_u, two_even_v } kind;
  Int p;   // prime (2 for the two_* kinds)
  long k;  // scale exponent: group (Z/p^k) or (Z/2^k)^2
  Int unit;  // odd_cyclic: q(g) = unit/p^k with unit even, gcd(unit,p)=1;
             // two_odd:   q(g) = unit/2^k with unit odd (mod 2^{k+1})
};

// Orthogonal decomposition into standard pieces (per prime).
std::vector<FormPiece> decompose(const FiniteQuadraticForm& f);

// Brown invariant (signature of the form mod 8), additive over pieces.
long brown_invariant(const FiniteQuadraticForm& f);
long brown_invariant(const std::vector<FormPiece>& pieces);

// min number of generators of the p-part
std::size_t min_generators(const std::vector<FormPiece>& pieces, const Int& p);

// Existence of an even lattice with signature (s_plus, s_minus) and
// discriminant form f (Nikulin-style conditions, decided per prime).
bool even_lattice_exists(long s_plus, long s_minus, const FiniteQuadraticForm& f);

// Isomorphism test for small forms (brute force on generator images);
// intended for groups of order up to a few thousand.
bool forms_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// Reduced even positive definite binary forms [a,b,c]: 0 <= 2b <= a <= c,
// ac - b^2 = det. Returned in lexicographic (a, b, c) order.
struct BinaryForm {
  Int a, b, c;
};
std::vector<BinaryForm> reduced_even_binary_forms(const Int& det);

FiniteQuadraticForm binary_form_discriminant(const BinaryForm& f);

}  // namespace fano
