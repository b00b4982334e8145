// Even integral lattices with exact arithmetic: Gram matrices, signatures,
// duals, discriminant groups/forms, finite index extensions, primitive hulls.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fano/mat.hpp"

namespace fano {

struct DegenerateLattice : std::domain_error {
  DegenerateLattice() : std::domain_error("degenerate lattice") {}
};
struct NotIsotropic : std::domain_error {
  NotIsotropic() : std::domain_error("kernel generator is not isotropic") {}
};
struct NotHyperbolic : std::domain_error {
  NotHyperbolic() : std::domain_error("lattice is not hyperbolic (sigma+ != 1)") {}
};

class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(MatZ gram, std::vector<std::string> labels = {});

  std::size_t rank() const { return gram_.rows(); }
  const MatZ& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

  Int det() const;                       // determinant of the Gram matrix
  Inertia inertia_indices() const;       // exact congruence diagonalization
  bool is_nondegenerate() const { return det() != 0; }

  Int inner(const VecZ& x, const VecZ& y) const { return bilinear(gram_, x, y); }
  Rat inner(const VecQ& x, const VecQ& y) const {
    return bilinear(to_rational(gram_), x, y);
  }
  Int norm(const VecZ& x) const { return inner(x, x); }
  Rat norm(const VecQ& x) const { return inner(x, x); }

  bool operator==(const IntLattice& o) const { return gram_ == o.gram_; }

 private:
  MatZ gram_;
  std::vector<std::string> labels_;
};

// A sublattice or overlattice presented by a basis change: the rows of
// `basis` are coordinates (in the ambient lattice's basis) of the new basis.
struct Sublattice {
  IntLattice lattice;
  MatQ basis;  // rows: new basis vectors in ambient coordinates

  // coordinates of an ambient vector in the sublattice basis (throws if the
  // vector does not lie in the rational span / lattice).
  VecQ coords_of(const VecQ& ambient) const;
};

struct DiscElement {
  VecZ residues;  // one residue per cyclic factor, reduced mod the order
};

class DiscriminantGroup {
 public:
  DiscriminantGroup() = default;

  // cyclic orders d_1 | d_2 | ... (> 1 only)
  const std::vector<Int>& cyclic_orders() const { return orders_; }
  // lift of the i-th generator to L (x) Q, in lattice coordinates
  const MatQ& generator_lifts() const { return lifts_; }
  Int order() const;

  std::size_t num_generators() const { return orders_.size(); }

  VecQ lift(const DiscElement& e) const;       // representative in L (x) Q
  DiscElement reduce(const VecQ& dual_vec) const;  // class of a dual vector
  bool is_zero(const DiscElement& e) const;

  Rat qform(const DiscElement& e) const;              // in Q/2Z, in [0,2)
  Rat bform(const DiscElement& a, const DiscElement& b) const;  // in Q/Z, [0,1)

  DiscElement add(const DiscElement& a, const DiscElement& b) const;
  DiscElement neg(const DiscElement& a) const;
  DiscElement smul(const Int& k, const DiscElement& a) const;
  Int element_order(const DiscElement& a) const;

  std::vector<DiscElement> all_elements() const;  // throws if order too large

  friend DiscriminantGroup discriminant(const IntLattice& L);

 private:
  std::vector<Int> orders_;
  MatQ lifts_;       // rows: generator lifts in L (x) Q
  MatZ gram_;        // Gram of the source lattice
  MatQ gram_inv_;    // inverse Gram (dual coordinates)
};

// Isotropic subgroup of a discriminant group, given by generator lifts.
struct Kernel {
  MatQ generators;  // rows: rational coordinate vectors in L (x) Q (may be empty)

  static Kernel trivial(std::size_t rank) { return Kernel{MatQ(0, rank)}; }
  bool is_trivial() const { return generators.rows() == 0; }
};

Inertia inertia_indices(const IntLattice& L);

// Smith-normal-form based discriminant group with generator lifts in the dual.
DiscriminantGroup discriminant(const IntLattice& L);  // throws DegenerateLattice

// Order of the subgroup of discr(L) generated by the kernel's generators.
Int kernel_order(const IntLattice& L, const Kernel& K);

// Even overlattice L' >= L with [L':L] = |K|; records the basis change so
// vectors of L map into L'. Throws NotIsotropic.
struct Extension {
  IntLattice lattice;        // the overlattice L'
  MatQ old_in_new;           // rows: image of old basis vectors in L' coords
  MatQ new_in_old;           // rows: L' basis vectors in L (x) Q coordinates
};
Extension extend_by_kernel(const IntLattice& L, const Kernel& K);

// Primitive hull (Q . generators) cap L, returned with its inclusion map.
Sublattice primitive_hull(const IntLattice& L, const std::vector<VecZ>& generators);

// Orthogonal complement {x in L : x . g = 0 for all generators g}, saturated.
Sublattice orthogonal_complement(const IntLattice& L, const std::vector<VecQ>& generators);

// Quotient of a (possibly degenerate) lattice by the radical of its Gram.
// Returns the nondegenerate quotient and the projection on coordinates.
struct RadicalQuotient {
  IntLattice lattice;   // nondegenerate quotient
  MatQ projection;      // old coords (row vec) map: new = old * projection^T
  std::size_t radical_rank = 0;
};
RadicalQuotient quotient_by_radical(const IntLattice& L);

// --- serialization (structured text; bit-exact round trip) ---

struct PolarizedLattice;

std::string write_lattice(const IntLattice& L, const VecZ* h = nullptr);
IntLattice read_lattice(std::istream& in, std::optional<VecZ>* h_out = nullptr);
IntLattice read_lattice_string(const std::string& s, std::optional<VecZ>* h_out = nullptr);

// Polarized lattice: hyperbolic even lattice with distinguished h, h^2 = 2d > 0.
struct PolarizedLattice {
  IntLattice lattice;
  VecZ h;

  Int degree() const { return lattice.norm(h); }  // 2d
  std::size_t rank() const { return lattice.rank(); }
  const MatZ& gram() const { return lattice.gram(); }

  Int inner(const VecZ& x, const VecZ& y) const { return lattice.inner(x, y); }
  Rat inner(const VecQ& x, const VecQ& y) const { return lattice.inner(x, y); }

  // checks sigma+ = 1 and h^2 > 0 even (throws NotHyperbolic / domain_error)
  static PolarizedLattice checked(IntLattice L, VecZ h);
};

std::string write_polarized(const PolarizedLattice& S);
PolarizedLattice read_polarized(std::istream& in);
PolarizedLattice read_polarized_string(const std::string& s);

}  // namespace fano
