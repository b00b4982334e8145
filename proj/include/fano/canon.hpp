// Canonical labeling and automorphism groups of vertex-colored multigraphs
// (individualization-refinement with orbit pruning), plus a small
// Schreier-Sims permutation-group layer used for orders and orbits.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fano/graph.hpp"

namespace fano {

using Perm = std::vector<std::size_t>;  // images: p[i] = image of i

Perm perm_identity(std::size_t n);
Perm perm_mul(const Perm& a, const Perm& b);  // apply b first, then a
Perm perm_inv(const Perm& a);

// Incremental Schreier-Sims; adequate for degree <= 64.
class PermGroup {
 public:
  explicit PermGroup(std::size_t n);

  void add_generator(const Perm& g);
  bool contains(const Perm& g) const;
  Int order() const;
  std::size_t degree() const { return n_; }

  const std::vector<Perm>& generators() const { return gens_; }

  // orbit partition of the point set
  std::vector<std::vector<std::size_t>> orbits() const;

  // orbit of a single point
  std::vector<std::size_t> orbit_of(std::size_t p) const;

 private:
  struct Level {
    std::size_t base = 0;
    std::map<std::size_t, Perm> transversal;  // point -> coset rep moving base there
    std::vector<Perm> gens;
  };
  bool strip(const Perm& g, Perm& residue, std::size_t& level) const;
  void extend_base(std::size_t point);
  void add_at_level(const Perm& g, std::size_t level);

  std::size_t n_;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
};

struct CanonicalForm {
  std::string bytes;                 // complete invariant of the colored graph
  std::vector<std::size_t> labeling; // labeling[k] = original vertex at slot k
  PermGroup group;                   // automorphism group (respecting colors)
  std::vector<std::vector<std::size_t>> orbits;
  Int group_order;
};

enum class FixMode { none, setwise, pointwise };

// Canonical form respecting vertex colors, partition tags and edge
// multiplicities. `fixed` vertices are held as a separate color class
// (setwise) or given singleton colors in order (pointwise).
CanonicalForm canonicalize(const ColoredGraph& g,
                           const std::vector<std::size_t>& fixed = {},
                           FixMode mode = FixMode::none);

// Are two colored graphs isomorphic (same canonical bytes)?
bool isomorphic(const ColoredGraph& a, const ColoredGraph& b);

// One representative per Gamma0-isomorphism class (Gamma0 = first n0
// vertices, preserved as a set). Returns surviving indices into `list`
// and the stabilizer Aut(Gamma, Gamma0) of each survivor.
struct SortedExtensions {
  std::vector<std::size_t> survivors;
  std::vector<Int> stabilizer_orders;
};
SortedExtensions sort_extensions(const std::vector<ColoredGraph>& list, std::size_t n0);

}  // namespace fano
