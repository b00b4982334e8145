// Root systems in polarized lattices, Weyl chambers, Vinberg's algorithm for
// fundamental polyhedra, and plain/extended Fano graphs.

#pragma once

#include <map>
#include <vector>

#include "fano/graph.hpp"
#include "fano/lattice.hpp"

namespace fano {

// Image of S in h^perp (x) Q with the form scaled by -2d. Level-n roots of
// (S, h) have scaled norm 4d + n^2 here; m-isotropic vectors have norm m^2.
struct ProjectedLattice {
  MatQ basis;  // rows: basis vectors in S (x) Q coordinates
  MatQ gram;   // scaled Gram, positive definite when S is hyperbolic
};

ProjectedLattice project_away_h(const PolarizedLattice& S);

struct RootSet {
  std::map<long, std::vector<VecZ>> by_level;  // n -> sorted roots in S coords

  const std::vector<VecZ>& level(long n) const {
    static const std::vector<VecZ> empty;
    auto it = by_level.find(n);
    return it == by_level.end() ? empty : it->second;
  }
};

// Enumerates root_n(S,h) for every n in `levels` in one pass.
RootSet enumerate_roots(const PolarizedLattice& S, const std::vector<long>& levels,
                        bool parallel = true);

// Complete list of iota in S with iota^2 = 0, iota . h = m; sorted.
std::vector<VecZ> isotropic_vectors(const PolarizedLattice& S, long m,
                                    bool parallel = true);

struct WeylChamber {
  std::vector<VecZ> walls;     // Dynkin basis Delta_W (outward wall roots)
  std::vector<VecZ> positive;  // P_W
};

// Chamber of the given level-0 roots from a linear functional; the seed
// covector is repaired by the doubling trick until generic.
WeylChamber weyl_chamber_from_functional(const std::vector<VecZ>& roots0,
                                         const MatZ& gram, VecZ functional);

// Fixed pseudo-random functional (deterministic across runs).
VecZ default_functional_seed(std::size_t rank, unsigned salt = 0);

WeylChamber default_chamber(const PolarizedLattice& S);
WeylChamber default_chamber(const PolarizedLattice& S, const std::vector<VecZ>& roots0);

struct FundPolyhedron {
  // walls_by_level[0] = chamber walls; level n >= 1 per Vinberg's recursion
  std::vector<std::vector<VecZ>> walls_by_level;
};

FundPolyhedron vinberg_extend(const PolarizedLattice& S, const WeylChamber& W,
                              long level_cap = 1);
FundPolyhedron vinberg_extend(const PolarizedLattice& S, const WeylChamber& W,
                              const RootSet& roots, long level_cap);

// Plain graph: level-1 walls, color 1. Extended: also chamber walls, color 0.
// Vertices ordered lexicographically by coordinates; coordinates retained.
ColoredGraph fano_graph(const PolarizedLattice& S, const WeylChamber& W, bool extended);
ColoredGraph fano_graph(const PolarizedLattice& S, const WeylChamber& W,
                        const RootSet& roots, bool extended);

struct ChamberResult {
  bool ok = false;
  WeylChamber chamber;
  VecZ separating_root;  // witness when !ok
};

// Unique Weyl chamber compatible with Gamma (subset of root_1), or a
// separating-root witness. Never throws on failure.
ChamberResult compatible_chamber(const PolarizedLattice& S, const std::vector<VecZ>& gamma);
ChamberResult compatible_chamber(const PolarizedLattice& S, const std::vector<VecZ>& gamma,
                                 const std::vector<VecZ>& roots0, unsigned functional_salt = 0);

}  // namespace fano
