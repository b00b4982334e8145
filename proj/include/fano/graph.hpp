// Vertex-colored multigraphs with edge multiplicities in {0,1,2}: the
// universal currency between the lattice and search layers.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fano/mat.hpp"

namespace fano {

class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(std::size_t n)
      : n_(n), adj_(n * n, 0), color_(n, 1) {}

  std::size_t size() const { return n_; }

  std::uint8_t adj(std::size_t i, std::size_t j) const { return adj_[i * n_ + j]; }
  void set_adj(std::size_t i, std::size_t j, std::uint8_t m) {
    adj_[i * n_ + j] = m;
    adj_[j * n_ + i] = m;
  }

  int color(std::size_t i) const { return color_[i]; }
  void set_color(std::size_t i, int c) { color_[i] = c; }

  bool has_part() const { return !part_.empty(); }
  int part(std::size_t i) const { return part_[i]; }
  void set_parts(std::vector<int> p) { part_ = std::move(p); }
  const std::vector<int>& parts() const { return part_; }

  bool has_coords() const { return !vec_.empty(); }
  const VecQ& coord(std::size_t i) const { return vec_[i]; }
  void set_coords(std::vector<VecQ> v) { vec_ = std::move(v); }
  const std::vector<VecQ>& coords() const { return vec_; }

  const std::optional<Int>& aut_order() const { return aut_order_; }
  void set_aut_order(Int o) { aut_order_ = std::move(o); }

  std::size_t degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (j != i && adj(i, j)) ++d;
    return d;
  }

  ColoredGraph induced(const std::vector<std::size_t>& verts) const;

  // disjoint union; colors/parts carried over, coords dropped
  static ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b);

  bool operator==(const ColoredGraph& o) const {
    return n_ == o.n_ && adj_ == o.adj_ && color_ == o.color_ && part_ == o.part_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<int> color_;
  std::vector<int> part_;   // empty when absent
  std::vector<VecQ> vec_;   // empty when absent
  std::optional<Int> aut_order_;
};

// common constructions
ColoredGraph path_graph(std::size_t n);             // A_n
ColoredGraph cycle_graph(std::size_t n);            // affine A_{n-1}, n >= 3
ColoredGraph discrete_graph(std::size_t n);         // n A_1
ColoredGraph star_graph(std::size_t legs);          // one center, `legs` leaves

// one record per line; exact round trip
std::string write_graph_record(const ColoredGraph& g);
ColoredGraph read_graph_record(const std::string& line);

}  // namespace fano
