#include "fano/graph.hpp"

#include <sstream>
#include <stdexcept>

namespace fano {

ColoredGraph ColoredGraph::induced(const std::vector<std::size_t>& verts) const {
  ColoredGraph g(verts.size());
  for (std::size_t a = 0; a < verts.size(); ++a) {
    g.set_color(a, color_[verts[a]]);
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      g.set_adj(a, b, adj(verts[a], verts[b]));
  }
  if (!part_.empty()) {
    std::vector<int> p(verts.size());
    for (std::size_t a = 0; a < verts.size(); ++a) p[a] = part_[verts[a]];
    g.set_parts(std::move(p));
  }
  if (!vec_.empty()) {
    std::vector<VecQ> v(verts.size());
    for (std::size_t a = 0; a < verts.size(); ++a) v[a] = vec_[verts[a]];
    g.set_coords(std::move(v));
  }
  return g;
}

ColoredGraph ColoredGraph::disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
  ColoredGraph g(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    g.set_color(i, a.color(i));
    for (std::size_t j = i + 1; j < a.size(); ++j) g.set_adj(i, j, a.adj(i, j));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    g.set_color(a.size() + i, b.color(i));
    for (std::size_t j = i + 1; j < b.size(); ++j)
      g.set_adj(a.size() + i, a.size() + j, b.adj(i, j));
  }
  if (a.has_part() || b.has_part()) {
    std::vector<int> p(g.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a.has_part() ? a.part(i) : 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      p[a.size() + i] = b.has_part() ? b.part(i) : 0;
    g.set_parts(std::move(p));
  }
  return g;
}

ColoredGraph path_graph(std::size_t n) {
  ColoredGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.set_adj(i, i + 1, 1);
  return g;
}

ColoredGraph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  ColoredGraph g = path_graph(n);
  g.set_adj(0, n - 1, 1);
  return g;
}

ColoredGraph discrete_graph(std::size_t n) { return ColoredGraph(n); }

ColoredGraph star_graph(std::size_t legs) {
  ColoredGraph g(legs + 1);
  for (std::size_t i = 1; i <= legs; ++i) g.set_adj(0, i, 1);
  return g;
}

std::string write_graph_record(const ColoredGraph& g) {
  std::ostringstream os;
  os << "g1 n=" << g.size();
  os << " adj=";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) os << static_cast<int>(g.adj(i, j));
  if (g.size() < 2) os << '-';
  os << " color=";
  for (std::size_t i = 0; i < g.size(); ++i) os << g.color(i);
  if (g.size() == 0) os << '-';
  if (g.has_part()) {
    os << " part=";
    for (std::size_t i = 0; i < g.size(); ++i) os << g.part(i);
  }
  if (g.has_coords()) {
    os << " coords=";
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) os << ';';
      const VecQ& v = g.coord(i);
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (j) os << ',';
        os << v[j];
      }
    }
  }
  if (g.aut_order()) os << " aut=" << *g.aut_order();
  return os.str();
}

ColoredGraph read_graph_record(const std::string& line) {
  std::istringstream is(line);
  std::string tag;
  is >> tag;
  if (tag != "g1") throw std::runtime_error("graph record: bad tag");
  std::string field;
  std::size_t n = 0;
  ColoredGraph g;
  bool have_n = false;
  while (is >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("graph record: bad field " + field);
    std::string key = field.substr(0, eq);
    std::string val = field.substr(eq + 1);
    if (key == "n") {
      n = std::stoul(val);
      g = ColoredGraph(n);
      have_n = true;
    } else if (key == "adj") {
      if (!have_n) throw std::runtime_error("graph record: adj before n");
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (k >= val.size()) throw std::runtime_error("graph record: short adj");
          g.set_adj(i, j, static_cast<std::uint8_t>(val[k] - '0'));
          ++k;
        }
    } else if (key == "color") {
      for (std::size_t i = 0; i < n; ++i) {
        if (i >= val.size()) throw std::runtime_error("graph record: short color");
        g.set_color(i, val[i] - '0');
      }
    } else if (key == "part") {
      std::vector<int> p(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (i >= val.size()) throw std::runtime_error("graph record: short part");
        p[i] = val[i] - '0';
      }
      g.set_parts(std::move(p));
    } else if (key == "coords") {
      std::vector<VecQ> coords;
      std::istringstream cs(val);
      std::string vert;
      while (std::getline(cs, vert, ';')) {
        VecQ v;
        std::istringstream vs(vert);
        std::string num;
        while (std::getline(vs, num, ',')) v.emplace_back(num);
        coords.push_back(std::move(v));
      }
      if (coords.size() != n) throw std::runtime_error("graph record: coords count mismatch");
      g.set_coords(std::move(coords));
    } else if (key == "aut") {
      g.set_aut_order(Int(val));
    } else {
      throw std::runtime_error("graph record: unknown field " + key);
    }
  }
  return g;
}

}  // namespace fano
