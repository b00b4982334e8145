#include "fano/canon.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace fano {

Perm perm_identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm perm_inv(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = i;
  return c;
}

PermGroup::PermGroup(std::size_t n) : n_(n) {}

bool PermGroup::strip(const Perm& g, Perm& residue, std::size_t& level) const {
  residue = g;
  for (level = 0; level < levels_.size(); ++level) {
    std::size_t img = residue[levels_[level].base];
    auto it = levels_[level].transversal.find(img);
    if (it == levels_[level].transversal.end()) return false;
    residue = perm_mul(perm_inv(it->second), residue);
  }
  for (std::size_t i = 0; i < n_; ++i)
    if (residue[i] != i) return false;  // residue nontrivial yet fixes all bases
  return true;
}

void PermGroup::extend_base(std::size_t point) {
  Level l;
  l.base = point;
  l.transversal[point] = perm_identity(n_);
  levels_.push_back(std::move(l));
}

void PermGroup::add_at_level(const Perm& g, std::size_t level) {
  if (level == levels_.size()) {
    // need a new base point moved by g
    std::size_t p = 0;
    while (p < n_ && g[p] == p) ++p;
    if (p == n_) return;  // identity
    extend_base(p);
  }
  levels_[level].gens.push_back(g);
  // rebuild the orbit/transversal of this level and sift Schreier generators.
  // levels_ may grow during the recursive calls, so always index afresh.
  std::vector<std::size_t> queue;
  for (const auto& kv : levels_[level].transversal) queue.push_back(kv.first);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t pt = queue[head];
    const Perm rep = levels_[level].transversal[pt];
    for (std::size_t si = 0; si < levels_[level].gens.size(); ++si) {
      const Perm s = levels_[level].gens[si];
      std::size_t img = s[pt];
      auto it = levels_[level].transversal.find(img);
      if (it == levels_[level].transversal.end()) {
        levels_[level].transversal[img] = perm_mul(s, rep);
        queue.push_back(img);
      } else {
        // Schreier generator fixing the base point; sift into deeper levels
        Perm res = perm_mul(perm_inv(it->second), perm_mul(s, rep));
        std::size_t lev = level + 1;
        bool stripped = true;
        for (std::size_t k = level + 1; k < levels_.size(); ++k) {
          std::size_t im = res[levels_[k].base];
          auto jt = levels_[k].transversal.find(im);
          if (jt == levels_[k].transversal.end()) {
            lev = k;
            stripped = false;
            break;
          }
          res = perm_mul(perm_inv(jt->second), res);
          lev = k + 1;
        }
        bool id = true;
        for (std::size_t i = 0; i < n_; ++i)
          if (res[i] != i) {
            id = false;
            break;
          }
        if (id) continue;
        (void)stripped;
        add_at_level(res, lev);
      }
    }
  }
}

void PermGroup::add_generator(const Perm& g) {
  Perm res;
  std::size_t lev;
  if (strip(g, res, lev)) return;  // already in the group
  gens_.push_back(g);
  add_at_level(res, lev);
}

bool PermGroup::contains(const Perm& g) const {
  Perm res;
  std::size_t lev;
  return strip(g, res, lev);
}

Int PermGroup::order() const {
  Int o = 1;
  for (const auto& l : levels_) o *= Int(static_cast<unsigned long>(l.transversal.size()));
  return o;
}

std::vector<std::vector<std::size_t>> PermGroup::orbits() const {
  std::vector<std::size_t> rep(n_);
  std::iota(rep.begin(), rep.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (rep[x] != x) {
      rep[x] = rep[rep[x]];
      x = rep[x];
    }
    return x;
  };
  for (const Perm& g : gens_)
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t a = find(i), b = find(g[i]);
      if (a != b) rep[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < n_; ++i) buckets[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& kv : buckets) out.push_back(std::move(kv.second));
  return out;
}

std::vector<std::size_t> PermGroup::orbit_of(std::size_t p) const {
  std::vector<bool> seen(n_, false);
  std::vector<std::size_t> orb{p};
  seen[p] = true;
  for (std::size_t head = 0; head < orb.size(); ++head)
    for (const Perm& g : gens_) {
      std::size_t img = g[orb[head]];
      if (!seen[img]) {
        seen[img] = true;
        orb.push_back(img);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

namespace {

// Ordered partition refinement for colored multigraphs. Cells are kept in
// order; refinement signature per vertex counts neighbours in each cell per
// edge layer (multiplicity >= 1 and multiplicity == 2 as separate layers).
struct Refiner {
  const ColoredGraph& g;
  std::size_t n;

  explicit Refiner(const ColoredGraph& gr) : g(gr), n(gr.size()) {}

  // partition represented as vector of cells (each a sorted vector)
  using Partition = std::vector<std::vector<std::size_t>>;

  Partition initial(const std::vector<int>& init_color) const {
    std::map<int, std::vector<std::size_t>> by;
    for (std::size_t v = 0; v < n; ++v) by[init_color[v]].push_back(v);
    Partition p;
    for (auto& kv : by) p.push_back(std::move(kv.second));
    return p;
  }

  void refine(Partition& p) const {
    for (;;) {
      std::vector<std::size_t> cell_of(n);
      for (std::size_t c = 0; c < p.size(); ++c)
        for (auto v : p[c]) cell_of[v] = c;
      bool split_any = false;
      Partition next;
      for (std::size_t c = 0; c < p.size(); ++c) {
        if (p[c].size() == 1) {
          next.push_back(p[c]);
          continue;
        }
        // signature: per cell, (count of mult>=1 edges, count of mult==2)
        std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
        for (auto v : p[c]) {
          std::vector<std::uint32_t> sig(2 * p.size(), 0);
          for (std::size_t w = 0; w < n; ++w) {
            if (w == v) continue;
            std::uint8_t m = g.adj(v, w);
            if (!m) continue;
            sig[2 * cell_of[w]] += 1;
            if (m == 2) sig[2 * cell_of[w] + 1] += 1;
          }
          groups[std::move(sig)].push_back(v);
        }
        if (groups.size() > 1) split_any = true;
        for (auto& kv : groups) next.push_back(kv.second);
      }
      p = std::move(next);
      if (!split_any) return;
    }
  }
};

struct SearchState {
  const ColoredGraph& g;
  const Refiner& ref;
  std::size_t n;
  std::string best_cert;
  std::vector<std::size_t> best_labeling;
  bool have_best = false;
  PermGroup group;

  SearchState(const ColoredGraph& gr, const Refiner& r)
      : g(gr), ref(r), n(gr.size()), group(gr.size()) {}

  std::string certificate(const std::vector<std::size_t>& lab) const {
    // colors in slot order, then adjacency upper triangle
    std::string s;
    s.reserve(n + n * n / 2);
    for (std::size_t i = 0; i < n; ++i)
      s.push_back(static_cast<char>(g.color(lab[i]) & 0x7f));
    if (g.has_part())
      for (std::size_t i = 0; i < n; ++i)
        s.push_back(static_cast<char>(g.part(lab[i]) & 0x7f));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        s.push_back(static_cast<char>('0' + g.adj(lab[i], lab[j])));
    return s;
  }

  void visit_leaf(const Refiner::Partition& p) {
    std::vector<std::size_t> lab;
    lab.reserve(n);
    for (const auto& cell : p) lab.push_back(cell[0]);
    std::string cert = certificate(lab);
    if (!have_best || cert > best_cert) {
      best_cert = cert;
      best_labeling = lab;
      have_best = true;
      return;
    }
    if (cert == best_cert) {
      // automorphism: maps best_labeling[k] -> lab[k]
      Perm a(n);
      for (std::size_t k = 0; k < n; ++k) a[best_labeling[k]] = lab[k];
      group.add_generator(a);
    }
  }

  void search(Refiner::Partition p, const std::vector<std::size_t>& prefix) {
    // target = leftmost cell of maximal size (singleton-only means leaf)
    std::size_t target = p.size();
    std::size_t best_size = 1;
    for (std::size_t c = 0; c < p.size(); ++c)
      if (p[c].size() > best_size) {
        best_size = p[c].size();
        target = c;
      }
    if (target == p.size()) {
      visit_leaf(p);
      return;
    }
    std::vector<std::size_t> cell = p[target];
    std::vector<bool> done(n, false);
    for (std::size_t idx = 0; idx < cell.size(); ++idx) {
      std::size_t v = cell[idx];
      if (done[v]) continue;
      // orbit pruning: skip vertices equivalent to an earlier-tried one under
      // automorphisms (found so far) that fix the prefix pointwise
      {
        std::vector<Perm> fixing;
        for (const Perm& gen : group.generators()) {
          bool ok = true;
          for (auto u : prefix)
            if (gen[u] != u) {
              ok = false;
              break;
            }
          if (ok) fixing.push_back(gen);
        }
        if (!fixing.empty()) {
          // mark the orbit of v (under <fixing>) within the cell as done
          std::vector<std::size_t> orb{v};
          std::vector<bool> in_orb(n, false);
          in_orb[v] = true;
          for (std::size_t h2 = 0; h2 < orb.size(); ++h2)
            for (const Perm& s : fixing) {
              std::size_t im = s[orb[h2]];
              if (!in_orb[im]) {
                in_orb[im] = true;
                orb.push_back(im);
              }
            }
          for (auto u : orb) done[u] = true;
        } else {
          done[v] = true;
        }
      }
      // individualize v
      Refiner::Partition q;
      for (std::size_t c = 0; c < p.size(); ++c) {
        if (c == target) {
          q.push_back({v});
          std::vector<std::size_t> rest;
          for (auto u : p[c])
            if (u != v) rest.push_back(u);
          q.push_back(rest);
        } else {
          q.push_back(p[c]);
        }
      }
      ref.refine(q);
      std::vector<std::size_t> prefix2 = prefix;
      prefix2.push_back(v);
      search(std::move(q), prefix2);
    }
  }
};

}  // namespace

CanonicalForm canonicalize(const ColoredGraph& g, const std::vector<std::size_t>& fixed,
                           FixMode mode) {
  std::size_t n = g.size();
  std::vector<int> init(n);
  // combined color: (user color, part tag, fixed marker)
  std::vector<bool> in_fixed(n, false);
  std::vector<int> fixed_rank(n, -1);
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    in_fixed[fixed[k]] = true;
    fixed_rank[fixed[k]] = static_cast<int>(k);
  }
  for (std::size_t v = 0; v < n; ++v) {
    int c = g.color(v) & 0xff;
    int pt = g.has_part() ? (g.part(v) & 0xff) : 0;
    int fx = 0;
    if (mode == FixMode::setwise && in_fixed[v]) fx = 1;
    if (mode == FixMode::pointwise && in_fixed[v]) fx = 2 + fixed_rank[v];
    init[v] = ((fx << 16) | (pt << 8) | c);
  }
  Refiner ref(g);
  auto p = ref.initial(init);
  ref.refine(p);
  SearchState st(g, ref);
  if (n == 0) {
    CanonicalForm cf{std::string(), {}, PermGroup(0), {}, Int(1)};
    return cf;
  }
  st.search(p, {});
  CanonicalForm cf{st.best_cert, st.best_labeling, st.group, st.group.orbits(),
                   st.group.order()};
  return cf;
}

bool isomorphic(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.size() != b.size()) return false;
  return canonicalize(a).bytes == canonicalize(b).bytes;
}

SortedExtensions sort_extensions(const std::vector<ColoredGraph>& list, std::size_t n0) {
  SortedExtensions out;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::vector<std::size_t> fixed(n0);
    std::iota(fixed.begin(), fixed.end(), 0);
    CanonicalForm cf = canonicalize(list[i], fixed, FixMode::setwise);
    if (seen.emplace(cf.bytes, i).second) {
      out.survivors.push_back(i);
      out.stabilizer_orders.push_back(cf.group_order);
    }
  }
  return out;
}

}  // namespace fano
