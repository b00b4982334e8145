#include "fano/shortvec.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fano {

namespace {

struct Ldl {
  std::size_t n;
  std::vector<Rat> d;    // positive pivots
  MatQ mu;               // mu(i,j) for j > i
};

Ldl decompose(const MatQ& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("shortvec: Gram not symmetric");
  std::size_t n = gram.rows();
  Ldl f{n, std::vector<Rat>(n), MatQ(n, n)};
  MatQ q = gram;
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw NotDefinite();
    f.d[i] = q(i, i);
    for (std::size_t j = i + 1; j < n; ++j) f.mu(i, j) = q(i, j) / q(i, i);
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) {
        q(k, l) -= f.mu(i, k) * q(i, l);
        if (l != k) q(l, k) = q(k, l);
      }
  }
  return f;
}

// Recursive layer enumeration. Layers run from i = n-1 down to 0; at layer i
// the value x_i + sum_{j>i} mu(i,j) x_j is constrained by the remaining
// budget. Centers are scanned outward in both directions, so all bounds are
// decided by exact comparisons.
struct Enumerator {
  const Ldl& f;
  long smax;
  std::vector<Int> x;
  std::vector<std::vector<VecZ>>* out;

  void leaf(const Rat& used) {
    // used == total norm; callers guarantee 1 <= used <= smax and integral
    if (used.get_den() != 1) return;
    long s = static_cast<long>(used.get_num().get_si());
    if (s < 1 || s > smax) return;
    (*out)[static_cast<std::size_t>(s)].push_back(x);
  }

  // t = sum_{j>i} mu(i,j) x_j ; budget = smax - (norm used by layers > i)
  void layer(std::size_t i, const Rat& used) {
    Rat t;
    for (std::size_t j = i + 1; j < f.n; ++j)
      if (x[j] != 0) t += f.mu(i, j) * Rat(x[j]);
    Rat budget = Rat(smax) - used;
    // center c = -t ; start at floor(c)
    Rat c = -t;
    Int start;
    mpz_fdiv_q(start.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
    for (Int v = start;; v -= 1) {
      Rat w = Rat(v) + t;
      Rat cost = f.d[i] * w * w;
      if (cost > budget) break;
      x[i] = v;
      if (i == 0) {
        bool nonzero = false;
        for (const auto& c2 : x)
          if (c2 != 0) {
            nonzero = true;
            break;
          }
        if (nonzero) leaf(used + cost);
      } else {
        layer(i - 1, used + cost);
      }
    }
    for (Int v = start + 1;; v += 1) {
      Rat w = Rat(v) + t;
      Rat cost = f.d[i] * w * w;
      if (cost > budget) break;
      x[i] = v;
      if (i == 0) {
        // upward scan starts above floor(c); with all x_j = 0 (j > 0) that
        // means v >= 1, so x cannot be the zero vector here
        leaf(used + cost);
      } else {
        layer(i - 1, used + cost);
      }
    }
    x[i] = 0;
  }
};

}  // namespace

std::vector<std::vector<VecZ>> vectors_up_to_serial(const MatQ& gram, long smax) {
  Ldl f = decompose(gram);
  std::vector<std::vector<VecZ>> out(static_cast<std::size_t>(smax) + 1);
  if (f.n == 0) return out;
  Enumerator e{f, smax, std::vector<Int>(f.n, Int(0)), &out};
  e.layer(f.n - 1, Rat(0));
  for (auto& bucket : out) std::sort(bucket.begin(), bucket.end());
  return out;
}

std::vector<std::vector<VecZ>> vectors_up_to(const MatQ& gram, long smax,
                                             bool parallel) {
#ifndef _OPENMP
  (void)parallel;
  return vectors_up_to_serial(gram, smax);
#else
  if (!parallel) return vectors_up_to_serial(gram, smax);
  Ldl f = decompose(gram);
  std::vector<std::vector<VecZ>> out(static_cast<std::size_t>(smax) + 1);
  if (f.n == 0) return out;
  if (f.n == 1) return vectors_up_to_serial(gram, smax);
  // top layer i = n-1: t = 0, bound d[n-1] * v^2 <= smax
  std::size_t top = f.n - 1;
  std::vector<Int> tops;
  for (Int v = 0;; v -= 1) {
    if (f.d[top] * Rat(v) * Rat(v) > Rat(smax)) break;
    tops.push_back(v);
  }
  for (Int v = 1;; v += 1) {
    if (f.d[top] * Rat(v) * Rat(v) > Rat(smax)) break;
    tops.push_back(v);
  }
  std::vector<std::vector<std::vector<VecZ>>> partial(tops.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(tops.size()); ++k) {
    std::vector<std::vector<VecZ>> buckets(static_cast<std::size_t>(smax) + 1);
    Enumerator e{f, smax, std::vector<Int>(f.n, Int(0)), &buckets};
    e.x[top] = tops[static_cast<std::size_t>(k)];
    Rat w(tops[static_cast<std::size_t>(k)]);
    Rat cost = f.d[top] * w * w;
    if (top == 0) {
      if (e.x[top] != 0) e.leaf(cost);
    } else {
      e.layer(top - 1, cost);
    }
    partial[static_cast<std::size_t>(k)] = std::move(buckets);
  }
  for (auto& p : partial)
    for (long s = 1; s <= smax; ++s) {
      auto& dst = out[static_cast<std::size_t>(s)];
      auto& src = p[static_cast<std::size_t>(s)];
      dst.insert(dst.end(), src.begin(), src.end());
    }
  for (auto& bucket : out) std::sort(bucket.begin(), bucket.end());
  return out;
#endif
}

std::vector<VecZ> vectors_of_norm(const MatQ& gram, const Rat& s) {
  if (s <= 0 || s.get_den() != 1)
    throw std::invalid_argument("vectors_of_norm: norm must be a positive integer");
  long sl = static_cast<long>(s.get_num().get_si());
  auto all = vectors_up_to(gram, sl, true);
  return all[static_cast<std::size_t>(sl)];
}

std::vector<VecZ> vectors_of_norm(const MatZ& gram, const Int& s) {
  return vectors_of_norm(to_rational(gram), Rat(s));
}

}  // namespace fano
