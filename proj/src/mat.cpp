#include "fano/mat.hpp"

#include <algorithm>
#include <sstream>

namespace fano {

VecQ to_rational(const VecZ& v) {
  VecQ r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

bool is_integral(const VecQ& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

VecZ to_integral(const VecQ& v) {
  VecZ r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw std::domain_error("to_integral: non-integer entry");
    r[i] = v[i].get_num();
  }
  return r;
}

VecZ primitive_part(const VecQ& v) {
  Int l = 1;
  for (const auto& x : v) {
    Int d = x.get_den();
    l = l / gcd(l, d) * d;
  }
  VecZ w(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(l);
    w[i] = s.get_num();
    g = gcd(g, w[i]);
  }
  if (g == 0) return w;
  std::size_t first = 0;
  while (first < w.size() && w[first] == 0) ++first;
  if (first < w.size() && w[first] < 0) g = -g;
  for (auto& x : w) x /= g;
  return w;
}

MatQ to_rational(const MatZ& m) {
  MatQ r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

MatZ to_integral(const MatQ& m) {
  MatZ r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::domain_error("to_integral: non-integer entry");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

template <class T>
static Mat<T> mul_impl(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
  Mat<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

MatZ mul(const MatZ& a, const MatZ& b) { return mul_impl(a, b); }
MatQ mul(const MatQ& a, const MatQ& b) { return mul_impl(a, b); }

VecQ mul(const MatQ& a, const VecQ& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("mul: shape mismatch");
  VecQ r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

VecZ mul(const MatZ& a, const VecZ& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("mul: shape mismatch");
  VecZ r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

Rat bilinear(const MatQ& a, const VecQ& x, const VecQ& y) {
  Rat s;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    Rat t;
    for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

Int bilinear(const MatZ& a, const VecZ& x, const VecZ& y) {
  Int s;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    Int t;
    for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

Int det(const MatZ& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  MatZ a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = t / prev;  // exact by Bareiss
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat det(const MatQ& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  std::size_t n = m.rows();
  MatQ a = m;
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != k) {
      a.swap_rows(k, p);
      d = -d;
    }
    d *= a(k, k);
    Rat inv = 1 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

// Row echelon over Q; returns pivot columns, reduces in place.
static std::vector<std::size_t> echelon(MatQ& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const MatQ& m) {
  MatQ a = m;
  return echelon(a).size();
}

bool solve(const MatQ& a, const VecQ& b, VecQ& x) {
  MatQ aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = echelon(aug);
  x.assign(a.cols(), Rat(0));
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == a.cols()) return false;  // inconsistent
    x[piv[k]] = aug(k, a.cols());
  }
  return true;
}

MatQ inverse(const MatQ& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  std::size_t n = m.rows();
  MatQ aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = echelon(aug);
  if (piv.size() != n || piv.back() != n - 1) throw std::domain_error("inverse: singular matrix");
  MatQ r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

MatQ nullspace(const MatQ& a) {
  MatQ e = a;
  auto piv = echelon(e);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  MatQ ker(free_cols.size(), a.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t f = free_cols[k];
    ker(k, f) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) ker(k, piv[r]) = -e(r, f);
  }
  return ker;
}

Inertia inertia(const MatQ& sym) {
  if (!sym.is_symmetric()) throw std::invalid_argument("inertia: not symmetric");
  MatQ a = sym;
  std::size_t n = a.rows();
  Inertia res;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // find a nonzero diagonal pivot among the remaining rows
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && a(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // all remaining diagonal entries vanish; look for off-diagonal entry
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j] && j != i && a(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      }
      if (bi == n) {
        // remaining block is zero
        for (std::size_t i = 0; i < n; ++i)
          if (!done[i]) ++res.zero;
        return res;
      }
      // row/col operation: x_i <- x_i + x_j makes diagonal nonzero
      for (std::size_t k = 0; k < n; ++k) a(bi, k) += a(bj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, bi) += a(k, bj);
      p = bi;
    }
    // eliminate row/col p against the pivot
    Rat piv = a(p, p);
    if (piv > 0) ++res.pos;
    else ++res.neg;
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, p) == 0) continue;
      Rat f = a(i, p) / piv;
      for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(p, k);
      for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, p);
    }
  }
  return res;
}

Inertia inertia(const MatZ& sym) { return inertia(to_rational(sym)); }

SmithForm smith(const MatZ& a) {
  std::size_t m = a.rows(), n = a.cols();
  SmithForm sf{a, MatZ::identity(m), MatZ::identity(n)};
  MatZ& d = sf.d;
  auto row_op = [&](std::size_t i, std::size_t j, const Int& q) {
    // row_i -= q * row_j
    for (std::size_t k = 0; k < n; ++k) d(i, k) -= q * d(j, k);
    for (std::size_t k = 0; k < m; ++k) sf.u(i, k) -= q * sf.u(j, k);
  };
  auto col_op = [&](std::size_t i, std::size_t j, const Int& q) {
    // col_i -= q * col_j
    for (std::size_t k = 0; k < m; ++k) d(k, i) -= q * d(k, j);
    for (std::size_t k = 0; k < n; ++k) sf.v(k, i) -= q * sf.v(k, j);
  };
  auto swap_r = [&](std::size_t i, std::size_t j) {
    d.swap_rows(i, j);
    sf.u.swap_rows(i, j);
  };
  auto swap_c = [&](std::size_t i, std::size_t j) {
    d.swap_cols(i, j);
    sf.v.swap_cols(i, j);
  };

  std::size_t t = std::min(m, n);
  for (std::size_t s = 0; s < t; ++s) {
    // find minimal nonzero entry in the remaining block
    for (;;) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = s; i < m; ++i)
        for (std::size_t j = s; j < n; ++j)
          if (d(i, j) != 0 &&
              (bi == m || cmp(abs(d(i, j)), abs(d(bi, bj))) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == m) goto done;  // block is zero
      if (bi != s) swap_r(s, bi);
      if (bj != s) swap_c(s, bj);
      bool clean = true;
      for (std::size_t i = s + 1; i < m; ++i)
        if (d(i, s) != 0) {
          Int q = d(i, s) / d(s, s);
          row_op(i, s, q);
          if (d(i, s) != 0) clean = false;
        }
      for (std::size_t j = s + 1; j < n; ++j)
        if (d(s, j) != 0) {
          Int q = d(s, j) / d(s, s);
          col_op(j, s, q);
          if (d(s, j) != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility: ensure d(s,s) divides the rest of the block
      bool divides = true;
      for (std::size_t i = s + 1; i < m && divides; ++i)
        for (std::size_t j = s + 1; j < n && divides; ++j)
          if (d(i, j) % d(s, s) != 0) {
            // add row i to row s to pull the entry into play
            for (std::size_t k = 0; k < n; ++k) d(s, k) += d(i, k);
            for (std::size_t k = 0; k < m; ++k) sf.u(s, k) += sf.u(i, k);
            divides = false;
          }
      if (divides) break;
    }
    if (d(s, s) < 0) {
      for (std::size_t k = 0; k < n; ++k) d(s, k) = -d(s, k);
      for (std::size_t k = 0; k < m; ++k) sf.u(s, k) = -sf.u(s, k);
    }
  }
done:
  return sf;
}

MatZ hnf_row_basis(const MatZ& a) {
  std::size_t m = a.rows(), n = a.cols();
  MatZ h = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // gcd-reduce the column below row r
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (p == m || cmp(abs(h(i, c)), abs(h(p, c))) < 0)) p = i;
      if (p == m) break;  // column zero from r on
      if (p != r) h.swap_rows(r, p);
      bool reduced = true;
      for (std::size_t i = r + 1; i < m; ++i)
        if (h(i, c) != 0) {
          Int q = h(i, c) / h(r, c);
          for (std::size_t k = 0; k < n; ++k) h(i, k) -= q * h(r, k);
          if (h(i, c) != 0) reduced = false;
        }
      if (reduced) break;
    }
    if (r < m && h(r, c) != 0) {
      if (h(r, c) < 0)
        for (std::size_t k = 0; k < n; ++k) h(r, k) = -h(r, k);
      // reduce rows above
      for (std::size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
        if (q != 0)
          for (std::size_t k = 0; k < n; ++k) h(i, k) -= q * h(r, k);
      }
      ++r;
    }
  }
  MatZ out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

MatZ saturate_rows(const MatZ& a) {
  // sat(rowspan A) = {x in Z^n : x _|_ ker_Q(A)} where ker_Q(A) = {y : A y = 0}.
  MatQ ker = nullspace(to_rational(a));
  if (ker.rows() == 0) return MatZ::identity(a.cols());
  MatZ kz(ker.rows(), ker.cols());
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    VecZ p = primitive_part(ker.row(i));
    for (std::size_t j = 0; j < ker.cols(); ++j) kz(i, j) = p[j];
  }
  // integer kernel of kz: with U kz V = D of rank r, the kernel is spanned by
  // the last n - r columns of V, and those columns are a saturated basis.
  SmithForm sf = smith(kz);
  std::size_t n = a.cols();
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(sf.d.rows(), sf.d.cols()); ++i)
    if (sf.d(i, i) != 0) ++r;
  MatZ out(n - r, n);
  for (std::size_t k = 0; k < n - r; ++k)
    for (std::size_t j = 0; j < n; ++j) out(k, j) = sf.v(j, r + k);
  return out;
}

MatQ row_lattice_basis(const MatQ& a) {
  // common denominator, integer HNF, scale back
  Int l = 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Int d = a(i, j).get_den();
      l = l / gcd(l, d) * d;
    }
  MatZ z(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rat s = a(i, j) * Rat(l);
      z(i, j) = s.get_num();
    }
  MatZ h = hnf_row_basis(z);
  MatQ out(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = Rat(h(i, j)) / Rat(l);
  return out;
}

template <class T>
static std::string to_string_impl(const Mat<T>& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_string(const MatZ& m) { return to_string_impl(m); }
std::string to_string(const MatQ& m) { return to_string_impl(m); }

}  // namespace fano
