// Exact dense integer/rational matrices used throughout the lattice engine.
// All algorithms are fraction-free or rational; no floating point.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

using Int = mpz_class;
using Rat = mpq_class;

using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;

inline Rat to_rat(const Int& z) { return Rat(z); }

VecQ to_rational(const VecZ& v);
bool is_integral(const VecQ& v);
VecZ to_integral(const VecQ& v);  // throws if not integral

// v reduced so that gcd of entries is 1 (zero vector stays zero); first
// nonzero entry made positive.
VecZ primitive_part(const VecQ& v);

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
  Mat(std::size_t r, std::size_t c, std::initializer_list<T> xs)
      : rows_(r), cols_(c), a_(xs) {
    if (a_.size() != r * c) throw std::invalid_argument("Mat: bad init size");
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  Mat transposed() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

using MatZ = Mat<Int>;
using MatQ = Mat<Rat>;

MatQ to_rational(const MatZ& m);
MatZ to_integral(const MatQ& m);  // throws if any entry non-integral

MatZ mul(const MatZ& a, const MatZ& b);
MatQ mul(const MatQ& a, const MatQ& b);
VecQ mul(const MatQ& a, const VecQ& v);
VecZ mul(const MatZ& a, const VecZ& v);

// x^T A y for symmetric pairings.
Rat bilinear(const MatQ& a, const VecQ& x, const VecQ& y);
Int bilinear(const MatZ& a, const VecZ& x, const VecZ& y);

Int det(const MatZ& m);       // Bareiss, fraction-free
Rat det(const MatQ& m);
std::size_t rank(const MatQ& m);

// Solves A x = b over Q; empty result if inconsistent.
bool solve(const MatQ& a, const VecQ& b, VecQ& x);
MatQ inverse(const MatQ& m);  // throws if singular

// Basis of the rational null space {x : A x = 0}, as rows.
MatQ nullspace(const MatQ& a);

// Inertia indices (sigma+, sigma-, sigma0) of a symmetric rational matrix,
// by congruence diagonalization (exact, no eigenvalues).
struct Inertia {
  std::size_t pos = 0, neg = 0, zero = 0;
  bool operator==(const Inertia& o) const {
    return pos == o.pos && neg == o.neg && zero == o.zero;
  }
};
Inertia inertia(const MatQ& sym);
Inertia inertia(const MatZ& sym);

// Smith normal form: U * A * V = D with U, V unimodular, D diagonal with
// d_1 | d_2 | ... (non-negative).
struct SmithForm {
  MatZ d, u, v;
};
SmithForm smith(const MatZ& a);

// Row Hermite normal form of the lattice spanned by the rows of A
// (rank many rows returned, in echelon shape, positive pivots).
MatZ hnf_row_basis(const MatZ& a);

// Basis (as rows) of the saturation of the row span: (Q-rowspan of A) cap Z^n.
MatZ saturate_rows(const MatZ& a);

// Lattice spanned by the rows of the rational matrix A inside Q^n, returned
// as an integral-combination-free row basis with rational entries: rows b_i
// such that sum Z b_i = sum Z a_i (a_i rows of A).
MatQ row_lattice_basis(const MatQ& a);

std::string to_string(const MatZ& m);
std::string to_string(const MatQ& m);

}  // namespace fano
